#include "nzflow/flows.h"

#include <gtest/gtest.h>

#include "naive.h"
#include "nzflow/construct.h"
#include "nzflow/testkit.h"
#include "nzflow/tutte.h"

namespace nzflow {
namespace {

PairElem pr(int a, int b) { return {Z2Elem(a), Z3Elem(b)}; }

template <class V>
EdgeMap<V> map_of(std::initializer_list<V> values) {
  EdgeMap<V> f;
  std::uint32_t i = 0;
  for (const V& v : values) f.set(EdgeId{i++}, v);
  return f;
}

TEST(Zmod, Arithmetic) {
  EXPECT_EQ(-Z3Elem(1), Z3Elem(2));
  EXPECT_EQ(-Z2Elem(1), Z2Elem(1));
  EXPECT_EQ(Z3Elem(2) + Z3Elem(2), Z3Elem(1));
  EXPECT_EQ(Z6Elem(-1).value(), 5u);
  EXPECT_TRUE(PairElem{}.is_zero());
  EXPECT_FALSE(pr(0, 1).is_zero());
}

TEST(Excess, LoopContributesNothing) {
  const Multigraph g = naive::graph(1, {{0, 0}});
  EXPECT_TRUE(excess(g, map_of({Z3Elem(2)}), VertexId{0}).is_zero());
}

TEST(Excess, DigonAndPath) {
  const Multigraph d = naive::digon();
  const auto f = map_of({Z3Elem(1), Z3Elem(1)});
  EXPECT_TRUE(excess(d, f, VertexId{0}).is_zero());
  EXPECT_TRUE(excess(d, f, VertexId{1}).is_zero());

  const Multigraph p = naive::graph(2, {{0, 1}});
  const auto g = map_of({1});
  EXPECT_EQ(excess(p, g, VertexId{1}), 1);
  EXPECT_EQ(excess(p, g, VertexId{0}), -1);
  EXPECT_THROW(excess(p, EdgeMap<int>{}, VertexId{0}), InputError);
}

TEST(Excess, SumsToZeroForAnyAssignment) {
  const Multigraph g = testkit::random_2ec_multigraph(8, 5, 11);
  for (int shift = 0; shift < 20; ++shift) {
    IntegerFlow f;
    for (const Edge& e : g.edges()) f.set(e.id, static_cast<int>(e.id.index * 7 + shift) % 11 - 5);
    int total = 0;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) total += excess(g, f, VertexId{v});
    EXPECT_EQ(total, 0);
  }
}

TEST(Verify, Triangle) {
  const Multigraph t = naive::triangle();
  const auto ok = map_of({pr(0, 1), pr(0, 1), pr(0, 1)});
  EXPECT_TRUE(verify_flow(t, ok));
  EXPECT_TRUE(verify_nowhere_zero(t, ok));
  const auto broken = map_of({pr(0, 0), pr(0, 1), pr(0, 1)});
  EXPECT_FALSE(verify_flow(t, broken));
  const auto bad = check_flow(t, broken);
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->kind, Violation::Kind::kConservation);
}

TEST(Verify, DigonPairs) {
  const auto f = map_of({pr(1, 0), pr(1, 0)});
  EXPECT_TRUE(verify_flow(naive::digon(), f));
  EXPECT_TRUE(verify_nowhere_zero(naive::digon(), f));
}

TEST(Verify, ZeroAndDomain) {
  const Multigraph t = naive::triangle();
  const auto zero = map_of({pr(0, 0), pr(0, 0), pr(0, 0)});
  EXPECT_TRUE(verify_flow(t, zero));
  EXPECT_FALSE(verify_nowhere_zero(t, zero));
  EXPECT_EQ(check_nowhere_zero(t, zero)->kind, Violation::Kind::kZeroValue);
  auto missing = map_of({pr(0, 1), pr(0, 1)});
  EXPECT_EQ(check_flow(t, missing)->kind, Violation::Kind::kMissingValue);
  auto extra = map_of({pr(0, 1), pr(0, 1), pr(0, 1), pr(0, 1)});
  EXPECT_EQ(check_flow(t, extra)->kind, Violation::Kind::kExtraValue);
}

TEST(Theorem2, Examples) {
  const Multigraph loops = naive::graph(1, {{0, 0}, {0, 0}});
  EXPECT_TRUE(verify_theorem2(loops, VertexId{0}, map_of({pr(0, 1), pr(0, 1)})));
  EXPECT_FALSE(verify_theorem2(loops, VertexId{0}, map_of({pr(1, 1), pr(0, 1)})));

  const Multigraph t = naive::triangle();
  const auto circ = map_of({pr(0, 1), pr(0, 1), pr(0, 1)});
  EXPECT_TRUE(naive::rooted_valid(t, VertexId{0}, circ));
  EXPECT_TRUE(verify_theorem2(t, VertexId{0}, circ));

  // K4 with a (1,1) edge at the root fails whatever the rest looks like.
  const Multigraph k = naive::k4();
  naive::for_each_assignment<PairElem>(k, naive::all_pairs(), [&](const GroupFlow& f) {
    if (f.at(EdgeId{0}) == pr(1, 1)) {
      const auto bad = check_theorem2(k, VertexId{0}, f);
      ASSERT_TRUE(bad);
    }
  });
}

TEST(Theorem2, AgreesWithNaiveOnAllAssignments) {
  for (const Multigraph& g : {naive::digon(), naive::triangle(),
                              naive::graph(2, {{0, 1}, {0, 0}, {1, 0}})}) {
    for (std::uint32_t u = 0; u < g.vertex_count(); ++u) {
      naive::for_each_assignment<PairElem>(g, naive::all_pairs(), [&](const GroupFlow& f) {
        ASSERT_EQ(verify_theorem2(g, VertexId{u}, f), naive::rooted_valid(g, VertexId{u}, f));
        ASSERT_EQ(verify_nowhere_zero(g, f), naive::nowhere_zero(g, f));
      });
    }
  }
}

TEST(KFlow, Examples) {
  const Multigraph cycle = naive::graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_TRUE(verify_k_flow(cycle, map_of({1, 1, 1, 1}), 6));
  EXPECT_TRUE(verify_k_flow(naive::digon(), map_of({4, 4}), 6));
  const Multigraph same_sense = naive::graph(2, {{0, 1}, {0, 1}});
  EXPECT_FALSE(verify_k_flow(same_sense, map_of({4, 4}), 6));
  EXPECT_TRUE(verify_k_flow(same_sense, map_of({4, -4}), 6));
  EXPECT_FALSE(verify_k_flow(cycle, map_of({6, 6, 6, 6}), 6));
  EXPECT_EQ(check_k_flow(cycle, map_of({6, 6, 6, 6}), 6)->kind, Violation::Kind::kOutOfRange);
  EXPECT_FALSE(verify_k_flow(cycle, map_of({0, 0, 0, 0}), 6));
  EXPECT_TRUE(verify_k_flow(cycle, map_of({-5, -5, -5, -5}), 6));
}

TEST(Support, Examples) {
  EXPECT_TRUE(support(map_of({pr(0, 0), pr(0, 0)}), Component::kPair).empty());
  const auto d = map_of({pr(0, 1), pr(0, 1)});
  EXPECT_TRUE(support(d, Component::kF2).empty());
  EXPECT_EQ(support(d, Component::kF3).size(), 2u);
}

TEST(Support, K4SolutionF2IsTheTriangle) {
  const Solution sol = solve(naive::k4(), VertexId{0});
  const auto f2 = support(sol.flow, Component::kF2);
  EXPECT_EQ(f2, (std::vector<EdgeId>{EdgeId{3}, EdgeId{4}, EdgeId{5}}));
}

TEST(NegateF3, Examples) {
  const auto f = map_of({pr(1, 1), pr(0, 0), pr(0, 2)});
  const auto n = negate_f3(f);
  EXPECT_EQ(n.at(EdgeId{0}), pr(1, 2));
  EXPECT_EQ(n.at(EdgeId{1}), pr(0, 0));
  EXPECT_EQ(n.at(EdgeId{2}), pr(0, 1));
  EXPECT_EQ(negate_f3(n), f);
}

TEST(NegateF3, PreservesVerifiersAndF2Support) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Multigraph g = testkit::random_2ec_multigraph(10, 3, seed);
    const VertexId u{static_cast<std::uint32_t>(seed % g.vertex_count())};
    const GroupFlow f = solve(g, u).flow;
    const GroupFlow n = negate_f3(f);
    EXPECT_TRUE(verify_flow(g, n));
    EXPECT_TRUE(verify_nowhere_zero(g, n));
    EXPECT_TRUE(verify_theorem2(g, u, n));
    EXPECT_EQ(support(n, Component::kF2), support(f, Component::kF2));
    EXPECT_EQ(support(n, Component::kF3), support(f, Component::kF3));
  }
}

// Reversing e and negating f(e) changes no verifier outcome, for valid and
// deliberately broken flows alike.
TEST(Reversal, VerifiersUnchanged) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Multigraph g = testkit::random_2ec_multigraph(8, 4, seed);
    const VertexId u{0};
    GroupFlow f = solve(g, u).flow;
    if (seed % 3 == 1) f.set(g.edge_at(seed % g.edge_count()).id, pr(1, 1));
    const IntegerFlow z = group_flow_to_integer_flow(g, to_z6_flow(solve(g, u).flow)).flow;
    for (const Edge& e : g.edges()) {
      const Multigraph r = reverse_edge(g, e.id);
      GroupFlow fr = f;
      fr.set(e.id, -f.at(e.id));
      IntegerFlow zr = z;
      zr.set(e.id, -z.at(e.id));
      EXPECT_EQ(verify_flow(g, f), verify_flow(r, fr));
      EXPECT_EQ(verify_nowhere_zero(g, f), verify_nowhere_zero(r, fr));
      EXPECT_EQ(verify_theorem2(g, u, f), verify_theorem2(r, u, fr));
      EXPECT_EQ(verify_k_flow(g, z, 6), verify_k_flow(r, zr, 6));
    }
  }
}

TEST(Violation, Describe) {
  const Violation v{Violation::Kind::kConservation, VertexId{3}, std::nullopt};
  EXPECT_NE(v.describe().find('3'), std::string::npos);
}

}  // namespace
}  // namespace nzflow
