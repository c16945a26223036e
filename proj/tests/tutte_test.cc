#include "nzflow/tutte.h"

#include <gtest/gtest.h>

#include "naive.h"
#include "nzflow/construct.h"
#include "nzflow/testkit.h"

namespace nzflow {
namespace {

PairElem pr(int a, int b) { return {Z2Elem(a), Z3Elem(b)}; }

Z6Flow z6_of(std::initializer_list<int> values) {
  Z6Flow f;
  std::uint32_t i = 0;
  for (int v : values) f.set(EdgeId{i++}, Z6Elem(v));
  return f;
}

TEST(Isomorphism, Examples) {
  EXPECT_EQ(pair_to_z6(pr(0, 0)), Z6Elem(0));
  EXPECT_EQ(pair_to_z6(pr(1, 0)), Z6Elem(3));
  EXPECT_EQ(pair_to_z6(pr(0, 1)), Z6Elem(4));
  EXPECT_EQ(pair_to_z6(pr(1, 2)), Z6Elem(5));
  EXPECT_EQ(z6_to_pair(Z6Elem(5)), pr(1, 2));
}

TEST(Isomorphism, AllPairs) {
  for (const PairElem& a : naive::all_pairs()) {
    EXPECT_EQ(z6_to_pair(pair_to_z6(a)), a);
    EXPECT_EQ(pair_to_z6(a).is_zero(), a.is_zero());
    for (const PairElem& b : naive::all_pairs()) {
      EXPECT_EQ(pair_to_z6(a + b), pair_to_z6(a) + pair_to_z6(b));
    }
  }
  for (int c = 0; c < 6; ++c) EXPECT_EQ(pair_to_z6(z6_to_pair(Z6Elem(c))), Z6Elem(c));
}

TEST(Lift, DirectedCycleNeedsNoShift) {
  const Multigraph g = naive::graph(3, {{0, 1}, {1, 2}, {2, 0}});
  const IntegerLift lift = group_flow_to_integer_flow(g, z6_of({1, 1, 1}));
  EXPECT_EQ(lift.augmentations, 0u);
  for (std::uint32_t i = 0; i < 3; ++i) EXPECT_EQ(lift.flow.at(EdgeId{i}), 1);
}

TEST(Lift, DigonOpposingSenses) {
  const IntegerLift lift = group_flow_to_integer_flow(naive::digon(), z6_of({4, 4}));
  EXPECT_EQ(lift.flow.at(EdgeId{0}), 4);
  EXPECT_EQ(lift.flow.at(EdgeId{1}), 4);
}

// 0 -> 1, 1 -> 2, 0 -> 2 with (4, 4, 2): excess (-6, 0, 6). The breadth-first
// search from 2 reaches 0 over e2 directly, so only e2 shifts. The longer
// push through 1, giving (-2, -2, 2), is the other valid lift.
TEST(Lift, TriangleOnePush) {
  const Multigraph g = naive::graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const IntegerLift lift = group_flow_to_integer_flow(g, z6_of({4, 4, 2}));
  EXPECT_EQ(lift.augmentations, 1u);
  EXPECT_EQ(lift.flow.at(EdgeId{0}), 4);
  EXPECT_EQ(lift.flow.at(EdgeId{1}), 4);
  EXPECT_EQ(lift.flow.at(EdgeId{2}), -4);

  // Residue-compatible assignments in -5..5 that conserve.
  std::size_t valid = 0;
  bool ours = false;
  for (int a : {4, -2}) {
    for (int b : {4, -2}) {
      for (int c : {2, -4}) {
        IntegerFlow f;
        f.set(EdgeId{0}, a);
        f.set(EdgeId{1}, b);
        f.set(EdgeId{2}, c);
        if (!naive::conserves(g, f)) continue;
        ++valid;
        ours |= f == lift.flow;
      }
    }
  }
  EXPECT_EQ(valid, 2u);
  EXPECT_TRUE(ours);
}

TEST(Lift, RejectsNonFlows) {
  EXPECT_THROW(group_flow_to_integer_flow(naive::triangle(), z6_of({1, 2, 1})), InputError);
  EXPECT_THROW(group_flow_to_integer_flow(naive::triangle(), z6_of({0, 0, 0})), InputError);
}

TEST(Lift, LoopsKeepTheirLift) {
  const Multigraph g = naive::graph(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const IntegerLift lift = group_flow_to_integer_flow(g, z6_of({5, 2, 2, 3}));
  EXPECT_EQ(lift.flow.at(EdgeId{0}), 5);
  EXPECT_EQ(lift.flow.at(EdgeId{3}), 3);
}

TEST(Lift, SolverOutputsConvert) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Multigraph g = testkit::random_2ec_multigraph(5 + seed % 40, seed % 25, seed);
    const Z6Flow phi = to_z6_flow(solve(g, VertexId{0}).flow);
    const IntegerFlow z = group_flow_to_integer_flow(g, phi).flow;
    ASSERT_TRUE(verify_k_flow(g, z, 6)) << "seed " << seed;
    ASSERT_TRUE(naive::conserves(g, z));
    for (const Edge& e : g.edges()) {
      const int v = z.at(e.id);
      EXPECT_TRUE(v != 0 && v > -6 && v < 6);
      EXPECT_EQ(Z6Elem(v), phi.at(e.id));
    }
    EXPECT_EQ(integer_flow_to_group(g, z), phi);
  }
}

TEST(Residue, Examples) {
  const Multigraph g = naive::graph(3, {{0, 1}, {1, 2}, {0, 2}});
  IntegerFlow ones;
  IntegerFlow lifted;
  for (std::uint32_t i = 0; i < 3; ++i) ones.set(EdgeId{i}, 1);
  lifted.set(EdgeId{0}, -2);
  lifted.set(EdgeId{1}, -2);
  lifted.set(EdgeId{2}, 2);
  EXPECT_EQ(integer_flow_to_group(g, ones), z6_of({1, 1, 1}));
  EXPECT_EQ(integer_flow_to_group(g, lifted), z6_of({4, 4, 2}));
}

TEST(PairFlows, RoundTrip) {
  const Multigraph g = naive::petersen();
  const GroupFlow f = solve(g, VertexId{2}).flow;
  EXPECT_EQ(to_pair_flow(to_z6_flow(f)), f);
  EXPECT_TRUE(verify_nowhere_zero(g, to_z6_flow(f)));
}

}  // namespace
}  // namespace nzflow
