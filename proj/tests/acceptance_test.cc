// Runs the acceptance suite and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "naive.h"
#include "nzflow/cli.h"
#include "nzflow/connectivity.h"
#include "nzflow/construct.h"
#include "nzflow/formats.h"
#include "nzflow/testkit.h"
#include "nzflow/tutte.h"

namespace {

using namespace nzflow;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Graphs of the random suite: up to 200 vertices and 600 edges.
std::vector<Multigraph> random_suite() {
  std::vector<Multigraph> out;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::size_t n = 1 + seed % 200;
    const std::size_t base = testkit::random_2ec_multigraph(n, 0, seed).edge_count();
    const std::size_t room = base < 600 ? 600 - base : 0;
    out.push_back(testkit::random_2ec_multigraph(n, (seed * 37) % (room + 1), seed));
  }
  return out;
}

VertexId root_for(const Multigraph& g, std::uint64_t i) {
  return VertexId{static_cast<std::uint32_t>((i * 7919) % g.vertex_count())};
}

Outcome exhaustive() {
  const auto t0 = Clock::now();
  std::size_t graphs = 0;
  std::size_t roots = 0;
  std::size_t bad = 0;
  testkit::for_each_small_2ec_multigraph(4, 7, [&](const Multigraph& g) {
    ++graphs;
    for (std::uint32_t u = 0; u < g.vertex_count(); ++u) {
      ++roots;
      try {
        if (!verify_theorem2(g, VertexId{u}, solve(g, VertexId{u}).flow)) ++bad;
      } catch (const std::exception&) {
        ++bad;
      }
    }
    const auto report = testkit::check_theorem2_exhaustive(g);
    for (const auto& r : report.roots) bad += r.valid_flows > 0 && r.solver_output_valid ? 0 : 1;
  });
  std::ostringstream d;
  d << graphs << " graphs, " << roots << " rooted instances, " << bad
    << " failures, " << seconds_since(t0) << " s";
  return {bad == 0 && graphs > 0, d.str()};
}

Outcome end_to_end(const std::vector<Multigraph>& suite) {
  const auto t0 = Clock::now();
  std::size_t bad = 0;
  std::size_t max_m = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Multigraph& g = suite[i];
    max_m = std::max(max_m, g.edge_count());
    try {
      const Z6Flow phi = to_z6_flow(solve(g, root_for(g, i)).flow);
      const IntegerFlow z = group_flow_to_integer_flow(g, phi).flow;
      bool ok = verify_k_flow(g, z, 6);
      for (const Edge& e : g.edges()) ok = ok && Z6Elem(z.at(e.id)) == phi.at(e.id);
      if (!ok) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << suite.size() << " graphs (max " << max_m << " edges), " << bad
    << " failures, " << secs << " s";
  return {bad == 0 && secs < 60.0, d.str()};
}

Outcome debug_invariants(const std::vector<Multigraph>& suite) {
  const auto t0 = Clock::now();
  SolveOptions debug;
  debug.debug_verify = true;
  std::size_t runs = 0;
  std::size_t violations = 0;
  std::uint64_t checks = 0;
  std::string first;
  auto attempt = [&](const Multigraph& g, VertexId u) {
    ++runs;
    try {
      const Solution s = solve(g, u, debug);
      checks += s.trace.checks;
      if (!verify_theorem2(g, u, s.flow)) ++violations;
    } catch (const std::exception& e) {
      if (first.empty()) first = e.what();
      ++violations;
    }
  };
  testkit::for_each_small_2ec_multigraph(4, 7, [&](const Multigraph& g) {
    for (std::uint32_t u = 0; u < g.vertex_count(); ++u) attempt(g, VertexId{u});
  });
  for (std::size_t i = 0; i < suite.size(); ++i) attempt(suite[i], root_for(suite[i], i));
  std::ostringstream d;
  d << runs << " debug runs, " << checks << " assertions evaluated, "
    << violations << " violations";
  if (!first.empty()) d << " (first: " << first << ")";
  d << ", " << seconds_since(t0) << " s";
  return {violations == 0 && checks > 0, d.str()};
}

Outcome oracle_counts() {
  const std::size_t digon = testkit::count_nz_flows(naive::digon(), testkit::FlowGroup::kZ2xZ3);
  const std::size_t triangle = testkit::count_nz_flows(naive::triangle(), testkit::FlowGroup::kZ6);
  const std::size_t digon_naive = naive::count_nz(naive::digon(), naive::all_pairs());
  const std::size_t triangle_naive =
      naive::count_nz(naive::triangle(), naive::all_values<Z6Elem>(6));
  std::ostringstream d;
  d << "digon Z2xZ3 " << digon << " (naive " << digon_naive << "), triangle Z6 "
    << triangle << " (naive " << triangle_naive << ")";
  return {digon == 5 && triangle == 5 && digon_naive == 5 && triangle_naive == 5, d.str()};
}

struct Verdicts {
  bool flow, nowhere_zero, theorem2, k6;
  friend bool operator==(const Verdicts&, const Verdicts&) = default;
};

Verdicts verdicts(const Multigraph& g, VertexId u, const GroupFlow& f, const IntegerFlow& z) {
  return {verify_flow(g, f), verify_nowhere_zero(g, f), verify_theorem2(g, u, f),
          verify_k_flow(g, z, 6)};
}

Outcome reversal() {
  std::size_t pairs = 0;
  std::size_t changed = 0;
  std::size_t invalid_inputs = 0;
  for (std::uint64_t seed = 0; pairs < 200; ++seed) {
    const Multigraph g = testkit::random_2ec_multigraph(2 + seed % 30, seed % 9, seed + 5000);
    if (g.edge_count() == 0) continue;
    const VertexId u = root_for(g, seed);
    GroupFlow f = solve(g, u).flow;
    IntegerFlow z = group_flow_to_integer_flow(g, to_z6_flow(f)).flow;
    const EdgeId e = g.edge_at((seed * 31) % g.edge_count()).id;
    // Every other pair starts from a broken assignment so that "false"
    // verdicts are exercised as well.
    if (seed % 2 == 1) {
      const EdgeId other = g.edge_at((seed * 17 + 3) % g.edge_count()).id;
      f.set(other, f.at(other) + PairElem{Z2Elem(1), Z3Elem(seed % 3)});
      z.set(other, z.at(other) >= 0 ? z.at(other) + 1 : z.at(other) - 1);
    }
    const Verdicts before = verdicts(g, u, f, z);
    if (!before.theorem2) ++invalid_inputs;
    GroupFlow fr = f;
    fr.set(e, -f.at(e));
    IntegerFlow zr = z;
    zr.set(e, -z.at(e));
    if (!(verdicts(reverse_edge(g, e), u, fr, zr) == before)) ++changed;
    ++pairs;
  }
  std::ostringstream d;
  d << pairs << " (graph, edge) pairs, " << invalid_inputs
    << " of them on broken flows, " << changed << " verdict changes";
  return {changed == 0, d.str()};
}

Outcome petersen() {
  const Multigraph g = naive::petersen();
  std::size_t ok = 0;
  for (std::uint32_t u = 0; u < g.vertex_count(); ++u) {
    const GroupFlow f = solve(g, VertexId{u}).flow;
    const IntegerFlow z = group_flow_to_integer_flow(g, to_z6_flow(f)).flow;
    if (verify_nowhere_zero(g, f) && verify_theorem2(g, VertexId{u}, f) &&
        verify_k_flow(g, z, 6) && naive::rooted_valid(g, VertexId{u}, f)) {
      ++ok;
    }
  }
  std::ostringstream d;
  d << ok << "/" << g.vertex_count() << " roots pass group, theorem2 and 6-flow checks";
  return {ok == g.vertex_count(), d.str()};
}

Outcome scale() {
  constexpr std::size_t kVertices = 10000;
  constexpr std::size_t kEdges = 100000;
  constexpr std::uint64_t kSeed = 1;
  const std::size_t base = testkit::random_2ec_multigraph(kVertices, 0, kSeed).edge_count();
  const Multigraph g = testkit::random_2ec_multigraph(kVertices, kEdges - base, kSeed);
  SolveOptions options;
  options.detailed_trace = false;
  const auto t0 = Clock::now();
  Outcome out;
  std::ostringstream d;
  try {
    const Solution s = solve(g, VertexId{0}, options);
    const IntegerFlow z = group_flow_to_integer_flow(g, to_z6_flow(s.flow)).flow;
    const double secs = seconds_since(t0);
    const bool valid = verify_theorem2(g, VertexId{0}, s.flow) && verify_k_flow(g, z, 6);
    d << "n=" << g.vertex_count() << " m=" << g.edge_count() << ", solve+convert "
      << secs << " s, " << s.trace.steps.size() << " steps, depth "
      << s.trace.max_depth << (valid ? ", valid" : ", INVALID");
    out.pass = valid && g.edge_count() == kEdges && secs < 10.0;
  } catch (const std::exception& e) {
    d << "threw: " << e.what();
    out.pass = false;
  }
  out.detail = d.str();
  return out;
}

std::string cli_output(std::vector<std::string> args, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

Outcome determinism() {
  std::size_t differ = 0;
  std::size_t compared = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::string gen_args_n = std::to_string(20 + seed * 13);
    const std::vector<std::string> gen{"gen", "-n", gen_args_n, "--extra-ears",
                                       std::to_string(seed * 3), "--seed", std::to_string(seed)};
    const std::string g1 = cli_output(gen, "");
    const std::string g2 = cli_output(gen, "");
    differ += g1 != g2;
    const std::string graph = g1.substr(g1.find('\n') + 1);
    for (const char* format : {"text", "machine"}) {
      const std::vector<std::string> solve_args{"solve", "-", "--root", std::to_string(seed % 7),
                                                "--trace", "--format", format};
      differ += cli_output(solve_args, graph) != cli_output(solve_args, graph);
    }
    const Multigraph g = testkit::random_2ec_multigraph(20 + seed * 13, seed * 3, seed);
    differ += !(g == testkit::random_2ec_multigraph(20 + seed * 13, seed * 3, seed));
    compared += 4;
  }
  std::ostringstream d;
  d << compared << " repeated generator/solver runs compared byte for byte, " << differ
    << " differ";
  return {differ == 0, d.str()};
}

}  // namespace

int main() {
  const std::vector<Multigraph> suite = random_suite();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exhaustive small graphs", exhaustive},
      {"random end-to-end 6-flows", [&] { return end_to_end(suite); }},
      {"debug-mode step invariants", [&] { return debug_invariants(suite); }},
      {"oracle flow counts", oracle_counts},
      {"reversal and negation", reversal},
      {"Petersen graph", petersen},
      {"scale", scale},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
