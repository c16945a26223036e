#include "nzflow/cli.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nzflow/connectivity.h"
#include "nzflow/construct.h"
#include "nzflow/errors.h"
#include "nzflow/formats.h"
#include "nzflow/testkit.h"
#include "nzflow/tutte.h"

namespace nzflow::cli {

namespace {

std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path);
  if (!file) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

FlowFormat format_of(const std::string& name) {
  return name == "machine" ? FlowFormat::kMachine : FlowFormat::kText;
}

IntegerFlow to_integer(const Multigraph& g, const GroupFlow& flow,
                       std::uint64_t* augmentations = nullptr) {
  IntegerLift lift = group_flow_to_integer_flow(g, to_z6_flow(flow));
  if (augmentations) *augmentations = lift.augmentations;
  return std::move(lift.flow);
}

struct SolveArgs {
  std::string graph;
  unsigned root = 0;
  bool trace = false;
  bool debug_verify = false;
  std::string format = "text";
};

int cmd_solve(const SolveArgs& a, std::istream& in, std::ostream& out) {
  const Multigraph g = parse_graph_string(slurp(a.graph, in));
  SolveOptions options;
  options.debug_verify = a.debug_verify;
  options.detailed_trace = a.trace;
  Solution sol = solve(g, VertexId{a.root}, options);
  const IntegerFlow integer = to_integer(g, sol.flow);
  FlowDocument doc = make_flow_document(g, VertexId{a.root}, sol.flow, &integer);
  if (a.trace) {
    for (const TraceStep& s : sol.trace.steps) doc.trace.push_back(s.describe());
  }
  write_flow(out, doc, format_of(a.format));
  return kOk;
}

struct VerifyArgs {
  std::string graph;
  std::string flow;
  std::string mode = "theorem2";
};

int cmd_verify(const VerifyArgs& a, std::istream& in, std::ostream& out,
               std::ostream& err) {
  const Multigraph g = parse_graph_string(slurp(a.graph, in));
  const FlowDocument doc = parse_flow_string(slurp(a.flow, in));
  check_matches_graph(doc, g);
  if (auto bad = check_consistency(doc)) {
    err << "verification failed: " << *bad << '\n';
    return kVerifyFailed;
  }
  std::optional<Violation> bad;
  if (a.mode == "group") {
    bad = check_nowhere_zero(g, group_flow_of(doc));
  } else if (a.mode == "theorem2") {
    if (!doc.root) throw InputError("theorem2 mode needs root=<u> in the flow");
    bad = check_theorem2(g, *doc.root, group_flow_of(doc));
  } else {
    bad = check_k_flow(g, integer_flow_of(doc), 6);
  }
  if (bad) {
    err << "verification failed: " << bad->describe() << '\n';
    return kVerifyFailed;
  }
  out << "ok " << a.mode << '\n';
  return kOk;
}

struct ConvertArgs {
  std::string graph;
  std::string flow;
  std::string format = "text";
};

// Re-derives z6 and int6 from the (f2, f3) columns.
int cmd_convert(const ConvertArgs& a, std::istream& in, std::ostream& out,
                std::ostream& err) {
  const Multigraph g = parse_graph_string(slurp(a.graph, in));
  FlowDocument doc = parse_flow_string(slurp(a.flow, in));
  check_matches_graph(doc, g);
  if (auto bad = check_consistency(doc)) {
    err << "verification failed: " << *bad << '\n';
    return kVerifyFailed;
  }
  const GroupFlow flow = group_flow_of(doc);
  if (auto bad = check_nowhere_zero(g, flow)) {
    err << "verification failed: " << bad->describe() << '\n';
    return kVerifyFailed;
  }
  const IntegerFlow integer = to_integer(g, flow);
  FlowDocument converted = make_flow_document(g, doc.root, flow, &integer);
  converted.trace = doc.trace;
  write_flow(out, converted, format_of(a.format));
  return kOk;
}

struct GenArgs {
  std::size_t vertices = 1;
  std::size_t extra_ears = 0;
  std::uint64_t seed = 0;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  write_graph(out, testkit::random_2ec_multigraph(a.vertices, a.extra_ears, a.seed));
  return kOk;
}

struct OracleArgs {
  std::string graph;
  std::size_t guard_edges = testkit::kDefaultGuardEdges;
};

int cmd_oracle(const OracleArgs& a, std::istream& in, std::ostream& out) {
  const Multigraph g = parse_graph_string(slurp(a.graph, in));
  const std::size_t count =
      testkit::count_nz_flows(g, testkit::FlowGroup::kZ2xZ3, a.guard_edges);
  out << count << " nowhere-zero Z2×Z3 flows; ";
  if (!is_2_edge_connected(g)) {
    out << "graph is not 2-edge-connected\n";
    return kStructural;
  }
  const auto report = testkit::check_theorem2_exhaustive(g, a.guard_edges);
  if (report.holds()) {
    out << "theorem2 holds for all roots\n";
  } else {
    out << "theorem2 FAILS\n";
  }
  for (const auto& r : report.roots) {
    out << "root " << r.root.index << ": " << r.valid_flows
        << " flows with f2 = 0 at the root; solver output "
        << (r.solver_output_valid ? "among them" : "NOT among them") << '\n';
  }
  return report.holds() ? kOk : kVerifyFailed;
}

struct BenchArgs {
  std::vector<std::size_t> sizes{100, 1000, 10000};
  std::vector<std::uint64_t> seeds{1, 2, 3};
  unsigned repetitions = 3;
  std::size_t ears_per_vertex = 2;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  using Clock = std::chrono::steady_clock;
  out << std::left << std::setw(8) << "n" << std::setw(9) << "m"
      << std::setw(6) << "seed" << std::setw(8) << "steps" << std::setw(8)
      << "depth" << std::setw(8) << "augment" << std::setw(12) << "solve_ms"
      << "convert_ms\n";
  for (std::size_t n : a.sizes) {
    for (std::uint64_t seed : a.seeds) {
      const Multigraph g =
          testkit::random_2ec_multigraph(n, a.ears_per_vertex * n, seed);
      SolveOptions options;
      options.detailed_trace = false;
      double best_solve = 1e300;
      double best_convert = 1e300;
      Solution sol;
      std::uint64_t augmentations = 0;
      for (unsigned r = 0; r < std::max(1u, a.repetitions); ++r) {
        const auto t0 = Clock::now();
        sol = solve(g, VertexId{0}, options);
        const auto t1 = Clock::now();
        const IntegerFlow integer = to_integer(g, sol.flow, &augmentations);
        const auto t2 = Clock::now();
        if (!verify_k_flow(g, integer, 6)) {
          throw DefectError("bench instance produced an invalid 6-flow");
        }
        best_solve = std::min(
            best_solve, std::chrono::duration<double, std::milli>(t1 - t0).count());
        best_convert = std::min(
            best_convert, std::chrono::duration<double, std::milli>(t2 - t1).count());
      }
      out << std::left << std::setw(8) << g.vertex_count() << std::setw(9)
          << g.edge_count() << std::setw(6) << seed << std::setw(8)
          << sol.trace.steps.size() << std::setw(8) << sol.trace.max_depth
          << std::setw(8) << augmentations << std::setw(12) << std::fixed
          << std::setprecision(2) << best_solve << best_convert << '\n';
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Nowhere-zero 6-flows on 2-edge-connected multigraphs", "nzflow"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Construct a rooted Z2xZ3-flow");
  solve_cmd->add_option("graph", solve_args.graph, "Graph file or -")->required();
  solve_cmd->add_option("--root", solve_args.root, "Root vertex");
  solve_cmd->add_flag("--trace", solve_args.trace, "Include the construction trace");
  solve_cmd->add_flag("--debug-verify", solve_args.debug_verify,
                      "Re-verify after every extension step");
  solve_cmd->add_option("--format", solve_args.format)
      ->check(CLI::IsMember({"text", "machine"}));

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check a flow file against a graph");
  verify_cmd->add_option("graph", verify_args.graph)->required();
  verify_cmd->add_option("flow", verify_args.flow)->required();
  verify_cmd->add_option("--mode", verify_args.mode)
      ->check(CLI::IsMember({"group", "theorem2", "k6"}));

  ConvertArgs convert_args;
  auto* convert_cmd =
      app.add_subcommand("convert", "Recompute the z6 and int6 columns of a flow");
  convert_cmd->add_option("graph", convert_args.graph)->required();
  convert_cmd->add_option("flow", convert_args.flow)->required();
  convert_cmd->add_option("--format", convert_args.format)
      ->check(CLI::IsMember({"text", "machine"}));

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Random 2-edge-connected multigraph");
  gen_cmd->add_option("-n,--vertices", gen_args.vertices)->required();
  gen_cmd->add_option("--extra-ears", gen_args.extra_ears);
  gen_cmd->add_option("--seed", gen_args.seed);

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force cross-check");
  oracle_cmd->add_option("graph", oracle_args.graph)->required();
  oracle_cmd->add_option("--guard-edges", oracle_args.guard_edges);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Time solve and conversion");
  bench_cmd->add_option("--sizes", bench_args.sizes)->delimiter(',');
  bench_cmd->add_option("--seeds", bench_args.seeds)->delimiter(',');
  bench_cmd->add_option("--repetitions", bench_args.repetitions);
  bench_cmd->add_option("--ears-per-vertex", bench_args.ears_per_vertex);

  std::vector<std::string> argv_storage{"nzflow"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_args, in, out);
    if (verify_cmd->parsed()) return cmd_verify(verify_args, in, out, err);
    if (convert_cmd->parsed()) return cmd_convert(convert_args, in, out, err);
    if (gen_cmd->parsed()) return cmd_gen(gen_args, out);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_args, in, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_args, out);
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kStructural;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kStructural;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DefectError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInputError;
}

}  // namespace nzflow::cli
