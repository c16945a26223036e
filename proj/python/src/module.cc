#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nzflow/connectivity.h"
#include "nzflow/construct.h"
#include "nzflow/errors.h"
#include "nzflow/formats.h"
#include "nzflow/testkit.h"
#include "nzflow/tutte.h"

namespace py = pybind11;

namespace {

using nzflow::EdgeId;
using nzflow::Multigraph;
using nzflow::VertexId;

using Pair = std::tuple<int, int>;

// Python sees flows as lists indexed by position in graph.edges.
nzflow::GroupFlow group_flow(const Multigraph& g, const std::vector<Pair>& values) {
  if (values.size() != g.edge_count()) {
    throw nzflow::InputError("expected " + std::to_string(g.edge_count()) +
                             " values, got " + std::to_string(values.size()));
  }
  nzflow::GroupFlow f;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto [a, b] = values[i];
    f.set(g.edge_at(i).id, {nzflow::Z2Elem(a), nzflow::Z3Elem(b)});
  }
  return f;
}

std::vector<Pair> pair_list(const Multigraph& g, const nzflow::GroupFlow& f) {
  std::vector<Pair> out;
  out.reserve(g.edge_count());
  for (const nzflow::Edge& e : g.edges()) {
    const auto p = f.at(e.id);
    out.emplace_back(static_cast<int>(p.f2.value()), static_cast<int>(p.f3.value()));
  }
  return out;
}

nzflow::IntegerFlow integer_flow(const Multigraph& g, const std::vector<int>& values) {
  if (values.size() != g.edge_count()) {
    throw nzflow::InputError("expected " + std::to_string(g.edge_count()) +
                             " values, got " + std::to_string(values.size()));
  }
  nzflow::IntegerFlow f;
  for (std::size_t i = 0; i < values.size(); ++i) f.set(g.edge_at(i).id, values[i]);
  return f;
}

Multigraph make_graph(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  return Multigraph::build(n, edges);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list(const Multigraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const nzflow::Edge& e : g.edges()) out.emplace_back(e.tail.index, e.head.index);
  return out;
}

struct PySolution {
  std::vector<Pair> flow;
  std::vector<std::string> trace;
  std::uint32_t max_depth = 0;
  std::uint64_t checks = 0;
};

PySolution solve(const Multigraph& g, std::uint32_t root, bool debug_verify,
                 bool detailed_trace) {
  nzflow::SolveOptions options;
  options.debug_verify = debug_verify;
  options.detailed_trace = detailed_trace;
  nzflow::Solution s;
  {
    py::gil_scoped_release release;
    s = nzflow::solve(g, VertexId{root}, options);
  }
  PySolution out;
  out.flow = pair_list(g, s.flow);
  for (const auto& step : s.trace.steps) out.trace.push_back(step.describe());
  out.max_depth = s.trace.max_depth;
  out.checks = s.trace.checks;
  return out;
}

std::vector<int> to_integer_flow(const Multigraph& g, const std::vector<Pair>& values) {
  const auto lift = nzflow::group_flow_to_integer_flow(g, nzflow::to_z6_flow(group_flow(g, values)));
  std::vector<int> out;
  for (const nzflow::Edge& e : g.edges()) out.push_back(lift.flow.at(e.id));
  return out;
}

nzflow::testkit::FlowGroup group_of(const std::string& name) {
  if (name == "Z2xZ3") return nzflow::testkit::FlowGroup::kZ2xZ3;
  if (name == "Z6") return nzflow::testkit::FlowGroup::kZ6;
  if (name == "Z3") return nzflow::testkit::FlowGroup::kZ3;
  if (name == "Z2") return nzflow::testkit::FlowGroup::kZ2;
  throw nzflow::InputError("unknown group " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nowhere-zero 6-flows on 2-edge-connected multigraphs";

  auto error = py::register_exception<nzflow::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<nzflow::InputError>(m, "InputError", error.ptr());
  py::register_exception<nzflow::StructuralError>(m, "StructuralError", error.ptr());
  py::register_exception<nzflow::GuardError>(m, "GuardError", error.ptr());
  py::register_exception<nzflow::DefectError>(m, "DefectError", error.ptr());

  py::class_<Multigraph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("vertex_count"), py::arg("edges"),
           "Directed multigraph; edge i runs edges[i][0] -> edges[i][1].")
      .def_property_readonly("vertex_count", &Multigraph::vertex_count)
      .def_property_readonly("edge_count", &Multigraph::edge_count)
      .def_property_readonly("edges", &edge_list)
      .def("is_2_edge_connected", [](const Multigraph& g) { return nzflow::is_2_edge_connected(g); })
      .def("bridges",
           [](const Multigraph& g) {
             std::vector<std::uint32_t> out;
             for (EdgeId e : nzflow::bridges(g)) out.push_back(e.index);
             return out;
           })
      .def("to_text", &nzflow::graph_to_string)
      .def_static("from_text", &nzflow::parse_graph_string, py::arg("text"))
      .def(py::self == py::self)
      .def("__repr__", [](const Multigraph& g) {
        return "<nzflow.Graph n=" + std::to_string(g.vertex_count()) +
               " m=" + std::to_string(g.edge_count()) + ">";
      });

  py::class_<PySolution>(m, "Solution")
      .def_readonly("flow", &PySolution::flow, "(f2, f3) per edge")
      .def_readonly("trace", &PySolution::trace)
      .def_readonly("max_depth", &PySolution::max_depth)
      .def_readonly("checks", &PySolution::checks);

  m.def("solve", &solve, py::arg("graph"), py::arg("root") = 0,
        py::arg("debug_verify") = false, py::arg("detailed_trace") = false,
        "Nowhere-zero Z2 x Z3 flow whose f2 part vanishes at the root.");
  m.def("to_integer_flow", &to_integer_flow, py::arg("graph"), py::arg("flow"),
        "Integer 6-flow with the same residues as 3*f2 + 4*f3 mod 6.");
  m.def("pair_to_z6", [](int a, int b) {
    return nzflow::pair_to_z6({nzflow::Z2Elem(a), nzflow::Z3Elem(b)}).value();
  });
  m.def("verify_theorem2",
        [](const Multigraph& g, std::uint32_t root, const std::vector<Pair>& flow) {
          return nzflow::verify_theorem2(g, VertexId{root}, group_flow(g, flow));
        },
        py::arg("graph"), py::arg("root"), py::arg("flow"));
  m.def("verify_nowhere_zero",
        [](const Multigraph& g, const std::vector<Pair>& flow) {
          return nzflow::verify_nowhere_zero(g, group_flow(g, flow));
        },
        py::arg("graph"), py::arg("flow"));
  m.def("verify_k_flow",
        [](const Multigraph& g, const std::vector<int>& values, int k) {
          return nzflow::verify_k_flow(g, integer_flow(g, values), k);
        },
        py::arg("graph"), py::arg("values"), py::arg("k") = 6);
  m.def("random_2ec_multigraph",
        [](std::size_t n, std::size_t extra_ears, std::uint64_t seed) {
          return nzflow::testkit::random_2ec_multigraph(n, extra_ears, seed);
        },
        py::arg("n"), py::arg("extra_ears") = 0, py::arg("seed") = 0);
  m.def("count_nz_flows",
        [](const Multigraph& g, const std::string& group, std::size_t guard_edges) {
          return nzflow::testkit::count_nz_flows(g, group_of(group), guard_edges);
        },
        py::arg("graph"), py::arg("group") = "Z2xZ3",
        py::arg("guard_edges") = nzflow::testkit::kDefaultGuardEdges);
}
