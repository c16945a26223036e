#include "nzflow/flows.h"

#include <cstdlib>

namespace nzflow {

std::string Violation::describe() const {
  std::string where;
  if (vertex) where += " at vertex " + std::to_string(vertex->index);
  if (edge) where += " on edge " + std::to_string(edge->index);
  switch (kind) {
    case Kind::kMissingValue:
      return "missing value" + where;
    case Kind::kExtraValue:
      return "value for an edge not in the graph" + where;
    case Kind::kConservation:
      return "conservation fails" + where;
    case Kind::kZeroValue:
      return "zero value" + where;
    case Kind::kOutOfRange:
      return "value out of range" + where;
    case Kind::kRootSupport:
      return "nonzero f2 next to the root" + where;
  }
  return "violation" + where;
}

std::optional<Violation> check_theorem2(const Multigraph& g, VertexId root,
                                        const GroupFlow& f) {
  if (!g.contains(root)) {
    throw InputError("unknown root vertex " + std::to_string(root.index));
  }
  if (auto bad = check_nowhere_zero(g, f)) return bad;
  for (const Incidence& inc : g.incident(root)) {
    const EdgeId id = g.edge_at(inc.slot).id;
    if (!f.at(id).f2.is_zero()) {
      return Violation{Violation::Kind::kRootSupport, root, id};
    }
  }
  return std::nullopt;
}

bool verify_theorem2(const Multigraph& g, VertexId root, const GroupFlow& f) {
  return !check_theorem2(g, root, f);
}

std::optional<Violation> check_k_flow(const Multigraph& g,
                                      const IntegerFlow& f, int k) {
  if (auto bad = check_flow(g, f)) return bad;
  for (const Edge& e : g.edges()) {
    const int v = f.at(e.id);
    if (v == 0) return Violation{Violation::Kind::kZeroValue, std::nullopt, e.id};
    if (std::abs(v) > k - 1) {
      return Violation{Violation::Kind::kOutOfRange, std::nullopt, e.id};
    }
  }
  return std::nullopt;
}

bool verify_k_flow(const Multigraph& g, const IntegerFlow& f, int k) {
  return !check_k_flow(g, f, k);
}

std::vector<EdgeId> support(const GroupFlow& f, Component c) {
  std::vector<EdgeId> out;
  for (EdgeId id : f.keys()) {
    const PairElem& p = f.at(id);
    const bool nonzero = c == Component::kF2   ? !p.f2.is_zero()
                         : c == Component::kF3 ? !p.f3.is_zero()
                                               : !p.is_zero();
    if (nonzero) out.push_back(id);
  }
  return out;
}

GroupFlow negate_f3(const GroupFlow& f) {
  GroupFlow out;
  for (EdgeId id : f.keys()) {
    const PairElem& p = f.at(id);
    out.set(id, {p.f2, -p.f3});
  }
  return out;
}

}  // namespace nzflow
