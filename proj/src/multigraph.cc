#include "nzflow/multigraph.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "nzflow/errors.h"

namespace nzflow {

namespace {

constexpr std::uint32_t kUnassigned = UINT32_MAX;

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

Multigraph Multigraph::build(
    std::size_t n,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> arcs) {
  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    edges.push_back({EdgeId{static_cast<std::uint32_t>(i)},
                     VertexId{arcs[i].first}, VertexId{arcs[i].second}});
  }
  return Multigraph(n, std::move(edges));
}

Multigraph::Multigraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail.index >= n_ || e.head.index >= n_) {
      throw InputError("edge " + std::to_string(e.id.index) +
                       " has an endpoint outside 0.." +
                       std::to_string(n_ == 0 ? 0 : n_ - 1));
    }
    if (i > 0 && !(edges_[i - 1].id < e.id)) {
      throw InputError("edge ids must be strictly increasing");
    }
  }
  index_incidence();
}

void Multigraph::index_incidence() {
  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.tail.index + 1];
    ++offsets_[e.head.index + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  incidence_.resize(offsets_[n_]);
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    const auto slot = static_cast<std::uint32_t>(i);
    incidence_[fill[e.tail.index]++] = {slot, e.head, true};
    incidence_[fill[e.head.index]++] = {slot, e.tail, false};
  }
}

std::optional<std::size_t> Multigraph::slot_of(EdgeId e) const {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), e,
      [](const Edge& a, EdgeId id) { return a.id < id; });
  if (it == edges_.end() || it->id != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

const Edge& Multigraph::edge(EdgeId e) const {
  auto slot = slot_of(e);
  if (!slot) throw InputError("unknown edge " + std::to_string(e.index));
  return edges_[*slot];
}

void Multigraph::throw_unknown_vertex(VertexId v) {
  throw InputError("unknown vertex " + std::to_string(v.index));
}

std::vector<EdgeId> Multigraph::out_edges(VertexId v) const {
  std::vector<EdgeId> out;
  for (const Incidence& inc : incident(v)) {
    if (inc.outgoing) out.push_back(edges_[inc.slot].id);
  }
  return out;
}

std::vector<EdgeId> Multigraph::in_edges(VertexId v) const {
  std::vector<EdgeId> in;
  for (const Incidence& inc : incident(v)) {
    if (!inc.outgoing) in.push_back(edges_[inc.slot].id);
  }
  return in;
}

Contraction contract(const Multigraph& g, std::span<const EdgeId> s) {
  std::vector<std::uint8_t> in_s(g.edge_count(), 0);
  for (EdgeId id : s) {
    auto slot = g.slot_of(id);
    if (!slot) {
      throw InputError("contracted set names unknown edge " +
                       std::to_string(id.index));
    }
    in_s[*slot] = 1;
  }
  return internal::contract_slots(g, in_s);
}

namespace internal {

Contraction contract_slots(const Multigraph& g,
                           std::span<const std::uint8_t> in_s,
                           std::vector<Edge>* new_loops) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  std::size_t contracted = 0;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (!in_s[i]) continue;
    ++contracted;
    const Edge& e = g.edge_at(i);
    std::uint32_t a = find_root(parent, e.tail.index);
    std::uint32_t b = find_root(parent, e.head.index);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  Contraction out;
  out.map.vertex_image.resize(n);
  std::vector<std::uint32_t> label(n, kUnassigned);
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t r = find_root(parent, v);
    if (label[r] == kUnassigned) label[r] = next++;
    out.map.vertex_image[v] = VertexId{label[r]};
  }

  std::vector<Edge> kept;
  kept.reserve(g.edge_count() - contracted);
  out.map.contracted.reserve(contracted);
  out.map.surviving.reserve(g.edge_count() - contracted);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge_at(i);
    if (in_s[i]) {
      out.map.contracted.push_back(e.id);
    } else {
      out.map.surviving.push_back(e.id);
      const Edge img{e.id, out.map.image(e.tail), out.map.image(e.head)};
      if (new_loops && img.is_loop()) {
        new_loops->push_back(img);
      } else {
        kept.push_back(img);
      }
    }
  }
  out.graph = Multigraph(next, std::move(kept));
  return out;
}

}  // namespace internal

Multigraph reverse_edge(const Multigraph& g, EdgeId e) {
  const std::size_t slot = g.slot_of(e).value_or(g.edge_count());
  if (slot == g.edge_count()) {
    throw InputError("unknown edge " + std::to_string(e.index));
  }
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::swap(edges[slot].tail, edges[slot].head);
  return Multigraph(g.vertex_count(), std::move(edges));
}

Multigraph delete_vertex(const Multigraph& g, VertexId u) {
  if (!g.contains(u)) {
    throw InputError("unknown vertex " + std::to_string(u.index));
  }
  auto shift = [u](VertexId v) {
    return v.index > u.index ? VertexId{v.index - 1} : v;
  };
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (e.tail == u || e.head == u) continue;
    edges.push_back({e.id, shift(e.tail), shift(e.head)});
  }
  return Multigraph(g.vertex_count() - 1, std::move(edges));
}

}  // namespace nzflow
