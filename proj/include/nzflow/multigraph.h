#ifndef NZFLOW_MULTIGRAPH_H_
#define NZFLOW_MULTIGRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace nzflow {

struct VertexId {
  std::uint32_t index = 0;
  friend auto operator<=>(VertexId, VertexId) = default;
};

// Edge identity is assigned once and survives contraction, so a value
// attached to an EdgeId means the same edge in G and in every G/S.
struct EdgeId {
  std::uint32_t index = 0;
  friend auto operator<=>(EdgeId, EdgeId) = default;
};

struct Edge {
  EdgeId id;
  VertexId tail;
  VertexId head;

  bool is_loop() const { return tail == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// One entry of a vertex's incidence list. `slot` is the edge's position in
// Multigraph::edges(). A loop contributes two entries, one per direction.
struct Incidence {
  std::uint32_t slot;
  VertexId other;
  bool outgoing;
};

// Directed multigraph with loops and parallel edges. Immutable once built;
// every "mutation" below returns a new graph.
//
// Edge ids need not be dense (a contracted graph keeps a subset of its
// parent's ids) but edges are always stored in increasing id order, and each
// incidence list is ordered by edge id as well.
class Multigraph {
 public:
  Multigraph() = default;

  // Edges get ids 0..m-1 in input order. Throws InputError on a bad endpoint.
  static Multigraph build(
      std::size_t n,
      std::span<const std::pair<std::uint32_t, std::uint32_t>> arcs);

  // Takes explicit edge records; ids must be strictly increasing.
  Multigraph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge_at(std::size_t slot) const { return edges_[slot]; }

  bool contains(EdgeId e) const { return slot_of(e).has_value(); }
  std::optional<std::size_t> slot_of(EdgeId e) const;
  // Throws InputError for an unknown id.
  const Edge& edge(EdgeId e) const;

  bool contains(VertexId v) const { return v.index < n_; }

  // δ(v). Throws InputError for an unknown vertex.
  std::span<const Incidence> incident(VertexId v) const {
    if (!contains(v)) throw_unknown_vertex(v);
    return std::span<const Incidence>(incidence_.data() + offsets_[v.index],
                                      offsets_[v.index + 1] - offsets_[v.index]);
  }
  // δ+(v) and δ−(v). A loop at v is in both.
  std::vector<EdgeId> out_edges(VertexId v) const;
  std::vector<EdgeId> in_edges(VertexId v) const;

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void index_incidence();
  [[noreturn]] static void throw_unknown_vertex(VertexId v);

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  // CSR layout: incidence of v is incidence_[offsets_[v] .. offsets_[v+1]).
  std::vector<std::uint32_t> offsets_;
  std::vector<Incidence> incidence_;
};

struct ContractionMap {
  // V(G) -> V(G/S).
  std::vector<VertexId> vertex_image;
  std::vector<EdgeId> contracted;
  std::vector<EdgeId> surviving;

  VertexId image(VertexId v) const { return vertex_image[v.index]; }
};

struct Contraction {
  Multigraph graph;
  ContractionMap map;
};

// G/S. One vertex per component of the spanning subgraph (V, S), numbered in
// order of each component's smallest vertex. Surviving edges keep their id
// and orientation; those whose ends merge become loops and are kept.
// Throws InputError if S names an edge not in G.
Contraction contract(const Multigraph& g, std::span<const EdgeId> s);

namespace internal {
// contract() with S given as one flag per edge slot. If `new_loops` is given,
// edges that become loops go there instead of into the contracted graph.
Contraction contract_slots(const Multigraph& g,
                           std::span<const std::uint8_t> in_s,
                           std::vector<Edge>* new_loops = nullptr);
}  // namespace internal

// Swaps tail and head of `e`.
Multigraph reverse_edge(const Multigraph& g, EdgeId e);

// G - u. Vertices above u shift down by one; edge ids are preserved.
Multigraph delete_vertex(const Multigraph& g, VertexId u);

}  // namespace nzflow

#endif  // NZFLOW_MULTIGRAPH_H_
