#ifndef NZFLOW_CONSTRUCT_H_
#define NZFLOW_CONSTRUCT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nzflow/errors.h"
#include "nzflow/flows.h"
#include "nzflow/multigraph.h"

namespace nzflow {

// One step of the induction, recorded in the order the steps are decided.
//
// Vertex sets are reported in the input graph's vertex ids. Every vertex of
// a recursive instance except its root is an untouched input vertex, so this
// is well defined; the root itself is a merged blob and is never listed.
struct TraceStep {
  enum class Kind { kBase, kCut, kBridgeless };

  Kind kind = Kind::kBase;
  std::uint32_t depth = 0;
  std::uint32_t vertices = 0;  // size of the instance this step handled
  std::uint32_t edges = 0;

  // kCut: the bridge e of G - u and the two sides. `tail_side`/`head_side`
  // are only filled with SolveOptions::detailed_trace; the sizes always are.
  EdgeId bridge{};
  std::vector<VertexId> tail_side;
  std::vector<VertexId> head_side;
  std::uint32_t tail_side_size = 0;
  std::uint32_t head_side_size = 0;
  std::uint32_t tail_contracted = 0;  // |E1|
  std::uint32_t head_contracted = 0;  // |E2|
  bool negated = false;  // f3 of one side was negated to agree on e

  // kBridgeless: the two root edges, the path union H and the parallel class
  // S between the root and V(H).
  EdgeId root_edge{};
  EdgeId root_edge2{};
  std::vector<EdgeId> h_edges;
  std::vector<EdgeId> s_edges;
  std::uint32_t h_vertices = 0;

  std::string describe() const;
};

struct ConstructionTrace {
  std::vector<TraceStep> steps;
  std::uint32_t max_depth = 0;
  // Internal assertions evaluated. A failing one throws DefectError, so a
  // finished solve means all of them held.
  std::uint64_t checks = 0;
};

struct SolveOptions {
  // Re-verify the working flow after every extension step, and check the
  // root-side conditions that need the whole instance graph.
  bool debug_verify = false;
  // Record the vertex sets of cut steps (quadratic in the worst case).
  bool detailed_trace = true;
};

struct Solution {
  GroupFlow flow;
  ConstructionTrace trace;
};

// Nowhere-zero Z2 x Z3 flow on a 2-edge-connected graph whose f2 part
// vanishes on every edge at `root`. Deterministic in (g, root).
//
// Throws InputError for an unknown root and StructuralError (carrying a
// bridge id when there is one) if g is not 2-edge-connected.
Solution solve(const Multigraph& g, VertexId root,
               const SolveOptions& options = {});

// Values in {1, 2} for k >= 2 parallel edges whose signed sum is `target`.
// senses[i] is +1 or -1. Starts from all ones (after orienting by sense) and
// raises the last ((target - k) mod 3) of them to two.
// Throws InputError when fewer than two edges are given.
std::vector<Z3Elem> extend_nonzero_parallel(Z3Elem target,
                                            std::span<const int> senses);

namespace internal {

struct ForestEdge {
  std::uint32_t tail;
  std::uint32_t head;
};

// Chooses values for `edges` (over vertices 0..n-1) that cancel `excess` at
// every vertex. Uses a breadth-first spanning forest grown from each
// component's smallest vertex and settles vertices leaves-first; non-tree
// edges get zero. On return `excess` holds what is left, which is zero
// everywhere iff every component had zero total excess.
template <class V>
std::vector<V> settle_over_forest(std::size_t n,
                                  std::span<const ForestEdge> edges,
                                  std::vector<V>& excess) {
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (const ForestEdge& e : edges) {
    ++offsets[e.tail + 1];
    ++offsets[e.head + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::uint32_t> adj(offsets[n]);
  {
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      adj[fill[edges[i].tail]++] = i;
      adj[fill[edges[i].head]++] = i;
    }
  }

  constexpr std::uint32_t kNo = UINT32_MAX;
  std::vector<std::uint32_t> parent_edge(n, kNo);
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    const std::size_t begin = order.size();
    order.push_back(s);
    for (std::size_t qi = begin; qi < order.size(); ++qi) {
      const std::uint32_t v = order[qi];
      for (std::uint32_t k = offsets[v]; k < offsets[v + 1]; ++k) {
        const ForestEdge& e = edges[adj[k]];
        const std::uint32_t w = e.tail == v ? e.head : e.tail;
        if (seen[w]) continue;
        seen[w] = 1;
        parent_edge[w] = adj[k];
        order.push_back(w);
      }
    }
  }

  std::vector<V> values(edges.size(), V{});
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::uint32_t v = *it;
    if (parent_edge[v] == kNo) continue;
    const ForestEdge& e = edges[parent_edge[v]];
    // Into v adds the value to v's excess, out of v subtracts it.
    const V x = e.head == v ? -excess[v] : excess[v];
    values[parent_edge[v]] = x;
    excess[e.head] += x;
    excess[e.tail] -= x;
  }
  return values;
}

}  // namespace internal

// Observation that any flow on G/S lifts to G: keeps the values `f` already
// has on E(G) \ S and assigns S so that conservation holds at every vertex
// of G. Assigned values may be zero. Throws InputError if a value outside S
// is missing or if `f` was not a flow on G/S.
template <class V>
EdgeMap<V> extend_flow_over_contraction(const Multigraph& g,
                                        std::span<const EdgeId> s,
                                        const EdgeMap<V>& f) {
  std::vector<std::uint8_t> in_s(g.edge_count(), 0);
  for (EdgeId id : s) {
    auto slot = g.slot_of(id);
    if (!slot) throw InputError("unknown edge " + std::to_string(id.index));
    in_s[*slot] = 1;
  }
  EdgeMap<V> out;
  std::vector<V> excess(g.vertex_count(), V{});
  std::vector<internal::ForestEdge> forest;
  std::vector<EdgeId> forest_ids;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge_at(i);
    if (in_s[i]) {
      forest.push_back({e.tail.index, e.head.index});
      forest_ids.push_back(e.id);
      continue;
    }
    const V x = f.at(e.id);
    out.set(e.id, x);
    excess[e.head.index] += x;
    excess[e.tail.index] -= x;
  }
  const auto values = internal::settle_over_forest<V>(g.vertex_count(), forest,
                                                      excess);
  for (const V& left : excess) {
    if (!is_zero(left)) {
      throw InputError("values outside the contracted set are not a flow on "
                       "the contracted graph");
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.set(forest_ids[i], values[i]);
  }
  return out;
}

}  // namespace nzflow

#endif  // NZFLOW_CONSTRUCT_H_
