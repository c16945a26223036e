#ifndef NZFLOW_TESTKIT_H_
#define NZFLOW_TESTKIT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nzflow/flows.h"
#include "nzflow/multigraph.h"

namespace nzflow::testkit {

enum class FlowGroup { kZ2xZ3, kZ6, kZ3, kZ2 };

std::string group_name(FlowGroup group);

// Brute-force routines refuse graphs with more edges than this.
inline constexpr std::size_t kDefaultGuardEdges = 10;

// Every nowhere-zero flow, in lexicographic order of (edge id, value), with
// values ordered as listed by nonzero_elements(). Backtracking with a
// conservation test at each vertex as soon as its last edge is set.
// Throws GuardError above `guard_edges` edges.
template <class V>
std::vector<EdgeMap<V>> enumerate_nz_flows(
    const Multigraph& g, std::size_t guard_edges = kDefaultGuardEdges);

extern template std::vector<GroupFlow> enumerate_nz_flows<PairElem>(
    const Multigraph&, std::size_t);
extern template std::vector<Z6Flow> enumerate_nz_flows<Z6Elem>(
    const Multigraph&, std::size_t);
extern template std::vector<Z3Flow> enumerate_nz_flows<Z3Elem>(
    const Multigraph&, std::size_t);
extern template std::vector<Z2Flow> enumerate_nz_flows<Z2Elem>(
    const Multigraph&, std::size_t);

std::size_t count_nz_flows(const Multigraph& g, FlowGroup group,
                           std::size_t guard_edges = kDefaultGuardEdges);

struct RootCheck {
  VertexId root;
  std::size_t valid_flows = 0;  // enumerated flows with f2 = 0 at the root
  bool solver_output_valid = false;
};

struct ExhaustiveReport {
  std::size_t nz_flows = 0;  // nowhere-zero Z2 x Z3 flows, all roots
  std::vector<RootCheck> roots;

  bool holds() const;
};

// For every root: some enumerated flow has f2 = 0 at the root, and the
// solver's output is one of those flows. Requires a 2-edge-connected graph.
ExhaustiveReport check_theorem2_exhaustive(
    const Multigraph& g, std::size_t guard_edges = kDefaultGuardEdges);

// All labeled 2-edge-connected multigraphs on 1..n_max vertices with at most
// m_max edges. Loops and parallel edges included, each edge oriented from its
// smaller to its larger end, edges listed in sorted endpoint order. Ordered by
// vertex count, then edge count, then lexicographically.
// Throws GuardError for n_max > 4 or m_max > 7.
void for_each_small_2ec_multigraph(
    std::size_t n_max, std::size_t m_max,
    const std::function<void(const Multigraph&)>& visit);
std::vector<Multigraph> enumerate_small_2ec_multigraphs(std::size_t n_max,
                                                        std::size_t m_max);

// Random 2-edge-connected multigraph grown by ears.
//
// The recurrence is std::mt19937_64 seeded with `seed`, and a draw from
// [0, k) is `next() % k`. Starting from a cycle on 2..min(n, 8) vertices,
// ears of 1..6 new vertices are attached between two random existing
// vertices (possibly the same one) until there are n vertices. Then
// `extra_ears` ears without inner vertices are added, each a single edge
// that may be a loop or parallel to an existing one. Every edge gets a random
// orientation; finally vertex labels and edge order are shuffled.
//
// `observe`, if set, sees the graph after the start cycle and after each ear.
Multigraph random_2ec_multigraph(
    std::size_t n, std::size_t extra_ears, std::uint64_t seed,
    const std::function<void(const Multigraph&)>& observe = {});

}  // namespace nzflow::testkit

#endif  // NZFLOW_TESTKIT_H_
