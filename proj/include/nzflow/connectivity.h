#ifndef NZFLOW_CONNECTIVITY_H_
#define NZFLOW_CONNECTIVITY_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nzflow/multigraph.h"

namespace nzflow {

// Connected components, orientation ignored. Each component is sorted and
// components are ordered by their smallest vertex.
std::vector<std::vector<VertexId>> components(const Multigraph& g);

// Edges whose removal increases the number of components, in id order.
// Loops and edges with a parallel sibling are never bridges.
std::vector<EdgeId> bridges(const Multigraph& g);

// Connected (a single vertex counts) and bridgeless.
bool is_2_edge_connected(const Multigraph& g);

struct BridgePartition {
  EdgeId bridge;
  std::vector<VertexId> tail_side;  // V1
  std::vector<VertexId> head_side;  // V2
};

// Looks for a bridge of G - u. Returns the one with the smallest id and a
// split of V \ {u} such that it is the only G - u edge between the sides.
// Components of G - u that do not contain the bridge join the tail side.
// Returns nullopt when G - u is bridgeless.
//
// Requires G 2-edge-connected with at least two vertices (InputError).
std::optional<BridgePartition> bridge_partition(const Multigraph& g,
                                                VertexId u);

struct PathStep {
  EdgeId edge;
  bool forward;  // traversed tail -> head
  friend bool operator==(const PathStep&, const PathStep&) = default;
};
using Path = std::vector<PathStep>;

// Two edge-disjoint simple x-x' paths, orientation ignored. Both are empty
// when x == x'. Throws StructuralError when no such pair exists.
std::pair<Path, Path> two_edge_disjoint_paths(const Multigraph& g, VertexId x,
                                              VertexId x2);

// Slot-level building blocks shared with the solver. `excluded` behaves as if
// that vertex and its edges had been deleted, without building G - u.
namespace internal {

inline constexpr std::uint32_t kNone = UINT32_MAX;

struct ComponentLabels {
  std::vector<std::uint32_t> label;  // kNone for the excluded vertex
  std::uint32_t count = 0;
};

ComponentLabels component_labels(const Multigraph& g,
                                 std::uint32_t excluded = kNone);

// One flag per edge slot. If `components` is given it receives the same
// labelling component_labels() would produce.
std::vector<std::uint8_t> bridge_flags(const Multigraph& g,
                                       std::uint32_t excluded = kNone,
                                       ComponentLabels* components = nullptr);

struct SlotStep {
  std::uint32_t slot;
  bool forward;
};

// Returns false if fewer than two edge-disjoint paths exist.
bool edge_disjoint_path_pair(const Multigraph& g, std::uint32_t x,
                             std::uint32_t x2, std::uint32_t excluded,
                             std::vector<SlotStep>& p1,
                             std::vector<SlotStep>& p2);

}  // namespace internal

}  // namespace nzflow

#endif  // NZFLOW_CONNECTIVITY_H_
