#include "nzflow/connectivity.h"

#include <algorithm>
#include <string>

#include "nzflow/errors.h"

namespace nzflow {

namespace internal {

ComponentLabels component_labels(const Multigraph& g, std::uint32_t excluded) {
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  ComponentLabels out;
  out.label.assign(n, kNone);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (s == excluded || out.label[s] != kNone) continue;
    const std::uint32_t c = out.count++;
    out.label[s] = c;
    queue.clear();
    queue.push_back(s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (const Incidence& inc : g.incident(VertexId{queue[qi]})) {
        const std::uint32_t w = inc.other.index;
        if (w == excluded || out.label[w] != kNone) continue;
        out.label[w] = c;
        queue.push_back(w);
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> bridge_flags(const Multigraph& g,
                                       std::uint32_t excluded,
                                       ComponentLabels* components) {
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  std::vector<std::uint8_t> is_bridge(g.edge_count(), 0);
  std::vector<std::uint32_t> disc(n, kNone);
  std::vector<std::uint32_t> low(n, 0);

  struct Frame {
    std::uint32_t vertex;
    std::uint32_t parent_slot;
    std::uint32_t next;  // position within the incidence list
  };
  std::vector<Frame> stack;
  stack.reserve(n);
  std::uint32_t clock = 0;
  std::uint32_t trees = 0;
  if (components) components->label.assign(n, kNone);

  for (std::uint32_t root = 0; root < n; ++root) {
    if (root == excluded || disc[root] != kNone) continue;
    disc[root] = low[root] = clock++;
    if (components) components->label[root] = trees;
    ++trees;
    stack.push_back({root, kNone, 0});
    while (!stack.empty()) {
      Frame& top = stack.back();
      auto inc = g.incident(VertexId{top.vertex});
      if (top.next < inc.size()) {
        const Incidence& step = inc[top.next++];
        const std::uint32_t w = step.other.index;
        if (w == excluded || w == top.vertex || step.slot == top.parent_slot) {
          continue;
        }
        if (disc[w] == kNone) {
          disc[w] = low[w] = clock++;
          if (components) components->label[w] = trees - 1;
          stack.push_back({w, step.slot, 0});
        } else {
          low[top.vertex] = std::min(low[top.vertex], disc[w]);
        }
        continue;
      }
      const Frame done = top;
      stack.pop_back();
      if (!stack.empty()) {
        const std::uint32_t p = stack.back().vertex;
        low[p] = std::min(low[p], low[done.vertex]);
        if (low[done.vertex] > disc[p]) is_bridge[done.parent_slot] = 1;
      }
    }
  }
  if (components) components->count = trees;
  return is_bridge;
}

namespace {

// Flow direction per slot for the unit-capacity search.
constexpr std::int8_t kFree = 0;
constexpr std::int8_t kAlong = 1;
constexpr std::int8_t kAgainst = -1;

std::int8_t direction_from(const Edge& e, std::uint32_t from) {
  return e.tail.index == from ? kAlong : kAgainst;
}

bool augment(const Multigraph& g, std::uint32_t x, std::uint32_t x2,
             std::uint32_t excluded, std::vector<std::int8_t>& flow) {
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  std::vector<std::uint32_t> via(n, kNone);
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::uint32_t> queue{x};
  seen[x] = 1;
  for (std::size_t qi = 0; qi < queue.size() && !seen[x2]; ++qi) {
    const std::uint32_t a = queue[qi];
    for (const Incidence& inc : g.incident(VertexId{a})) {
      const std::uint32_t b = inc.other.index;
      if (b == a || b == excluded || seen[b]) continue;
      const std::int8_t dir = direction_from(g.edge_at(inc.slot), a);
      // Unused edges go either way; used ones only back against their flow.
      if (flow[inc.slot] != kFree && flow[inc.slot] != -dir) continue;
      seen[b] = 1;
      via[b] = inc.slot;
      queue.push_back(b);
      if (b == x2) break;
    }
  }
  if (!seen[x2]) return false;
  for (std::uint32_t b = x2; b != x;) {
    const std::uint32_t slot = via[b];
    const Edge& e = g.edge_at(slot);
    const std::uint32_t a = e.tail.index == b ? e.head.index : e.tail.index;
    flow[slot] = flow[slot] == kFree ? direction_from(e, a) : kFree;
    b = a;
  }
  return true;
}

// Pulls one simple x-x' path out of the flow support, discarding any cycles
// met on the way. Used slots are cleared from `flow`.
bool extract_path(const Multigraph& g, std::uint32_t x, std::uint32_t x2,
                  std::vector<std::int8_t>& flow,
                  std::vector<std::uint32_t>& cursor,
                  std::vector<std::uint32_t>& position,
                  std::vector<SlotStep>& path) {
  std::vector<std::uint32_t> vertices{x};
  path.clear();
  position[x] = 0;
  std::uint32_t cur = x;
  while (cur != x2) {
    auto inc = g.incident(VertexId{cur});
    std::uint32_t next = kNone;
    bool forward = true;
    while (cursor[cur] < inc.size()) {
      const Incidence& step = inc[cursor[cur]++];
      const Edge& e = g.edge_at(step.slot);
      if (e.is_loop() || flow[step.slot] == kFree) continue;
      if (flow[step.slot] != direction_from(e, cur)) continue;
      flow[step.slot] = kFree;
      next = step.other.index;
      forward = step.outgoing;
      path.push_back({step.slot, forward});
      break;
    }
    if (next == kNone) {
      for (std::uint32_t v : vertices) position[v] = kNone;
      return false;
    }
    if (position[next] != kNone) {
      // Closed a cycle: drop it.
      const std::uint32_t keep = position[next];
      while (vertices.size() > keep + 1) {
        position[vertices.back()] = kNone;
        vertices.pop_back();
        path.pop_back();
      }
      path.pop_back();
    } else {
      position[next] = static_cast<std::uint32_t>(vertices.size());
      vertices.push_back(next);
    }
    cur = next;
  }
  for (std::uint32_t v : vertices) position[v] = kNone;
  return true;
}

}  // namespace

bool edge_disjoint_path_pair(const Multigraph& g, std::uint32_t x,
                             std::uint32_t x2, std::uint32_t excluded,
                             std::vector<SlotStep>& p1,
                             std::vector<SlotStep>& p2) {
  p1.clear();
  p2.clear();
  if (x == x2) return true;
  std::vector<std::int8_t> flow(g.edge_count(), kFree);
  if (!augment(g, x, x2, excluded, flow) || !augment(g, x, x2, excluded, flow)) {
    return false;
  }
  const auto n = g.vertex_count();
  std::vector<std::uint32_t> cursor(n, 0);
  std::vector<std::uint32_t> position(n, kNone);
  if (!extract_path(g, x, x2, flow, cursor, position, p1) ||
      !extract_path(g, x, x2, flow, cursor, position, p2)) {
    throw DefectError("flow of value two did not decompose into two paths");
  }
  return true;
}

}  // namespace internal

std::vector<std::vector<VertexId>> components(const Multigraph& g) {
  const auto labels = internal::component_labels(g);
  std::vector<std::vector<VertexId>> out(labels.count);
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    out[labels.label[v]].push_back(VertexId{v});
  }
  return out;
}

std::vector<EdgeId> bridges(const Multigraph& g) {
  const auto flags = internal::bridge_flags(g);
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) out.push_back(g.edge_at(i).id);
  }
  return out;
}

bool is_2_edge_connected(const Multigraph& g) {
  if (g.vertex_count() == 0) return false;
  internal::ComponentLabels labels;
  const auto flags = internal::bridge_flags(g, internal::kNone, &labels);
  if (labels.count != 1) return false;
  return std::none_of(flags.begin(), flags.end(),
                      [](std::uint8_t f) { return f != 0; });
}

std::optional<BridgePartition> bridge_partition(const Multigraph& g,
                                                VertexId u) {
  if (!g.contains(u)) {
    throw InputError("unknown vertex " + std::to_string(u.index));
  }
  if (g.vertex_count() < 2 || !is_2_edge_connected(g)) {
    throw InputError(
        "bridge_partition needs a 2-edge-connected graph on at least two "
        "vertices");
  }
  const auto flags = internal::bridge_flags(g, u.index);
  auto first = std::find(flags.begin(), flags.end(), std::uint8_t{1});
  if (first == flags.end()) return std::nullopt;
  const auto slot = static_cast<std::uint32_t>(first - flags.begin());
  const Edge& e = g.edge_at(slot);

  // Head side: what the head still reaches in G - u - e.
  std::vector<std::uint8_t> on_head_side(g.vertex_count(), 0);
  std::vector<std::uint32_t> queue{e.head.index};
  on_head_side[e.head.index] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const Incidence& inc : g.incident(VertexId{queue[qi]})) {
      const std::uint32_t w = inc.other.index;
      if (inc.slot == slot || w == u.index || on_head_side[w]) continue;
      on_head_side[w] = 1;
      queue.push_back(w);
    }
  }
  BridgePartition out{e.id, {}, {}};
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (v == u.index) continue;
    (on_head_side[v] ? out.head_side : out.tail_side).push_back(VertexId{v});
  }
  return out;
}

std::pair<Path, Path> two_edge_disjoint_paths(const Multigraph& g, VertexId x,
                                              VertexId x2) {
  if (!g.contains(x) || !g.contains(x2)) {
    throw InputError("path endpoint is not a vertex of the graph");
  }
  std::vector<internal::SlotStep> p1;
  std::vector<internal::SlotStep> p2;
  if (!internal::edge_disjoint_path_pair(g, x.index, x2.index, internal::kNone,
                                         p1, p2)) {
    throw StructuralError("vertices " + std::to_string(x.index) + " and " +
                          std::to_string(x2.index) +
                          " are not joined by two edge-disjoint paths");
  }
  auto to_path = [&g](const std::vector<internal::SlotStep>& steps) {
    Path p;
    p.reserve(steps.size());
    for (const auto& s : steps) p.push_back({g.edge_at(s.slot).id, s.forward});
    return p;
  };
  return {to_path(p1), to_path(p2)};
}

}  // namespace nzflow
