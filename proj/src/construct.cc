#include "nzflow/construct.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <variant>

#include "nzflow/connectivity.h"

namespace nzflow {

namespace {

// The solver never materializes a recursive instance. Every non-root vertex
// of an instance is an input vertex, so an instance is described by which
// input vertices it still owns (its region); everything else is its root.
// The instance's edges are the input edges touching the region plus the
// loops collected at the root.
//
// The region is kept split into the components of G - u, each carrying its
// root edges and its bridges in lazy min-heaps. Bridges of G - u survive
// both cut children unchanged, so a cut only has to explore its smaller
// side; a bridgeless step rescans the one component it shrinks.

constexpr std::uint32_t kNo = UINT32_MAX;
constexpr PairElem kBaseValue{Z2Elem(0), Z3Elem(1)};

using SlotHeap = std::vector<std::uint32_t>;
using KeyHeap = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

template <class H, class T>
void heap_push(H& h, T x) {
  h.push_back(x);
  std::push_heap(h.begin(), h.end(), std::greater<>{});
}

template <class H>
void heap_pop(H& h) {
  std::pop_heap(h.begin(), h.end(), std::greater<>{});
  h.pop_back();
}

template <class H>
void make_min_heap(H& h) {
  std::make_heap(h.begin(), h.end(), std::greater<>{});
}

struct Component {
  std::uint32_t owner = kNo;
  bool alive = true;
  std::uint32_t vertices = 0;
  std::uint32_t edges = 0;  // edges with an end in the component
  SlotHeap root_edges;
  SlotHeap bridges;
};

struct InstanceState {
  std::uint32_t region = 0;  // |V| - 1
  std::uint32_t edges = 0;
  std::uint32_t depth = 0;
  std::vector<std::uint32_t> root_loops;
  // (smallest slot, component), validated on inspection.
  KeyHeap by_root_edge;
  KeyHeap by_bridge;
};

// Debug-only copy of an instance as a graph of its own.
struct Snapshot {
  Multigraph graph;
  std::uint32_t root = 0;
  std::vector<std::uint32_t> local;  // input vertex -> vertex of `graph`
};

struct SolveTask {
  std::uint32_t inst;
  std::uint32_t parent_vertices;  // 0 at the top
};

struct CutSnapshot {
  std::size_t join;
  std::uint32_t bridge;
};

struct CutJoin {
  std::uint32_t bridge;
  Z3Elem first_f3;
  // Assignments made while solving the first side.
  std::size_t log_begin;
  std::size_t log_end = 0;
  std::size_t trace_index;
  Snapshot before;  // debug only
};

// A root-side edge of S, with sense +1 when it runs root -> H.
struct SEdge {
  std::uint32_t slot;
  int sense;
  std::uint32_t at;  // local H vertex
};

// An edge at a vertex of H that is in neither E(H) nor S. Contributes
// sign * value to the excess of local H vertex `at`.
struct Boundary {
  std::uint32_t slot;
  std::uint32_t at;
  int sign;
};

struct BridgelessFinish {
  std::vector<SEdge> s;
  std::vector<std::uint32_t> h_slots;
  std::vector<internal::ForestEdge> h_edges;  // over local H vertices
  std::uint32_t h_vertex_count;
  std::vector<Boundary> boundary;
  // Debug only.
  Snapshot before;
  Multigraph g1;
  std::uint32_t root_in_g1 = 0;
  std::uint32_t u1 = 0;
};

using WorkItem = std::variant<SolveTask, CutSnapshot, CutJoin, BridgelessFinish>;

std::int8_t direction_from(const Edge& e, std::uint32_t from) {
  return e.tail.index == from ? 1 : -1;
}

class Solver {
 public:
  Solver(const Multigraph& g, const SolveOptions& options)
      : g_(g), options_(options) {
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    comp_.assign(n, kNo);
    disc_.assign(n, 0);
    low_.assign(n, 0);
    mark_.assign(n, 0);
    via_.assign(n, kNo);
    cursor_.assign(n, 0);
    position_.assign(n, kNo);
    h_local_.assign(n, kNo);
    bridge_.assign(m, 0);
    flow_.assign(m, 0);
    in_h_.assign(m, 0);
    value_.assign(m, PairElem{});
    assigned_.assign(m, 0);
    last_write_.assign(m, 0);
  }

  Solution run(VertexId root) {
    const auto n = static_cast<std::uint32_t>(g_.vertex_count());
    const std::uint32_t top = new_instance();
    insts_[top].region = n - 1;
    insts_[top].edges = static_cast<std::uint32_t>(g_.edge_count());
    for (const Incidence& inc : g_.incident(root)) {
      if (inc.other == root && inc.outgoing) {
        insts_[top].root_loops.push_back(inc.slot);
      }
    }
    if (n > 1) {
      const std::uint32_t pending = new_component(top);
      std::vector<std::uint32_t> starts;
      starts.reserve(n - 1);
      for (std::uint32_t v = 0; v < n; ++v) {
        if (v == root.index) continue;
        comp_[v] = pending;
        starts.push_back(v);
      }
      rescan(top, pending, starts);
    }
    stack_.emplace_back(SolveTask{top, 0});

    while (!stack_.empty()) {
      WorkItem item = std::move(stack_.back());
      stack_.pop_back();
      std::visit([this](auto& w) { handle(w); }, item);
    }

    Solution out;
    for (std::size_t i = 0; i < g_.edge_count(); ++i) {
      check(assigned_[i] != 0, "edge left without a value");
      out.flow.set(g_.edge_at(i).id, value_[i]);
    }
    out.trace = std::move(trace_);
    return out;
  }

 private:
  void check(bool ok, const char* what) {
    ++trace_.checks;
    if (!ok) throw DefectError(std::string("construction invariant: ") + what);
  }

  void assign(std::uint32_t slot, PairElem v) {
    value_[slot] = v;
    assigned_[slot] = 1;
    last_write_[slot] = log_.size();
    log_.push_back(slot);
  }

  std::uint32_t new_instance() {
    insts_.emplace_back();
    return static_cast<std::uint32_t>(insts_.size() - 1);
  }

  std::uint32_t new_component(std::uint32_t owner) {
    comps_.emplace_back();
    comps_.back().owner = owner;
    return static_cast<std::uint32_t>(comps_.size() - 1);
  }

  void retire_component(std::uint32_t c) {
    Component& k = comps_[c];
    k.alive = false;
    SlotHeap().swap(k.root_edges);
    SlotHeap().swap(k.bridges);
  }

  std::uint32_t owner_of(std::uint32_t v) const {
    return comp_[v] == kNo ? kNo : comps_[comp_[v]].owner;
  }

  // Endpoint of a root edge of component c that lies in c.
  std::uint32_t inner_end(std::uint32_t slot, std::uint32_t c) const {
    const Edge& e = g_.edge_at(slot);
    return comp_[e.tail.index] == c ? e.tail.index : e.head.index;
  }

  std::uint32_t min_root_edge(std::uint32_t c) {
    SlotHeap& h = comps_[c].root_edges;
    while (!h.empty()) {
      const Edge& e = g_.edge_at(h.front());
      if ((comp_[e.tail.index] == c) != (comp_[e.head.index] == c)) {
        return h.front();
      }
      heap_pop(h);
    }
    return kNo;
  }

  std::uint32_t min_bridge(std::uint32_t c) {
    SlotHeap& h = comps_[c].bridges;
    while (!h.empty()) {
      const std::uint32_t s = h.front();
      const Edge& e = g_.edge_at(s);
      if (bridge_[s] && comp_[e.tail.index] == c && comp_[e.head.index] == c) {
        return s;
      }
      heap_pop(h);
    }
    return kNo;
  }

  void announce(std::uint32_t inst, std::uint32_t c) {
    if (const std::uint32_t r = min_root_edge(c); r != kNo) {
      heap_push(insts_[inst].by_root_edge, std::pair{r, c});
    }
    if (const std::uint32_t b = min_bridge(c); b != kNo) {
      heap_push(insts_[inst].by_bridge, std::pair{b, c});
    }
  }

  // Smallest slot over the instance's components, per `per_component`.
  template <class F>
  std::uint32_t instance_min(std::uint32_t inst, KeyHeap InstanceState::*heap,
                             F per_component) {
    while (true) {
      KeyHeap& h = insts_[inst].*heap;
      if (h.empty()) return kNo;
      const auto [key, c] = h.front();
      if (!comps_[c].alive || comps_[c].owner != inst) {
        heap_pop(h);
        continue;
      }
      const std::uint32_t current = (this->*per_component)(c);
      if (current == key) return key;
      heap_pop(h);
      if (current != kNo) heap_push(h, std::pair{current, c});
    }
  }

  // Recomputes counts and heaps of component c from its vertex list.
  void fill_component(std::uint32_t c, std::span<const std::uint32_t> vertices) {
    Component& k = comps_[c];
    k.vertices = static_cast<std::uint32_t>(vertices.size());
    k.edges = 0;
    k.root_edges.clear();
    k.bridges.clear();
    for (std::uint32_t v : vertices) {
      for (const Incidence& inc : g_.incident(VertexId{v})) {
        const std::uint32_t w = inc.other.index;
        if (w == v) {
          if (inc.outgoing) ++k.edges;
        } else if (comp_[w] != c) {
          ++k.edges;
          k.root_edges.push_back(inc.slot);
        } else if (inc.outgoing) {
          ++k.edges;
          if (bridge_[inc.slot]) k.bridges.push_back(inc.slot);
        }
      }
    }
    make_min_heap(k.root_edges);
    make_min_heap(k.bridges);
  }

  // Splits the vertices still labelled `pending` and reachable from `starts`
  // into fresh components of G - u owned by `inst`, recomputing bridge flags,
  // counts and heaps on the way. Retires `pending`.
  void rescan(std::uint32_t inst, std::uint32_t pending,
              std::span<const std::uint32_t> starts) {
    using Frame = DfsFrame;
    std::vector<Frame>& stack = dfs_stack_;
    std::uint32_t* const comp = comp_.data();
    std::uint32_t* const disc = disc_.data();
    std::uint32_t* const low = low_.data();
    std::uint8_t* const bridge = bridge_.data();
    std::uint32_t clock = 0;
    std::vector<std::uint32_t> found;
    auto frame_of = [this](std::uint32_t v, std::uint32_t parent_slot) {
      auto inc = g_.incident(VertexId{v});
      return Frame{inc.data(), inc.data() + inc.size(), v, parent_slot};
    };
    for (std::uint32_t s : starts) {
      if (comp[s] != pending) continue;
      const std::uint32_t c = new_component(inst);
      found.push_back(c);
      Component& k = comps_[c];
      std::uint32_t edges = 0;
      std::uint32_t vertices = 1;
      comp[s] = c;
      disc[s] = low[s] = clock++;
      stack.push_back(frame_of(s, kNo));
      while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next != top.end) {
          const Incidence& step = *top.next++;
          const std::uint32_t w = step.other.index;
          if (w == top.vertex) {
            edges += step.outgoing;
            continue;
          }
          const std::uint32_t cw = comp[w];
          if (cw != pending && cw != c) {
            ++edges;
            k.root_edges.push_back(step.slot);
            continue;
          }
          edges += step.outgoing;
          if (step.slot == top.parent_slot) continue;
          if (cw == pending) {
            comp[w] = c;
            disc[w] = low[w] = clock++;
            ++vertices;
            stack.push_back(frame_of(w, step.slot));
          } else {
            bridge[step.slot] = 0;
            low[top.vertex] = std::min(low[top.vertex], disc[w]);
          }
          continue;
        }
        const std::uint32_t v = top.vertex;
        const std::uint32_t via = top.parent_slot;
        stack.pop_back();
        if (!stack.empty()) {
          const std::uint32_t p = stack.back().vertex;
          low[p] = std::min(low[p], low[v]);
          const bool is_bridge = low[v] > disc[p];
          bridge[via] = is_bridge ? 1 : 0;
          if (is_bridge) k.bridges.push_back(via);
        }
      }
      k.edges = edges;
      k.vertices = vertices;
      make_min_heap(k.root_edges);
      make_min_heap(k.bridges);
    }
    retire_component(pending);
    for (std::uint32_t c : found) announce(inst, c);
  }

  Snapshot snapshot(std::uint32_t inst) const {
    Snapshot out;
    const auto n = static_cast<std::uint32_t>(g_.vertex_count());
    out.local.assign(n, kNo);
    std::uint32_t next = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (owner_of(v) == inst) out.local[v] = next++;
    }
    out.root = next;
    auto at = [&](VertexId v) {
      return VertexId{out.local[v.index] == kNo ? out.root : out.local[v.index]};
    };
    std::vector<std::uint8_t> take(g_.edge_count(), 0);
    for (std::uint32_t s : insts_[inst].root_loops) take[s] = 1;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < g_.edge_count(); ++i) {
      const Edge& e = g_.edge_at(i);
      if (take[i] || owner_of(e.tail.index) == inst ||
          owner_of(e.head.index) == inst) {
        edges.push_back({e.id, at(e.tail), at(e.head)});
      }
    }
    out.graph = Multigraph(next + 1, std::move(edges));
    return out;
  }

  GroupFlow flow_on(const Multigraph& h) const {
    GroupFlow f;
    for (const Edge& e : h.edges()) {
      const std::size_t slot = *g_.slot_of(e.id);
      if (assigned_[slot]) f.set(e.id, value_[slot]);
    }
    return f;
  }

  void handle(SolveTask& task) {
    const std::uint32_t inst = task.inst;
    trace_.max_depth = std::max(trace_.max_depth, insts_[inst].depth);
    if (task.parent_vertices != 0) {
      check(insts_[inst].region + 1 < task.parent_vertices,
            "vertex count did not decrease");
      if (options_.debug_verify) {
        check(is_2_edge_connected(snapshot(inst).graph),
              "recursed instance not 2-edge-connected");
      }
    }

    if (insts_[inst].region == 0) {
      InstanceState& st = insts_[inst];
      check(st.edges == st.root_loops.size(), "edge count drifted");
      TraceStep step;
      step.kind = TraceStep::Kind::kBase;
      step.depth = st.depth;
      step.vertices = 1;
      step.edges = st.edges;
      trace_.steps.push_back(std::move(step));
      for (std::uint32_t s : st.root_loops) assign(s, kBaseValue);
      st = InstanceState{};
      return;
    }

    const std::uint32_t bridge =
        instance_min(inst, &InstanceState::by_bridge, &Solver::min_bridge);
    if (bridge != kNo) {
      split_at_bridge(inst, bridge);
    } else {
      reduce_bridgeless(inst);
    }
  }

  // Breadth-first search over one side of a bridge, advanced one incidence
  // at a time so both sides can be grown in lockstep.
  struct Side {
    std::vector<std::uint32_t> queue;
    std::size_t qi = 0;
    std::size_t pos = 0;
    std::uint32_t edges = 0;  // edges with an end on this side, bridge excluded
    std::uint32_t mark = 0;
  };

  // Returns true once the side is fully explored.
  bool advance(Side& side, std::uint32_t other_mark, std::uint32_t c,
               std::uint32_t bridge) {
    if (side.qi == side.queue.size()) return true;
    const std::uint32_t v = side.queue[side.qi];
    auto inc = g_.incident(VertexId{v});
    if (side.pos == inc.size()) {
      ++side.qi;
      side.pos = 0;
      return side.qi == side.queue.size();
    }
    const Incidence& step = inc[side.pos++];
    if (step.slot == bridge) return false;
    const std::uint32_t w = step.other.index;
    if (w == v) {
      if (step.outgoing) ++side.edges;
    } else if (comp_[w] != c) {
      ++side.edges;
    } else {
      if (step.outgoing) ++side.edges;
      if (mark_[w] == other_mark) {
        check(false, "second edge across the bridge cut");
      }
      if (mark_[w] != side.mark) {
        mark_[w] = side.mark;
        side.queue.push_back(w);
      }
    }
    return false;
  }

  void split_at_bridge(std::uint32_t inst, std::uint32_t bridge_slot) {
    const Edge& e = g_.edge_at(bridge_slot);
    const std::uint32_t c = comp_[e.tail.index];
    check(comp_[e.head.index] == c, "bridge leaves its component");

    // V2 is the head's side of G - u - e. V1 is the tail's side together with
    // every other component of G - u.
    stamp_ += 2;
    Side head;
    Side tail;
    head.mark = stamp_;
    tail.mark = stamp_ + 1;
    head.queue.push_back(e.head.index);
    tail.queue.push_back(e.tail.index);
    mark_[e.head.index] = head.mark;
    mark_[e.tail.index] = tail.mark;
    bool head_done = false;
    while (true) {
      if (advance(head, tail.mark, c, bridge_slot)) {
        head_done = true;
        break;
      }
      if (advance(tail, head.mark, c, bridge_slot)) break;
    }
    Side& done = head_done ? head : tail;

    InstanceState& st = insts_[inst];
    const std::uint32_t n = st.region + 1;
    const std::uint32_t m = st.edges;
    const std::uint32_t c_vertices = comps_[c].vertices;
    const std::uint32_t c_edges = comps_[c].edges;
    const auto done_vertices = static_cast<std::uint32_t>(done.queue.size());
    const std::uint32_t head_count =
        head_done ? done_vertices : c_vertices - done_vertices;
    const std::uint32_t e2 = head_done ? done.edges : c_edges - 1 - done.edges;
    const std::uint32_t tail_count = st.region - head_count;
    const std::uint32_t e1 = m - 1 - e2;

    std::optional<Snapshot> before;
    if (options_.debug_verify) before = snapshot(inst);

    // The head side becomes a new instance; the tail side stays in `inst`.
    const std::uint32_t child = new_instance();
    const std::uint32_t split = new_component(head_done ? child : inst);
    for (std::uint32_t v : done.queue) comp_[v] = split;
    fill_component(split, done.queue);
    check(comps_[split].edges == done.edges + 1, "side edge count drifted");
    comps_[c].vertices -= done_vertices;
    comps_[c].edges -= done.edges;
    heap_push(comps_[c].root_edges, bridge_slot);
    if (!head_done) comps_[c].owner = child;

    InstanceState& parent = insts_[inst];
    InstanceState& head_inst = insts_[child];
    head_inst.region = head_count;
    head_inst.edges = e2 + 1;
    head_inst.depth = parent.depth + 1;
    parent.region = tail_count;
    parent.edges = e1 + 1;
    parent.depth += 1;
    announce(child, head_done ? split : c);
    announce(inst, head_done ? c : split);

    TraceStep step;
    step.kind = TraceStep::Kind::kCut;
    step.depth = parent.depth - 1;
    step.vertices = n;
    step.edges = m;
    step.bridge = e.id;
    step.tail_side_size = tail_count;
    step.head_side_size = head_count;
    step.tail_contracted = e1;
    step.head_contracted = e2;
    if (options_.detailed_trace) {
      for (std::uint32_t v = 0; v < g_.vertex_count(); ++v) {
        const std::uint32_t o = owner_of(v);
        if (o == inst) step.tail_side.push_back(VertexId{v});
        if (o == child) step.head_side.push_back(VertexId{v});
      }
    }
    const std::size_t trace_index = trace_.steps.size();
    trace_.steps.push_back(std::move(step));

    // The smaller side is solved first; if the two disagree on f3(e) it is
    // the one negated.
    const bool tail_first = e1 <= e2;
    const std::uint32_t first = tail_first ? inst : child;
    const std::uint32_t second = tail_first ? child : inst;
    CutJoin join{bridge_slot, Z3Elem{}, log_.size(), 0, trace_index, {}};
    if (before) join.before = std::move(*before);
    stack_.emplace_back(std::move(join));
    const std::size_t join_index = stack_.size() - 1;
    stack_.emplace_back(SolveTask{second, n});
    stack_.emplace_back(CutSnapshot{join_index, bridge_slot});
    stack_.emplace_back(SolveTask{first, n});
  }

  void handle(CutSnapshot& snap) {
    const PairElem v = value_[snap.bridge];
    check(assigned_[snap.bridge] != 0, "bridge unassigned by first side");
    check(v.f2.is_zero(), "f2 nonzero on the bridge");
    CutJoin& join = std::get<CutJoin>(stack_[snap.join]);
    join.first_f3 = v.f3;
    join.log_end = log_.size();
  }

  void handle(CutJoin& join) {
    const PairElem second = value_[join.bridge];
    check(second.f2.is_zero(), "f2 nonzero on the bridge");
    check(!second.f3.is_zero() && !join.first_f3.is_zero(),
          "f3 zero on the bridge");
    if (second.f3 != join.first_f3) {
      // Everything the first side assigned, except values later overwritten
      // (the bridge itself, which the second side set again).
      for (std::size_t i = join.log_begin; i < join.log_end; ++i) {
        const std::uint32_t s = log_[i];
        if (last_write_[s] == i) value_[s].f3 = -value_[s].f3;
      }
      trace_.steps[join.trace_index].negated = true;
    }
    if (options_.debug_verify) {
      const GroupFlow f = flow_on(join.before.graph);
      check(verify_theorem2(join.before.graph, VertexId{join.before.root}, f),
            "combined cut flow fails the rooted nowhere-zero condition");
    }
  }

  bool augment(std::uint32_t x, std::uint32_t x2, std::uint32_t c) {
    stamp_ += 2;
    const std::uint32_t seen = stamp_;
    path_queue_.clear();
    path_queue_.push_back(x);
    mark_[x] = seen;
    for (std::size_t qi = 0; qi < path_queue_.size() && mark_[x2] != seen;
         ++qi) {
      const std::uint32_t a = path_queue_[qi];
      for (const Incidence& inc : g_.incident(VertexId{a})) {
        const std::uint32_t b = inc.other.index;
        if (b == a || comp_[b] != c || mark_[b] == seen) continue;
        const std::int8_t dir = direction_from(g_.edge_at(inc.slot), a);
        if (flow_[inc.slot] != 0 && flow_[inc.slot] != -dir) continue;
        mark_[b] = seen;
        via_[b] = inc.slot;
        path_queue_.push_back(b);
        if (b == x2) break;
      }
    }
    if (mark_[x2] != seen) return false;
    for (std::uint32_t b = x2; b != x;) {
      const std::uint32_t slot = via_[b];
      const Edge& e = g_.edge_at(slot);
      const std::uint32_t a = e.tail.index == b ? e.head.index : e.tail.index;
      if (flow_[slot] == 0) {
        flow_[slot] = direction_from(e, a);
        flow_touched_.push_back(slot);
      } else {
        flow_[slot] = 0;
      }
      b = a;
    }
    return true;
  }

  // One simple x-x2 path out of the flow support; cycles met on the way are
  // dropped. Used slots are cleared.
  bool extract_path(std::uint32_t x, std::uint32_t x2,
                    std::vector<internal::SlotStep>& path) {
    std::vector<std::uint32_t> vertices{x};
    path.clear();
    position_[x] = 0;
    cursor_touched_.push_back(x);
    std::uint32_t cur = x;
    bool ok = true;
    while (cur != x2) {
      auto inc = g_.incident(VertexId{cur});
      std::uint32_t next = kNo;
      while (cursor_[cur] < inc.size()) {
        const Incidence& step = inc[cursor_[cur]++];
        const Edge& e = g_.edge_at(step.slot);
        if (e.is_loop() || flow_[step.slot] == 0) continue;
        if (flow_[step.slot] != direction_from(e, cur)) continue;
        flow_[step.slot] = 0;
        next = step.other.index;
        path.push_back({step.slot, step.outgoing});
        break;
      }
      if (next == kNo) {
        ok = false;
        break;
      }
      cursor_touched_.push_back(next);
      if (position_[next] != kNo) {
        const std::uint32_t keep = position_[next];
        while (vertices.size() > keep + 1) {
          position_[vertices.back()] = kNo;
          vertices.pop_back();
          path.pop_back();
        }
        path.pop_back();
      } else {
        position_[next] = static_cast<std::uint32_t>(vertices.size());
        vertices.push_back(next);
      }
      cur = next;
    }
    for (std::uint32_t v : vertices) position_[v] = kNo;
    return ok;
  }

  bool find_paths(std::uint32_t x, std::uint32_t x2, std::uint32_t c,
                  std::vector<internal::SlotStep>& p1,
                  std::vector<internal::SlotStep>& p2) {
    p1.clear();
    p2.clear();
    if (x == x2) return true;
    bool ok = augment(x, x2, c) && augment(x, x2, c);
    if (ok && (!extract_path(x, x2, p1) || !extract_path(x, x2, p2))) {
      throw DefectError("flow of value two did not decompose into two paths");
    }
    for (std::uint32_t s : flow_touched_) flow_[s] = 0;
    flow_touched_.clear();
    for (std::uint32_t v : cursor_touched_) cursor_[v] = 0;
    cursor_touched_.clear();
    return ok;
  }

  void reduce_bridgeless(std::uint32_t inst) {
    const std::uint32_t ux =
        instance_min(inst, &InstanceState::by_root_edge, &Solver::min_root_edge);
    check(ux != kNo, "root without an edge into G - u");
    const Edge& first_edge = g_.edge_at(ux);
    const std::uint32_t x = owner_of(first_edge.tail.index) == inst
                                ? first_edge.tail.index
                                : first_edge.head.index;
    const std::uint32_t c = comp_[x];
    check(min_root_edge(c) == ux, "smallest root edge not on top");
    heap_pop(comps_[c].root_edges);
    const std::uint32_t ux2 = min_root_edge(c);
    check(ux2 != kNo, "no second root edge into the component of x");
    const std::uint32_t x2 = inner_end(ux2, c);

    std::optional<Snapshot> before;
    if (options_.debug_verify) {
      before = snapshot(inst);
      const auto labels =
          internal::component_labels(before->graph, before->root);
      std::vector<std::uint32_t> into(labels.count, 0);
      for (const Incidence& inc :
           before->graph.incident(VertexId{before->root})) {
        if (inc.other.index != before->root) ++into[labels.label[inc.other.index]];
      }
      for (std::uint32_t k : into) {
        check(k >= 2, "component of G - u with fewer than two root edges");
      }
    }

    std::vector<internal::SlotStep> p1;
    std::vector<internal::SlotStep> p2;
    check(find_paths(x, x2, c, p1, p2),
          "two edge-disjoint paths not found in a bridgeless G - u");

    // H = P1 + P2 and its vertices, locally numbered.
    std::vector<std::uint32_t> h_vertices;
    auto add_vertex = [&](std::uint32_t v) {
      if (h_local_[v] == kNo) {
        h_local_[v] = static_cast<std::uint32_t>(h_vertices.size());
        h_vertices.push_back(v);
      }
    };
    add_vertex(x);
    std::vector<std::uint32_t> h_slots;
    for (const auto* path : {&p1, &p2}) {
      for (const auto& step : *path) {
        check(in_h_[step.slot] == 0, "paths share an edge");
        in_h_[step.slot] = 1;
        h_slots.push_back(step.slot);
        const Edge& e = g_.edge_at(step.slot);
        add_vertex(e.tail.index);
        add_vertex(e.head.index);
      }
    }
    std::sort(h_slots.begin(), h_slots.end());
    for (std::uint32_t v : h_vertices) check(comp_[v] == c, "H meets the root");

    std::vector<std::uint32_t> h_degree(h_vertices.size(), 0);
    BridgelessFinish finish;
    finish.h_vertex_count = static_cast<std::uint32_t>(h_vertices.size());
    for (std::uint32_t slot : h_slots) {
      const Edge& e = g_.edge_at(slot);
      ++h_degree[h_local_[e.tail.index]];
      ++h_degree[h_local_[e.head.index]];
      finish.h_edges.push_back({h_local_[e.tail.index], h_local_[e.head.index]});
    }
    for (std::uint32_t d : h_degree) check(d % 2 == 0, "H has an odd vertex");

    // S, the rest of the edges at V(H), and what becomes a loop at the root.
    InstanceState& st = insts_[inst];
    std::vector<std::uint32_t> starts;
    std::vector<std::uint32_t> new_loops;
    for (std::uint32_t v : h_vertices) {
      for (const Incidence& inc : g_.incident(VertexId{v})) {
        const std::uint32_t w = inc.other.index;
        if (in_h_[inc.slot]) continue;
        if (w == v) {
          if (inc.outgoing) new_loops.push_back(inc.slot);
          continue;
        }
        if (comp_[w] != c) {
          finish.s.push_back({inc.slot, inc.outgoing ? -1 : 1, h_local_[v]});
          continue;
        }
        finish.boundary.push_back({inc.slot, h_local_[v], inc.outgoing ? -1 : 1});
        if (h_local_[w] != kNo) {
          if (inc.outgoing) new_loops.push_back(inc.slot);
        } else {
          starts.push_back(w);
        }
      }
    }
    check(finish.s.size() >= 2, "fewer than two root edges into H");
    std::sort(finish.s.begin(), finish.s.end(),
              [](const SEdge& a, const SEdge& b) { return a.slot < b.slot; });

    TraceStep step;
    step.kind = TraceStep::Kind::kBridgeless;
    step.depth = st.depth;
    step.vertices = st.region + 1;
    step.edges = st.edges;
    step.root_edge = g_.edge_at(ux).id;
    step.root_edge2 = g_.edge_at(ux2).id;
    for (std::uint32_t s : h_slots) step.h_edges.push_back(g_.edge_at(s).id);
    for (const SEdge& s : finish.s) step.s_edges.push_back(g_.edge_at(s.slot).id);
    step.h_vertices = finish.h_vertex_count;
    trace_.steps.push_back(std::move(step));

    if (before) {
      std::vector<EdgeId> h_ids;
      for (std::uint32_t s : h_slots) h_ids.push_back(g_.edge_at(s).id);
      Contraction c1 = contract(before->graph, h_ids);
      finish.root_in_g1 = c1.map.image(VertexId{before->root}).index;
      finish.u1 = c1.map.image(VertexId{before->local[x]}).index;
      check(finish.root_in_g1 != finish.u1, "root merged into H");
      check(c1.graph.vertex_count() ==
                before->graph.vertex_count() - h_vertices.size() + 1,
            "E(H) did not contract to a single vertex");
      check(is_2_edge_connected(c1.graph), "G1 not 2-edge-connected");
      finish.g1 = std::move(c1.graph);
      finish.before = std::move(*before);
    }

    // G2 = G / (E(H) + S): V(H) joins the root.
    const std::uint32_t n = st.region + 1;
    for (std::uint32_t v : h_vertices) {
      comp_[v] = kNo;
      h_local_[v] = kNo;
    }
    for (std::uint32_t s : h_slots) in_h_[s] = 0;
    st.region -= finish.h_vertex_count;
    st.edges -= static_cast<std::uint32_t>(h_slots.size() + finish.s.size());
    st.root_loops.insert(st.root_loops.end(), new_loops.begin(),
                         new_loops.end());
    st.depth += 1;
    const std::uint32_t left_vertices =
        comps_[c].vertices - finish.h_vertex_count;
    const std::uint32_t left_edges =
        comps_[c].edges -
        static_cast<std::uint32_t>(h_slots.size() + finish.s.size() +
                                   new_loops.size());
    const std::size_t first_new = comps_.size();
    rescan(inst, c, starts);
    std::uint32_t got_vertices = 0;
    std::uint32_t got_edges = 0;
    for (std::size_t i = first_new; i < comps_.size(); ++i) {
      got_vertices += comps_[i].vertices;
      got_edges += comps_[i].edges;
    }
    check(got_vertices == left_vertices && got_edges == left_edges,
          "G - u lost track of vertices or edges after contracting H");

    finish.h_slots = std::move(h_slots);
    stack_.emplace_back(std::move(finish));
    stack_.emplace_back(SolveTask{inst, n});
  }

  void handle(BridgelessFinish& fin) {
    // Excess at u1 in G1 from everything except S. Chords of H are loops at
    // u1 there and cancel in this sum.
    std::vector<Z3Elem> excess(fin.h_vertex_count, Z3Elem{});
    Z3Elem at_u1{};
    for (const Boundary& b : fin.boundary) {
      check(assigned_[b.slot] != 0, "edge at H left unassigned");
      const Z3Elem v = value_[b.slot].f3;
      const Z3Elem signed_v = b.sign > 0 ? v : -v;
      excess[b.at] += signed_v;
      at_u1 += signed_v;
      check(value_[b.slot].f2.is_zero(), "f2 nonzero at u1");
    }

    std::vector<int> senses;
    senses.reserve(fin.s.size());
    for (const SEdge& s : fin.s) senses.push_back(s.sense);
    const auto s_values = extend_nonzero_parallel(-at_u1, senses);
    for (std::size_t i = 0; i < fin.s.size(); ++i) {
      assign(fin.s[i].slot, {Z2Elem(0), s_values[i]});
    }

    if (options_.debug_verify) {
      const GroupFlow f = flow_on(fin.g1);
      check(verify_flow(fin.g1, f), "flow on G1 after extending over S");
      for (VertexId w : {VertexId{fin.root_in_g1}, VertexId{fin.u1}}) {
        for (const Incidence& inc : fin.g1.incident(w)) {
          check(f.at(fin.g1.edge_at(inc.slot).id).f2.is_zero(),
                "f2 support meets u or u1 in G1");
        }
      }
    }

    for (std::size_t i = 0; i < fin.s.size(); ++i) {
      const Z3Elem v = s_values[i];
      excess[fin.s[i].at] += fin.s[i].sense > 0 ? v : -v;
    }

    const auto h_values =
        internal::settle_over_forest<Z3Elem>(fin.h_vertex_count, fin.h_edges,
                                             excess);
    for (const Z3Elem& left : excess) {
      check(left.is_zero(), "H did not balance");
    }
    for (std::size_t i = 0; i < fin.h_slots.size(); ++i) {
      assign(fin.h_slots[i], {Z2Elem(1), h_values[i]});
    }
    for (const SEdge& s : fin.s) {
      check(!value_[s.slot].f3.is_zero(), "S edge with f3 zero");
    }

    if (options_.debug_verify) {
      const GroupFlow f = flow_on(fin.before.graph);
      check(verify_theorem2(fin.before.graph, VertexId{fin.before.root}, f),
            "extended flow fails the rooted nowhere-zero condition");
    }
  }

  const Multigraph& g_;
  const SolveOptions& options_;

  std::vector<std::uint32_t> comp_;  // kNo: merged into some root
  std::vector<Component> comps_;
  std::vector<InstanceState> insts_;
  std::vector<std::uint8_t> bridge_;  // valid while both ends share a component

  // Scratch, restored after each use.
  std::vector<std::uint32_t> disc_;
  std::vector<std::uint32_t> low_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> via_;
  std::vector<std::uint32_t> cursor_;
  std::vector<std::uint32_t> position_;
  std::vector<std::uint32_t> h_local_;
  std::vector<std::int8_t> flow_;
  std::vector<std::uint8_t> in_h_;
  std::vector<std::uint32_t> path_queue_;
  struct DfsFrame {
    const Incidence* next;
    const Incidence* end;
    std::uint32_t vertex;
    std::uint32_t parent_slot;
  };
  std::vector<DfsFrame> dfs_stack_;
  std::vector<std::uint32_t> flow_touched_;
  std::vector<std::uint32_t> cursor_touched_;

  std::vector<PairElem> value_;
  std::vector<std::uint8_t> assigned_;
  std::vector<std::uint32_t> log_;
  std::vector<std::size_t> last_write_;

  std::vector<WorkItem> stack_;
  ConstructionTrace trace_;
};

}  // namespace

std::vector<Z3Elem> extend_nonzero_parallel(Z3Elem target,
                                            std::span<const int> senses) {
  if (senses.size() < 2) {
    throw InputError("nonzero extension needs at least two parallel edges");
  }
  // With y_i = sense_i * value_i the sum of all-ones y is k; raising r of
  // them to two adds r.
  const auto k = static_cast<long long>(senses.size());
  const unsigned raise = (target - Z3Elem(k)).value();
  std::vector<Z3Elem> out(senses.size(), Z3Elem(1));
  for (unsigned i = 0; i < raise; ++i) out[senses.size() - 1 - i] = Z3Elem(2);
  for (std::size_t i = 0; i < senses.size(); ++i) {
    if (senses[i] < 0) out[i] = -out[i];
  }
  return out;
}

Solution solve(const Multigraph& g, VertexId root,
               const SolveOptions& options) {
  if (!g.contains(root)) {
    throw InputError("root " + std::to_string(root.index) +
                     " is not a vertex of the graph");
  }
  const auto labels = internal::component_labels(g);
  if (labels.count > 1) {
    std::uint32_t stray = 0;
    while (labels.label[stray] == 0) ++stray;
    throw StructuralError("graph is disconnected: vertex " +
                          std::to_string(stray) + " is not reachable from 0");
  }
  const auto found = bridges(g);
  if (!found.empty()) {
    throw StructuralError(
        "graph is not 2-edge-connected: edge " +
            std::to_string(found.front().index) + " is a bridge",
        found.front().index);
  }
  Solver solver(g, options);
  return solver.run(root);
}

std::string TraceStep::describe() const {
  std::string out = "depth " + std::to_string(depth) + " |V|=" +
                    std::to_string(vertices) + " |E|=" + std::to_string(edges);
  auto list = [](const auto& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(xs[i].index);
    }
    return s + "}";
  };
  switch (kind) {
    case Kind::kBase:
      return out + " base";
    case Kind::kCut:
      out += " cut e=" + std::to_string(bridge.index) +
             " |V1|=" + std::to_string(tail_side_size) +
             " |V2|=" + std::to_string(head_side_size) +
             " |E1|=" + std::to_string(tail_contracted) +
             " |E2|=" + std::to_string(head_contracted);
      if (!tail_side.empty() || !head_side.empty()) {
        out += " V1=" + list(tail_side) + " V2=" + list(head_side);
      }
      return out + (negated ? " negated" : "");
    case Kind::kBridgeless:
      return out + " bridgeless ux=" + std::to_string(root_edge.index) +
             " ux'=" + std::to_string(root_edge2.index) +
             " |V(H)|=" + std::to_string(h_vertices) + " H=" + list(h_edges) +
             " S=" + list(s_edges);
  }
  return out;
}

}  // namespace nzflow
