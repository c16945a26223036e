#include "nzflow/testkit.h"

#include <algorithm>
#include <random>
#include <utility>

#include "nzflow/connectivity.h"
#include "nzflow/construct.h"

namespace nzflow::testkit {

namespace {

template <class V>
std::vector<V> nonzero_elements();

template <>
std::vector<PairElem> nonzero_elements<PairElem>() {
  std::vector<PairElem> out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a != 0 || b != 0) out.push_back({Z2Elem(a), Z3Elem(b)});
    }
  }
  return out;
}

template <class V>
  requires(V::kOrder > 1)
std::vector<V> zmod_nonzero() {
  std::vector<V> out;
  for (unsigned i = 1; i < V::kOrder; ++i) out.push_back(V(i));
  return out;
}

template <>
std::vector<Z6Elem> nonzero_elements<Z6Elem>() {
  return zmod_nonzero<Z6Elem>();
}
template <>
std::vector<Z3Elem> nonzero_elements<Z3Elem>() {
  return zmod_nonzero<Z3Elem>();
}
template <>
std::vector<Z2Elem> nonzero_elements<Z2Elem>() {
  return zmod_nonzero<Z2Elem>();
}

template <class V>
class FlowEnumerator {
 public:
  explicit FlowEnumerator(const Multigraph& g)
      : g_(g),
        elements_(nonzero_elements<V>()),
        excess_(g.vertex_count(), V{}),
        chosen_(g.edge_count(), 0),
        closes_(g.edge_count()) {
    // A vertex can be tested once its highest-slot edge is set.
    std::vector<long long> last(g.vertex_count(), -1);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const Edge& e = g.edge_at(i);
      last[e.tail.index] = static_cast<long long>(i);
      last[e.head.index] = static_cast<long long>(i);
    }
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
      if (last[v] >= 0) closes_[static_cast<std::size_t>(last[v])].push_back(v);
    }
  }

  void run(const std::function<void(const std::vector<std::size_t>&)>& emit) {
    descend(0, emit);
  }

  const std::vector<V>& elements() const { return elements_; }

 private:
  void descend(std::size_t slot,
               const std::function<void(const std::vector<std::size_t>&)>& emit) {
    if (slot == g_.edge_count()) {
      emit(chosen_);
      return;
    }
    const Edge& e = g_.edge_at(slot);
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      const V x = elements_[k];
      excess_[e.head.index] += x;
      excess_[e.tail.index] -= x;
      bool ok = true;
      for (std::uint32_t v : closes_[slot]) {
        if (!excess_[v].is_zero()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        chosen_[slot] = k;
        descend(slot + 1, emit);
      }
      excess_[e.head.index] -= x;
      excess_[e.tail.index] += x;
    }
  }

  const Multigraph& g_;
  std::vector<V> elements_;
  std::vector<V> excess_;
  std::vector<std::size_t> chosen_;
  std::vector<std::vector<std::uint32_t>> closes_;
};

void guard(const Multigraph& g, std::size_t guard_edges) {
  if (g.edge_count() > guard_edges) {
    throw GuardError("brute force refused: " + std::to_string(g.edge_count()) +
                     " edges exceeds the guard of " +
                     std::to_string(guard_edges));
  }
}

}  // namespace

std::string group_name(FlowGroup group) {
  switch (group) {
    case FlowGroup::kZ2xZ3:
      return "Z2xZ3";
    case FlowGroup::kZ6:
      return "Z6";
    case FlowGroup::kZ3:
      return "Z3";
    case FlowGroup::kZ2:
      return "Z2";
  }
  return "?";
}

template <class V>
std::vector<EdgeMap<V>> enumerate_nz_flows(const Multigraph& g,
                                           std::size_t guard_edges) {
  guard(g, guard_edges);
  FlowEnumerator<V> en(g);
  std::vector<EdgeMap<V>> out;
  en.run([&](const std::vector<std::size_t>& chosen) {
    EdgeMap<V> f;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      f.set(g.edge_at(i).id, en.elements()[chosen[i]]);
    }
    out.push_back(std::move(f));
  });
  return out;
}

template std::vector<GroupFlow> enumerate_nz_flows<PairElem>(const Multigraph&,
                                                             std::size_t);
template std::vector<Z6Flow> enumerate_nz_flows<Z6Elem>(const Multigraph&,
                                                        std::size_t);
template std::vector<Z3Flow> enumerate_nz_flows<Z3Elem>(const Multigraph&,
                                                        std::size_t);
template std::vector<Z2Flow> enumerate_nz_flows<Z2Elem>(const Multigraph&,
                                                        std::size_t);

std::size_t count_nz_flows(const Multigraph& g, FlowGroup group,
                           std::size_t guard_edges) {
  guard(g, guard_edges);
  std::size_t count = 0;
  auto tally = [&count](const std::vector<std::size_t>&) { ++count; };
  switch (group) {
    case FlowGroup::kZ2xZ3:
      FlowEnumerator<PairElem>(g).run(tally);
      break;
    case FlowGroup::kZ6:
      FlowEnumerator<Z6Elem>(g).run(tally);
      break;
    case FlowGroup::kZ3:
      FlowEnumerator<Z3Elem>(g).run(tally);
      break;
    case FlowGroup::kZ2:
      FlowEnumerator<Z2Elem>(g).run(tally);
      break;
  }
  return count;
}

bool ExhaustiveReport::holds() const {
  return std::all_of(roots.begin(), roots.end(), [](const RootCheck& r) {
    return r.valid_flows > 0 && r.solver_output_valid;
  });
}

ExhaustiveReport check_theorem2_exhaustive(const Multigraph& g,
                                           std::size_t guard_edges) {
  guard(g, guard_edges);
  FlowEnumerator<PairElem> en(g);
  // Element indices are ascending in (f2, f3), so the emitted index vectors
  // come out sorted and membership is a binary search.
  std::vector<std::vector<std::size_t>> all;
  en.run([&all](const std::vector<std::size_t>& chosen) {
    all.push_back(chosen);
  });
  const auto& elements = en.elements();

  ExhaustiveReport report;
  report.nz_flows = all.size();
  for (std::uint32_t u = 0; u < g.vertex_count(); ++u) {
    std::vector<std::size_t> root_slots;
    for (const Incidence& inc : g.incident(VertexId{u})) {
      root_slots.push_back(inc.slot);
    }
    std::vector<std::vector<std::size_t>> valid;
    for (const auto& flow : all) {
      const bool clean = std::all_of(
          root_slots.begin(), root_slots.end(),
          [&](std::size_t s) { return elements[flow[s]].f2.is_zero(); });
      if (clean) valid.push_back(flow);
    }

    RootCheck check{VertexId{u}, valid.size(), false};
    const GroupFlow solved = solve(g, VertexId{u}).flow;
    std::vector<std::size_t> encoded;
    bool encodable = true;
    for (const Edge& e : g.edges()) {
      auto value = solved.get(e.id);
      auto it = value ? std::find(elements.begin(), elements.end(), *value)
                      : elements.end();
      if (it == elements.end()) {
        encodable = false;
        break;
      }
      encoded.push_back(static_cast<std::size_t>(it - elements.begin()));
    }
    check.solver_output_valid =
        encodable && std::binary_search(valid.begin(), valid.end(), encoded);
    report.roots.push_back(check);
  }
  return report;
}

void for_each_small_2ec_multigraph(
    std::size_t n_max, std::size_t m_max,
    const std::function<void(const Multigraph&)>& visit) {
  if (n_max > 4 || m_max > 7) {
    throw GuardError("small multigraph enumeration is limited to 4 vertices "
                     "and 7 edges");
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> types;
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i; j < n; ++j) types.emplace_back(i, j);
    }
    for (std::size_t m = 0; m <= m_max; ++m) {
      // Nondecreasing sequences of type indices of length m.
      std::vector<std::size_t> pick(m, 0);
      while (true) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
        arcs.reserve(m);
        for (std::size_t t : pick) arcs.push_back(types[t]);
        Multigraph g = Multigraph::build(n, arcs);
        if (is_2_edge_connected(g)) visit(g);

        std::size_t i = m;
        while (i > 0 && pick[i - 1] == types.size() - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < m; ++j) pick[j] = pick[i - 1];
      }
    }
  }
}

std::vector<Multigraph> enumerate_small_2ec_multigraphs(std::size_t n_max,
                                                        std::size_t m_max) {
  std::vector<Multigraph> out;
  for_each_small_2ec_multigraph(
      n_max, m_max, [&out](const Multigraph& g) { out.push_back(g); });
  return out;
}

Multigraph random_2ec_multigraph(
    std::size_t n, std::size_t extra_ears, std::uint64_t seed,
    const std::function<void(const Multigraph&)>& observe) {
  if (n == 0) throw InputError("random graph needs at least one vertex");
  std::mt19937_64 rng(seed);
  auto below = [&rng](std::size_t k) {
    return static_cast<std::uint32_t>(rng() % k);
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  auto add = [&](std::uint32_t a, std::uint32_t b) {
    if (below(2) == 0) {
      arcs.emplace_back(a, b);
    } else {
      arcs.emplace_back(b, a);
    }
  };
  std::uint32_t count = 1;
  auto report = [&] {
    if (observe) observe(Multigraph::build(count, arcs));
  };

  if (n >= 2) {
    count = 2 + below(std::min<std::size_t>(n, 8) - 1);
    for (std::uint32_t v = 0; v < count; ++v) add(v, (v + 1) % count);
  }
  report();
  while (count < n) {
    const std::uint32_t a = below(count);
    const std::uint32_t b = below(count);
    const std::uint32_t inner =
        1 + below(std::min<std::size_t>(n - count, 6));
    std::uint32_t prev = a;
    for (std::uint32_t i = 0; i < inner; ++i) {
      add(prev, count + i);
      prev = count + i;
    }
    add(prev, b);
    count += inner;
    report();
  }
  for (std::size_t i = 0; i < extra_ears; ++i) {
    add(below(count), below(count));
    report();
  }

  std::vector<std::uint32_t> label(count);
  for (std::uint32_t v = 0; v < count; ++v) label[v] = v;
  for (std::uint32_t v = count; v > 1; --v) std::swap(label[v - 1], label[below(v)]);
  for (std::size_t i = arcs.size(); i > 1; --i) {
    std::swap(arcs[i - 1], arcs[below(i)]);
  }
  for (auto& [a, b] : arcs) {
    a = label[a];
    b = label[b];
  }
  return Multigraph::build(count, arcs);
}

}  // namespace nzflow::testkit
