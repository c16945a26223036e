#ifndef NZFLOW_FLOWS_H_
#define NZFLOW_FLOWS_H_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nzflow/errors.h"
#include "nzflow/multigraph.h"

namespace nzflow {

// Element of the cyclic group Z_N.
template <unsigned N>
class Zmod {
 public:
  static constexpr unsigned kOrder = N;

  constexpr Zmod() = default;
  constexpr explicit Zmod(long long v)
      : value_(static_cast<std::uint8_t>(((v % static_cast<long long>(N)) +
                                          static_cast<long long>(N)) %
                                         static_cast<long long>(N))) {}

  constexpr unsigned value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  friend constexpr Zmod operator+(Zmod a, Zmod b) {
    return Zmod(static_cast<long long>(a.value_) + b.value_);
  }
  friend constexpr Zmod operator-(Zmod a, Zmod b) {
    return Zmod(static_cast<long long>(a.value_) - b.value_);
  }
  constexpr Zmod operator-() const {
    return Zmod(-static_cast<long long>(value_));
  }
  constexpr Zmod& operator+=(Zmod b) { return *this = *this + b; }
  constexpr Zmod& operator-=(Zmod b) { return *this = *this - b; }
  friend constexpr bool operator==(Zmod, Zmod) = default;

 private:
  std::uint8_t value_ = 0;
};

using Z2Elem = Zmod<2>;
using Z3Elem = Zmod<3>;
using Z6Elem = Zmod<6>;

// A value of Z2 x Z3.
struct PairElem {
  Z2Elem f2;
  Z3Elem f3;

  constexpr bool is_zero() const { return f2.is_zero() && f3.is_zero(); }
  friend constexpr PairElem operator+(PairElem a, PairElem b) {
    return {a.f2 + b.f2, a.f3 + b.f3};
  }
  friend constexpr PairElem operator-(PairElem a, PairElem b) {
    return {a.f2 - b.f2, a.f3 - b.f3};
  }
  constexpr PairElem operator-() const { return {-f2, -f3}; }
  constexpr PairElem& operator+=(PairElem b) { return *this = *this + b; }
  constexpr PairElem& operator-=(PairElem b) { return *this = *this - b; }
  friend constexpr bool operator==(PairElem, PairElem) = default;
};

constexpr bool is_zero(int v) { return v == 0; }
template <class V>
constexpr bool is_zero(const V& v) {
  return v.is_zero();
}

// Partial map EdgeId -> V, stored densely by id.
template <class V>
class EdgeMap {
 public:
  EdgeMap() = default;
  explicit EdgeMap(std::size_t id_bound)
      : values_(id_bound), present_(id_bound, 0) {}

  void set(EdgeId e, V v) {
    if (e.index >= values_.size()) {
      values_.resize(e.index + 1);
      present_.resize(e.index + 1, 0);
    }
    values_[e.index] = v;
    present_[e.index] = 1;
  }

  bool has(EdgeId e) const {
    return e.index < present_.size() && present_[e.index] != 0;
  }

  std::optional<V> get(EdgeId e) const {
    if (!has(e)) return std::nullopt;
    return values_[e.index];
  }

  const V& at(EdgeId e) const {
    if (!has(e)) {
      throw InputError("no value for edge " + std::to_string(e.index));
    }
    return values_[e.index];
  }

  // Ids with a value, ascending.
  std::vector<EdgeId> keys() const {
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < present_.size(); ++i) {
      if (present_[i]) out.push_back(EdgeId{static_cast<std::uint32_t>(i)});
    }
    return out;
  }

  friend bool operator==(const EdgeMap& a, const EdgeMap& b) {
    const std::size_t n = std::max(a.present_.size(), b.present_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const EdgeId e{static_cast<std::uint32_t>(i)};
      if (a.get(e) != b.get(e)) return false;
    }
    return true;
  }

 private:
  std::vector<V> values_;
  std::vector<std::uint8_t> present_;
};

using GroupFlow = EdgeMap<PairElem>;
using Z6Flow = EdgeMap<Z6Elem>;
using Z3Flow = EdgeMap<Z3Elem>;
using Z2Flow = EdgeMap<Z2Elem>;
using IntegerFlow = EdgeMap<int>;

// Inflow minus outflow at v. Loops cancel. Throws InputError when an edge at
// v has no value.
template <class V>
V excess(const Multigraph& g, const EdgeMap<V>& f, VertexId v) {
  V sum{};
  for (const Incidence& inc : g.incident(v)) {
    const V& x = f.at(g.edge_at(inc.slot).id);
    if (inc.outgoing) {
      sum -= x;
    } else {
      sum += x;
    }
  }
  return sum;
}

struct Violation {
  enum class Kind {
    kMissingValue,   // edge of G without a value
    kExtraValue,     // value for an edge not in G
    kConservation,   // nonzero excess at a vertex
    kZeroValue,      // nowhere-zero broken
    kOutOfRange,     // |g(e)| >= k
    kRootSupport,    // f2 != 0 on an edge at the root
  };
  Kind kind;
  std::optional<VertexId> vertex;
  std::optional<EdgeId> edge;

  std::string describe() const;
};

namespace internal {

template <class V>
std::optional<Violation> check_domain(const Multigraph& g,
                                      const EdgeMap<V>& f) {
  for (const Edge& e : g.edges()) {
    if (!f.has(e.id)) {
      return Violation{Violation::Kind::kMissingValue, std::nullopt, e.id};
    }
  }
  for (EdgeId id : f.keys()) {
    if (!g.contains(id)) {
      return Violation{Violation::Kind::kExtraValue, std::nullopt, id};
    }
  }
  return std::nullopt;
}

}  // namespace internal

// First failure of conservation (or of totality), scanning vertices in order.
template <class V>
std::optional<Violation> check_flow(const Multigraph& g, const EdgeMap<V>& f) {
  if (auto bad = internal::check_domain(g, f)) return bad;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (!is_zero(excess(g, f, VertexId{v}))) {
      return Violation{Violation::Kind::kConservation, VertexId{v},
                       std::nullopt};
    }
  }
  return std::nullopt;
}

template <class V>
std::optional<Violation> check_nowhere_zero(const Multigraph& g,
                                            const EdgeMap<V>& f) {
  if (auto bad = check_flow(g, f)) return bad;
  for (const Edge& e : g.edges()) {
    if (is_zero(f.at(e.id))) {
      return Violation{Violation::Kind::kZeroValue, std::nullopt, e.id};
    }
  }
  return std::nullopt;
}

template <class V>
bool verify_flow(const Multigraph& g, const EdgeMap<V>& f) {
  return !check_flow(g, f);
}

template <class V>
bool verify_nowhere_zero(const Multigraph& g, const EdgeMap<V>& f) {
  return !check_nowhere_zero(g, f);
}

// Nowhere-zero Z2 x Z3 flow with f2 = 0 on every edge at `root`.
std::optional<Violation> check_theorem2(const Multigraph& g, VertexId root,
                                        const GroupFlow& f);
bool verify_theorem2(const Multigraph& g, VertexId root, const GroupFlow& f);

// Integer flow with 0 < |g(e)| <= k - 1 everywhere.
std::optional<Violation> check_k_flow(const Multigraph& g,
                                      const IntegerFlow& f, int k);
bool verify_k_flow(const Multigraph& g, const IntegerFlow& f, int k);

enum class Component { kF2, kF3, kPair };

// Edges whose chosen component is nonzero, ascending.
std::vector<EdgeId> support(const GroupFlow& f, Component c);

// f3 -> -f3 everywhere, f2 untouched.
GroupFlow negate_f3(const GroupFlow& f);

}  // namespace nzflow

#endif  // NZFLOW_FLOWS_H_
