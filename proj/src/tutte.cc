#include "nzflow/tutte.h"

#include <cstdlib>
#include <vector>

namespace nzflow {

Z6Flow to_z6_flow(const GroupFlow& f) {
  Z6Flow out;
  for (EdgeId id : f.keys()) out.set(id, pair_to_z6(f.at(id)));
  return out;
}

GroupFlow to_pair_flow(const Z6Flow& f) {
  GroupFlow out;
  for (EdgeId id : f.keys()) out.set(id, z6_to_pair(f.at(id)));
  return out;
}

IntegerLift group_flow_to_integer_flow(const Multigraph& g, const Z6Flow& phi) {
  if (auto bad = check_nowhere_zero(g, phi)) {
    throw InputError("not a nowhere-zero Z6 flow: " + bad->describe());
  }
  constexpr int kModulus = 6;
  constexpr std::uint32_t kNo = UINT32_MAX;
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  const std::size_t m = g.edge_count();

  std::vector<int> value(m);
  std::vector<long long> excess(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = g.edge_at(i);
    value[i] = static_cast<int>(phi.at(e.id).value());
    excess[e.head.index] += value[i];
    excess[e.tail.index] -= value[i];
  }
  long long total = 0;
  for (long long x : excess) {
    if (x % kModulus != 0) throw DefectError("excess not a multiple of 6");
    total += std::llabs(x);
  }

  IntegerLift out;
  std::vector<std::uint32_t> via(n, kNo);
  std::vector<std::uint64_t> stamp(n, 0);
  std::vector<std::uint32_t> queue;
  std::uint64_t round = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    while (excess[v] > 0) {
      ++round;
      queue.clear();
      queue.push_back(v);
      stamp[v] = round;
      std::uint32_t sink = kNo;
      for (std::size_t qi = 0; qi < queue.size() && sink == kNo; ++qi) {
        const std::uint32_t a = queue[qi];
        for (const Incidence& inc : g.incident(VertexId{a})) {
          const std::uint32_t b = inc.other.index;
          if (b == a || stamp[b] == round) continue;
          // a -> b along the arc needs room to add 6, against it to take 6.
          const int x = value[inc.slot];
          if (inc.outgoing ? x > 0 : x < 0) continue;
          stamp[b] = round;
          via[b] = inc.slot;
          queue.push_back(b);
          if (excess[b] < 0) {
            sink = b;
            break;
          }
        }
      }
      if (sink == kNo) {
        throw DefectError("no deficit vertex reachable from vertex " +
                          std::to_string(v));
      }
      for (std::uint32_t b = sink; b != v;) {
        const std::uint32_t slot = via[b];
        const Edge& e = g.edge_at(slot);
        if (e.head.index == b) {
          value[slot] += kModulus;
          b = e.tail.index;
        } else {
          value[slot] -= kModulus;
          b = e.head.index;
        }
      }
      const long long before = std::llabs(excess[v]) + std::llabs(excess[sink]);
      excess[v] -= kModulus;
      excess[sink] += kModulus;
      const long long after = std::llabs(excess[v]) + std::llabs(excess[sink]);
      if (before - after != 2 * kModulus) {
        throw DefectError("augmentation did not reduce the total excess by 12");
      }
      total -= 2 * kModulus;
      ++out.augmentations;
    }
  }
  for (long long x : excess) {
    if (x != 0) throw DefectError("integer lift left a nonzero excess");
  }
  if (total != 0) throw DefectError("excess monovariant did not reach zero");

  for (std::size_t i = 0; i < m; ++i) out.flow.set(g.edge_at(i).id, value[i]);
  return out;
}

Z6Flow integer_flow_to_group(const Multigraph& g, const IntegerFlow& flow) {
  Z6Flow out;
  for (const Edge& e : g.edges()) out.set(e.id, Z6Elem(flow.at(e.id)));
  return out;
}

}  // namespace nzflow
