#ifndef NZFLOW_TUTTE_H_
#define NZFLOW_TUTTE_H_

#include <cstdint>

#include "nzflow/flows.h"
#include "nzflow/multigraph.h"

namespace nzflow {

// The isomorphism Z2 x Z3 -> Z6, (a, b) -> 3a + 4b, and its inverse
// c -> (c mod 2, c mod 3).
constexpr Z6Elem pair_to_z6(PairElem p) {
  return Z6Elem(3 * static_cast<long long>(p.f2.value()) +
                4 * static_cast<long long>(p.f3.value()));
}

constexpr PairElem z6_to_pair(Z6Elem c) {
  return {Z2Elem(c.value()), Z3Elem(c.value())};
}

Z6Flow to_z6_flow(const GroupFlow& f);
GroupFlow to_pair_flow(const Z6Flow& f);

struct IntegerLift {
  IntegerFlow flow;
  // Paths along which 6 units were pushed.
  std::uint64_t augmentations = 0;
};

// Turns a nowhere-zero Z6-flow into a nowhere-zero integer 6-flow with the
// same residues. Each value starts at its representative in 1..5; surplus
// is then pushed to deficit vertices along breadth-first paths, shifting
// every edge on the path by 6 in the direction that keeps it inside -5..5.
// Throws InputError if `phi` is not a nowhere-zero flow on g.
IntegerLift group_flow_to_integer_flow(const Multigraph& g, const Z6Flow& phi);

// Pointwise residue mod 6.
Z6Flow integer_flow_to_group(const Multigraph& g, const IntegerFlow& flow);

}  // namespace nzflow

#endif  // NZFLOW_TUTTE_H_
