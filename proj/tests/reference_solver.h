#ifndef NZFLOW_TESTS_REFERENCE_SOLVER_H_
#define NZFLOW_TESTS_REFERENCE_SOLVER_H_

#include "nzflow/construct.h"

namespace nzflow::reference {

// Direct transcription of the induction: every recursive instance is built
// as its own contracted Multigraph. Slow, but each step is easy to audit, so
// the library solver is compared against it.
Solution solve(const Multigraph& g, VertexId root,
               const SolveOptions& options = {});

}  // namespace nzflow::reference

#endif  // NZFLOW_TESTS_REFERENCE_SOLVER_H_
