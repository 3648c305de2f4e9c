#pragma once

#include "phaselift/complex_matrix.hpp"
#include "phaselift/flops.hpp"

namespace phaselift {

// Gaussian elimination with partial pivoting. Throws SolverError when the
// pivot magnitude falls below 1e-13 times the largest original entry.
CVec solve_linear(ComplexMatrix a, CVec b, FlopCounter* fc = nullptr,
                  Phase phase = Phase::kPrecompute);

}  // namespace phaselift
