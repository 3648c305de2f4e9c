#pragma once

#include "phaselift/complex_matrix.hpp"
#include "phaselift/flops.hpp"

namespace phaselift {

struct EigDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column i pairs with eigenvalues[i]
};

// Householder tridiagonalization followed by implicit-shift QL on the real
// tridiagonal form, eigenvectors accumulated. Dimension cap and sweep budget
// guard against runaway input; exceeding either throws SolverError.
inline constexpr std::size_t kEigMaxDim = 64;
inline constexpr int kEigSweepsPerValue = 30;

EigDecomposition hermitian_eig(const HermitianMatrix& m, FlopCounter* fc = nullptr,
                               Phase phase = Phase::kProjection);

// Nearest PSD matrix in Frobenius norm: negative eigenvalues clamped to zero.
HermitianMatrix project_psd(const HermitianMatrix& m, FlopCounter* fc = nullptr,
                            Phase phase = Phase::kProjection);

// sqrt(lambda_max) * u_max; zero vector when lambda_max <= 0.
CVec principal_component(const HermitianMatrix& m, FlopCounter* fc = nullptr,
                         Phase phase = Phase::kExtract);

}  // namespace phaselift
