#pragma once

#include "phaselift/measurement.hpp"

// Brute-force references used only by tests. Each is algorithmically
// independent of the library path it checks: the objective is re-summed
// entry by entry, the inverse is Gauss-Jordan with full pivoting, the PSD
// test is a shifted Cholesky, and the Gaussian tail uses a series or a
// continued fraction instead of erfc.
namespace phaselift::oracles {

// Direct evaluation of tr(C) + lambda * sum_n (x^H C x - d)^2 with explicit
// entry loops; no shared kernels with objective().
double naive_objective(const HermitianMatrix& c, const MeasurementSet& meas,
                       std::size_t l);

struct FiniteDiffSpec {
  double step = 1e-6;
};

// Central differences of naive_objective over the independent real
// parameters {Re C_ii, Re C_ik, Im C_ik : i<k}, assembled in the same matrix
// convention as gradient(): off-diagonal entries are (d/dRe + i d/dIm)/2,
// the diagonal is taken raw.
HermitianMatrix fd_gradient(const HermitianMatrix& c, const MeasurementSet& meas,
                            std::size_t l, FiniteDiffSpec spec = {});

// Gauss-Jordan inverse with full pivoting.
ComplexMatrix direct_inverse(const ComplexMatrix& a);

// The matrix the ADMM per-row solve inverts, built naively entry by entry:
// (rho I)_{(ik),(ab)} + lambda * sum_n x_i conj(x_k) conj(x_a) x_b.
ComplexMatrix admm_system_matrix(const MeasurementSet& meas, double rho);

// Augmented Lagrangian g(C) + I_psd(D) + Re tr(E^H (D - C)) + rho ||D - C||_F^2
// with the PSD indicator realized as 0 / 1e12 via a shifted Cholesky test.
double lagrangian_value(const HermitianMatrix& c, const HermitianMatrix& d,
                        const HermitianMatrix& e, const MeasurementSet& meas,
                        std::size_t l, double rho);

// Standard normal upper tail via Taylor series (|x| < 2.5) or Lentz
// continued fraction (tail), relative error below 1e-12.
double qfunc_ref(double x);

}  // namespace phaselift::oracles
