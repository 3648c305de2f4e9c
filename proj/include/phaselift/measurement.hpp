#pragma once

#include "phaselift/complex_matrix.hpp"
#include "phaselift/flops.hpp"

namespace phaselift {

// Probe vectors x^(n), measured intensities d_l^(n), and the tradeoff
// constant lambda of the regularized lifted objective
//   g(C) = tr(C) + lambda * sum_n (x^(n)H C x^(n) - d^(n))^2.
// Intensities may be negative: the additive noise model permits it.
struct MeasurementSet {
  std::size_t dim = 0;
  double lambda = 0.0;
  std::vector<CVec> probes;                      // N vectors of length dim
  std::vector<std::vector<double>> intensities;  // L rows by N columns

  std::size_t num_probes() const { return probes.size(); }
  std::size_t num_rows() const { return intensities.size(); }
  void validate() const;  // throws ConfigError on inconsistency
};

// |h^H x|^2
double intensity_forward(const CVec& h, const CVec& x);

struct ObjectiveValue {
  double total = 0.0;
  double trace_term = 0.0;
  double residual_term = 0.0;
};

ObjectiveValue objective(const HermitianMatrix& c, const MeasurementSet& meas,
                         std::size_t l, FlopCounter* fc = nullptr,
                         Phase phase = Phase::kLineSearch);

// Matrix gradient of g at C:  I + 2*lambda * sum_n (x^H C x - d_n) x x^H.
// The quadratic forms are computed once per probe and reused.
HermitianMatrix gradient(const HermitianMatrix& c, const MeasurementSet& meas,
                         std::size_t l, FlopCounter* fc = nullptr);

}  // namespace phaselift
