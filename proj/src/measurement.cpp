#include "phaselift/measurement.hpp"

#include <cmath>

#include "phaselift/errors.hpp"

namespace phaselift {

void MeasurementSet::validate() const {
  if (dim == 0) throw ConfigError("measurement set: dim must be positive");
  if (!(lambda > 0.0)) throw ConfigError("measurement set: lambda must be positive");
  if (probes.empty()) throw ConfigError("measurement set: no probes");
  for (const auto& x : probes)
    if (x.size() != dim) throw ConfigError("measurement set: probe length != dim");
  if (intensities.empty()) throw ConfigError("measurement set: no intensity rows");
  for (const auto& row : intensities)
    if (row.size() != probes.size())
      throw ConfigError("measurement set: intensity row length != probe count");
  for (const auto& x : probes)
    for (const auto& v : x)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw ConfigError("measurement set: non-finite probe entry");
  for (const auto& row : intensities)
    for (double v : row)
      if (!std::isfinite(v)) throw ConfigError("measurement set: non-finite intensity");
}

double intensity_forward(const CVec& h, const CVec& x) {
  if (h.size() != x.size()) throw ConfigError("intensity_forward: length mismatch");
  return std::norm(dot(h, x));
}

namespace {

void check_row(const HermitianMatrix& c, const MeasurementSet& meas, std::size_t l) {
  if (c.dim() != meas.dim) throw ConfigError("objective: matrix dim != measurement dim");
  if (l >= meas.num_rows()) throw ConfigError("objective: row index out of range");
}

// Full complex quadratic form; the imaginary part doubles as a drift guard.
cd quad_full(const HermitianMatrix& c, const CVec& x) {
  const std::size_t n = x.size();
  CVec cx(n, cd(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    cd s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += c(i, j) * x[j];
    cx[i] = s;
  }
  cd q = 0.0;
  for (std::size_t i = 0; i < n; ++i) q += std::conj(x[i]) * cx[i];
  return q;
}

double quad_checked(const HermitianMatrix& c, const CVec& x) {
  const cd q = quad_full(c, x);
  if (std::abs(q.imag()) > 1e-10 * (1.0 + std::abs(q.real())))
    throw SolverError("objective: quadratic form drifted off the real axis");
  return q.real();
}

}  // namespace

ObjectiveValue objective(const HermitianMatrix& c, const MeasurementSet& meas,
                         std::size_t l, FlopCounter* fc, Phase phase) {
  check_row(c, meas, l);
  const std::size_t n = meas.dim;
  ObjectiveValue out;
  out.trace_term = c.trace();
  for (std::size_t p = 0; p < meas.num_probes(); ++p) {
    const double q = quad_checked(c, meas.probes[p]);
    const double r = q - meas.intensities[l][p];
    out.residual_term += r * r;
  }
  out.residual_term *= meas.lambda;
  out.total = out.trace_term + out.residual_term;
  count_flops(fc, phase,
              meas.num_probes() * (static_cast<std::uint64_t>(n) * n * kCMulAdd +
                                   n * kCMulAdd + 4) +
                  n + 2);
  return out;
}

HermitianMatrix gradient(const HermitianMatrix& c, const MeasurementSet& meas,
                         std::size_t l, FlopCounter* fc) {
  check_row(c, meas, l);
  const std::size_t n = meas.dim;
  HermitianMatrix g = HermitianMatrix::identity(n);
  // Accumulate sum_n s_n x x^H over the upper triangle, s_n real.
  ComplexMatrix acc(n, n);
  for (std::size_t p = 0; p < meas.num_probes(); ++p) {
    const CVec& x = meas.probes[p];
    const double q = quad_checked(c, x);
    const double s = 2.0 * meas.lambda * (q - meas.intensities[l][p]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) acc(i, j) += s * (x[i] * std::conj(x[j]));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g.set(i, j, g(i, j) + acc(i, j));
  count_flops(fc, Phase::kGradient,
              meas.num_probes() * (static_cast<std::uint64_t>(n) * n * kCMulAdd +
                                   n * kCMulAdd + 3 +
                                   (static_cast<std::uint64_t>(n) * (n + 1) / 2) *
                                       (kCMul + 2 + kCAdd)) +
                  static_cast<std::uint64_t>(n) * (n + 1));
  return g;
}

}  // namespace phaselift
