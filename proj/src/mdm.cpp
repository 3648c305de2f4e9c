#include "phaselift/mdm.hpp"

#include <cmath>

#include "phaselift/errors.hpp"
#include "phaselift/rng.hpp"

namespace phaselift {

Channel generate_channel(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw ConfigError("generate_channel: dim must be positive");
  Rng rng(derive_seed(seed, 1));
  ComplexMatrix a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = rng.complex_normal();

  // Gram-Schmidt QR; multiplying each Q column by the phase of the matching
  // R diagonal makes the result Haar-distributed.
  ComplexMatrix q(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    CVec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = a(i, j);
    for (std::size_t p = 0; p < j; ++p) {
      cd proj = 0.0;
      for (std::size_t i = 0; i < dim; ++i) proj += std::conj(q(i, p)) * v[i];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * q(i, p);
    }
    const double nv = norm(v);
    if (nv < 1e-12) throw SolverError("generate_channel: rank-deficient Gaussian draw");
    // R(j,j) = q_j^H a_j before normalization equals nv (real, positive), so
    // the phase factor R(j,j)/|R(j,j)| is 1 and the normalized column stands.
    for (std::size_t i = 0; i < dim; ++i) q(i, j) = v[i] / nv;
  }
  Channel ch;
  ch.dim = dim;
  ch.matrix = std::move(q);
  return ch;
}

std::vector<CVec> generate_training(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 2));
  std::vector<CVec> out(n, CVec(dim));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t i = 0; i < dim; ++i) out[p][i] = rng.complex_normal();
  return out;
}

std::vector<CVec> channel_row_targets(const Channel& ch) {
  std::vector<CVec> rows(ch.dim, CVec(ch.dim));
  for (std::size_t l = 0; l < ch.dim; ++l)
    for (std::size_t i = 0; i < ch.dim; ++i) rows[l][i] = std::conj(ch.matrix(l, i));
  return rows;
}

MeasurementSet measure_intensities(const Channel& ch, const std::vector<CVec>& training,
                                   double sigma, std::uint64_t seed, double lambda) {
  if (sigma < 0.0) throw ConfigError("measure_intensities: negative sigma");
  Rng rng(derive_seed(seed, 3));
  MeasurementSet meas;
  meas.dim = ch.dim;
  meas.lambda = lambda;
  meas.probes = training;
  const std::vector<CVec> targets = channel_row_targets(ch);
  meas.intensities.assign(ch.dim, std::vector<double>(training.size()));
  for (std::size_t l = 0; l < ch.dim; ++l)
    for (std::size_t p = 0; p < training.size(); ++p)
      meas.intensities[l][p] =
          intensity_forward(targets[l], training[p]) + sigma * rng.normal();
  return meas;
}

namespace {

double mean_received_power(const Channel& ch, const std::vector<CVec>& training) {
  if (training.empty()) throw ConfigError("snr: empty training set");
  double acc = 0.0;
  for (const CVec& x : training) {
    const CVec y = matvec(ch.matrix, x);
    for (const cd& v : y) acc += std::norm(v);
  }
  return acc / static_cast<double>(training.size());
}

}  // namespace

double snr_from_sigma(const Channel& ch, const std::vector<CVec>& training, double sigma) {
  if (sigma <= 0.0) throw ConfigError("snr_from_sigma: sigma must be positive");
  const double amp = mean_received_power(ch, training) /
                     (static_cast<double>(ch.dim) * sigma);
  return 20.0 * std::log10(amp);
}

double sigma_from_snr(const Channel& ch, const std::vector<CVec>& training, double snr_db) {
  const double amp = std::pow(10.0, snr_db / 20.0);
  return mean_received_power(ch, training) / (static_cast<double>(ch.dim) * amp);
}

ChannelEstimate estimate_channel(const MeasurementSet& meas, const SolverConfig& cfg,
                                 FlopCounter* fc) {
  SolverResult res = solve_all_rows(meas, cfg);
  if (fc) *fc += res.flops;
  ChannelEstimate est;
  est.rows = std::move(res.estimates);
  return est;
}

ChannelEstimate reference_solution(const MeasurementSet& meas, FlopCounter* fc, int iters) {
  SolverConfig cfg;
  cfg.method = Method::kNesterov;
  cfg.max_iters = iters;
  return estimate_channel(meas, cfg, fc);
}

ComplexMatrix precoder_from_estimate(const ChannelEstimate& est) {
  const std::size_t dim = est.rows.size();
  ComplexMatrix f(dim, dim);
  for (std::size_t l = 0; l < dim; ++l) {
    if (est.rows[l].size() != dim)
      throw ConfigError("precoder_from_estimate: ragged estimate");
    const double nl = norm(est.rows[l]);
    if (nl < 1e-12)
      throw SolverError("precoder_from_estimate: near-zero estimate for row " +
                        std::to_string(l));
    for (std::size_t i = 0; i < dim; ++i) f(i, l) = est.rows[l][i] / nl;
  }
  return f;
}

BerPoint ber_ook(const Channel& ch, const ComplexMatrix& precoder, double sigma,
                 std::uint64_t bits, std::uint64_t seed, double snr_db) {
  const std::size_t dim = ch.dim;
  if (dim == 0 || bits == 0) throw ConfigError("ber_ook: empty simulation");
  const ComplexMatrix eff = matmul(ch.matrix, precoder);
  Rng rng(derive_seed(seed, 4));
  std::vector<int> tx(dim);
  CVec rx(dim);
  BerPoint out;
  out.snr_db = snr_db;
  const std::uint64_t symbols = (bits + dim - 1) / dim;
  for (std::uint64_t s = 0; s < symbols; ++s) {
    for (std::size_t i = 0; i < dim; ++i) tx[i] = rng.bit();
    for (std::size_t i = 0; i < dim; ++i) {
      cd acc = 0.0;
      for (std::size_t j = 0; j < dim; ++j)
        if (tx[j]) acc += eff(i, j);
      rx[i] = acc;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const double intensity = std::norm(rx[i]) + sigma * rng.normal();
      const int decided = intensity > 0.5 ? 1 : 0;
      ++out.bits_simulated;
      if (decided != tx[i]) ++out.errors_observed;
      if (out.bits_simulated == bits) break;
    }
  }
  out.ber = static_cast<double>(out.errors_observed) /
            static_cast<double>(out.bits_simulated);
  return out;
}

BerPoint crosstalk_free_reference(double sigma, std::uint64_t bits, std::uint64_t seed,
                                  double snr_db) {
  if (bits == 0) throw ConfigError("crosstalk_free_reference: empty simulation");
  Rng rng(derive_seed(seed, 5));
  BerPoint out;
  out.snr_db = snr_db;
  out.bits_simulated = bits;
  for (std::uint64_t b = 0; b < bits; ++b) {
    const int tx = rng.bit();
    const double intensity = static_cast<double>(tx) + sigma * rng.normal();
    const int decided = intensity > 0.5 ? 1 : 0;
    if (decided != tx) ++out.errors_observed;
  }
  out.ber = static_cast<double>(out.errors_observed) / static_cast<double>(bits);
  return out;
}

double aligned_error(const CVec& truth, const CVec& est) {
  const double nt = norm(truth);
  if (nt == 0.0) throw ConfigError("aligned_error: zero truth vector");
  const double ne = norm(est);
  const double overlap = std::abs(dot(est, truth));
  // ||truth - e^{i phi} est||^2 minimized at phi = arg(est^H truth).
  const double sq = nt * nt + ne * ne - 2.0 * overlap;
  return std::sqrt(sq > 0.0 ? sq : 0.0) / nt;
}

double qfunc(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

double qfunc_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("qfunc_inv: p must be in (0,1)");
  // Newton iterations on qfunc(x) = p from a crude logarithmic start.
  double x = p < 0.5 ? std::sqrt(-2.0 * std::log(p)) : 0.0;
  for (int it = 0; it < 60; ++it) {
    const double f = qfunc(x) - p;
    const double df = -std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    const double step = f / df;
    x -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(x))) break;
  }
  return x;
}

}  // namespace phaselift
