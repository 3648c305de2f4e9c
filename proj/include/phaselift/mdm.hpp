#pragma once

#include <cstdint>

#include "phaselift/solvers.hpp"

namespace phaselift {

// Noise level at which the crosstalk-free on-off-keyed link sits at BER 1e-3:
// 0.5 / qfunc_inv(1e-3).
inline constexpr double kSigmaAtBer1e3 = 0.161800133602269;

struct Channel {
  std::size_t dim = 0;
  ComplexMatrix matrix;  // unitary
};

// Haar-distributed unitary: QR of a Ginibre draw with the R-diagonal phase fix.
Channel generate_channel(std::size_t dim, std::uint64_t seed);

// N i.i.d. training vectors, circularly symmetric Gaussian entries with unit
// variance per complex entry.
std::vector<CVec> generate_training(std::size_t n, std::size_t dim, std::uint64_t seed);

// Row l of the channel sensed by probe x is |row_l(H) . x|^2; the matching
// lifted unknown is h_l = conj(row_l(H)). Additive real Gaussian noise of
// standard deviation sigma lands on every intensity.
std::vector<CVec> channel_row_targets(const Channel& ch);
MeasurementSet measure_intensities(const Channel& ch, const std::vector<CVec>& training,
                                   double sigma, std::uint64_t seed, double lambda);

// Electrical SNR: ( mean_n sum_i |(H x^(n))_i|^2 / (dim * sigma) )^2, in dB.
double snr_from_sigma(const Channel& ch, const std::vector<CVec>& training, double sigma);
double sigma_from_snr(const Channel& ch, const std::vector<CVec>& training, double snr_db);

struct ChannelEstimate {
  std::vector<CVec> rows;  // estimate of h_l per row, up to per-row phase
};

ChannelEstimate estimate_channel(const MeasurementSet& meas, const SolverConfig& cfg,
                                 FlopCounter* fc = nullptr);

// Nesterov run long enough to stand in for the converged optimum.
inline constexpr int kReferenceIters = 500;
ChannelEstimate reference_solution(const MeasurementSet& meas, FlopCounter* fc = nullptr,
                                   int iters = kReferenceIters);

// Transmit-side precoder: column l is the normalized estimate of h_l, so the
// effective channel H*F is diagonal up to estimation error and per-row phase.
ComplexMatrix precoder_from_estimate(const ChannelEstimate& est);

struct BerPoint {
  double snr_db = 0.0;
  double ber = 0.0;
  std::uint64_t bits_simulated = 0;
  std::uint64_t errors_observed = 0;
};

// On-off keying over all modes: equiprobable bits, amplitude 1 or 0 per mode,
// per-mode received intensity |(H F s)_i|^2 plus real Gaussian noise, decision
// threshold 0.5. bits counts individual mode-bits.
BerPoint ber_ook(const Channel& ch, const ComplexMatrix& precoder, double sigma,
                 std::uint64_t bits, std::uint64_t seed, double snr_db = 0.0);

// Same detector with H = F = I; analytic BER is qfunc(0.5 / sigma).
BerPoint crosstalk_free_reference(double sigma, std::uint64_t bits, std::uint64_t seed,
                                  double snr_db = 0.0);

// min over global phase of ||truth - e^{i phi} est|| / ||truth||.
double aligned_error(const CVec& truth, const CVec& est);

// Standard normal upper tail and its inverse.
double qfunc(double x);
double qfunc_inv(double p);

}  // namespace phaselift
