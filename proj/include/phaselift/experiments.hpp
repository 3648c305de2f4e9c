#pragma once

#include <map>
#include <string>

#include "phaselift/mdm.hpp"

namespace phaselift {

struct ScenarioParams {
  std::size_t dim = 6;
  std::size_t num_probes = 300;
  double lambda = 10.0;
  double tau = 0.3;
  double t0 = 1.0;
  double rho = 1.0;
};

struct MethodBudget {
  Method method;
  int iters;  // 0 selects the per-method default
};

std::vector<MethodBudget> default_budgets();  // pg 70, nesterov 30, admm 5

// BER as a function of iteration count at a fixed noise level, against the
// pooled reference BER. Channel, training, measurement noise, and payload
// randomness are shared across methods within a trial, so curves are paired.
struct ConvergenceConfig {
  ScenarioParams scenario;
  std::map<Method, std::vector<int>> checkpoints;  // empty selects defaults
  double sigma = kSigmaAtBer1e3;
  int trials = 20;
  std::uint64_t bits_per_point = 50000;  // per trial and checkpoint
  std::uint64_t seed = 1;
  int reference_iters = kReferenceIters;
};

struct ConvergenceRow {
  std::string method;
  int iters;
  double ber;
  std::uint64_t bits;
  std::uint64_t errors;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;  // per (method, checkpoint), then reference
  double reference_ber = 0.0;
  double sigma = 0.0;
  // Smallest checkpoint whose pooled BER is within 10% of the reference BER;
  // -1 when never reached.
  std::map<std::string, int> iters_to_reference;
};

ConvergenceResult run_convergence(const ConvergenceConfig& cfg);

// BER versus SNR for each method plus the long-run reference, the empirical
// crosstalk-free link, and its analytic tail.
struct SweepConfig {
  ScenarioParams scenario;
  double snr_start_db = 13.0;
  double snr_stop_db = 18.0;
  double snr_step_db = 0.5;
  std::vector<MethodBudget> methods;  // empty selects defaults
  int reference_iters = kReferenceIters;  // 0 disables the reference curve
  int trials = 20;
  std::uint64_t bits_per_point = 200000;  // per trial and grid point
  std::uint64_t seed = 1;
};

struct SweepPoint {
  double snr_db;
  double ber;
  std::uint64_t bits;
  std::uint64_t errors;
};

struct SweepCurve {
  std::string name;
  std::vector<SweepPoint> points;
};

struct SweepResult {
  std::vector<SweepCurve> curves;
  std::map<std::string, double> snr_at_target;        // dB at BER 1e-3, NaN if unbracketed
  std::map<std::string, double> penalty_db;           // vs crosstalk-free curve
  std::map<std::string, double> delta_db_vs_reference;
};

SweepResult run_ber_sweep(const SweepConfig& cfg);

// SNR (dB) at which the curve crosses the target BER, linearly interpolated
// in (snr, log10 ber); NaN when the curve never brackets the target.
double snr_at_target_ber(const std::vector<SweepPoint>& points, double target_ber);

// Flop totals for one full channel-estimation pass per method, plus the
// sustained rate needed to refresh the estimate once per interval.
struct FlopReportEntry {
  std::string method;
  int iters;
  FlopCounter flops;
  double gflops_at_1ms;
  double gflops_at_10ms;
  double gflops_at_100ms;
};

struct FlopReport {
  std::vector<FlopReportEntry> entries;
};

FlopReport run_flop_report(const ScenarioParams& scenario,
                           const std::vector<MethodBudget>& methods, double sigma,
                           std::uint64_t seed);

}  // namespace phaselift
