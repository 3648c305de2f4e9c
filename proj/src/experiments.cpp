#include "phaselift/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phaselift/errors.hpp"
#include "phaselift/rng.hpp"

namespace phaselift {

namespace {

constexpr double kTargetBer = 1e-3;

SolverConfig make_config(const ScenarioParams& sc, Method method, int iters) {
  SolverConfig cfg;
  cfg.method = method;
  cfg.max_iters = iters;
  cfg.tau = sc.tau;
  cfg.t0 = sc.t0;
  cfg.rho = sc.rho;
  cfg.validate();
  return cfg;
}

void validate_scenario(const ScenarioParams& sc) {
  if (sc.dim == 0) throw ConfigError("scenario: dim must be positive");
  if (sc.num_probes == 0) throw ConfigError("scenario: num_probes must be positive");
  if (!(sc.lambda > 0.0)) throw ConfigError("scenario: lambda must be positive");
}

std::vector<int> default_checkpoints(Method m) {
  switch (m) {
    case Method::kProjectedGradient: return {1, 2, 3, 5, 7, 10, 15, 20, 30, 50, 70};
    case Method::kNesterov: return {1, 2, 3, 5, 7, 10, 15, 20, 30};
    case Method::kAdmm: return {1, 2, 3, 4, 5};
  }
  return {};
}

void validate_checkpoints(const std::vector<int>& ks) {
  if (ks.empty()) throw ConfigError("checkpoints: empty list");
  int prev = 0;
  for (int k : ks) {
    if (k <= prev) throw ConfigError("checkpoints: must be ascending and positive");
    prev = k;
  }
}

struct Tally {
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;

  void add(const BerPoint& p) {
    bits += p.bits_simulated;
    errors += p.errors_observed;
  }
  double ber() const {
    return bits ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
  }
};

}  // namespace

std::vector<MethodBudget> default_budgets() {
  return {{Method::kProjectedGradient, 70}, {Method::kNesterov, 30}, {Method::kAdmm, 5}};
}

ConvergenceResult run_convergence(const ConvergenceConfig& cfg) {
  validate_scenario(cfg.scenario);
  if (cfg.trials < 1) throw ConfigError("convergence: trials must be positive");
  if (cfg.bits_per_point == 0) throw ConfigError("convergence: bits_per_point is zero");
  if (!(cfg.sigma > 0.0)) throw ConfigError("convergence: sigma must be positive");
  if (cfg.reference_iters < 1) throw ConfigError("convergence: reference_iters < 1");

  const std::vector<Method> methods = {Method::kProjectedGradient, Method::kNesterov,
                                       Method::kAdmm};
  std::map<Method, std::vector<int>> grids;
  for (Method m : methods) {
    auto it = cfg.checkpoints.find(m);
    grids[m] = it != cfg.checkpoints.end() ? it->second : default_checkpoints(m);
    validate_checkpoints(grids[m]);
  }

  std::map<Method, std::vector<Tally>> tallies;
  for (Method m : methods) tallies[m].resize(grids[m].size());
  Tally reference_tally;

  for (int t = 0; t < cfg.trials; ++t) {
    const Channel ch = generate_channel(cfg.scenario.dim, derive_seed(cfg.seed, 10, t));
    const std::vector<CVec> training = generate_training(
        cfg.scenario.num_probes, cfg.scenario.dim, derive_seed(cfg.seed, 11, t));
    const MeasurementSet meas =
        measure_intensities(ch, training, cfg.sigma, derive_seed(cfg.seed, 12, t),
                            cfg.scenario.lambda);
    const std::uint64_t payload_seed = derive_seed(cfg.seed, 13, t);

    for (Method m : methods) {
      const std::vector<int>& grid = grids[m];
      const SolverConfig scfg = make_config(cfg.scenario, m, grid.back());
      const CheckpointedResult run = solve_all_rows_checkpointed(meas, scfg, grid);
      for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        ChannelEstimate est;
        est.rows = run.snapshots.at(grid[gi]);
        const ComplexMatrix f = precoder_from_estimate(est);
        tallies[m][gi].add(ber_ook(ch, f, cfg.sigma, cfg.bits_per_point, payload_seed));
      }
    }

    const ChannelEstimate ref = reference_solution(meas, nullptr, cfg.reference_iters);
    const ComplexMatrix fref = precoder_from_estimate(ref);
    reference_tally.add(ber_ook(ch, fref, cfg.sigma, cfg.bits_per_point, payload_seed));
  }

  ConvergenceResult out;
  out.sigma = cfg.sigma;
  out.reference_ber = reference_tally.ber();
  for (Method m : methods) {
    const std::string name = method_name(m);
    int reached = -1;
    for (std::size_t gi = 0; gi < grids[m].size(); ++gi) {
      const Tally& tal = tallies[m][gi];
      out.rows.push_back({name, grids[m][gi], tal.ber(), tal.bits, tal.errors});
      if (reached < 0 && tal.ber() <= 1.1 * out.reference_ber) reached = grids[m][gi];
    }
    out.iters_to_reference[name] = reached;
  }
  out.rows.push_back({"reference", cfg.reference_iters, reference_tally.ber(),
                      reference_tally.bits, reference_tally.errors});
  return out;
}

double snr_at_target_ber(const std::vector<SweepPoint>& points, double target_ber) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!(target_ber > 0.0)) return nan;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double b0 = points[i].ber;
    const double b1 = points[i + 1].ber;
    const double lo = std::min(b0, b1);
    const double hi = std::max(b0, b1);
    if (target_ber < lo || target_ber > hi || b0 == b1) continue;
    const double x0 = points[i].snr_db;
    const double x1 = points[i + 1].snr_db;
    if (b0 > 0.0 && b1 > 0.0) {
      const double frac =
          (std::log10(target_ber) - std::log10(b0)) / (std::log10(b1) - std::log10(b0));
      return x0 + (x1 - x0) * frac;
    }
    return x0 + (x1 - x0) * (target_ber - b0) / (b1 - b0);
  }
  return nan;
}

SweepResult run_ber_sweep(const SweepConfig& cfg) {
  validate_scenario(cfg.scenario);
  if (cfg.trials < 1) throw ConfigError("ber sweep: trials must be positive");
  if (cfg.bits_per_point == 0) throw ConfigError("ber sweep: bits_per_point is zero");
  if (!(cfg.snr_step_db > 0.0)) throw ConfigError("ber sweep: snr step must be positive");
  if (cfg.snr_stop_db < cfg.snr_start_db)
    throw ConfigError("ber sweep: snr range is empty");

  std::vector<double> grid;
  for (double s = cfg.snr_start_db; s <= cfg.snr_stop_db + 1e-9; s += cfg.snr_step_db)
    grid.push_back(s);

  const std::vector<MethodBudget> budgets =
      cfg.methods.empty() ? default_budgets() : cfg.methods;

  std::vector<std::vector<Tally>> method_tallies(budgets.size(),
                                                 std::vector<Tally>(grid.size()));
  std::vector<Tally> reference_tallies(grid.size());
  std::vector<Tally> cf_tallies(grid.size());

  for (int t = 0; t < cfg.trials; ++t) {
    const Channel ch = generate_channel(cfg.scenario.dim, derive_seed(cfg.seed, 20, t));
    const std::vector<CVec> training = generate_training(
        cfg.scenario.num_probes, cfg.scenario.dim, derive_seed(cfg.seed, 21, t));
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      const double sigma = sigma_from_snr(ch, training, grid[gi]);
      const MeasurementSet meas = measure_intensities(
          ch, training, sigma, derive_seed(cfg.seed, 22, t, gi), cfg.scenario.lambda);
      const std::uint64_t payload_seed = derive_seed(cfg.seed, 23, t, gi);

      for (std::size_t mi = 0; mi < budgets.size(); ++mi) {
        const SolverConfig scfg =
            make_config(cfg.scenario, budgets[mi].method, budgets[mi].iters);
        const ChannelEstimate est = estimate_channel(meas, scfg);
        const ComplexMatrix f = precoder_from_estimate(est);
        method_tallies[mi][gi].add(
            ber_ook(ch, f, sigma, cfg.bits_per_point, payload_seed, grid[gi]));
      }
      if (cfg.reference_iters > 0) {
        const ChannelEstimate ref = reference_solution(meas, nullptr, cfg.reference_iters);
        const ComplexMatrix fref = precoder_from_estimate(ref);
        reference_tallies[gi].add(
            ber_ook(ch, fref, sigma, cfg.bits_per_point, payload_seed, grid[gi]));
      }
      const double sigma_cf = std::pow(10.0, -grid[gi] / 20.0);
      cf_tallies[gi].add(crosstalk_free_reference(sigma_cf, cfg.bits_per_point,
                                                  payload_seed, grid[gi]));
    }
  }

  SweepResult out;
  auto push_curve = [&](const std::string& name, const std::vector<Tally>& tallies) {
    SweepCurve curve;
    curve.name = name;
    for (std::size_t gi = 0; gi < grid.size(); ++gi)
      curve.points.push_back(
          {grid[gi], tallies[gi].ber(), tallies[gi].bits, tallies[gi].errors});
    out.curves.push_back(std::move(curve));
  };
  for (std::size_t mi = 0; mi < budgets.size(); ++mi)
    push_curve(method_name(budgets[mi].method), method_tallies[mi]);
  if (cfg.reference_iters > 0) push_curve("reference", reference_tallies);
  push_curve("crosstalk_free", cf_tallies);

  SweepCurve analytic;
  analytic.name = "analytic";
  for (double s : grid)
    analytic.points.push_back({s, qfunc(0.5 * std::pow(10.0, s / 20.0)), 0, 0});
  out.curves.push_back(std::move(analytic));

  for (const SweepCurve& curve : out.curves)
    out.snr_at_target[curve.name] = snr_at_target_ber(curve.points, kTargetBer);
  const double cf_snr = out.snr_at_target.at("crosstalk_free");
  for (const SweepCurve& curve : out.curves)
    if (curve.name != "crosstalk_free" && curve.name != "analytic")
      out.penalty_db[curve.name] = out.snr_at_target.at(curve.name) - cf_snr;
  if (cfg.reference_iters > 0) {
    const double ref_snr = out.snr_at_target.at("reference");
    for (const MethodBudget& mb : budgets) {
      const std::string name = method_name(mb.method);
      out.delta_db_vs_reference[name] = out.snr_at_target.at(name) - ref_snr;
    }
  }
  return out;
}

FlopReport run_flop_report(const ScenarioParams& scenario,
                           const std::vector<MethodBudget>& methods, double sigma,
                           std::uint64_t seed) {
  validate_scenario(scenario);
  if (!(sigma >= 0.0)) throw ConfigError("flop report: sigma must be nonnegative");
  const Channel ch = generate_channel(scenario.dim, derive_seed(seed, 30));
  const std::vector<CVec> training =
      generate_training(scenario.num_probes, scenario.dim, derive_seed(seed, 31));
  const MeasurementSet meas =
      measure_intensities(ch, training, sigma, derive_seed(seed, 32), scenario.lambda);

  const std::vector<MethodBudget> budgets = methods.empty() ? default_budgets() : methods;
  FlopReport report;
  for (const MethodBudget& mb : budgets) {
    const SolverConfig cfg = make_config(scenario, mb.method, mb.iters);
    const SolverResult res = solve_all_rows(meas, cfg);
    FlopReportEntry entry;
    entry.method = method_name(mb.method);
    entry.iters = res.iterations_run;
    entry.flops = res.flops;
    const double total = static_cast<double>(res.flops.total());
    entry.gflops_at_1ms = total / 1e-3 / 1e9;
    entry.gflops_at_10ms = total / 1e-2 / 1e9;
    entry.gflops_at_100ms = total / 1e-1 / 1e9;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace phaselift
