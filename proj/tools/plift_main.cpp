// Command-line front end: solve a stored measurement set, or run the
// channel-estimation experiments (convergence, ber-sweep, flops).
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "phaselift/errors.hpp"
#include "phaselift/experiments.hpp"
#include "phaselift/io.hpp"

namespace {

using nlohmann::json;
using namespace phaselift;

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file " + path + ": not a JSON object");
  return j;
}

// Config values fill in flags the command line left unset.
template <class T>
void merge(const json& cfg, const char* key, CLI::App* sub, const std::string& flag,
           T& target) {
  if (sub->count(flag) > 0 || !cfg.contains(key)) return;
  try {
    target = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const std::string& item : split(s, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw ConfigError("bad integer list entry: " + item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("bad integer list entry: " + item);
    }
  }
  return out;
}

void parse_snr_grid(const std::string& s, double* start, double* stop, double* step) {
  const std::vector<std::string> parts = split(s, ':');
  if (parts.size() != 3) throw ConfigError("snr grid must be start:stop:step, got " + s);
  try {
    std::size_t u0 = 0, u1 = 0, u2 = 0;
    *start = std::stod(parts[0], &u0);
    *stop = std::stod(parts[1], &u1);
    *step = std::stod(parts[2], &u2);
    if (u0 != parts[0].size() || u1 != parts[1].size() || u2 != parts[2].size())
      throw ConfigError("snr grid must be start:stop:step, got " + s);
  } catch (const std::exception&) {
    throw ConfigError("snr grid must be start:stop:step, got " + s);
  }
}

std::vector<MethodBudget> parse_methods(const std::string& spec, int iters_override) {
  std::vector<MethodBudget> out;
  if (spec == "all") {
    out = default_budgets();
    if (iters_override > 0)
      for (MethodBudget& b : out) b.iters = iters_override;
    return out;
  }
  for (const std::string& name : split(spec, ','))
    out.push_back({method_from_name(name), iters_override});
  if (out.empty()) throw ConfigError("empty method list");
  return out;
}

std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }

json flops_to_json(const FlopCounter& fc) {
  json j;
  for (int p = 0; p < static_cast<int>(Phase::kCount_); ++p)
    j[phase_name(static_cast<Phase>(p))] = fc.get(static_cast<Phase>(p));
  j["total"] = fc.total();
  return j;
}

struct ScenarioFlags {
  std::size_t dim = 6;
  std::size_t probes = 300;
  double lambda = 10.0;
  double tau = 0.3;
  double t0 = 1.0;
  double rho = 1.0;

  void add_to(CLI::App* sub) {
    sub->add_option("--dim", dim, "channel dimension");
    sub->add_option("--probes", probes, "training vectors per channel");
    sub->add_option("--lambda", lambda, "data-misfit weight");
    sub->add_option("--tau", tau, "line search shrink factor");
    sub->add_option("--t0", t0, "line search initial step");
    sub->add_option("--rho", rho, "admm penalty weight");
  }
  void merge_from(const json& cfg, CLI::App* sub) {
    merge(cfg, "dim", sub, "--dim", dim);
    merge(cfg, "probes", sub, "--probes", probes);
    merge(cfg, "lambda", sub, "--lambda", lambda);
    merge(cfg, "tau", sub, "--tau", tau);
    merge(cfg, "t0", sub, "--t0", t0);
    merge(cfg, "rho", sub, "--rho", rho);
  }
  ScenarioParams params() const { return {dim, probes, lambda, tau, t0, rho}; }
};

struct SeedFlag {
  std::uint64_t seed = 0;

  void add_to(CLI::App* sub) { sub->add_option("--seed", seed, "master seed (required)"); }
  void merge_from(const json& cfg, CLI::App* sub) {
    merge(cfg, "seed", sub, "--seed", seed);
    if (sub->count("--seed") == 0 && !cfg.contains("seed"))
      throw ConfigError("--seed is required");
  }
};

void require_out(const std::string& out) {
  if (out.empty()) throw ConfigError("--out is required");
}

int cmd_solve(CLI::App* sub, const std::string& config_path, const std::string& input,
              const std::string& out, const std::string& method_name_in, int iters,
              ScenarioFlags& sc) {
  json cfg = config_path.empty() ? json::object() : load_config(config_path);
  std::string in_path = input;
  std::string out_prefix = out;
  std::string mname = method_name_in;
  int niters = iters;
  merge(cfg, "input", sub, "--input", in_path);
  merge(cfg, "out", sub, "--out", out_prefix);
  merge(cfg, "method", sub, "--method", mname);
  merge(cfg, "iters", sub, "--iters", niters);
  sc.merge_from(cfg, sub);
  if (in_path.empty()) throw ConfigError("--input is required");
  require_out(out_prefix);

  const MeasurementSet meas = read_measurement_set(in_path);
  SolverConfig scfg;
  scfg.method = method_from_name(mname);
  scfg.max_iters = niters;
  scfg.tau = sc.tau;
  scfg.t0 = sc.t0;
  scfg.rho = sc.rho;
  scfg.validate();
  const SolverResult res = solve_all_rows(meas, scfg);

  std::vector<std::vector<std::string>> est_rows;
  for (std::size_t l = 0; l < res.estimates.size(); ++l)
    for (std::size_t i = 0; i < res.estimates[l].size(); ++i)
      est_rows.push_back({std::to_string(l), std::to_string(i),
                          fmt_double(res.estimates[l][i].real()),
                          fmt_double(res.estimates[l][i].imag())});
  write_csv(out_prefix + ".estimates.csv", {"row", "entry", "re", "im"}, est_rows);

  std::vector<std::vector<std::string>> trace_rows;
  for (std::size_t l = 0; l < res.traces.size(); ++l)
    for (std::size_t k = 0; k < res.traces[l].objective.size(); ++k)
      trace_rows.push_back({std::to_string(l), std::to_string(k + 1),
                            fmt_double(res.traces[l].objective[k])});
  write_csv(out_prefix + ".trace.csv", {"row", "iter", "objective"}, trace_rows);

  json summary;
  summary["method"] = mname;
  summary["iters"] = res.iterations_run;
  summary["dim"] = meas.dim;
  summary["rows"] = meas.num_rows();
  json finals = json::array(), stagn = json::array();
  for (const RowTrace& tr : res.traces) {
    finals.push_back(tr.objective.empty() ? 0.0 : tr.objective.back());
    stagn.push_back(tr.stagnation_hits);
  }
  summary["objective_final"] = std::move(finals);
  summary["stagnation_hits"] = std::move(stagn);
  summary["flops"] = flops_to_json(res.flops);
  write_text_file(out_prefix + ".summary.json", summary.dump(1) + "\n");

  std::cout << "solved " << meas.num_rows() << " rows with " << mname << " ("
            << res.iterations_run << " iterations)\n";
  for (std::size_t l = 0; l < res.traces.size(); ++l)
    std::cout << "  row " << l << ": objective "
              << fmt_double(res.traces[l].objective.back()) << ", stagnation hits "
              << res.traces[l].stagnation_hits << "\n";
  std::cout << "flops total " << res.flops.total() << "\n";
  return 0;
}

int cmd_convergence(CLI::App* sub, const std::string& config_path, const std::string& out,
                    ScenarioFlags& sc, SeedFlag& seed, double sigma, int trials,
                    std::uint64_t bits, int reference_iters, std::string cps_pg,
                    std::string cps_nesterov, std::string cps_admm) {
  json cfg = config_path.empty() ? json::object() : load_config(config_path);
  std::string out_prefix = out;
  merge(cfg, "out", sub, "--out", out_prefix);
  sc.merge_from(cfg, sub);
  seed.merge_from(cfg, sub);
  merge(cfg, "sigma", sub, "--sigma", sigma);
  merge(cfg, "trials", sub, "--trials", trials);
  merge(cfg, "bits", sub, "--bits", bits);
  merge(cfg, "reference_iters", sub, "--reference-iters", reference_iters);
  merge(cfg, "checkpoints_pg", sub, "--checkpoints-pg", cps_pg);
  merge(cfg, "checkpoints_nesterov", sub, "--checkpoints-nesterov", cps_nesterov);
  merge(cfg, "checkpoints_admm", sub, "--checkpoints-admm", cps_admm);
  require_out(out_prefix);

  ConvergenceConfig ccfg;
  ccfg.scenario = sc.params();
  ccfg.sigma = sigma;
  ccfg.trials = trials;
  ccfg.bits_per_point = bits;
  ccfg.seed = seed.seed;
  ccfg.reference_iters = reference_iters;
  if (!cps_pg.empty())
    ccfg.checkpoints[Method::kProjectedGradient] = parse_int_list(cps_pg);
  if (!cps_nesterov.empty())
    ccfg.checkpoints[Method::kNesterov] = parse_int_list(cps_nesterov);
  if (!cps_admm.empty()) ccfg.checkpoints[Method::kAdmm] = parse_int_list(cps_admm);

  const ConvergenceResult res = run_convergence(ccfg);

  std::vector<std::vector<std::string>> rows;
  for (const ConvergenceRow& r : res.rows)
    rows.push_back({r.method, std::to_string(r.iters), fmt_double(r.ber),
                    fmt_u64(r.bits), fmt_u64(r.errors)});
  write_csv(out_prefix + ".csv", {"method", "iters", "ber", "bits", "errors"}, rows);

  json summary;
  summary["sigma"] = res.sigma;
  summary["reference_ber"] = res.reference_ber;
  summary["iters_to_reference"] = res.iters_to_reference;
  write_text_file(out_prefix + ".summary.json", summary.dump(1) + "\n");

  std::cout << "reference ber " << fmt_double(res.reference_ber) << " at sigma "
            << fmt_double(res.sigma) << "\n";
  for (const auto& [name, k] : res.iters_to_reference)
    std::cout << "  " << name << ": reaches reference at iteration " << k << "\n";
  return 0;
}

int cmd_ber_sweep(CLI::App* sub, const std::string& config_path, const std::string& out,
                  ScenarioFlags& sc, SeedFlag& seed, std::string snr_grid,
                  std::string methods, int iters, int reference_iters, int trials,
                  std::uint64_t bits) {
  json cfg = config_path.empty() ? json::object() : load_config(config_path);
  std::string out_prefix = out;
  merge(cfg, "out", sub, "--out", out_prefix);
  sc.merge_from(cfg, sub);
  seed.merge_from(cfg, sub);
  merge(cfg, "snr_grid", sub, "--snr-grid", snr_grid);
  merge(cfg, "methods", sub, "--methods", methods);
  merge(cfg, "iters", sub, "--iters", iters);
  merge(cfg, "reference_iters", sub, "--reference-iters", reference_iters);
  merge(cfg, "trials", sub, "--trials", trials);
  merge(cfg, "bits", sub, "--bits", bits);
  require_out(out_prefix);

  SweepConfig wcfg;
  wcfg.scenario = sc.params();
  parse_snr_grid(snr_grid, &wcfg.snr_start_db, &wcfg.snr_stop_db, &wcfg.snr_step_db);
  wcfg.methods = parse_methods(methods, iters);
  wcfg.reference_iters = reference_iters;
  wcfg.trials = trials;
  wcfg.bits_per_point = bits;
  wcfg.seed = seed.seed;

  const SweepResult res = run_ber_sweep(wcfg);

  std::vector<std::vector<std::string>> rows;
  for (const SweepCurve& curve : res.curves)
    for (const SweepPoint& p : curve.points)
      rows.push_back({curve.name, fmt_double(p.snr_db), fmt_double(p.ber),
                      fmt_u64(p.bits), fmt_u64(p.errors)});
  write_csv(out_prefix + ".csv", {"curve", "snr_db", "ber", "bits", "errors"}, rows);

  json summary;
  summary["snr_at_target"] = res.snr_at_target;
  summary["penalty_db"] = res.penalty_db;
  summary["delta_db_vs_reference"] = res.delta_db_vs_reference;
  write_text_file(out_prefix + ".summary.json", summary.dump(1) + "\n");

  for (const auto& [name, v] : res.snr_at_target)
    std::cout << name << ": snr at ber 1e-3 = " << fmt_double(v) << " dB\n";
  for (const auto& [name, v] : res.penalty_db)
    std::cout << name << ": penalty " << fmt_double(v) << " dB\n";
  for (const auto& [name, v] : res.delta_db_vs_reference)
    std::cout << name << ": vs reference " << fmt_double(v) << " dB\n";
  return 0;
}

int cmd_flops(CLI::App* sub, const std::string& config_path, const std::string& out,
              ScenarioFlags& sc, SeedFlag& seed, std::string methods, int iters,
              double sigma) {
  json cfg = config_path.empty() ? json::object() : load_config(config_path);
  std::string out_prefix = out;
  merge(cfg, "out", sub, "--out", out_prefix);
  sc.merge_from(cfg, sub);
  seed.merge_from(cfg, sub);
  merge(cfg, "methods", sub, "--methods", methods);
  merge(cfg, "iters", sub, "--iters", iters);
  merge(cfg, "sigma", sub, "--sigma", sigma);
  require_out(out_prefix);

  const FlopReport report =
      run_flop_report(sc.params(), parse_methods(methods, iters), sigma, seed.seed);

  std::vector<std::string> header = {"method", "iters"};
  for (int p = 0; p < static_cast<int>(Phase::kCount_); ++p)
    header.push_back(phase_name(static_cast<Phase>(p)));
  header.insert(header.end(),
                {"total", "gflops_at_1ms", "gflops_at_10ms", "gflops_at_100ms"});
  std::vector<std::vector<std::string>> rows;
  for (const FlopReportEntry& e : report.entries) {
    std::vector<std::string> row = {e.method, std::to_string(e.iters)};
    for (int p = 0; p < static_cast<int>(Phase::kCount_); ++p)
      row.push_back(fmt_u64(e.flops.get(static_cast<Phase>(p))));
    row.push_back(fmt_u64(e.flops.total()));
    row.push_back(fmt_double(e.gflops_at_1ms));
    row.push_back(fmt_double(e.gflops_at_10ms));
    row.push_back(fmt_double(e.gflops_at_100ms));
    rows.push_back(std::move(row));
  }
  write_csv(out_prefix + ".csv", header, rows);

  json summary = json::array();
  for (const FlopReportEntry& e : report.entries) {
    json je;
    je["method"] = e.method;
    je["iters"] = e.iters;
    je["flops"] = flops_to_json(e.flops);
    je["gflops_at_1ms"] = e.gflops_at_1ms;
    je["gflops_at_10ms"] = e.gflops_at_10ms;
    je["gflops_at_100ms"] = e.gflops_at_100ms;
    summary.push_back(std::move(je));
  }
  write_text_file(out_prefix + ".summary.json", summary.dump(1) + "\n");

  for (const FlopReportEntry& e : report.entries)
    std::cout << e.method << ": " << e.flops.total() << " flops over " << e.iters
              << " iterations, " << fmt_double(e.gflops_at_1ms)
              << " Gflop/s to finish in 1 ms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lifted phase retrieval and mode-multiplexed channel estimation"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON file supplying defaults for flags")
      ->expected(1);

  CLI::App* solve = app.add_subcommand("solve", "solve a stored measurement set");
  std::string solve_input, solve_out, solve_method = "nesterov";
  int solve_iters = 0;
  ScenarioFlags solve_sc;
  solve->add_option("--input", solve_input, "measurement set JSON");
  solve->add_option("--out", solve_out, "output path prefix");
  solve->add_option("--method", solve_method, "pg, nesterov, or admm");
  solve->add_option("--iters", solve_iters, "iteration budget (0 = per-method default)");
  solve_sc.add_to(solve);

  CLI::App* conv = app.add_subcommand("convergence", "ber versus iteration count");
  std::string conv_out;
  ScenarioFlags conv_sc;
  SeedFlag conv_seed;
  double conv_sigma = kSigmaAtBer1e3;
  int conv_trials = 20, conv_ref = kReferenceIters;
  std::uint64_t conv_bits = 50000;
  std::string conv_cps_pg, conv_cps_nesterov, conv_cps_admm;
  conv->add_option("--out", conv_out, "output path prefix");
  conv_sc.add_to(conv);
  conv_seed.add_to(conv);
  conv->add_option("--sigma", conv_sigma, "intensity noise level");
  conv->add_option("--trials", conv_trials, "channel realizations");
  conv->add_option("--bits", conv_bits, "payload bits per trial and checkpoint");
  conv->add_option("--reference-iters", conv_ref, "long-run reference budget");
  conv->add_option("--checkpoints-pg", conv_cps_pg, "comma list of iteration counts");
  conv->add_option("--checkpoints-nesterov", conv_cps_nesterov,
                   "comma list of iteration counts");
  conv->add_option("--checkpoints-admm", conv_cps_admm, "comma list of iteration counts");

  CLI::App* sweep = app.add_subcommand("ber-sweep", "ber versus snr");
  std::string sweep_out, sweep_grid = "13:18:0.5", sweep_methods = "all";
  ScenarioFlags sweep_sc;
  SeedFlag sweep_seed;
  int sweep_iters = 0, sweep_ref = kReferenceIters, sweep_trials = 20;
  std::uint64_t sweep_bits = 200000;
  sweep->add_option("--out", sweep_out, "output path prefix");
  sweep_sc.add_to(sweep);
  sweep_seed.add_to(sweep);
  sweep->add_option("--snr-grid", sweep_grid, "start:stop:step in dB");
  sweep->add_option("--methods", sweep_methods, "all or comma list of pg,nesterov,admm");
  sweep->add_option("--iters", sweep_iters, "budget override for all listed methods");
  sweep->add_option("--reference-iters", sweep_ref, "long-run reference budget (0 = off)");
  sweep->add_option("--trials", sweep_trials, "channel realizations");
  sweep->add_option("--bits", sweep_bits, "payload bits per trial and grid point");

  CLI::App* flops = app.add_subcommand("flops", "work per estimation pass");
  std::string flops_out, flops_methods = "all";
  ScenarioFlags flops_sc;
  SeedFlag flops_seed;
  int flops_iters = 0;
  double flops_sigma = kSigmaAtBer1e3;
  flops->add_option("--out", flops_out, "output path prefix");
  flops_sc.add_to(flops);
  flops_seed.add_to(flops);
  flops->add_option("--methods", flops_methods, "all or comma list of pg,nesterov,admm");
  flops->add_option("--iters", flops_iters, "budget override for all listed methods");
  flops->add_option("--sigma", flops_sigma, "intensity noise level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kExitConfigError);
  }

  try {
    if (solve->parsed())
      return cmd_solve(solve, config_path, solve_input, solve_out, solve_method,
                       solve_iters, solve_sc);
    if (conv->parsed())
      return cmd_convergence(conv, config_path, conv_out, conv_sc, conv_seed, conv_sigma,
                             conv_trials, conv_bits, conv_ref, conv_cps_pg,
                             conv_cps_nesterov, conv_cps_admm);
    if (sweep->parsed())
      return cmd_ber_sweep(sweep, config_path, sweep_out, sweep_sc, sweep_seed, sweep_grid,
                           sweep_methods, sweep_iters, sweep_ref, sweep_trials, sweep_bits);
    if (flops->parsed())
      return cmd_flops(flops, config_path, flops_out, flops_sc, flops_seed, flops_methods,
                       flops_iters, flops_sigma);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kExitConfigError);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kExitIoError);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kExitSolverError);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
