#include "phaselift/solvers.hpp"

#include <cmath>

#include "phaselift/eig.hpp"
#include "phaselift/errors.hpp"

namespace phaselift {

const char* method_name(Method m) {
  switch (m) {
    case Method::kProjectedGradient: return "pg";
    case Method::kNesterov: return "nesterov";
    case Method::kAdmm: return "admm";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "pg") return Method::kProjectedGradient;
  if (name == "nesterov") return Method::kNesterov;
  if (name == "admm") return Method::kAdmm;
  throw ConfigError("unknown method: " + name);
}

int SolverConfig::resolved_iters() const {
  if (max_iters > 0) return max_iters;
  switch (method) {
    case Method::kProjectedGradient: return 70;
    case Method::kNesterov: return 30;
    case Method::kAdmm: return 5;
  }
  return 0;
}

void SolverConfig::validate() const {
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("solver config: tau must be in (0,1)");
  if (!(t0 > 0.0)) throw ConfigError("solver config: t0 must be positive");
  if (!(rho > 0.0)) throw ConfigError("solver config: rho must be positive");
  if (backtrack_cap < 0) throw ConfigError("solver config: negative backtrack cap");
  if (max_iters < 0) throw ConfigError("solver config: negative iteration count");
}

namespace {

// C - t*G; cost billed to the line search.
HermitianMatrix step_candidate(const HermitianMatrix& c, const HermitianMatrix& g,
                               double t, FlopCounter* fc) {
  HermitianMatrix cand = c;
  cand.add_scaled(g, -t);
  count_flops(fc, Phase::kLineSearch, 4 * static_cast<std::uint64_t>(c.dim()) * c.dim());
  return cand;
}

}  // namespace

BacktrackResult backtrack_step(const HermitianMatrix& c, const HermitianMatrix& g,
                               double g_at_c, double t0, double tau, int cap,
                               const std::function<double(const HermitianMatrix&)>& eval) {
  BacktrackResult out;
  if (g.frobenius_norm() == 0.0) {
    // Zero direction: the trial point is the current point at any t, the
    // shrink loop never engages.
    out.t = t0;
    return out;
  }
  double t = t0;
  for (int j = 0; j <= cap; ++j) {
    HermitianMatrix cand = c;
    cand.add_scaled(g, -t);
    ++out.evals;
    if (eval(cand) < g_at_c) {
      out.t = t;
      return out;
    }
    if (j < cap) t *= tau;
  }
  out.t = t;
  out.stagnated = true;
  return out;
}

namespace {

// Line search as used by the solvers: also hands back the accepted candidate
// so the caller does not rebuild it. Along the ray C - t*G the trace and the
// per-probe quadratic forms are linear in t, so both profiles are computed
// once and each trial step costs a few flops per probe; the trial matrix is
// only assembled for the step that is kept.
BacktrackResult search_step(const HermitianMatrix& c, const HermitianMatrix& g,
                            double g_at_c, const SolverConfig& cfg,
                            const MeasurementSet& meas, std::size_t l, FlopCounter* fc,
                            HermitianMatrix* accepted) {
  BacktrackResult out;
  if (g.frobenius_norm() == 0.0) {
    out.t = cfg.t0;
    *accepted = c;
    return out;
  }
  const std::size_t n = meas.dim;
  const std::size_t np = meas.num_probes();
  std::vector<double> qc(np), qg(np);
  for (std::size_t p = 0; p < np; ++p) {
    qc[p] = quadratic_form(c, meas.probes[p]);
    qg[p] = quadratic_form(g, meas.probes[p]);
  }
  const double trace_c = c.trace();
  const double trace_g = g.trace();
  // quadratic_form walks the upper triangle: 14 flops per off-diagonal pair
  // (two complex multiplies, scale, accumulate) and 5 per diagonal entry.
  count_flops(fc, Phase::kLineSearch,
              2 * (np * (7 * static_cast<std::uint64_t>(n) * n - 2 * n) + n));
  const auto ray_value = [&](double t) {
    double resid = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
      const double r = (qc[p] - t * qg[p]) - meas.intensities[l][p];
      resid += r * r;
    }
    count_flops(fc, Phase::kLineSearch, np * 5 + 4);
    return (trace_c - t * trace_g) + meas.lambda * resid;
  };
  double t = cfg.t0;
  for (int j = 0; j <= cfg.backtrack_cap; ++j) {
    ++out.evals;
    if (ray_value(t) < g_at_c) {
      out.t = t;
      break;
    }
    if (j == cfg.backtrack_cap) {
      out.t = t;
      out.stagnated = true;
      break;
    }
    t *= cfg.tau;
  }
  *accepted = step_candidate(c, g, out.t, fc);
  return out;
}

void maybe_snapshot(int k, const HermitianMatrix& c, const std::vector<int>* checkpoints,
                    const CheckpointSink& sink) {
  if (!checkpoints || !sink) return;
  for (int want : *checkpoints)
    if (want == k) {
      sink(k, principal_component(c, nullptr));
      return;
    }
}

}  // namespace

HermitianMatrix pg_solve_row(const MeasurementSet& meas, std::size_t l,
                             const SolverConfig& cfg, RowTrace* trace, FlopCounter* fc,
                             const std::vector<int>* checkpoints, const CheckpointSink& sink) {
  const int iters = cfg.resolved_iters();
  HermitianMatrix c(meas.dim);
  double g_c = objective(c, meas, l, fc, Phase::kLineSearch).total;
  for (int k = 1; k <= iters; ++k) {
    const HermitianMatrix grad_c = gradient(c, meas, l, fc);
    HermitianMatrix cand(meas.dim);
    const BacktrackResult bt = search_step(c, grad_c, g_c, cfg, meas, l, fc, &cand);
    if (bt.stagnated && trace) ++trace->stagnation_hits;
    c = project_psd(cand, fc, Phase::kProjection);
    g_c = objective(c, meas, l, fc, Phase::kLineSearch).total;
    if (trace) trace->objective.push_back(g_c);
    maybe_snapshot(k, c, checkpoints, sink);
  }
  return c;
}

double nesterov_next_gamma(double gamma) {
  return 1.0 / (0.5 + std::sqrt(0.25 + 1.0 / (gamma * gamma)));
}

HermitianMatrix nesterov_solve_row(const MeasurementSet& meas, std::size_t l,
                                   const SolverConfig& cfg, RowTrace* trace, FlopCounter* fc,
                                   const std::vector<int>* checkpoints,
                                   const CheckpointSink& sink) {
  const int iters = cfg.resolved_iters();
  const std::size_t n = meas.dim;
  HermitianMatrix c_prev(n), k_pt(n);
  double gamma = 1.0;
  double g_k = objective(k_pt, meas, l, fc, Phase::kLineSearch).total;
  for (int k = 1; k <= iters; ++k) {
    const HermitianMatrix grad_k = gradient(k_pt, meas, l, fc);
    HermitianMatrix cand(n);
    const BacktrackResult bt = search_step(k_pt, grad_k, g_k, cfg, meas, l, fc, &cand);
    if (bt.stagnated && trace) ++trace->stagnation_hits;
    const HermitianMatrix c_next = project_psd(cand, fc, Phase::kProjection);

    const double gamma_next = nesterov_next_gamma(gamma);
    const double w = gamma_next * (1.0 - gamma) / gamma;
    k_pt = c_next;
    HermitianMatrix diff = c_next;
    diff.add_scaled(c_prev, -1.0);
    k_pt.add_scaled(diff, w);
    count_flops(fc, Phase::kGradient, 8 * static_cast<std::uint64_t>(n) * n + 8);

    c_prev = c_next;
    gamma = gamma_next;
    g_k = objective(k_pt, meas, l, fc, Phase::kLineSearch).total;
    if (trace) trace->objective.push_back(objective(c_prev, meas, l, nullptr).total);
    maybe_snapshot(k, c_prev, checkpoints, sink);
  }
  return c_prev;
}

LiftedSystem admm_precompute(const MeasurementSet& meas, double rho, FlopCounter* fc) {
  const std::size_t n = meas.dim;
  const std::size_t n2 = n * n;
  LiftedSystem sys;
  sys.dim = n;
  sys.rho = rho;
  sys.lambda = meas.lambda;

  sys.lifted_probes.reserve(meas.num_probes());
  for (const CVec& x : meas.probes) {
    CVec lifted(n2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) lifted[i * n + k] = std::conj(x[i]) * x[k];
    sys.lifted_probes.push_back(std::move(lifted));
  }

  // F maintained as the inverse of rho*I + lambda * sum conj(X) X^T via
  // rank-one updates; the denominator is real and at least 1/lambda.
  sys.inverse = ComplexMatrix(n2, n2);
  for (std::size_t i = 0; i < n2; ++i) sys.inverse(i, i) = 1.0 / rho;
  for (const CVec& x : sys.lifted_probes) {
    CVec u(n2, cd(0.0));
    for (std::size_t i = 0; i < n2; ++i) {
      cd s = 0.0;
      for (std::size_t j = 0; j < n2; ++j) s += sys.inverse(i, j) * std::conj(x[j]);
      u[i] = s;
    }
    cd beta = 1.0 / meas.lambda;
    for (std::size_t i = 0; i < n2; ++i) beta += x[i] * u[i];
    if (std::abs(beta) <= 1e-14)
      throw SolverError("admm_precompute: vanishing update denominator (degenerate probe)");
    CVec w(n2);
    for (std::size_t j = 0; j < n2; ++j) w[j] = std::conj(u[j]) / beta;
    for (std::size_t i = 0; i < n2; ++i)
      for (std::size_t j = 0; j < n2; ++j) sys.inverse(i, j) -= u[i] * w[j];
    count_flops(fc, Phase::kPrecompute,
                2 * static_cast<std::uint64_t>(n2) * n2 * kCMulAdd + n2 * kCMulAdd +
                    n2 * (kCMul + 2) + 2);
  }

  sys.data_terms.reserve(meas.num_rows());
  for (std::size_t l = 0; l < meas.num_rows(); ++l) {
    ComplexMatrix acc(n, n);
    for (std::size_t p = 0; p < meas.num_probes(); ++p) {
      const CVec& x = meas.probes[p];
      const double wgt = meas.lambda * meas.intensities[l][p];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k) acc(i, k) += wgt * (x[i] * std::conj(x[k]));
    }
    HermitianMatrix u(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i; k < n; ++k) u.set(i, k, acc(i, k));
    sys.data_terms.push_back(std::move(u));
    count_flops(fc, Phase::kPrecompute,
                meas.num_probes() *
                    ((static_cast<std::uint64_t>(n) * (n + 1) / 2) * (kCMul + 2 + kCAdd) + 1));
  }
  return sys;
}

ComplexMatrix admm_c_update_raw(const LiftedSystem& sys, const HermitianMatrix& d_l,
                                const HermitianMatrix& e_l, std::size_t l,
                                FlopCounter* fc) {
  const std::size_t n = sys.dim;
  const std::size_t n2 = n * n;
  if (l >= sys.data_terms.size()) throw ConfigError("admm_c_update: row out of range");
  const HermitianMatrix& u = sys.data_terms[l];
  CVec b(n2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      cd v = u(i, k) + 0.5 * e_l(i, k) + sys.rho * d_l(i, k);
      if (i == k) v -= 0.5;
      b[i * n + k] = v;
    }
  const CVec y = matvec(sys.inverse, b);
  ComplexMatrix raw(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) raw(i, k) = y[i * n + k];
  count_flops(fc, Phase::kCUpdate,
              static_cast<std::uint64_t>(n2) * n2 * kCMulAdd + n2 * 10);
  return raw;
}

HermitianMatrix admm_c_update(const LiftedSystem& sys, const HermitianMatrix& d_l,
                              const HermitianMatrix& e_l, std::size_t l, FlopCounter* fc) {
  const ComplexMatrix raw = admm_c_update_raw(sys, d_l, e_l, l, fc);
  count_flops(fc, Phase::kCUpdate, 2 * static_cast<std::uint64_t>(sys.dim) * sys.dim);
  return HermitianMatrix::symmetrized(raw);
}

HermitianMatrix admm_solve_row(const MeasurementSet& meas, const LiftedSystem& sys,
                               std::size_t l, const SolverConfig& cfg, RowTrace* trace,
                               FlopCounter* fc, const std::vector<int>* checkpoints,
                               const CheckpointSink& sink) {
  const int iters = cfg.resolved_iters();
  const std::size_t n = meas.dim;
  HermitianMatrix d(n), e(n);
  for (int k = 1; k <= iters; ++k) {
    const HermitianMatrix c = admm_c_update(sys, d, e, l, fc);
    HermitianMatrix shifted = c;
    shifted.add_scaled(e, -1.0 / (2.0 * cfg.rho));
    count_flops(fc, Phase::kDUpdate, 4 * static_cast<std::uint64_t>(n) * n);
    d = project_psd(shifted, fc, Phase::kDUpdate);
    e.add_scaled(d, cfg.rho);
    e.add_scaled(c, -cfg.rho);
    count_flops(fc, Phase::kEUpdate, 8 * static_cast<std::uint64_t>(n) * n);
    if (trace) trace->objective.push_back(objective(d, meas, l, nullptr).total);
    maybe_snapshot(k, d, checkpoints, sink);
  }
  return d;
}

CVec extract_estimate(const HermitianMatrix& c, FlopCounter* fc) {
  return principal_component(c, fc, Phase::kExtract);
}

namespace {

HermitianMatrix solve_row_dispatch(const MeasurementSet& meas, const LiftedSystem* sys,
                                   std::size_t l, const SolverConfig& cfg, RowTrace* trace,
                                   FlopCounter* fc, const std::vector<int>* checkpoints,
                                   const CheckpointSink& sink) {
  switch (cfg.method) {
    case Method::kProjectedGradient:
      return pg_solve_row(meas, l, cfg, trace, fc, checkpoints, sink);
    case Method::kNesterov:
      return nesterov_solve_row(meas, l, cfg, trace, fc, checkpoints, sink);
    case Method::kAdmm:
      return admm_solve_row(meas, *sys, l, cfg, trace, fc, checkpoints, sink);
  }
  throw ConfigError("solve: unknown method");
}

}  // namespace

SolverResult solve_all_rows(const MeasurementSet& meas, const SolverConfig& cfg) {
  meas.validate();
  cfg.validate();
  SolverResult res;
  res.iterations_run = cfg.resolved_iters();
  LiftedSystem sys;
  if (cfg.method == Method::kAdmm) sys = admm_precompute(meas, cfg.rho, &res.flops);
  for (std::size_t l = 0; l < meas.num_rows(); ++l) {
    RowTrace trace;
    try {
      HermitianMatrix final_c =
          solve_row_dispatch(meas, &sys, l, cfg, &trace, &res.flops, nullptr, nullptr);
      res.estimates.push_back(extract_estimate(final_c, &res.flops));
      res.final_matrices.push_back(std::move(final_c));
      res.traces.push_back(std::move(trace));
    } catch (const SolverError& err) {
      throw SolverError("row " + std::to_string(l) + ": " + err.what());
    }
  }
  return res;
}

CheckpointedResult solve_all_rows_checkpointed(const MeasurementSet& meas,
                                               const SolverConfig& cfg,
                                               const std::vector<int>& checkpoints) {
  meas.validate();
  cfg.validate();
  CheckpointedResult out;
  out.result.iterations_run = cfg.resolved_iters();
  for (int k : checkpoints)
    out.snapshots[k] = std::vector<CVec>(meas.num_rows());
  LiftedSystem sys;
  if (cfg.method == Method::kAdmm)
    sys = admm_precompute(meas, cfg.rho, &out.result.flops);
  for (std::size_t l = 0; l < meas.num_rows(); ++l) {
    const CheckpointSink sink = [&](int k, const CVec& est) { out.snapshots[k][l] = est; };
    try {
      HermitianMatrix final_c = solve_row_dispatch(meas, &sys, l, cfg, nullptr,
                                                   &out.result.flops, &checkpoints, sink);
      out.result.estimates.push_back(extract_estimate(final_c, &out.result.flops));
      out.result.final_matrices.push_back(std::move(final_c));
    } catch (const SolverError& err) {
      throw SolverError("row " + std::to_string(l) + ": " + err.what());
    }
  }
  return out;
}

}  // namespace phaselift
