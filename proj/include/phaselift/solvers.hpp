#pragma once

#include <functional>
#include <map>
#include <string>

#include "phaselift/flops.hpp"
#include "phaselift/measurement.hpp"

namespace phaselift {

enum class Method { kProjectedGradient, kNesterov, kAdmm };

const char* method_name(Method m);
Method method_from_name(const std::string& name);  // throws ConfigError

struct SolverConfig {
  Method method = Method::kNesterov;
  int max_iters = 0;  // 0 selects the per-method default below
  double tau = 0.3;
  double t0 = 1.0;
  double rho = 1.0;
  int backtrack_cap = 50;

  int resolved_iters() const;  // 70 / 30 / 5 when max_iters == 0
  void validate() const;
};

struct RowTrace {
  std::vector<double> objective;  // g of the reported iterate, one per iteration
  int stagnation_hits = 0;        // line searches that exhausted the cap
};

struct SolverResult {
  std::vector<CVec> estimates;
  std::vector<HermitianMatrix> final_matrices;
  std::vector<RowTrace> traces;
  FlopCounter flops;
  int iterations_run = 0;
};

struct BacktrackResult {
  double t = 0.0;
  int evals = 0;       // objective evaluations spent
  bool stagnated = false;
};

// Shrinks t from t0 by factors of tau until the unprojected candidate
// C - t*G strictly decreases g; gives up after `cap` shrinks and flags
// stagnation. g_at_c is g(C); eval must return g at the candidate.
BacktrackResult backtrack_step(const HermitianMatrix& c, const HermitianMatrix& g,
                               double g_at_c, double t0, double tau, int cap,
                               const std::function<double(const HermitianMatrix&)>& eval);

// Estimate snapshots taken mid-run: requested iteration numbers (ascending,
// 1-based) mapped to the extracted estimate at that point.
using CheckpointSink = std::function<void(int iter, const CVec& estimate)>;

HermitianMatrix pg_solve_row(const MeasurementSet& meas, std::size_t l,
                             const SolverConfig& cfg, RowTrace* trace,
                             FlopCounter* fc, const std::vector<int>* checkpoints = nullptr,
                             const CheckpointSink& sink = nullptr);

HermitianMatrix nesterov_solve_row(const MeasurementSet& meas, std::size_t l,
                                   const SolverConfig& cfg, RowTrace* trace,
                                   FlopCounter* fc, const std::vector<int>* checkpoints = nullptr,
                                   const CheckpointSink& sink = nullptr);

// Momentum schedule gamma[k+1] = 1 / (1/2 + sqrt(1/4 + 1/gamma[k]^2)),
// starting from gamma[0] = 1.
double nesterov_next_gamma(double gamma);

// ADMM precomputation shared by all rows: lifted probes X^(n) with entry
// (i*D + k) = conj(x_i) x_k, the inverse F of (rho*I + lambda*sum_n
// conj(X^(n)) X^(n)T) maintained by rank-one downdates, and per-row data
// terms U_l with entries lambda * sum_n d_l^(n) x_i conj(x_k).
struct LiftedSystem {
  std::size_t dim = 0;
  double rho = 0.0;
  double lambda = 0.0;
  std::vector<CVec> lifted_probes;
  ComplexMatrix inverse;
  std::vector<HermitianMatrix> data_terms;
};

LiftedSystem admm_precompute(const MeasurementSet& meas, double rho,
                             FlopCounter* fc = nullptr);

// Minimizer of the augmented Lagrangian over C at fixed (D_l, E_l):
// reshape of F * b with b = vec(U_l + E_l/2 + rho*D_l - I/2), symmetrized.
// The raw variant skips the final symmetrization.
ComplexMatrix admm_c_update_raw(const LiftedSystem& sys, const HermitianMatrix& d_l,
                                const HermitianMatrix& e_l, std::size_t l,
                                FlopCounter* fc = nullptr);
HermitianMatrix admm_c_update(const LiftedSystem& sys, const HermitianMatrix& d_l,
                              const HermitianMatrix& e_l, std::size_t l,
                              FlopCounter* fc = nullptr);

HermitianMatrix admm_solve_row(const MeasurementSet& meas, const LiftedSystem& sys,
                               std::size_t l, const SolverConfig& cfg, RowTrace* trace,
                               FlopCounter* fc, const std::vector<int>* checkpoints = nullptr,
                               const CheckpointSink& sink = nullptr);

CVec extract_estimate(const HermitianMatrix& c, FlopCounter* fc = nullptr);

SolverResult solve_all_rows(const MeasurementSet& meas, const SolverConfig& cfg);

// Same run, additionally capturing per-row estimates at the requested
// iteration numbers; snapshots[k][l] is row l's estimate after iteration k.
struct CheckpointedResult {
  SolverResult result;
  std::map<int, std::vector<CVec>> snapshots;
};

CheckpointedResult solve_all_rows_checkpointed(const MeasurementSet& meas,
                                               const SolverConfig& cfg,
                                               const std::vector<int>& checkpoints);

}  // namespace phaselift
