#include "phaselift/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace phaselift::oracles {

double naive_objective(const HermitianMatrix& c, const MeasurementSet& meas,
                       std::size_t l) {
  const std::size_t n = c.dim();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += c(i, i).real();
  for (std::size_t p = 0; p < meas.num_probes(); ++p) {
    const CVec& x = meas.probes[p];
    cd q = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) q += std::conj(x[i]) * c(i, k) * x[k];
    const double r = q.real() - meas.intensities[l][p];
    total += meas.lambda * r * r;
  }
  return total;
}

HermitianMatrix fd_gradient(const HermitianMatrix& c, const MeasurementSet& meas,
                            std::size_t l, FiniteDiffSpec spec) {
  const std::size_t n = c.dim();
  const double h = spec.step;
  HermitianMatrix g(n);
  auto bump = [&](std::size_t i, std::size_t k, cd delta) {
    HermitianMatrix b = c;
    b.set(i, k, c(i, k) + delta);
    return naive_objective(b, meas, l);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double dre_ii = (bump(i, i, cd(h, 0)) - bump(i, i, cd(-h, 0))) / (2 * h);
    g.set(i, i, dre_ii);
    for (std::size_t k = i + 1; k < n; ++k) {
      const double dre = (bump(i, k, cd(h, 0)) - bump(i, k, cd(-h, 0))) / (2 * h);
      const double dim = (bump(i, k, cd(0, h)) - bump(i, k, cd(0, -h))) / (2 * h);
      // A parameter bump moves both triangles, so the per-parameter partial
      // is twice the matrix-gradient entry; halve to land in that convention.
      g.set(i, k, cd(dre / 2, dim / 2));
    }
  }
  return g;
}

ComplexMatrix direct_inverse(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("direct_inverse: not square");
  const std::size_t n = a.rows();
  ComplexMatrix w = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  std::vector<bool> used_row(n, false), used_col(n, false);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(w(i, j)));
  if (scale == 0.0) throw std::runtime_error("direct_inverse: zero matrix");

  // Gauss-Jordan with full pivoting; row/column choices recorded, solution
  // unscrambled at the end.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pr = 0, pc = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used_row[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (used_col[j]) continue;
        const double m = std::abs(w(i, j));
        if (m > best) {
          best = m;
          pr = i;
          pc = j;
        }
      }
    }
    if (best <= 1e-13 * scale) throw std::runtime_error("direct_inverse: singular matrix");
    used_row[pr] = used_col[pc] = true;
    pivots.emplace_back(pr, pc);
    const cd piv = w(pr, pc);
    for (std::size_t j = 0; j < n; ++j) {
      w(pr, j) /= piv;
      inv(pr, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == pr) continue;
      const cd f = w(i, pc);
      if (f == cd(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) -= f * w(pr, j);
        inv(i, j) -= f * inv(pr, j);
      }
    }
  }
  // Row pr of the reduced system carries e_pc; inverse row pc is inv row pr.
  ComplexMatrix out(n, n);
  for (const auto& [pr, pc] : pivots)
    for (std::size_t j = 0; j < n; ++j) out(pc, j) = inv(pr, j);
  return out;
}

ComplexMatrix admm_system_matrix(const MeasurementSet& meas, double rho) {
  const std::size_t d = meas.dim;
  const std::size_t n2 = d * d;
  ComplexMatrix a(n2, n2);
  for (std::size_t i = 0; i < n2; ++i) a(i, i) = rho;
  for (std::size_t p = 0; p < meas.num_probes(); ++p) {
    const CVec& x = meas.probes[p];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t aa = 0; aa < d; ++aa)
          for (std::size_t bb = 0; bb < d; ++bb)
            a(i * d + k, aa * d + bb) +=
                meas.lambda * x[i] * std::conj(x[k]) * std::conj(x[aa]) * x[bb];
  }
  return a;
}

namespace {

// Cholesky feasibility of M + shift*I; returns false on a nonpositive pivot.
bool cholesky_ok(const HermitianMatrix& m, double shift) {
  const std::size_t n = m.dim();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double djj = m(j, j).real() + shift;
    for (std::size_t k = 0; k < j; ++k) djj -= std::norm(l(j, k));
    if (djj <= 0.0) return false;
    const double ljj = std::sqrt(djj);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cd v = m(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * std::conj(l(j, k));
      l(i, j) = v / ljj;
    }
  }
  return true;
}

}  // namespace

double lagrangian_value(const HermitianMatrix& c, const HermitianMatrix& d,
                        const HermitianMatrix& e, const MeasurementSet& meas,
                        std::size_t l, double rho) {
  double v = naive_objective(c, meas, l);
  const double shift = 1e-8 * std::max(1.0, d.frobenius_norm());
  if (!cholesky_ok(d, shift)) v += 1e12;
  const std::size_t n = c.dim();
  // Re tr(E^H (D - C)) + rho * ||D - C||_F^2
  double pair = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cd diff = d(i, j) - c(i, j);
      pair += (std::conj(e(i, j)) * diff).real();
      quad += std::norm(diff);
    }
  return v + pair + rho * quad;
}

double qfunc_ref(double x) {
  if (x < 0.0) return 1.0 - qfunc_ref(-x);
  const double z = x / std::sqrt(2.0);
  if (x < 2.5) {
    // erf Taylor series: erf(z) = 2/sqrt(pi) * sum (-1)^n z^(2n+1)/(n!(2n+1))
    double term = z;
    double sum = z;
    for (int n = 1; n < 200; ++n) {
      term *= -z * z / n;
      const double add = term / (2 * n + 1);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    const double erf = 2.0 / std::sqrt(M_PI) * sum;
    return 0.5 * (1.0 - erf);
  }
  // Q(x) = phi(x) / (x + 1/(x + 2/(x + 3/(x + ...)))), modified Lentz.
  const double tiny = 1e-300;
  double f = x, cterm = x, dterm = 0.0;
  for (int n = 1; n < 500; ++n) {
    const double an = n;
    dterm = x + an * dterm;
    if (std::abs(dterm) < tiny) dterm = tiny;
    cterm = x + an / cterm;
    if (std::abs(cterm) < tiny) cterm = tiny;
    dterm = 1.0 / dterm;
    const double delta = cterm * dterm;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  return phi / f;
}

}  // namespace phaselift::oracles
