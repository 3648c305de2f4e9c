#include "phaselift/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phaselift/errors.hpp"

namespace phaselift {

namespace {

double sign_like(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

}  // namespace

EigDecomposition hermitian_eig(const HermitianMatrix& m, FlopCounter* fc, Phase phase) {
  const std::size_t n = m.dim();
  if (n == 0) throw SolverError("hermitian_eig: empty matrix");
  if (n > kEigMaxDim) throw SolverError("hermitian_eig: dimension above cap");

  EigDecomposition out;
  out.eigenvalues.assign(n, 0.0);
  out.eigenvectors = ComplexMatrix::identity(n);
  if (n == 1) {
    out.eigenvalues[0] = m(0, 0).real();
    return out;
  }

  ComplexMatrix a = m.matrix();
  ComplexMatrix& q = out.eigenvectors;

  // Householder reduction to Hermitian tridiagonal form; unitary accumulated
  // into q by right-multiplication.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t mlen = n - k - 1;
    double sigma2 = 0.0;
    for (std::size_t j = 0; j < mlen; ++j) sigma2 += std::norm(a(k + 1 + j, k));
    const double sigma = std::sqrt(sigma2);
    if (sigma == 0.0) continue;

    const cd alpha = a(k + 1, k);
    const double aabs = std::abs(alpha);
    const cd ph = aabs == 0.0 ? cd(1.0) : alpha / aabs;
    CVec u(mlen);
    for (std::size_t j = 0; j < mlen; ++j) u[j] = a(k + 1 + j, k);
    u[0] += ph * sigma;
    const double beta = 1.0 / (sigma * (sigma + aabs));

    // Two-sided update of the trailing block: B -= u w^H + w u^H with
    // w = beta*B*u - (beta^2/2)(u^H B u) u.
    CVec p(mlen, cd(0.0));
    for (std::size_t i = 0; i < mlen; ++i) {
      cd s = 0.0;
      for (std::size_t j = 0; j < mlen; ++j) s += a(k + 1 + i, k + 1 + j) * u[j];
      p[i] = beta * s;
    }
    double uhp = 0.0;
    for (std::size_t i = 0; i < mlen; ++i) uhp += (std::conj(u[i]) * p[i]).real();
    const double kk = 0.5 * beta * uhp;
    CVec w(mlen);
    for (std::size_t i = 0; i < mlen; ++i) w[i] = p[i] - kk * u[i];
    for (std::size_t i = 0; i < mlen; ++i) {
      for (std::size_t j = i; j < mlen; ++j) {
        const cd upd = a(k + 1 + i, k + 1 + j) - u[i] * std::conj(w[j]) - w[i] * std::conj(u[j]);
        a(k + 1 + i, k + 1 + j) = i == j ? cd(upd.real()) : upd;
        if (i != j) a(k + 1 + j, k + 1 + i) = std::conj(upd);
      }
    }
    a(k + 1, k) = -ph * sigma;
    for (std::size_t j = 2; j <= mlen; ++j) a(k + j, k) = 0.0;

    // q <- q * (I - beta u u^H), touching columns k+1..n-1.
    for (std::size_t r = 0; r < n; ++r) {
      cd s = 0.0;
      for (std::size_t j = 0; j < mlen; ++j) s += q(r, k + 1 + j) * u[j];
      s *= beta;
      for (std::size_t j = 0; j < mlen; ++j) q(r, k + 1 + j) -= s * std::conj(u[j]);
    }
    count_flops(fc, phase,
                static_cast<std::uint64_t>(mlen) * mlen * (kCMulAdd + 2 * kCMul + 2 * kCAdd) +
                    2 * static_cast<std::uint64_t>(n) * mlen * kCMulAdd + 8 * mlen + 20);
  }

  // Chase subdiagonal phases into the accumulated unitary so the tridiagonal
  // form is real.
  // e[i] couples d[i-1], d[i]; one extra slot takes the write-only spill of
  // the rotation recurrence when the active block ends at the last row.
  std::vector<double> d(n), e(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
  cd phi = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const cd t = a(i + 1, i);
    const double tab = std::abs(t);
    e[i + 1] = tab;
    if (tab > 0.0) phi *= t / tab;
    for (std::size_t r = 0; r < n; ++r) q(r, i + 1) *= phi;
  }
  count_flops(fc, phase, static_cast<std::uint64_t>(n) * n * kCMul);

  // Implicit-shift QL on the real tridiagonal, rotations applied to the
  // complex eigenvector columns.
  const int budget = kEigSweepsPerValue * static_cast<int>(n);
  int sweeps_total = 0;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      std::size_t mm = l;
      for (; mm + 1 < n; ++mm) {
        const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
        if (std::abs(e[mm + 1]) <= 1e-16 * dd) break;
      }
      if (mm == l) break;
      if (++iter > kEigSweepsPerValue || ++sweeps_total > budget)
        throw SolverError("hermitian_eig: QL iteration did not converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l + 1]);
      double r = std::hypot(g, 1.0);
      g = d[mm] - d[l] + e[l + 1] / (g + sign_like(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (std::size_t i = mm; i-- > l;) {
        double f = s * e[i + 1];
        const double b = c * e[i + 1];
        r = std::hypot(f, g);
        e[i + 2] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[mm + 1] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (std::size_t row = 0; row < n; ++row) {
          const cd tmp = q(row, i + 1);
          q(row, i + 1) = s * q(row, i) + c * tmp;
          q(row, i) = c * q(row, i) - s * tmp;
        }
        count_flops(fc, phase, static_cast<std::uint64_t>(n) * 12 + 20);
      }
      // r can only be exactly zero via the early break above; restart then.
      if (r == 0.0) continue;
      d[l] -= p;
      e[l + 1] = g;
      e[mm + 1] = 0.0;
    }
  }

  // Ascending order, stable under ties.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  ComplexMatrix sorted(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = d[idx[j]];
    for (std::size_t r = 0; r < n; ++r) sorted(r, j) = q(r, idx[j]);
  }

  // Deterministic phase: first non-negligible entry of each column made real
  // non-negative.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      const cd v = sorted(r, j);
      const double va = std::abs(v);
      if (va > 1e-12) {
        const cd rot = std::conj(v) / va;
        for (std::size_t rr = 0; rr < n; ++rr) sorted(rr, j) *= rot;
        break;
      }
    }
  }
  out.eigenvectors = std::move(sorted);
  return out;
}

HermitianMatrix project_psd(const HermitianMatrix& m, FlopCounter* fc, Phase phase) {
  const EigDecomposition eig = hermitian_eig(m, fc, phase);
  const std::size_t n = m.dim();
  HermitianMatrix out(n);
  const ComplexMatrix& v = eig.eigenvectors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cd s = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double lam = eig.eigenvalues[t];
        if (lam <= 0.0) continue;
        s += lam * (v(i, t) * std::conj(v(j, t)));
      }
      out.set(i, j, s);
    }
  }
  count_flops(fc, phase, static_cast<std::uint64_t>(n) * n * n * (kCMulAdd + 2) / 2);
  return out;
}

CVec principal_component(const HermitianMatrix& m, FlopCounter* fc, Phase phase) {
  const EigDecomposition eig = hermitian_eig(m, fc, phase);
  const std::size_t n = m.dim();
  const double lam = eig.eigenvalues[n - 1];
  CVec out(n, cd(0.0));
  if (lam <= 0.0) return out;
  const double s = std::sqrt(lam);
  for (std::size_t r = 0; r < n; ++r) out[r] = s * eig.eigenvectors(r, n - 1);
  count_flops(fc, phase, 2 * n + 1);
  return out;
}

}  // namespace phaselift
