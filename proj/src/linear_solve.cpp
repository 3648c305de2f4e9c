#include "phaselift/linear_solve.hpp"

#include <cmath>

#include "phaselift/errors.hpp"

namespace phaselift {

CVec solve_linear(ComplexMatrix a, CVec b, FlopCounter* fc, Phase phase) {
  if (a.rows() != a.cols()) throw SolverError("solve_linear: matrix not square");
  const std::size_t n = a.rows();
  if (b.size() != n) throw SolverError("solve_linear: size mismatch");

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  if (scale == 0.0) throw SolverError("solve_linear: zero matrix");

  std::uint64_t flops = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const double v = std::abs(a(i, col));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= 1e-13 * scale) throw SolverError("solve_linear: singular matrix");
    if (piv != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(a(col, j), a(piv, j));
      std::swap(b[col], b[piv]);
    }
    const cd inv_piv = 1.0 / a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      const cd f = a(i, col) * inv_piv;
      if (f == cd(0.0)) continue;
      a(i, col) = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) a(i, j) -= f * a(col, j);
      b[i] -= f * b[col];
      flops += (n - col) * kCMulAdd + kCMul;
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    cd s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
    b[i] = s / a(i, i);
    flops += (n - i) * kCMulAdd;
  }
  count_flops(fc, phase, flops);
  return b;
}

}  // namespace phaselift
