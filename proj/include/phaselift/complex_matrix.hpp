#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace phaselift {

using cd = std::complex<double>;
using CVec = std::vector<cd>;

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  cd* data() { return data_.data(); }
  const cd* data() const { return data_.data(); }

  ComplexMatrix adjoint() const;
  bool all_finite() const;
  double frobenius_norm() const;
  cd trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cd s);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cd> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cd s, ComplexMatrix a);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
CVec matvec(const ComplexMatrix& a, const CVec& v);

cd dot(const CVec& a, const CVec& b);  // a^H b
double norm(const CVec& v);
double distance(const CVec& a, const CVec& b);

// Hermitian matrix with the symmetry held exactly in storage: the lower
// triangle always mirrors the upper and the diagonal is real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t dim) : m_(dim, dim) {}

  static HermitianMatrix identity(std::size_t dim);
  // (M + M^H)/2 for arbitrary square input.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);
  // h h^H
  static HermitianMatrix outer(const CVec& h);

  std::size_t dim() const { return m_.rows(); }
  const cd& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const ComplexMatrix& matrix() const { return m_; }

  // Sets entry (i,j) and its mirror; diagonal keeps only the real part.
  void set(std::size_t i, std::size_t j, cd v);

  // this += t*o entrywise; conj(a) + t*conj(b) == conj(a + t*b) exactly in
  // IEEE arithmetic, so the symmetry survives.
  HermitianMatrix& add_scaled(const HermitianMatrix& o, double t);
  HermitianMatrix scaled(double t) const;

  double trace() const;
  double frobenius_norm() const;
  double max_abs_entry() const;

 private:
  ComplexMatrix m_;
};

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);

// Real part of x^H M x; the imaginary part of the full form is pure roundoff
// for exact-Hermitian storage.
double quadratic_form(const HermitianMatrix& m, const CVec& x);

}  // namespace phaselift
