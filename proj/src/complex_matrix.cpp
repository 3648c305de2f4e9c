#include "phaselift/complex_matrix.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace phaselift {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

cd ComplexMatrix::trace() const {
  assert(rows_ == cols_);
  cd t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cd s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cd s, ComplexMatrix a) { return a *= s; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  assert(a.cols() == b.rows());
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cd aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CVec matvec(const ComplexMatrix& a, const CVec& v) {
  assert(a.cols() == v.size());
  CVec r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cd s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

cd dot(const CVec& a, const CVec& b) {
  assert(a.size() == b.size());
  cd s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const CVec& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double distance(const CVec& a, const CVec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  HermitianMatrix h(dim);
  for (std::size_t i = 0; i < dim; ++i) h.m_(i, i) = 1.0;
  return h;
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("symmetrized: matrix not square");
  const std::size_t n = m.rows();
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h.m_(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h.m_(i, j) = v;
      h.m_(j, i) = std::conj(v);
    }
  }
  return h;
}

HermitianMatrix HermitianMatrix::outer(const CVec& h) {
  const std::size_t n = h.size();
  HermitianMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.m_(i, i) = std::norm(h[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cd v = h[i] * std::conj(h[j]);
      r.m_(i, j) = v;
      r.m_(j, i) = std::conj(v);
    }
  }
  return r;
}

void HermitianMatrix::set(std::size_t i, std::size_t j, cd v) {
  if (i == j) {
    m_(i, i) = v.real();
  } else {
    m_(i, j) = v;
    m_(j, i) = std::conj(v);
  }
}

HermitianMatrix& HermitianMatrix::add_scaled(const HermitianMatrix& o, double t) {
  assert(dim() == o.dim());
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = cd(m_(i, i).real() + t * o.m_(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cd v = m_(i, j) + t * o.m_(i, j);
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
  return *this;
}

HermitianMatrix HermitianMatrix::scaled(double t) const {
  HermitianMatrix r(dim());
  r.add_scaled(*this, t);
  return r;
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i).real();
  return t;
}

double HermitianMatrix::frobenius_norm() const { return m_.frobenius_norm(); }

double HermitianMatrix::max_abs_entry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) m = std::max(m, std::abs(m_(i, j)));
  return m;
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  HermitianMatrix r = a;
  r.add_scaled(b, -1.0);
  return r;
}

double quadratic_form(const HermitianMatrix& m, const CVec& x) {
  assert(m.dim() == x.size());
  const std::size_t n = x.size();
  // Off-diagonal pairs contribute 2*Re(conj(x_i) M_ij x_j).
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += m(i, i).real() * std::norm(x[i]);
    for (std::size_t j = i + 1; j < n; ++j)
      s += 2.0 * (std::conj(x[i]) * m(i, j) * x[j]).real();
  }
  return s;
}

}  // namespace phaselift
