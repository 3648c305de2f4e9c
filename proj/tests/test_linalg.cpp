#include <cmath>

#include "doctest.h"
#include "phaselift/complex_matrix.hpp"
#include "phaselift/eig.hpp"
#include "phaselift/errors.hpp"
#include "phaselift/linear_solve.hpp"
#include "phaselift/rng.hpp"

using namespace phaselift;

namespace {

HermitianMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h.set(i, i, rng.normal());
    for (std::size_t j = i + 1; j < n; ++j) h.set(i, j, rng.complex_normal());
  }
  return h;
}

double reconstruction_error(const HermitianMatrix& a, const EigDecomposition& eig) {
  const std::size_t n = a.dim();
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cd s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eig.eigenvalues[k] * eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
      err = std::max(err, std::abs(s - a(i, j)));
    }
  return err;
}

double orthonormality_error(const ComplexMatrix& v) {
  const std::size_t n = v.rows();
  double err = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      cd s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::conj(v(i, a)) * v(i, b);
      err = std::max(err, std::abs(s - (a == b ? cd(1.0) : cd(0.0))));
    }
  return err;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("complex matrix basics") {
  ComplexMatrix a(2, 3);
  a(0, 0) = cd(1, 2);
  a(1, 2) = cd(-3, 0.5);
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  const ComplexMatrix at = a.adjoint();
  CHECK(at.rows() == 3);
  CHECK(at(0, 0) == std::conj(a(0, 0)));
  CHECK(at(2, 1) == std::conj(a(1, 2)));

  const ComplexMatrix id = ComplexMatrix::identity(3);
  CHECK(id(0, 0) == cd(1.0));
  CHECK(id(0, 1) == cd(0.0));
  CHECK(id.trace() == cd(3.0));

  ComplexMatrix b(2, 2);
  b(0, 0) = cd(0, 1);
  b(0, 1) = cd(2, 0);
  b(1, 0) = cd(1, 1);
  b(1, 1) = cd(0, -1);
  const ComplexMatrix bb = matmul(b, b);
  CHECK(std::abs(bb(0, 0) - (cd(0, 1) * cd(0, 1) + cd(2, 0) * cd(1, 1))) < 1e-15);
  CHECK(std::abs(bb(1, 1) - (cd(1, 1) * cd(2, 0) + cd(0, -1) * cd(0, -1))) < 1e-15);

  const CVec v = {cd(1, 0), cd(0, 1)};
  const CVec bv = matvec(b, v);
  CHECK(std::abs(bv[0] - (cd(0, 1) + cd(2, 0) * cd(0, 1))) < 1e-15);

  CHECK(std::abs(dot(v, v) - cd(2.0)) < 1e-15);
  CHECK(norm(v) == doctest::Approx(std::sqrt(2.0)));
  CHECK(distance(v, v) == 0.0);
  CHECK(a.all_finite());
  ComplexMatrix bad(1, 1);
  bad(0, 0) = cd(std::nan(""), 0.0);
  CHECK(!bad.all_finite());
}

TEST_CASE("hermitian storage keeps the symmetry exact") {
  HermitianMatrix h(3);
  h.set(0, 1, cd(1.5, -2.25));
  h.set(2, 0, cd(0.5, 0.125));
  h.set(1, 1, cd(3.0, 7.0));  // imaginary part dropped on the diagonal
  CHECK(h(1, 0) == std::conj(h(0, 1)));
  CHECK(h(0, 2) == std::conj(h(2, 0)));
  CHECK(h(1, 1) == cd(3.0, 0.0));

  HermitianMatrix g = random_hermitian(4, 11);
  g.add_scaled(random_hermitian(4, 12), -0.37);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const cd lhs = g(i, j);
      const cd rhs = std::conj(g(j, i));
      CHECK(lhs.real() == rhs.real());  // bitwise, not approximate
      CHECK(lhs.imag() == rhs.imag());
    }

  ComplexMatrix m(2, 2);
  m(0, 0) = cd(1, 5);
  m(0, 1) = cd(2, 1);
  m(1, 0) = cd(4, 3);
  m(1, 1) = cd(7, -5);
  const HermitianMatrix s = HermitianMatrix::symmetrized(m);
  CHECK(s(0, 0) == cd(1.0, 0.0));
  CHECK(s(1, 1) == cd(7.0, 0.0));
  CHECK(std::abs(s(0, 1) - cd(3.0, -1.0)) < 1e-15);  // (m01 + conj(m10))/2
  CHECK(s(1, 0) == std::conj(s(0, 1)));

  const CVec hv = {cd(1, 1), cd(0, -2)};
  const HermitianMatrix o = HermitianMatrix::outer(hv);
  CHECK(o(0, 0) == cd(2.0, 0.0));
  CHECK(std::abs(o(0, 1) - cd(1, 1) * std::conj(cd(0, -2))) < 1e-15);
  CHECK(o.trace() == doctest::Approx(6.0));

  // quadratic_form against the explicit complex evaluation
  const HermitianMatrix q = random_hermitian(3, 13);
  Rng rng(14);
  CVec x(3);
  for (auto& e : x) e = rng.complex_normal();
  cd full = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) full += std::conj(x[i]) * q(i, j) * x[j];
  CHECK(quadratic_form(q, x) == doctest::Approx(full.real()).epsilon(1e-12));
  CHECK(std::abs(full.imag()) < 1e-12);
}

TEST_CASE("eigendecomposition matches frozen references") {
  HermitianMatrix a2(2);
  a2.set(0, 0, 2.0);
  a2.set(1, 1, 3.0);
  a2.set(0, 1, cd(1.0, -1.0));
  const EigDecomposition e2 = hermitian_eig(a2);
  REQUIRE(e2.eigenvalues.size() == 2);
  CHECK(e2.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e2.eigenvalues[1] == doctest::Approx(4.0).epsilon(1e-12));

  HermitianMatrix a3(3);
  a3.set(0, 0, 1.0);
  a3.set(1, 1, 0.0);
  a3.set(2, 2, -1.0);
  a3.set(0, 1, cd(0.0, 2.0));
  a3.set(0, 2, cd(0.5, 0.0));
  a3.set(1, 2, cd(1.0, 1.0));
  const EigDecomposition e3 = hermitian_eig(a3);
  CHECK(e3.eigenvalues[0] == doctest::Approx(-2.6925824035672523).epsilon(1e-12));
  CHECK(std::abs(e3.eigenvalues[1]) < 1e-12);
  CHECK(e3.eigenvalues[2] == doctest::Approx(2.6925824035672510).epsilon(1e-12));

  HermitianMatrix a4(4);
  a4.set(0, 0, 4.0);
  a4.set(1, 1, 3.0);
  a4.set(2, 2, 2.0);
  a4.set(3, 3, 1.0);
  a4.set(0, 1, cd(0.0, 1.0));
  a4.set(0, 3, cd(0.25, 0.0));
  a4.set(1, 2, cd(0.0, 0.5));
  a4.set(2, 3, cd(1.0, 0.0));
  const EigDecomposition e4 = hermitian_eig(a4);
  const double expected[4] = {0.35147035137291077, 2.056919478006134,
                              2.9430805219938669, 4.648529648627088};
  for (int i = 0; i < 4; ++i)
    CHECK(e4.eigenvalues[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  CHECK(reconstruction_error(a4, e4) < 1e-12);
  CHECK(orthonormality_error(e4.eigenvectors) < 1e-12);
}

TEST_CASE("eigendecomposition handles easy structure") {
  const EigDecomposition ei = hermitian_eig(HermitianMatrix::identity(5));
  for (double w : ei.eigenvalues) CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(orthonormality_error(ei.eigenvectors) < 1e-12);

  HermitianMatrix d(3);
  d.set(0, 0, 3.0);
  d.set(1, 1, 1.0);
  d.set(2, 2, -2.0);
  const EigDecomposition ed = hermitian_eig(d);
  CHECK(ed.eigenvalues[0] == doctest::Approx(-2.0));
  CHECK(ed.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(ed.eigenvalues[2] == doctest::Approx(3.0));

  // ascending order and valid reconstruction on random input
  for (std::uint64_t seed = 21; seed < 27; ++seed) {
    const HermitianMatrix h = random_hermitian(6, seed);
    const EigDecomposition e = hermitian_eig(h);
    for (std::size_t i = 1; i < 6; ++i) CHECK(e.eigenvalues[i - 1] <= e.eigenvalues[i]);
    CHECK(reconstruction_error(h, e) < 1e-11);
    CHECK(orthonormality_error(e.eigenvectors) < 1e-11);
    // phase convention: first entry of each column with magnitude above
    // 1e-12 is real and nonnegative
    for (std::size_t c = 0; c < 6; ++c)
      for (std::size_t i = 0; i < 6; ++i) {
        if (std::abs(e.eigenvectors(i, c)) <= 1e-12) continue;
        CHECK(e.eigenvectors(i, c).imag() == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(e.eigenvectors(i, c).real() >= 0.0);
        break;
      }
  }
}

TEST_CASE("eigendecomposition rejects oversized input") {
  CHECK_THROWS_AS(hermitian_eig(HermitianMatrix(kEigMaxDim + 1)), SolverError);
}

TEST_CASE("psd projection") {
  HermitianMatrix flip(2);
  flip.set(0, 1, cd(1.0, 0.0));
  const HermitianMatrix p = project_psd(flip);
  CHECK(std::abs(p(0, 0) - cd(0.5, 0.0)) < 1e-13);
  CHECK(std::abs(p(1, 1) - cd(0.5, 0.0)) < 1e-13);
  CHECK(std::abs(p(0, 1) - cd(0.5, 0.0)) < 1e-13);

  for (std::uint64_t seed = 31; seed < 36; ++seed) {
    const HermitianMatrix h = random_hermitian(5, seed);
    const HermitianMatrix ph = project_psd(h);
    // result is PSD
    const EigDecomposition e = hermitian_eig(ph);
    for (double w : e.eigenvalues) CHECK(w >= -1e-10);
    // idempotent
    CHECK((project_psd(ph) - ph).frobenius_norm() < 1e-10);
    // trace equals the positive part of the spectrum
    const EigDecomposition eh = hermitian_eig(h);
    double pos = 0.0;
    for (double w : eh.eigenvalues) pos += std::max(w, 0.0);
    CHECK(ph.trace() == doctest::Approx(pos).epsilon(1e-10));
    // no sampled PSD certificate comes closer in Frobenius distance
    const double dstar = (h - ph).frobenius_norm();
    Rng rng(seed * 7 + 1);
    for (int trial = 0; trial < 60; ++trial) {
      CVec v(5);
      for (auto& x : v) x = rng.complex_normal();
      HermitianMatrix cand = ph;
      cand.add_scaled(HermitianMatrix::outer(v), rng.uniform() * 0.2);
      CHECK((h - cand).frobenius_norm() >= dstar - 1e-10);
    }
  }

  // PSD input is a fixed point
  CVec v = {cd(1, 2), cd(-1, 0.5), cd(0, 1)};
  const HermitianMatrix psd = HermitianMatrix::outer(v);
  CHECK((project_psd(psd) - psd).frobenius_norm() < 1e-12);
}

TEST_CASE("principal component recovers a planted spike") {
  Rng rng(41);
  CVec h(4);
  for (auto& e : h) e = rng.complex_normal();
  const CVec pc = principal_component(HermitianMatrix::outer(h));
  REQUIRE(pc.size() == 4);
  // same vector up to a global phase
  const double nh = norm(h);
  const double np = norm(pc);
  CHECK(np == doctest::Approx(nh).epsilon(1e-10));
  CHECK(std::abs(dot(pc, h)) == doctest::Approx(nh * np).epsilon(1e-10));

  const CVec zero = principal_component(HermitianMatrix(3));
  for (const cd& e : zero) CHECK(e == cd(0.0));

  // negative-definite input also extracts to zero
  HermitianMatrix neg(2);
  neg.set(0, 0, -1.0);
  neg.set(1, 1, -2.0);
  for (const cd& e : principal_component(neg)) CHECK(e == cd(0.0));
}

TEST_CASE("linear solve") {
  ComplexMatrix a(2, 2);
  a(0, 0) = cd(2, 0);
  a(0, 1) = cd(1, -1);
  a(1, 0) = cd(1, 1);
  a(1, 1) = cd(3, 0);
  const CVec b = {cd(1, 0), cd(0, 1)};
  const CVec x = solve_linear(a, b);
  // residual check
  const CVec ax = matvec(a, x);
  CHECK(distance(ax, b) < 1e-12);

  Rng rng(51);
  ComplexMatrix r(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) r(i, j) = rng.complex_normal();
  CVec rb(6);
  for (auto& e : rb) e = rng.complex_normal();
  const CVec rx = solve_linear(r, rb);
  CHECK(distance(matvec(r, rx), rb) < 1e-10);

  ComplexMatrix sing(2, 2);
  sing(0, 0) = cd(1, 0);
  sing(0, 1) = cd(2, 0);
  sing(1, 0) = cd(2, 0);
  sing(1, 1) = cd(4, 0);
  CHECK_THROWS_AS(solve_linear(sing, b), SolverError);
}

TEST_CASE("flop counters accumulate per phase") {
  FlopCounter fc;
  ComplexMatrix a(3, 3);
  for (std::size_t i = 0; i < 3; ++i) a(i, i) = cd(1.0 + i, 0.0);
  const CVec b = {cd(1, 0), cd(2, 0), cd(3, 0)};
  solve_linear(a, b, &fc, Phase::kPrecompute);
  CHECK(fc.get(Phase::kPrecompute) > 0);
  CHECK(fc.get(Phase::kGradient) == 0);
  FlopCounter g;
  hermitian_eig(random_hermitian(4, 61), &g, Phase::kProjection);
  CHECK(g.get(Phase::kProjection) > 0);
  FlopCounter sum = fc;
  sum += g;
  CHECK(sum.total() == fc.total() + g.total());
}

}  // TEST_SUITE
