#include <cmath>
#include <limits>

#include "doctest.h"
#include "phaselift/errors.hpp"
#include "phaselift/measurement.hpp"
#include "phaselift/oracles.hpp"
#include "phaselift/rng.hpp"

using namespace phaselift;

namespace {

// Fixed 2-dimensional instance with three probes; every number checked
// against an independent evaluation.
MeasurementSet tiny_instance() {
  MeasurementSet m;
  m.dim = 2;
  m.lambda = 10.0;
  m.probes = {{cd(1.0, 0.0), cd(0.0, 1.0)},
              {cd(0.5, -0.5), cd(1.0, 0.0)},
              {cd(0.0, 0.0), cd(2.0, 0.0)}};
  m.intensities = {{0.7, 1.3, 0.2}};
  return m;
}

HermitianMatrix tiny_c() {
  HermitianMatrix c(2);
  c.set(0, 0, 1.0);
  c.set(1, 1, 2.0);
  c.set(0, 1, cd(0.25, 0.5));
  return c;
}

MeasurementSet random_instance(std::size_t dim, std::size_t n, double lambda,
                               std::uint64_t seed, bool planted = false) {
  Rng rng(seed);
  MeasurementSet m;
  m.dim = dim;
  m.lambda = lambda;
  CVec h(dim);
  for (auto& e : h) e = rng.complex_normal();
  for (std::size_t p = 0; p < n; ++p) {
    CVec x(dim);
    for (auto& e : x) e = rng.complex_normal();
    m.probes.push_back(x);
  }
  std::vector<double> row(n);
  for (std::size_t p = 0; p < n; ++p)
    row[p] = planted ? intensity_forward(h, m.probes[p]) : rng.normal();
  m.intensities.push_back(row);
  return m;
}

HermitianMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h.set(i, i, rng.normal());
    for (std::size_t j = i + 1; j < n; ++j) h.set(i, j, rng.complex_normal());
  }
  return h;
}

double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace

TEST_SUITE("objective") {

TEST_CASE("intensity forward model") {
  const CVec h = {cd(1, 0), cd(0, 1)};
  const CVec x = {cd(1, 0), cd(1, 0)};
  CHECK(intensity_forward(h, x) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(intensity_forward(h, h) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("fixed instance matches frozen values") {
  const MeasurementSet m = tiny_instance();
  const HermitianMatrix c = tiny_c();
  // quadratic forms per probe: 2, 2.25, 8
  CHECK(quadratic_form(c, m.probes[0]) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(quadratic_form(c, m.probes[1]) == doctest::Approx(2.25).epsilon(1e-14));
  CHECK(quadratic_form(c, m.probes[2]) == doctest::Approx(8.0).epsilon(1e-14));

  const ObjectiveValue v = objective(c, m, 0);
  CHECK(v.total == doctest::Approx(637.32499999999993).epsilon(1e-14));
  CHECK(v.trace_term == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(v.total == doctest::Approx(v.trace_term + v.residual_term).epsilon(1e-14));

  const HermitianMatrix g = gradient(c, m, 0);
  CHECK(g(0, 0).real() == doctest::Approx(36.5).epsilon(1e-13));
  CHECK(g(1, 1).real() == doctest::Approx(670.0).epsilon(1e-13));
  CHECK(g(0, 1).real() == doctest::Approx(9.5).epsilon(1e-13));
  CHECK(g(0, 1).imag() == doctest::Approx(-35.5).epsilon(1e-13));
  CHECK(g(1, 0) == std::conj(g(0, 1)));
}

TEST_CASE("objective agrees with the naive oracle") {
  for (std::uint64_t seed = 70; seed < 76; ++seed) {
    const MeasurementSet m = random_instance(3, 12, 4.5, seed);
    const HermitianMatrix c = random_hermitian(3, seed + 100);
    const double lib = objective(c, m, 0).total;
    const double ref = oracles::naive_objective(c, m, 0);
    CHECK(lib == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("gradient agrees with central finite differences") {
  for (std::uint64_t seed = 80; seed < 84; ++seed) {
    for (double lambda : {0.1, 10.0}) {
      const MeasurementSet m = random_instance(3, 10, lambda, seed);
      const HermitianMatrix c = random_hermitian(3, seed + 200);
      const HermitianMatrix g = gradient(c, m, 0);
      const HermitianMatrix fd = oracles::fd_gradient(c, m, 0);
      CHECK(max_abs_diff(g, fd) < 1e-5);
    }
  }
}

TEST_CASE("gradient reduces to the identity without data pull") {
  // lambda -> 0 limit realized exactly at zero residuals: planted intensities
  const MeasurementSet m = random_instance(3, 15, 10.0, 90, true);
  Rng rng(90);
  CVec h(3);
  for (auto& e : h) e = rng.complex_normal();
  const HermitianMatrix g = gradient(HermitianMatrix::outer(h), m, 0);
  CHECK(max_abs_diff(g, HermitianMatrix::identity(3)) < 1e-9);

  // and at tiny lambda regardless of residuals
  MeasurementSet m2 = random_instance(3, 15, 1e-14, 91);
  const HermitianMatrix g2 = gradient(random_hermitian(3, 92), m2, 0);
  CHECK(max_abs_diff(g2, HermitianMatrix::identity(3)) < 1e-9);
}

TEST_CASE("objective is convex along matrix lines") {
  const MeasurementSet m = random_instance(4, 20, 3.0, 95);
  const HermitianMatrix a = random_hermitian(4, 96);
  const HermitianMatrix b = random_hermitian(4, 97);
  const double ga = objective(a, m, 0).total;
  const double gb = objective(b, m, 0).total;
  for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    HermitianMatrix mix = a.scaled(alpha);
    mix.add_scaled(b, 1.0 - alpha);
    const double gm = objective(mix, m, 0).total;
    CHECK(gm <= alpha * ga + (1.0 - alpha) * gb + 1e-9);
  }
}

TEST_CASE("negative gradient direction descends") {
  const MeasurementSet m = random_instance(3, 12, 2.0, 98);
  const HermitianMatrix c = random_hermitian(3, 99);
  const HermitianMatrix g = gradient(c, m, 0);
  const double g0 = objective(c, m, 0).total;
  HermitianMatrix stepped = c;
  stepped.add_scaled(g, -1e-7);
  CHECK(objective(stepped, m, 0).total < g0);
}

TEST_CASE("negative intensities are legal inputs") {
  MeasurementSet m = random_instance(2, 6, 5.0, 101);
  m.intensities[0][0] = -0.4;
  CHECK_NOTHROW(m.validate());
  const HermitianMatrix c = random_hermitian(2, 102);
  CHECK(std::isfinite(objective(c, m, 0).total));
  CHECK(gradient(c, m, 0).matrix().all_finite());
}

TEST_CASE("validation rejects inconsistent sets") {
  MeasurementSet ok = tiny_instance();
  CHECK_NOTHROW(ok.validate());

  MeasurementSet bad = ok;
  bad.probes[1].pop_back();
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = ok;
  bad.intensities[0].pop_back();
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = ok;
  bad.lambda = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = ok;
  bad.dim = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = ok;
  bad.probes.clear();
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = ok;
  bad.intensities[0][1] = std::nan("");
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = ok;
  bad.probes[0][0] = cd(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("objective flop accounting is deterministic and positive") {
  const MeasurementSet m = tiny_instance();
  const HermitianMatrix c = tiny_c();
  FlopCounter a, b;
  objective(c, m, 0, &a, Phase::kLineSearch);
  objective(c, m, 0, &b, Phase::kLineSearch);
  CHECK(a.total() == b.total());
  CHECK(a.get(Phase::kLineSearch) > 0);
  FlopCounter g;
  gradient(c, m, 0, &g);
  CHECK(g.get(Phase::kGradient) > 0);
}

}  // TEST_SUITE
