#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "orbital/error.hpp"
#include "orbital/groupsim.hpp"
#include "orbital/parallel.hpp"
#include "orbital/series.hpp"
#include "orbital/spherical.hpp"

using namespace orbital;

namespace {

double max_diff(const HomPoly& a, const HomPoly& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) m = std::max(m, std::abs(a.coeffs[k] - b.coeffs[k]));
  return m;
}

// Relative to the norm, so that large factorial weights do not hide errors.
double rel_diff(const HomPoly& a, const HomPoly& b) {
  HomPoly d = a;
  for (std::size_t k = 0; k < d.coeffs.size(); ++k) d.coeffs[k] -= b.coeffs[k];
  return std::sqrt(std::abs(inner(d, d)) / std::abs(inner(b, b)));
}

SU2Matrix random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double v[4];
  double n = 0;
  for (double& x : v) {
    x = g(rng);
    n += x * x;
  }
  n = std::sqrt(n);
  const cplx a(v[0] / n, v[1] / n), b(v[2] / n, v[3] / n);
  SU2Matrix m;
  m.m = {a, b, -std::conj(b), std::conj(a)};
  return m;
}

// coefficients of unit scale in the orthonormal monomial basis
HomPoly random_poly(std::mt19937_64& rng, unsigned d) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(d + 1);
  for (unsigned k = 0; k <= d; ++k)
    c[k] = cplx(g(rng), g(rng)) / std::exp(0.5 * (std::lgamma(k + 1.0) + std::lgamma(d - k + 1.0)));
  return HomPoly(std::move(c));
}

}  // namespace

TEST_CASE("a_theta and the normalizer") {
  const auto half = a_theta(Angle::rational_pi(1, 2));
  CHECK(half.in_normalizer);
  CHECK(half.matrix(0, 0) == cplx(0, 1));
  CHECK(half.matrix(1, 1) == cplx(0, -1));
  CHECK_FALSE(a_theta(Angle::rational_pi(1, 5)).in_normalizer);
  const auto zero = a_theta(Angle::rational_pi(0, 1));
  CHECK(zero.in_normalizer);
  CHECK(zero.matrix.m == SU2Matrix::identity().m);
  CHECK_FALSE(a_theta(Angle::parse("0.7")).in_normalizer);
  CHECK(a_theta(Angle::parse("0.7")).matrix.unitarity_defect() < 1e-15);
}

TEST_CASE("rotation samples") {
  CHECK(SU2Matrix::rotation(0).m == SU2Matrix::identity().m);
  auto rng = make_stream(2024, 0);
  double mean_cos = 0;
  const int m = 1000000;
  for (int i = 0; i < m; ++i) {
    const SU2Matrix k = so2_sample(rng);
    mean_cos += k(0, 0).real();
    if (i % 1000 == 0) {
      REQUIRE(k.unitarity_defect() < 1e-12);
      REQUIRE(k(0, 0).imag() == 0.0);
      REQUIRE(k(0, 1).imag() == 0.0);
    }
  }
  CHECK(std::abs(mean_cos / m) < 3 / std::sqrt(1.0 * m));
}

TEST_CASE("streams are reproducible and distinct") {
  auto a = make_stream(7, 3), b = make_stream(7, 3), c = make_stream(7, 4), d = make_stream(8, 3);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("group action on polynomials") {
  std::mt19937_64 rng(11);
  const HomPoly p = random_poly(rng, 6);
  CHECK(max_diff(pi_apply(SU2Matrix::identity(), p), p) == 0.0);

  const double th = 0.37;
  const SU2Matrix a = SU2Matrix{{std::polar(1.0, th), cplx(0), cplx(0), std::polar(1.0, -th)}};
  for (unsigned n : {1u, 4u, 9u})
    for (unsigned k = 0; k <= n; ++k) {
      const HomPoly img = pi_apply(a, HomPoly::monomial(n, k));
      HomPoly want = HomPoly::monomial(n, k);
      want.coeffs[k] = std::polar(1.0, th * (2.0 * k - n));
      CHECK(max_diff(img, want) < 1e-15);
    }

  const SU2Matrix quarter = a_theta(Angle::rational_pi(1, 2)).matrix;
  for (unsigned n = 1; n <= 8; ++n) {
    HomPoly want = x_pi(n);
    for (auto& c : want.coeffs) c *= (n % 2 ? -1.0 : 1.0);
    CHECK(max_diff(pi_apply(quarter, x_pi(n)), want) == 0.0);
  }
}

TEST_CASE("inner product") {
  CHECK(inner(x_pi(1), x_pi(1)) == cplx(4));
  CHECK(inner(HomPoly::monomial(2, 1), HomPoly::monomial(2, 1)) == cplx(1));
  CHECK_THROWS_AS(inner(HomPoly::monomial(2, 1), HomPoly::monomial(3, 1)), Error);
  try {
    inner(x_pi(1), x_pi(2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degree_mismatch);
  }
  for (unsigned n = 1; n <= 50; ++n) {
    REQUIRE(inner_exact(x_pi_exact(n), x_pi_exact(n)) == norm_X(n));
    REQUIRE(std::abs(inner(x_pi(n), x_pi(n)).real() / static_cast<double>(norm_X(n)) - 1) < 1e-12);
  }
}

TEST_CASE("unitarity and homomorphism") {
  std::mt19937_64 rng(5);
  for (unsigned d = 0; d <= 20; ++d)
    for (int rep = 0; rep < 5; ++rep) {
      const SU2Matrix a = random_su2(rng), b = random_su2(rng);
      REQUIRE(a.unitarity_defect() < 1e-12);
      const HomPoly p = random_poly(rng, d), q = random_poly(rng, d);
      const cplx before = inner(p, q);
      const cplx after = inner(pi_apply(a, p), pi_apply(a, q));
      REQUIRE(std::abs(after - before) < 1e-10);
      REQUIRE(rel_diff(pi_apply(a * b, p), pi_apply(a, pi_apply(b, p))) < 1e-10);
    }
}

TEST_CASE("long double path above degree 64") {
  std::mt19937_64 rng(9);
  const SU2Matrix a = random_su2(rng), b = random_su2(rng);
  const HomPoly p = random_poly(rng, 80);
  CHECK(rel_diff(pi_apply(a * b, p), pi_apply(a, pi_apply(b, p))) < 1e-8);
}

TEST_CASE("X_pi is fixed by rotations") {
  auto rng = make_stream(99, 0);
  for (int i = 0; i < 100; ++i) {
    const SU2Matrix k = so2_sample(rng);
    for (unsigned n : {1u, 5u, 20u}) REQUIRE(rel_diff(pi_apply(k, x_pi(n)), x_pi(n)) < 1e-10);
  }
}

TEST_CASE("matrix basis is orthonormal") {
  for (unsigned n : {1u, 2u, 3u, 6u, 10u}) {
    const auto b = spherical_basis(n);
    REQUIRE(b.size() == n + 1);
    for (unsigned i = 0; i <= n; ++i)
      for (unsigned j = 0; j <= n; ++j)
        REQUIRE(std::abs(inner(b[i], b[j]) - cplx(i == j ? 1.0 : 0.0)) < 1e-12);
    if (n % 2 == 0) {
      // slot 0 is X_pi / ||X_pi||
      const double norm = std::sqrt(static_cast<double>(norm_X(n / 2)));
      for (unsigned k = 0; k <= n; ++k)
        CHECK(std::abs(b[kSphericalSlot].coeffs[k] - x_pi(n / 2).coeffs[k] / norm) < 1e-12);
    }
  }
}

TEST_CASE("Monte Carlo Fourier coefficients") {
  const Angle pi8 = Angle::rational_pi(1, 8);
  const std::uint64_t m = 200000;

  // odd degree: every entry vanishes
  for (unsigned i : {0u, 2u}) {
    const auto row = mc_fourier_row(pi8, 2, 3, i, m, 17);
    for (const auto& e : row) CHECK(std::abs(e.mean) <= 4 * e.std_error + 1e-12);
  }

  // even degree: only the spherical-spherical entry survives
  const auto rows = mc_fourier_rows(pi8, 2, 2, {0, 1, 2}, m, 17);
  for (unsigned i = 0; i <= 2; ++i)
    for (unsigned j = 0; j <= 2; ++j) {
      const auto& e = rows[i][j];
      CHECK(e.samples == m);
      CHECK(e.seed == 17);
      if (i == kSphericalSlot && j == kSphericalSlot) continue;
      CHECK(std::abs(e.mean) <= 4 * e.std_error + 1e-12);
    }
  const auto& s = rows[kSphericalSlot][kSphericalSlot];
  const cplx want = std::pow(std::conj(spherical_value(pi8, 1)), 2);
  CHECK(std::abs(want - cplx(0.5)) < 1e-15);
  CHECK(std::abs(s.mean - want) <= 4 * s.std_error);

  // p = 1 is deterministic on the spherical entry
  const auto one = mc_fourier_entry(pi8, 1, 4, kSphericalSlot, kSphericalSlot, 1000, 3);
  CHECK(std::abs(one.mean - std::conj(spherical_value(pi8, 2))) < 1e-10);
}

TEST_CASE("Monte Carlo does not depend on the thread count") {
  const Angle th = Angle::rational_pi(1, 5);
  set_max_threads(1);
  const auto a = mc_fourier_row(th, 3, 4, 0, 20000, 123);
  set_max_threads(4);
  const auto b = mc_fourier_row(th, 3, 4, 0, 20000, 123);
  set_max_threads(0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a[j].mean == b[j].mean);
    CHECK(a[j].std_error == b[j].std_error);
  }
}

TEST_CASE("Monte Carlo preconditions") {
  const Angle th = Angle::rational_pi(1, 5);
  try {
    mc_fourier_entry(th, 2, 3, 4, 0, 1000, 1);
    FAIL("expected out_of_range");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::out_of_range);
  }
  CHECK_THROWS_AS(mc_fourier_entry(th, 2, 3, 0, 9, 1000, 1), Error);
  CHECK_THROWS_AS(mc_fourier_entry(th, 2, 3, 0, 0, 999, 1), Error);
  CHECK_THROWS_AS(mc_fourier_entry(th, 0, 3, 0, 0, 1000, 1), Error);
}

TEST_CASE("Fourier coefficients reproduce the norm series") {
  // sum_{n<=N} (2n+1) |mu^(p)(pi_2n)_{11}|^2 against the partial sum of the
  // series, with |m|^2 error bounded by 2|m|s + s^2 at four sigma.
  const Angle th = Angle::rational_pi(1, 5);
  const int p = 2;
  const unsigned big_n = 10;
  double mc = 0, err = 0;
  for (unsigned n = 1; n <= big_n; ++n) {
    const auto e = mc_fourier_entry(th, p, 2 * n, kSphericalSlot, kSphericalSlot, 40000, 1000 + n);
    const double s = 4 * e.std_error;
    mc += (2 * n + 1) * std::norm(e.mean);
    err += (2 * n + 1) * (2 * std::abs(e.mean) * s + s * s);
  }
  double exact = 0;
  for (unsigned n = 1; n <= big_n; ++n) exact += term(n, p, th);
  CHECK(std::abs(mc - exact) <= err);
}
