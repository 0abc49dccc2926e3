#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "orbital/density.hpp"
#include "orbital/error.hpp"
#include "orbital/parallel.hpp"
#include "orbital/series.hpp"
#include "orbital/spherical.hpp"

using namespace orbital;

TEST_CASE("terms") {
  CHECK(term(1, 2, Angle::rational_pi(1, 8)) == doctest::Approx(0.75));
  CHECK(term(1, 1, Angle::rational_pi(1, 4)) == 0.0);
  for (unsigned n : {1u, 7u, 100u})
    for (int p : {1, 2, 5}) CHECK(term(n, p, Angle::rational_pi(0, 1)) == 2.0 * n + 1);
  CHECK_THROWS_AS(term(0, 2, Angle::rational_pi(1, 5)), Error);
  CHECK_THROWS_AS(term(3, 0, Angle::rational_pi(1, 5)), Error);
}

TEST_CASE("terms() matches term()") {
  const SeriesSpec spec{3, Angle::parse("0.7"), 2000};
  const auto t = terms(spec);
  REQUIRE(t.size() == 2000);
  for (unsigned n = 1; n <= 2000; n += 111)
    CHECK(t[n - 1] == doctest::Approx(term(n, 3, spec.theta)).epsilon(1e-12));
}

TEST_CASE("dominance in p") {
  const Angle th = Angle::rational_pi(2, 9);
  for (unsigned n = 1; n <= 300; n += 13)
    for (int p = 1; p < 5; ++p) CHECK(term(n, p + 1, th) <= term(n, p, th));
}

TEST_CASE("checkpoint positions") {
  const auto c = checkpoint_positions(1000, 2);
  REQUIRE(!c.empty());
  CHECK(c.front() == 10);
  CHECK(c.back() == 1000);
  CHECK(c[1] == 32);  // round(10^1.5)
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);
}

TEST_CASE("partial sums are monotone and deterministic") {
  const SeriesSpec spec{2, Angle::rational_pi(1, 5), 100000, 4};
  set_max_threads(1);
  const auto a = partial_sum(spec);
  set_max_threads(3);
  const auto b = partial_sum(spec);
  set_max_threads(0);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].sum == b[i].sum);
    if (i) CHECK(a[i].sum >= a[i - 1].sum);
  }
  // the last checkpoint equals a plain sum of terms
  double direct = 0;
  for (double t : terms(spec)) direct += t;
  CHECK(a.back().sum == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("tails vanish for p >= 3") {
  const SeriesSpec spec{3, Angle::rational_pi(1, 4), 200000, 1};
  const auto c = partial_sum(spec);
  // S at 10^k: differences across decades shrink
  double prev_gap = INFINITY;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double gap = c[i].sum - c[i - 1].sum;
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-3);
}

TEST_CASE("classification") {
  const auto conv = classify({3, Angle::rational_pi(1, 5), 100000});
  CHECK(conv.classification == Classification::converges);
  CHECK(conv.term_exponent < -1.8);

  const auto lg = classify({2, Angle::rational_pi(1, 3), 1000000});
  CHECK(lg.classification == Classification::diverges_log);
  CHECK(lg.log_slope > 0);
  CHECK(lg.log_fit_residual < 1e-2);

  const auto lin = classify({1, Angle::rational_pi(1, 5), 100000});
  CHECK(lin.classification == Classification::diverges_linear);
  CHECK(lin.linear_slope > 0);

  CHECK(to_string(Classification::diverges_log) == "DivergesLog");
  CHECK(to_string(Classification::converges) == "Converges");
  CHECK(to_string(Classification::inconclusive) == "Inconclusive");
  CHECK_THROWS_AS(classify({2, Angle::rational_pi(1, 3), 500}), Error);
}

TEST_CASE("slope at pi/4 comes from the even terms only") {
  // |t_n(pi/4)|/4^n = |P_n(0)|: zero for odd n, sqrt(2/(pi n)) for even n,
  // so S_N grows like (4/pi^2) ln N.
  const auto r = classify({2, Angle::rational_pi(1, 4), 1000000, 2});
  CHECK(r.classification == Classification::diverges_log);
  CHECK(r.log_slope == doctest::Approx(4 / (std::numbers::pi * std::numbers::pi)).epsilon(0.01));
}

TEST_CASE("inconclusive is a value") {
  ClassifyRules strict;
  strict.fit_tolerance = 1e-12;
  const auto r = classify({2, Angle::rational_pi(1, 3), 10000}, {}, strict);
  CHECK(r.classification == Classification::inconclusive);
}

TEST_CASE("bound constants") {
  const Angle pi4 = Angle::rational_pi(1, 4);
  const auto b = bound_constants(pi4, 1000, 100000, std::nullopt);
  CHECK(b.c_upper == doctest::Approx(std::sqrt(2 / std::numbers::pi)).epsilon(0.02));
  CHECK(b.c0 == doctest::Approx(1.0));
  CHECK(b.c_lower_on_e == 0.0);

  const auto dm = decade_maxima(Angle::rational_pi(1, 5), 100, 100000);
  REQUIRE(dm.size() == 3);
  for (std::size_t i = 1; i < dm.size(); ++i) {
    const double ratio = dm[i].max / dm[i - 1].max;
    CHECK(ratio >= 0.8);
    CHECK(ratio <= 1.25);
  }

  const Angle pi3 = Angle::rational_pi(1, 3);
  const auto e = bound_constants(pi3, 1000, 100000, ESetSpec{Angle::rational_pi(2, 3), 0.75});
  CHECK(e.e_count > 0);
  CHECK(e.c_lower_on_e > 0);
  CHECK(e.c_upper >= e.c_lower_on_e);
  CHECK(e_value(Angle::rational_pi(2, 3), e.argmin + 1) >= 0.75);

  CHECK_THROWS_AS(bound_constants(Angle::rational_pi(1, 2), 100, 1000, std::nullopt), Error);
  CHECK_THROWS_AS(bound_constants(pi4, 10, 1000, std::nullopt), Error);
}

TEST_CASE("scaled magnitudes") {
  const Angle th = Angle::parse("0.7");
  const auto s = scaled_magnitudes(th, 100, 200);
  REQUIRE(s.size() == 101);
  CHECK(s[0] == doctest::Approx(std::sqrt(100.0) * std::abs(phi(th, 100))));
}

TEST_CASE("line fit") {
  const auto f = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(f.slope == doctest::Approx(2));
  CHECK(f.intercept == doctest::Approx(1));
  CHECK(f.rms_residual == doctest::Approx(0).epsilon(1e-12));
}
