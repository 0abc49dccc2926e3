// Acceptance run. Prints one PASS/FAIL line per criterion; an optional
// argument selects a single criterion. Uses only the C API.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbital/orbital.h"

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass;
  std::string detail;
};

// Any unexpected status aborts the criterion as a failure.
void ok(orb_status s, const char* what) {
  if (s != ORB_OK) throw std::runtime_error(std::string(what) + ": " + orb_status_name(s) + " " + orb_last_error());
}

struct Angle {
  orb_angle* p = nullptr;
  explicit Angle(const std::string& text, unsigned bits = 64) { ok(orb_angle_parse(text.c_str(), bits, &p), "angle"); }
  Angle(std::int64_t num, std::int64_t den) { ok(orb_angle_rational(num, den, &p), "angle"); }
  Angle(const Angle&) = delete;
  ~Angle() { orb_angle_free(p); }
  operator const orb_angle*() const { return p; }
};

cd to_cd(orb_complex z) { return {z.re, z.im}; }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict c1() {
  const auto t0 = std::chrono::steady_clock::now();
  unsigned matches = 0;
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    int eq = 0;
    ok(orb_lemma1_check(n, &eq), "lemma1");
    matches += eq == 1;
  }
  const double t = seconds_since(t0);
  return {matches == 2000 && t < 60, fmt("%u/2000 exact matches for n <= 2000, %.1f s (limit 60 s)", matches, t)};
}

Verdict c2() {
  bool pass = true;
  std::string detail;
  for (const char* text : {"1/5", "1/8", "3/10", "0.7"}) {
    Angle th(text);
    orb_decade_max dm[8];
    size_t count = 0;
    ok(orb_decade_maxima(th, 100, 100000, 64, dm, 8, &count), "decade maxima");
    double lo = INFINITY, hi = 0;
    for (size_t i = 0; i < count; ++i) {
      lo = std::min(lo, dm[i].max);
      hi = std::max(hi, dm[i].max);
    }
    const double ratio = hi / lo;
    pass = pass && count == 3 && ratio <= 1.25;
    detail += fmt("%s%s ratio %.4f", detail.empty() ? "" : ", ", text, ratio);
  }
  return {pass, detail + " (limit 1.25)"};
}

Verdict c3() {
  Angle th(1, 4);
  const std::uint64_t lo = 1000, hi = 100000;
  std::vector<orb_complex> phi(hi - lo + 1);
  ok(orb_tn_range(th, lo, hi, 64, phi.data()), "tn range");
  const double target = std::sqrt(2 / kPi);
  double worst_even = 0, worst_odd = 0;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const double a = std::abs(to_cd(phi[n - lo]));
    if (n % 2 == 0)
      worst_even = std::max(worst_even, std::abs(std::sqrt(static_cast<double>(n)) * a / target - 1));
    else
      worst_odd = std::max(worst_odd, a);
  }
  return {worst_even <= 0.02 && worst_odd <= 1e-12,
          fmt("even n: max relative deviation from sqrt(2/pi) %.3e (limit 2e-2); odd n: max |phi| %.1e (limit 1e-12)",
              worst_even, worst_odd)};
}

struct SeriesRun {
  std::string cls;
  orb_series_fit fit;
};

SeriesRun run_series(const char* text, int p, std::uint64_t n_max) {
  Angle th(text);
  orb_series* s = nullptr;
  ok(orb_series_run(th, p, n_max, 10, 64, &s), "series");
  SeriesRun r{orb_series_classification(s), {}};
  const orb_status st = orb_series_get_fit(s, &r.fit);
  orb_series_free(s);
  ok(st, "series fit");
  return r;
}

Verdict c4() {
  bool pass = true;
  std::string detail;
  for (const char* text : {"1/4", "1/5", "0.7"}) {
    const auto r = run_series(text, 3, 1000000);
    pass = pass && r.cls == "Converges" && r.fit.term_exponent <= -1.8;
    detail += fmt("%s%s %s exponent %.3f", detail.empty() ? "" : ", ", text, r.cls.c_str(), r.fit.term_exponent);
  }
  return {pass, detail + " (limit -1.8)"};
}

Verdict c5() {
  const double target = 8 / (kPi * kPi);
  const auto q = run_series("1/4", 2, 1000000);
  const double rel = std::abs(q.fit.log_slope / target - 1);
  bool pass = q.cls == "DivergesLog" && rel <= 0.05;
  std::string detail = fmt("1/4 %s slope %.5f vs 8/pi^2 = %.5f (relative %.3f, limit 0.05)", q.cls.c_str(),
                           q.fit.log_slope, target, rel);
  for (const char* text : {"1/3", "1/5"}) {
    const auto r = run_series(text, 2, 1000000);
    pass = pass && r.cls == "DivergesLog" && r.fit.log_slope > 0;
    detail += fmt(", %s %s slope %.5f", text, r.cls.c_str(), r.fit.log_slope);
  }
  return {pass, detail};
}

Verdict c6() {
  bool pass = true;
  std::string detail;
  for (auto [p, q] : {std::pair{1, 3}, std::pair{1, 4}, std::pair{1, 5}}) {
    Angle th(p, q);
    Angle omega(2 * p, q);
    orb_mwitness_info w{};
    ok(orb_mwitness(omega, &w, nullptr), "witness");
    orb_bounds_info b{};
    ok(orb_bounds(th, 1000, 100000, 1, w.c, 64, &b), "bounds");
    pass = pass && b.e_count > 0 && b.c_lower_on_e >= 0.05;
    detail += fmt("%s%d/%d c=%.4f min %.4f over %llu n", detail.empty() ? "" : ", ", p, q, w.c, b.c_lower_on_e,
                  static_cast<unsigned long long>(b.e_count));
  }
  return {pass, detail + " (limit 0.05)"};
}

Verdict c7() {
  std::uint64_t angles = 0, checked = 0, bad = 0;
  double min_c = INFINITY;
  for (std::int64_t q = 1; q <= 200; ++q)
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1 || 6 * p <= q || 6 * p >= 5 * q) continue;
      Angle omega(p, q);
      orb_mwitness_info w{};
      ok(orb_mwitness(omega, &w, nullptr), "witness");
      ++angles;
      min_c = std::min(min_c, w.c);
      if (w.modulus == 0 || !(w.c > 0.5)) {
        ++bad;
        continue;
      }
      for (std::uint64_t j = 0; j < 10000; ++j) {
        double v = 0;
        ok(orb_e_value(omega, w.offset + w.modulus * j, &v), "e value");
        ++checked;
        if (v < w.c) ++bad;
      }
    }

  std::uint64_t boundary_members = 0;
  for (auto [p, q] : {std::pair{1, 6}, std::pair{5, 6}})
    for (double c : {0.5 + 1e-12, 0.51, 0.75, 1.0}) {
      Angle omega(p, q);
      orb_intset* e = nullptr;
      ok(orb_intset_eset(omega, c, 1000000, &e), "e-set");
      size_t count = 0;
      const orb_status s = orb_intset_members(e, 1000000, nullptr, 0, &count);
      orb_intset_free(e);
      ok(s, "members");
      boundary_members += count;
    }
  return {bad == 0 && boundary_members == 0 && angles > 0,
          fmt("%llu angles, %llu members checked, %llu violations, min c %.6f; boundary E-sets hold %llu members",
              static_cast<unsigned long long>(angles), static_cast<unsigned long long>(checked),
              static_cast<unsigned long long>(bad), min_c, static_cast<unsigned long long>(boundary_members))};
}

Verdict c8() {
  const auto t0 = std::chrono::steady_clock::now();
  orb_labelle_info s{};
  ok(orb_labelle_sweep(10000, &s), "sweep");
  const double t = seconds_since(t0);
  return {s.counterexamples == 0 && s.admissible > 0 && t < 60,
          fmt("%llu counterexamples among %llu admissible pairs, min %.9f at %lld/%lld, %.1f s",
              static_cast<unsigned long long>(s.counterexamples), static_cast<unsigned long long>(s.admissible),
              s.min_value, static_cast<long long>(s.argmin_p), static_cast<long long>(s.argmin_q), t)};
}

Verdict c9() {
  // Entries that are deterministic (p = 1 on the spherical slot) have zero
  // sample variance, so a rounding floor is added to the 4 sigma band.
  constexpr std::uint64_t kSamples = 1000000;
  constexpr double kFloor = 1e-9;
  const unsigned slot = orb_mc_spherical_slot();
  std::uint64_t entries = 0, outside = 0;
  double worst = 0;
  std::string worst_at;
  for (auto [num, den] : {std::pair{1, 8}, std::pair{1, 5}}) {
    Angle th(num, den);
    for (int p = 1; p <= 3; ++p)
      for (unsigned n = 1; n <= 20; ++n) {
        cd spherical = 0;
        if (n % 2 == 0) {
          orb_tn_info t{};
          ok(orb_tn(th, n / 2, 64, &t), "tn");
          spherical = std::pow(std::conj(to_cd(t.spherical)), p);
        }
        std::vector<orb_mc_estimate> row(n + 1);
        for (unsigned i : {0u, n}) {
          const std::uint64_t seed = 1000000ull * den + 1000ull * p + 10ull * n + i;
          ok(orb_mc_row(th, p, n, i, kSamples, seed, row.data()), "mc row");
          for (unsigned j = 0; j <= n; ++j) {
            const cd want = (n % 2 == 0 && i == slot && j == slot) ? spherical : cd(0);
            const double z = std::abs(to_cd(row[j].mean) - want) / (4 * row[j].std_error + kFloor);
            ++entries;
            if (z > 1) ++outside;
            if (z > worst) {
              worst = z;
              worst_at = fmt("theta=%d/%d p=%d n=%u (%u,%u)", num, den, p, n, i, j);
            }
          }
        }
      }
  }
  return {outside == 0, fmt("%llu entries, %llu outside 4 sigma; largest |error|/(4 sigma + 1e-9) = %.3f at %s",
                            static_cast<unsigned long long>(entries), static_cast<unsigned long long>(outside), worst,
                            worst_at.c_str())};
}

Verdict c10() {
  // Legendre oracle on a 50-angle grid covering one period.
  double worst_oracle = 0;
  for (int j = 1; j <= 50; ++j) {
    Angle th(j, 102);
    std::vector<orb_complex> direct(500);
    ok(orb_tn_range(th, 1, 500, 128, direct.data()), "tn range");
    for (std::uint64_t n = 1; n <= 500; ++n) {
      orb_complex o{};
      ok(orb_tn_oracle(th, n, 128, &o), "oracle");
      worst_oracle = std::max(worst_oracle, std::abs(to_cd(o) - to_cd(direct[n - 1])));
    }
  }

  // Exact cyclotomic path against the floating path; p sampled per q.
  std::uint64_t compared = 0, over = 0;
  double worst_exact = 0;
  for (std::int64_t q = 1; q <= 64; ++q) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 1; p < 2 * q; ++p)
      if (std::gcd(p, q) == 1) ps.push_back(p);
    const std::size_t stride = std::max<std::size_t>(1, ps.size() / 4);
    for (std::size_t k = 0; k < ps.size(); k += stride) {
      Angle th(ps[k], q);
      for (std::uint64_t n = 1; n <= 300; n += (n < 20 ? 1 : 11)) {
        orb_tn_info t{};
        orb_complex e{};
        ok(orb_tn(th, n, 64, &t), "tn");
        ok(orb_tn_exact(th, n, 128, &e), "tn exact");
        const double d = std::abs(to_cd(e) - to_cd(t.normalized));
        worst_exact = std::max(worst_exact, d);
        ++compared;
        if (d > t.tolerance) ++over;
      }
      orb_tn_info t{};
      orb_complex e{};
      ok(orb_tn(th, 300, 64, &t), "tn");
      ok(orb_tn_exact(th, 300, 128, &e), "tn exact");
      ++compared;
      if (std::abs(to_cd(e) - to_cd(t.normalized)) > t.tolerance) ++over;
    }
  }
  return {worst_oracle <= 1e-10 && over == 0,
          fmt("oracle: max difference %.2e over 50 angles, n <= 500 (limit 1e-10); exact: %llu comparisons, %llu "
              "beyond tolerance, max difference %.2e",
              worst_oracle, static_cast<unsigned long long>(compared), static_cast<unsigned long long>(over),
              worst_exact)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  std::vector<int> selected;
  if (argc > 1) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [criterion 1..%zu]\n", argv[0], criteria.size());
      return 2;
    }
    selected.push_back(k);
  } else {
    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) selected.push_back(k);
  }

  int failures = 0;
  for (int k : selected) {
    Verdict v;
    try {
      v = criteria[k - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s criterion %d: %s\n", v.pass ? "PASS" : "FAIL", k, v.detail.c_str());
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
