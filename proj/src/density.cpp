#include "orbital/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail.hpp"
#include "orbital/error.hpp"

namespace orbital {

IntegerSet::IntegerSet(Description d, std::uint64_t horizon)
    : desc_(std::move(d)), horizon_(horizon) {
  if (const auto* e = std::get_if<ExplicitSet>(&desc_)) {
    for (std::size_t i = 0; i < e->members.size(); ++i) {
      require(e->members[i] >= 1, ErrorCode::invalid_argument, "set members must be positive");
      require(e->members[i] <= horizon_, ErrorCode::invalid_argument,
              "set member beyond the horizon");
      require(i == 0 || e->members[i - 1] < e->members[i], ErrorCode::invalid_argument,
              "explicit set must be strictly increasing");
    }
  } else if (const auto* p = std::get_if<Progression>(&desc_)) {
    require(p->offset > 0 && p->modulus > 0, ErrorCode::invalid_argument,
            "progression needs a positive offset and modulus");
  }
}

IntegerSet IntegerSet::progression(std::uint64_t offset, std::uint64_t modulus,
                                   std::uint64_t horizon) {
  return IntegerSet(Progression{offset, modulus}, horizon);
}

bool IntegerSet::contains(std::uint64_t n) const {
  if (n == 0) return false;
  return std::visit(
      [&](const auto& d) -> bool {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ExplicitSet>) {
          return std::binary_search(d.members.begin(), d.members.end(), n);
        } else if constexpr (std::is_same_v<D, Progression>) {
          return n >= d.offset && (n - d.offset) % d.modulus == 0;
        } else {
          return e_value(d.omega, n) >= d.c;
        }
      },
      desc_);
}

std::vector<std::uint64_t> IntegerSet::members(std::uint64_t limit) const {
  std::vector<std::uint64_t> out;
  if (const auto* e = std::get_if<ExplicitSet>(&desc_)) {
    for (auto m : e->members)
      if (m <= limit) out.push_back(m);
  } else if (const auto* p = std::get_if<Progression>(&desc_)) {
    for (std::uint64_t m = p->offset; m <= limit; m += p->modulus) out.push_back(m);
  } else {
    for (std::uint64_t n = 1; n <= limit; ++n)
      if (contains(n)) out.push_back(n);
  }
  return out;
}

std::vector<bool> IntegerSet::indicator(std::uint64_t limit) const {
  std::vector<bool> flags(limit + 1, false);
  for (auto m : members(limit)) flags[m] = true;
  return flags;
}

namespace {

struct DoubleDouble {
  double hi = 0;
  double lo = 0;
};

// omega / (2 pi) to about 106 bits
DoubleDouble turns_of(const Angle& omega) {
  ScopedPrecision prec(256);
  const HighReal f = omega.radians_as<HighReal>() / (2 * pi_value<HighReal>());
  DoubleDouble d;
  d.hi = static_cast<double>(f);
  d.lo = static_cast<double>(HighReal(f - d.hi));
  return d;
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

double sin_multiple(const Angle& omega, std::uint64_t n) {
  if (omega.is_rational()) {
    const std::int64_t r =
        detail::mul_mod(static_cast<std::int64_t>(n % static_cast<std::uint64_t>(2 * omega.q())),
                        omega.p(), 2 * omega.q());
    return sin_pi_ratio<double>(r, omega.q());
  }
  thread_local Angle cached_angle;
  thread_local DoubleDouble cached_turns;
  thread_local bool cached = false;
  if (!cached || !(cached_angle == omega)) {
    cached_turns = turns_of(omega);
    cached_angle = omega;
    cached = true;
  }
  const double m = static_cast<double>(n);
  const double prod = m * cached_turns.hi;
  const double err = std::fma(m, cached_turns.hi, -prod);
  double x = frac(prod) + err + m * cached_turns.lo;
  x = frac(x);
  if (x >= 0.5) x -= 1.0;  // [-1/2, 1/2)
  return std::sin(2 * std::numbers::pi * x);
}

double e_value(const Angle& omega, std::uint64_t n) {
  return sin_multiple(omega, 1) * sin_multiple(omega, n);
}

DensityEstimate lower_density_profile(const IntegerSet& set, std::uint64_t N) {
  require(N >= 100, ErrorCode::invalid_argument, "density profile needs N >= 100");
  std::vector<std::uint64_t> marks;
  for (int e = 10; e <= 200; ++e) {
    const auto m = static_cast<std::uint64_t>(std::llround(std::pow(10.0, e / 10.0)));
    if (m > N) break;
    if (marks.empty() || marks.back() != m) marks.push_back(m);
  }
  if (marks.empty() || marks.back() != N) marks.push_back(N);

  DensityEstimate est;
  est.tail_start = std::max<std::uint64_t>(1, N / 10);
  est.liminf_estimate = 1.0;
  std::uint64_t count = 0;
  std::uint64_t upto = 0;
  const auto flags = set.indicator(N);
  for (auto m : marks) {
    for (; upto < m; ++upto)
      if (flags[upto + 1]) ++count;
    const double ratio = static_cast<double>(count) / static_cast<double>(m);
    est.checkpoints.emplace_back(m, ratio);
  }
  // tail minimum taken over every N' in [N/10, N], not only the marks
  count = 0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (flags[n]) ++count;
    if (n >= est.tail_start)
      est.liminf_estimate =
          std::min(est.liminf_estimate, static_cast<double>(count) / static_cast<double>(n));
  }
  return est;
}

namespace {

void require_open_unit(const Angle& omega) {
  if (omega.is_rational()) {
    require(omega.p() > 0 && omega.p() < omega.q(), ErrorCode::out_of_range,
            "omega must lie in (0, pi)");
  } else {
    require(omega.radians() > 0 && omega.radians() < std::numbers::pi_v<long double>,
            ErrorCode::out_of_range, "omega must lie in (0, pi)");
  }
}

bool inside_m(const Angle& omega) {
  if (omega.is_rational()) return 6 * omega.p() > omega.q() && 6 * omega.p() < 5 * omega.q();
  const long double w = omega.radians();
  const long double pi = std::numbers::pi_v<long double>;
  return w > pi / 6 && w < 5 * pi / 6;
}

std::uint64_t into_period(std::int64_t r, std::int64_t m) {
  r %= m;
  if (r <= 0) r += m;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

IntegerSet e_set(const Angle& omega, double c, std::uint64_t N) {
  require_open_unit(omega);
  require(c > 0.5, ErrorCode::invalid_argument, "threshold c must exceed 1/2");
  ExplicitSet s;
  for (std::uint64_t n = 1; n <= N; ++n)
    if (e_value(omega, n) >= c) s.members.push_back(n);
  return IntegerSet(std::move(s), N);
}

std::uint64_t mod_inverse(std::int64_t p, std::uint64_t m) {
  require(m > 0, ErrorCode::invalid_argument, "modulus must be positive");
  if (m == 1) return 1;
  const auto mm = static_cast<std::int64_t>(m);
  std::int64_t a = p % mm;
  if (a < 0) a += mm;
  // extended Euclid on (a, m)
  std::int64_t old_r = a, r = mm;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
  }
  if (old_r != 1)
    fail(ErrorCode::not_invertible,
         std::to_string(p) + " is not invertible modulo " + std::to_string(m));
  std::int64_t x = old_s % mm;
  if (x <= 0) x += mm;
  return static_cast<std::uint64_t>(x);
}

MWitness m_witness(const Angle& omega) {
  require(inside_m(omega), ErrorCode::out_of_range, "omega must lie in (pi/6, 5pi/6)");
  MWitness w;
  constexpr std::uint64_t kHorizon = 1'000'000;
  if (!omega.is_rational()) {
    const double s = sin_multiple(omega, 1);
    w.which = WitnessCase::irrational_equidistribution;
    w.q_omega = 0.5 * (1.0 + 1.0 / (2.0 * s));
    w.closed_form = s * *w.q_omega;
    w.c = w.closed_form;
    w.witness = IntegerSet(EPredicate{omega, w.c}, kHorizon);
  } else {
    const std::int64_t p = omega.p();
    const std::int64_t q = omega.q();
    const std::int64_t period = 2 * q;
    std::uint64_t offset = 0;
    if (q % 2 == 0) {
      // p odd, invertible mod 2q; n p = q/2 (mod 2q) gives sin(n omega) = 1
      const std::uint64_t inv = mod_inverse(p, static_cast<std::uint64_t>(period));
      offset = into_period(detail::mul_mod(q / 2, static_cast<std::int64_t>(inv), period), period);
      w.which = WitnessCase::even_q_progression;
      w.p_inverse = inv;
      w.closed_form = sin_pi_ratio<double>(p, q);
    } else {
      const int eta = (q % 4 == 1) ? -1 : 1;
      const std::int64_t target = (q + eta) / 2;  // even, since 4 | q + eta
      std::uint64_t inv;
      std::int64_t n0;
      if (p % 2 != 0) {
        inv = mod_inverse(p, static_cast<std::uint64_t>(period));
        n0 = detail::mul_mod(target, static_cast<std::int64_t>(inv), period);
      } else {
        // gcd(p, 2q) = 2: n (p/2) = target/2 (mod q)
        inv = mod_inverse(p / 2, static_cast<std::uint64_t>(q));
        n0 = detail::mul_mod(target / 2, static_cast<std::int64_t>(inv), q);
      }
      offset = into_period(n0, period);
      w.which = WitnessCase::odd_q_progression;
      w.p_inverse = inv;
      w.eta_q = eta;
      w.rho = 1.0 / (2.0 * std::cos(std::numbers::pi / 5));
      w.closed_form = sin_pi_ratio<double>(p, q) * cos_pi_ratio<double>(1, 2 * q);
    }
    w.modulus = static_cast<std::uint64_t>(period);
    w.witness = IntegerSet::progression(offset, static_cast<std::uint64_t>(period), kHorizon);
    // evaluated exactly as membership tests evaluate it, so every member of
    // the progression reproduces c bit for bit
    w.c = e_value(omega, offset);
  }
  if (!(w.c > 0.5))
    fail(ErrorCode::invariant_violation, "witness threshold does not exceed 1/2");
  return w;
}

LabelleResult labelle_check(std::int64_t p, std::int64_t q) {
  require(q >= 3, ErrorCode::invalid_argument, "q must be at least 3");
  require(q % 2 == 1, ErrorCode::invalid_argument, "q must be odd");
  require(std::gcd(p, q) == 1, ErrorCode::invalid_argument, "p and q must be coprime");
  require(6 * p > q && 6 * p < 5 * q, ErrorCode::out_of_range,
          "p pi/q must lie in (pi/6, 5pi/6)");
  LabelleResult r;
  r.value = sin_pi_ratio<double>(p, q) * cos_pi_ratio<double>(1, 2 * q);
  r.holds = r.value > 0.5;
  return r;
}

LabelleSweep labelle_sweep(std::uint64_t q_max) {
  LabelleSweep sweep;
  sweep.q_max = q_max;
  for (std::int64_t q = 3; q <= static_cast<std::int64_t>(q_max); q += 2) {
    const double half_turn = cos_pi_ratio<double>(1, 2 * q);
    for (std::int64_t p = q / 6 + 1; 6 * p < 5 * q; ++p) {
      if (6 * p <= q || std::gcd(p, q) != 1) continue;
      const double value = sin_pi_ratio<double>(p, q) * half_turn;
      ++sweep.admissible;
      if (value < sweep.min_value) {
        sweep.min_value = value;
        sweep.argmin_p = p;
        sweep.argmin_q = q;
      }
      if (!(value > 0.5)) {
        ++sweep.counterexamples;
        if (sweep.failures.size() < 16) sweep.failures.emplace_back(p, q);
      }
    }
  }
  return sweep;
}

double harmonic_partial(const IntegerSet& set, std::uint64_t N) {
  require(N >= 100, ErrorCode::invalid_argument, "harmonic sum needs N >= 100");
  const auto members = set.members(N);
  detail::CompensatedSum<double> acc;
  for (auto it = members.rbegin(); it != members.rend(); ++it)
    acc.add(1.0 / static_cast<double>(*it));
  return acc.value();
}

}  // namespace orbital
