#include "orbital/spherical.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "detail.hpp"
#include "orbital/parallel.hpp"

namespace orbital {

using detail::ComplexSum;
using detail::PhaseWalk;
using detail::Phases;

std::complex<double> TnValue::value() const {
  // 4^n = 2^(2n); ldexp saturates to infinity beyond the exponent range
  const int e = n > 4096 ? 8192 : static_cast<int>(2 * n);
  return {std::ldexp(normalized.real(), e), std::ldexp(normalized.imag(), e)};
}

double tolerance(const PrecisionCtx& ctx, std::uint64_t n) {
  const int guard = 16 + static_cast<int>(std::bit_width(n + 1));
  return std::ldexp(1.0, -static_cast<int>(ctx.bits) + guard);
}

namespace {

// sum_{k=0}^{k_end} v_k exp(4ik theta) / 4^n
template <class T>
Complex<T> sum_terms(const Angle& theta, std::uint64_t n, std::uint64_t k_end) {
  const Phases<T> phases(theta, 4);
  PhaseWalk<T> walk(phases, 0);
  ComplexSum<T> acc;
  T term = detail::central_normalized<T>(n);
  for (std::uint64_t k = 0; k <= k_end; ++k) {
    acc.add(walk.current() * term);
    if (k == k_end) break;
    const auto num = static_cast<std::int64_t>((2 * k + 1) * (n - k));
    const auto den = static_cast<std::int64_t>((k + 1) * (2 * (n - k) - 1));
    term = term * T(num) / T(den);
    walk.advance();
  }
  return acc.value();
}

void require_n(std::uint64_t n) {
  require(n >= 1, ErrorCode::invalid_argument, "n must be positive");
}

}  // namespace

template <class T>
Complex<T> normalized_t(const Angle& theta, std::uint64_t n) {
  if (n == 0) return Complex<T>(T(1));
  return sum_terms<T>(theta, n, n);
}

template Complex<long double> normalized_t<long double>(const Angle&, std::uint64_t);
template Complex<HighReal> normalized_t<HighReal>(const Angle&, std::uint64_t);

TnValue t_n(const Angle& theta, std::uint64_t n, const PrecisionCtx& ctx) {
  require_n(n);
  return detail::with_precision(ctx, [&](auto tag) {
    using T = typename decltype(tag)::type;
    return TnValue{to_std(normalized_t<T>(theta, n)), n};
  });
}

std::complex<double> phi(const Angle& theta, std::uint64_t n, const PrecisionCtx& ctx) {
  return t_n(theta, n, ctx).normalized;
}

std::complex<double> spherical_value(const Angle& theta, std::uint64_t n,
                                     const PrecisionCtx& ctx) {
  require_n(n);
  return detail::with_precision(ctx, [&](auto tag) {
    using T = typename decltype(tag)::type;
    const Phases<T> back(theta, -2);
    return to_std(normalized_t<T>(theta, n) * back(static_cast<std::int64_t>(n)));
  });
}

namespace {

template <class T>
void recur_block(const Angle& theta, std::uint64_t start, std::uint64_t stop,
                 std::complex<double>* out, std::uint64_t out_origin) {
  // out[m - out_origin] = s_m for m in [start, stop)
  const Complex<T> z = Phases<T>(theta, 4)(1);
  const Complex<T> one_plus_z = Complex<T>(T(1)) + z;
  Complex<T> prev;
  Complex<T> cur;
  std::uint64_t m;
  if (start <= 1) {
    prev = Complex<T>(T(1));          // s_0
    cur = one_plus_z * (T(1) / T(2));  // s_1
    m = 1;
    if (start == 0) out[0 - out_origin] = to_std(prev);
  } else {
    prev = normalized_t<T>(theta, start - 1);
    cur = normalized_t<T>(theta, start);
    m = start;
  }
  while (m < stop) {
    if (m >= start) out[m - out_origin] = to_std(cur);
    if (m + 1 >= stop) break;
    const Complex<T> next =
        (one_plus_z * cur * (T(2 * m + 1) / T(2)) - z * prev * T(m)) / T(m + 1);
    prev = cur;
    cur = next;
    ++m;
  }
}

}  // namespace

std::vector<std::complex<double>> normalized_range(const Angle& theta, std::uint64_t n_lo,
                                                   std::uint64_t n_hi,
                                                   const PrecisionCtx& ctx) {
  require(n_lo <= n_hi, ErrorCode::invalid_argument, "empty index range");
  validate(ctx);
  std::vector<std::complex<double>> out(n_hi - n_lo + 1);
  const std::uint64_t first_block = n_lo / kSequenceBlock;
  const std::uint64_t last_block = n_hi / kSequenceBlock;
  parallel_for_blocks(last_block - first_block + 1, [&](std::size_t b) {
    const std::uint64_t block = first_block + b;
    const std::uint64_t start = std::max(n_lo, block * kSequenceBlock);
    const std::uint64_t stop = std::min(n_hi + 1, (block + 1) * kSequenceBlock);
    detail::with_precision(ctx, [&](auto tag) {
      using T = typename decltype(tag)::type;
      recur_block<T>(theta, start, stop, out.data(), n_lo);
      return 0;
    });
  });
  return out;
}

template <class T>
Complex<T> CyclotomicSum::evaluate_scaled(std::uint64_t log4_scale) const {
  // BigInt -> MPFR is a single correctly rounded conversion; the scale is an
  // exact power of two.
  const long shift = -2 * static_cast<long>(log4_scale);
  Complex<T> acc;
  for (std::size_t r = 0; r < coeffs.size(); ++r) {
    if (coeffs[r] == 0) continue;
    HighReal c(coeffs[r]);
    c = ldexp(c, shift);
    const Complex<T> root = unit_root<T>(static_cast<std::int64_t>(r), modulus);
    if constexpr (std::is_same_v<T, HighReal>) {
      acc += root * c;
    } else {
      acc += root * static_cast<T>(c);
    }
  }
  return acc;
}

template Complex<long double> CyclotomicSum::evaluate_scaled<long double>(std::uint64_t) const;
template Complex<HighReal> CyclotomicSum::evaluate_scaled<HighReal>(std::uint64_t) const;

std::complex<double> CyclotomicSum::evaluate_scaled(std::uint64_t log4_scale,
                                                    const PrecisionCtx& ctx) const {
  ScopedPrecision conversion(std::max(ctx.bits, 128u));
  return detail::with_precision(ctx, [&](auto tag) {
    using T = typename decltype(tag)::type;
    return to_std(evaluate_scaled<T>(log4_scale));
  });
}

CyclotomicSum t_n_exact(const Angle& theta, std::uint64_t n) {
  require_n(n);
  require(theta.is_rational(), ErrorCode::invalid_argument,
          "exact evaluation needs an angle of the form p/q");
  CyclotomicSum s;
  s.modulus = 2 * theta.q();
  s.coeffs.assign(static_cast<std::size_t>(s.modulus), BigInt(0));
  const std::vector<BigInt> c = central_binomials_upto(n);
  const std::int64_t step = detail::mul_mod(4, theta.p(), s.modulus);
  for (std::uint64_t k = 0; k <= n; ++k) {
    const std::int64_t r = detail::mul_mod(static_cast<std::int64_t>(k), step, s.modulus);
    s.coeffs[static_cast<std::size_t>(r)] += c[k] * c[n - k];
  }
  return s;
}

BigInt norm_X(std::uint64_t n) {
  require_n(n);
  std::vector<BigInt> fact(2 * n + 1);
  fact[0] = 1;
  for (std::uint64_t j = 1; j <= 2 * n; ++j) fact[j] = fact[j - 1] * j;
  BigInt sum = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    const BigInt b = fact[n] / (fact[k] * fact[n - k]);
    sum += fact[2 * k] * fact[2 * n - 2 * k] * b * b;
  }
  return sum;
}

double split_identity_residual(const Angle& theta, std::uint64_t n, const PrecisionCtx& ctx) {
  require_n(n);
  return detail::with_precision(ctx, [&](auto tag) {
    using T = typename decltype(tag)::type;
    const Complex<T> full = normalized_t<T>(theta, n);
    // first half: k <= (n-1)/2 for odd n, k <= n/2 - 1 for even n
    const std::uint64_t half_end = (n % 2 == 1) ? (n - 1) / 2 : n / 2 - 1;
    const Complex<T> forward = sum_terms<T>(theta, n, half_end);
    const Complex<T> backward = sum_terms<T>(theta.negated(), n, half_end);
    const Phases<T> quad(theta, 4);
    Complex<T> rebuilt = forward + quad(static_cast<std::int64_t>(n)) * backward;
    if (n % 2 == 0) {
      const T c = detail::central_normalized<T>(n / 2);
      const Phases<T> dbl(theta, 2);
      rebuilt += dbl(static_cast<std::int64_t>(n)) * (c * c);
    }
    return static_cast<double>((full - rebuilt).abs());
  });
}

namespace {

template <class T>
AbelDecomposition abel_impl(const Angle& theta, std::uint64_t n) {
  AbelDecomposition d;
  d.n = n;
  d.terms = n % 2 == 1 ? (n - 5) / 2 + 1 : (n - 4) / 2 + 1;
  const std::uint64_t last = d.terms - 1;  // K

  // v_k/4^n for k = 0 .. K+3
  std::vector<T> v;
  v.reserve(last + 4);
  v.push_back(detail::central_normalized<T>(n));
  for (std::uint64_t k = 0; k + 1 < last + 4; ++k) {
    const auto num = static_cast<std::int64_t>((2 * k + 1) * (n - k));
    const auto den = static_cast<std::int64_t>((k + 1) * (2 * (n - k) - 1));
    v.push_back(v.back() * T(num) / T(den));
  }

  T sin2;
  Complex<T> quarter;  // exp(4i theta)
  if (theta.is_rational()) {
    sin2 = sin_pi_ratio<T>(2 * theta.p(), theta.q());
    quarter = unit_root<T>(2 * theta.p(), theta.q());
  } else {
    using std::sin;
    using boost::multiprecision::sin;
    const T th = theta.radians_as<T>();
    sin2 = sin(T(2) * th);
    quarter = expi<T>(T(4) * th);
  }
  const Phases<T> half_phase(theta, 2);

  // u_k = sin(2(k+1) theta)/sin(2 theta) * exp(2ik theta)
  auto u = [&](std::uint64_t k) {
    T s;
    if (theta.is_rational()) {
      s = sin_pi_ratio<T>(detail::mul_mod(static_cast<std::int64_t>(2 * (k + 1)), theta.p(),
                                          2 * theta.q()),
                          theta.q());
    } else {
      using std::sin;
      using boost::multiprecision::sin;
      s = sin(T(2 * (k + 1)) * theta.radians_as<T>());
    }
    return half_phase(static_cast<std::int64_t>(k)) * (s / sin2);
  };

  T max_u(0);
  auto track = [&](const Complex<T>& z) {
    const T a = z.abs();
    if (a > max_u) max_u = a;
    return z;
  };

  const Complex<T> un = track(u(n));
  const Complex<T> leading = un * v[0];
  ComplexSum<T> corr;
  for (std::uint64_t k = 0; k <= last; ++k) {
    const T w_k = v[k] - v[k + 1];
    const T w_k1 = v[k + 1] - v[k + 2];
    const T abs_x = w_k - w_k1;  // -x_k
    corr.add(track(u(n - k - 2)) * track(u(k)) * abs_x);
  }
  const Complex<T> correction = -(quarter * corr.value());
  const Complex<T> total = normalized_t<T>(theta, n);
  const Complex<T> denom = quarter - Complex<T>(T(1));

  d.total = to_std(total);
  d.leading = to_std(leading);
  d.correction = to_std(correction);
  d.residual = to_std(total - leading - correction);
  d.alpha = to_std(quarter / denom);
  d.beta = to_std(-(Complex<T>(T(1)) / denom));
  d.v0 = static_cast<double>(v[0]);
  d.w0 = static_cast<double>(v[0] - v[1]);
  d.sin_2theta = static_cast<double>(sin2);
  d.max_abs_u = static_cast<double>(max_u);
  return d;
}

}  // namespace

AbelDecomposition abel_decomposition(const Angle& theta, std::uint64_t n,
                                     const PrecisionCtx& ctx) {
  require(n >= 5, ErrorCode::invalid_argument, "abel decomposition needs n >= 5");
  if (theta.degenerate())
    fail(ErrorCode::degenerate_angle, "angle is 0 mod pi/2; sin(2 theta) vanishes");
  return detail::with_precision(
      ctx, [&](auto tag) { return abel_impl<typename decltype(tag)::type>(theta, n); });
}

}  // namespace orbital
