#include "orbital/real.hpp"

#include <numeric>

#include "orbital/error.hpp"

namespace orbital {

void validate(const PrecisionCtx& ctx) {
  require(ctx.bits >= 64, ErrorCode::invalid_argument, "precision must be at least 64 bits");
  require(ctx.bits <= 1u << 16, ErrorCode::invalid_argument, "precision above 65536 bits");
}

namespace {
unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}
}  // namespace

ScopedPrecision::ScopedPrecision(unsigned bits)
    : saved_digits10_(HighReal::default_precision()) {
  HighReal::default_precision(digits10_for_bits(bits));
}

ScopedPrecision::~ScopedPrecision() { HighReal::default_precision(saved_digits10_); }

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

template <class T>
T small_sin(std::int64_t r, std::int64_t m) {
  using std::sin;
  using boost::multiprecision::sin;
  return sin(pi_value<T>() * T(r) / T(m));
}

template <class T>
T small_cos(std::int64_t r, std::int64_t m) {
  using std::cos;
  using boost::multiprecision::cos;
  return cos(pi_value<T>() * T(r) / T(m));
}

}  // namespace

template <class T>
T sin_pi_ratio(std::int64_t r, std::int64_t m) {
  require(m > 0, ErrorCode::invalid_argument, "sin_pi_ratio: modulus must be positive");
  const std::int64_t g = std::gcd(r, m);
  if (g > 1) {
    r /= g;
    m /= g;
  }
  r = floor_mod(r, 2 * m);
  bool negate = false;
  if (r >= m) {
    r -= m;
    negate = true;
  }
  if (2 * r > m) r = m - r;  // sin(pi - x) = sin x
  // now 0 <= r/m <= 1/2
  T value;
  if (r == 0) {
    value = T(0);
  } else if (2 * r == m) {
    value = T(1);
  } else if (6 * r == m) {
    value = T(1) / T(2);
  } else if (4 * r > m) {
    value = small_cos<T>(m - 2 * r, 2 * m);
  } else {
    value = small_sin<T>(r, m);
  }
  return negate ? T(-value) : value;
}

template <class T>
T cos_pi_ratio(std::int64_t r, std::int64_t m) {
  require(m > 0, ErrorCode::invalid_argument, "cos_pi_ratio: modulus must be positive");
  r = floor_mod(r, 2 * m);
  return sin_pi_ratio<T>(m - 2 * r, 2 * m);
}

template <class T>
Complex<T> unit_root(std::int64_t r, std::int64_t m) {
  require(m > 0, ErrorCode::invalid_argument, "unit_root: modulus must be positive");
  r = floor_mod(r, m);
  return Complex<T>(cos_pi_ratio<T>(2 * r, m), sin_pi_ratio<T>(2 * r, m));
}

template double sin_pi_ratio<double>(std::int64_t, std::int64_t);
template long double sin_pi_ratio<long double>(std::int64_t, std::int64_t);
template HighReal sin_pi_ratio<HighReal>(std::int64_t, std::int64_t);
template double cos_pi_ratio<double>(std::int64_t, std::int64_t);
template long double cos_pi_ratio<long double>(std::int64_t, std::int64_t);
template HighReal cos_pi_ratio<HighReal>(std::int64_t, std::int64_t);
template Complex<double> unit_root<double>(std::int64_t, std::int64_t);
template Complex<long double> unit_root<long double>(std::int64_t, std::int64_t);
template Complex<HighReal> unit_root<HighReal>(std::int64_t, std::int64_t);

}  // namespace orbital
