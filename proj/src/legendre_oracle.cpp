#include "orbital/legendre_oracle.hpp"

#include "detail.hpp"

namespace orbital {

template <class T>
T legendre_p(std::uint64_t n, const T& x) {
  if (n == 0) return T(1);
  T prev(1);
  T cur = x;
  for (std::uint64_t m = 1; m < n; ++m) {
    T next = (T(2 * m + 1) * x * cur - T(m) * prev) / T(m + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

template double legendre_p<double>(std::uint64_t, const double&);
template long double legendre_p<long double>(std::uint64_t, const long double&);
template HighReal legendre_p<HighReal>(std::uint64_t, const HighReal&);

template <class T>
Complex<T> legendre_oracle_normalized(const Angle& theta, std::uint64_t n) {
  T x;
  if (theta.is_rational()) {
    x = cos_pi_ratio<T>(2 * theta.p(), theta.q());
  } else {
    using std::cos;
    using boost::multiprecision::cos;
    x = cos(T(2) * theta.radians_as<T>());
  }
  const detail::Phases<T> dbl(theta, 2);
  return dbl(static_cast<std::int64_t>(n)) * legendre_p<T>(n, x);
}

template Complex<long double> legendre_oracle_normalized<long double>(const Angle&, std::uint64_t);
template Complex<HighReal> legendre_oracle_normalized<HighReal>(const Angle&, std::uint64_t);

TnValue legendre_oracle(const Angle& theta, std::uint64_t n, const PrecisionCtx& ctx) {
  require(n >= 1, ErrorCode::invalid_argument, "n must be positive");
  return detail::with_precision(ctx, [&](auto tag) {
    using T = typename decltype(tag)::type;
    return TnValue{to_std(legendre_oracle_normalized<T>(theta, n)), n};
  });
}

}  // namespace orbital
