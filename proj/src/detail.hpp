#pragma once

// Internal helpers shared by the numeric modules.

#include <cstdint>
#include <type_traits>
#include <vector>

#include "orbital/angle.hpp"
#include "orbital/error.hpp"
#include "orbital/real.hpp"

namespace orbital::detail {

template <class F>
decltype(auto) with_precision(const PrecisionCtx& ctx, F&& f) {
  validate(ctx);
  if (!ctx.extended()) return f(std::type_identity<long double>{});
  ScopedPrecision guard(ctx.bits);
  return f(std::type_identity<HighReal>{});
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  __int128 r = static_cast<__int128>(a) * b % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

template <class T>
T abs_value(const T& x) {
  using std::abs;
  using boost::multiprecision::abs;
  return abs(x);
}

// Neumaier summation. MPFR sums are left uncompensated; the working
// precision already exceeds anything the compensation would recover.
template <class T>
class CompensatedSum {
 public:
  void add(const T& x) {
    if constexpr (std::is_same_v<T, HighReal>) {
      sum_ += x;
    } else {
      const T t = sum_ + x;
      if (abs_value(sum_) >= abs_value(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
      sum_ = t;
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{0};
  T comp_{0};
};

template <class T>
class ComplexSum {
 public:
  void add(const Complex<T>& z) {
    re_.add(z.re);
    im_.add(z.im);
  }
  Complex<T> value() const { return Complex<T>(re_.value(), im_.value()); }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

// exp(i * multiple * k * theta) for integer k. Rational angles reduce the
// exponent exactly (k * multiple * p mod 2q); small moduli are tabulated.
template <class T>
class Phases {
 public:
  Phases(const Angle& theta, std::int64_t multiple) : theta_(theta), multiple_(multiple) {
    if (theta.is_rational()) {
      modulus_ = 2 * theta.q();
      step_residue_ = mul_mod(multiple, theta.p(), modulus_);
      if (modulus_ <= (1 << 16)) {
        table_.reserve(static_cast<std::size_t>(modulus_));
        for (std::int64_t r = 0; r < modulus_; ++r) table_.push_back(unit_root<T>(r, modulus_));
      }
    } else {
      step_angle_ = theta.radians_as<T>() * T(multiple);
    }
  }

  Complex<T> operator()(std::int64_t k) const {
    if (modulus_ != 0) {
      const std::int64_t r = mul_mod(k, step_residue_, modulus_);
      return table_.empty() ? unit_root<T>(r, modulus_) : table_[static_cast<std::size_t>(r)];
    }
    return expi<T>(step_angle_ * T(k));
  }

  bool exact() const noexcept { return modulus_ != 0; }

 private:
  Angle theta_;
  std::int64_t multiple_;
  std::int64_t modulus_ = 0;
  std::int64_t step_residue_ = 0;
  std::vector<Complex<T>> table_;
  T step_angle_{0};
};

// Sequential walk over Phases(k), k = k0, k0+1, ...: exact angles use the
// table; decimal angles rotate by the step and re-anchor every 256 steps.
template <class T>
class PhaseWalk {
 public:
  PhaseWalk(const Phases<T>& phases, std::int64_t k0)
      : phases_(phases), k_(k0), current_(phases(k0)), step_(phases(1)) {}

  const Complex<T>& current() const noexcept { return current_; }

  void advance() {
    ++k_;
    if (phases_.exact() || (k_ & 255) == 0)
      current_ = phases_(k_);
    else
      current_ = current_ * step_;
  }

 private:
  const Phases<T>& phases_;
  std::int64_t k_;
  Complex<T> current_;
  Complex<T> step_;
};

// C(2n,n)/4^n as a product of (2j-1)/(2j).
template <class T>
T central_normalized(std::uint64_t n) {
  T c(1);
  for (std::uint64_t j = 1; j <= n; ++j) c = c * T(2 * j - 1) / T(2 * j);
  return c;
}

}  // namespace orbital::detail
