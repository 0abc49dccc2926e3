#pragma once

// Real and complex number support for the two precision tiers: x87
// long double (64-bit significand) and MPFR at a caller-chosen width.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include <boost/multiprecision/mpfr.hpp>

namespace orbital {

using HighReal = boost::multiprecision::mpfr_float;

/// Working precision in significand bits. 64 selects long double; anything
/// wider runs on MPFR.
struct PrecisionCtx {
  unsigned bits = 64;

  bool extended() const noexcept { return bits > 64; }
};

void validate(const PrecisionCtx& ctx);

/// Sets the default MPFR precision for the current thread and restores the
/// previous value on scope exit.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_digits10_;
};

template <class T>
struct Complex {
  T re{0};
  T im{0};

  Complex() = default;
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(T r) : re(std::move(r)), im(0) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const T& s) {
    re *= s;
    im *= s;
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
  friend Complex operator*(Complex a, const T& s) { return a *= s; }
  friend Complex operator*(const T& s, Complex a) { return a *= s; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const T d = b.re * b.re + b.im * b.im;
    return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
  }
  friend Complex operator/(const Complex& a, const T& s) { return Complex(a.re / s, a.im / s); }

  Complex conj() const { return Complex(re, -im); }
  T norm() const { return re * re + im * im; }
  T abs() const {
    using std::hypot;
    using boost::multiprecision::hypot;
    return hypot(re, im);
  }
};

template <class T>
T pi_value() {
  if constexpr (std::is_same_v<T, HighReal>) {
    return boost::math::constants::pi<HighReal>();
  } else {
    return std::numbers::pi_v<T>;
  }
}

template <class T>
std::complex<double> to_std(const Complex<T>& z) {
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

/// exp(2 pi i r / m), reduced exactly on the residue r mod m before any
/// rounding. Quarter and sixth turns come out exact.
template <class T>
Complex<T> unit_root(std::int64_t r, std::int64_t m);

/// sin(pi r / m) and cos(pi r / m) with the same exact reduction.
template <class T>
T sin_pi_ratio(std::int64_t r, std::int64_t m);
template <class T>
T cos_pi_ratio(std::int64_t r, std::int64_t m);

/// exp(i x) for a real argument.
template <class T>
Complex<T> expi(const T& x) {
  using std::cos;
  using std::sin;
  using boost::multiprecision::cos;
  using boost::multiprecision::sin;
  return Complex<T>(cos(x), sin(x));
}

}  // namespace orbital
