#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "orbital/real.hpp"

namespace orbital {

enum class AngleKind { rational_pi, real };

/// An angle theta given either exactly as p*pi/q or as a decimal number of
/// radians. Decimal angles keep their source text so that wide-precision
/// evaluation re-parses the digits instead of widening a rounded value.
class Angle {
 public:
  /// theta = p*pi/q, stored in lowest terms with q > 0.
  static Angle rational_pi(std::int64_t p, std::int64_t q);
  static Angle real(long double radians);
  static Angle real(std::string_view decimal, unsigned bits = 64);

  /// "p/q" means p*pi/q (exact); anything else must be a decimal number of
  /// radians.
  static Angle parse(std::string_view text, unsigned bits = 64);

  AngleKind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == AngleKind::rational_pi; }
  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  unsigned bits() const noexcept { return bits_; }
  const std::string& text() const noexcept { return text_; }

  long double radians() const noexcept { return value_; }

  template <class T>
  T radians_as() const;

  /// Representative of theta modulo pi/2 in [0, pi/2), the period of t_n.
  Angle reduced() const;

  /// theta = 0 (mod pi/2). Exact for rational angles.
  bool degenerate() const;

  /// k * theta. Decimal angles are rescaled from their digits.
  Angle scaled(std::int64_t k) const;

  /// -theta
  Angle negated() const;

  /// "p/q" for rational angles, the source digits otherwise.
  std::string str() const;

  friend bool operator==(const Angle&, const Angle&) = default;

 private:
  AngleKind kind_ = AngleKind::rational_pi;
  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
  unsigned bits_ = 64;
  std::string text_;
  long double value_ = 0;
};

}  // namespace orbital
