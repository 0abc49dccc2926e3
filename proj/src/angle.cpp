#include "orbital/angle.hpp"

#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "orbital/error.hpp"

namespace orbital {

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    fail(ErrorCode::invalid_argument, "malformed angle integer '" + std::string(s) + "'");
  return v;
}

bool looks_decimal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool digits = false;
  bool dot = false;
  bool exp = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      digits = true;
    } else if (c == '.' && !dot && !exp) {
      dot = true;
    } else if ((c == 'e' || c == 'E') && digits && !exp) {
      exp = true;
      digits = false;
      if (i + 1 < s.size() && (s[i + 1] == '-' || s[i + 1] == '+')) ++i;
    } else {
      return false;
    }
  }
  return digits;
}

}  // namespace

Angle Angle::rational_pi(std::int64_t p, std::int64_t q) {
  require(q != 0, ErrorCode::invalid_argument, "angle denominator must be nonzero");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p, q);
  Angle a;
  a.kind_ = AngleKind::rational_pi;
  a.p_ = p / (g == 0 ? 1 : g);
  a.q_ = q / (g == 0 ? 1 : g);
  a.value_ = std::numbers::pi_v<long double> * static_cast<long double>(a.p_) /
             static_cast<long double>(a.q_);
  return a;
}

Angle Angle::real(long double radians) {
  std::ostringstream os;
  os.precision(21);
  os << radians;
  Angle a;
  a.kind_ = AngleKind::real;
  a.text_ = os.str();
  a.value_ = radians;
  return a;
}

Angle Angle::real(std::string_view decimal, unsigned bits) {
  if (!looks_decimal(decimal))
    fail(ErrorCode::invalid_argument, "malformed angle '" + std::string(decimal) + "'");
  Angle a;
  a.kind_ = AngleKind::real;
  a.text_ = std::string(decimal);
  a.bits_ = bits;
  a.value_ = std::strtold(a.text_.c_str(), nullptr);
  return a;
}

Angle Angle::parse(std::string_view text, unsigned bits) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos)
    return rational_pi(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  return real(text, bits);
}

template <class T>
T Angle::radians_as() const {
  if (kind_ == AngleKind::rational_pi) return pi_value<T>() * T(p_) / T(q_);
  if constexpr (std::is_same_v<T, HighReal>) {
    return HighReal(text_);
  } else {
    return static_cast<T>(value_);
  }
}

template double Angle::radians_as<double>() const;
template long double Angle::radians_as<long double>() const;
template HighReal Angle::radians_as<HighReal>() const;

Angle Angle::scaled(std::int64_t k) const {
  if (kind_ == AngleKind::rational_pi) return rational_pi(k * p_, q_);
  const unsigned work = std::max(bits_, 128u) + 64;
  ScopedPrecision prec(work);
  const HighReal v = HighReal(text_) * k;
  Angle a;
  a.kind_ = AngleKind::real;
  a.bits_ = bits_;
  a.text_ = v.str(work * 30103 / 100000 + 2, std::ios_base::scientific);
  a.value_ = static_cast<long double>(v);
  return a;
}

Angle Angle::reduced() const {
  if (kind_ == AngleKind::rational_pi) {
    // theta/pi = p/q taken mod 1/2: (2p mod q) / (2q)
    std::int64_t r = (2 * p_) % q_;
    if (r < 0) r += q_;
    return rational_pi(r, 2 * q_);
  }
  ScopedPrecision prec(std::max(bits_, 128u));
  const HighReal half_pi = pi_value<HighReal>() / 2;
  HighReal v = HighReal(text_);
  v = v - floor(v / half_pi) * half_pi;
  Angle a;
  a.kind_ = AngleKind::real;
  a.bits_ = bits_;
  a.text_ = v.str(std::max(bits_, 128u) * 30103 / 100000 + 2, std::ios_base::scientific);
  a.value_ = static_cast<long double>(v);
  if (a.value_ >= std::numbers::pi_v<long double> / 2) a.value_ = 0;
  return a;
}

bool Angle::degenerate() const {
  if (kind_ == AngleKind::rational_pi) return (2 * p_) % q_ == 0;
  return reduced().value_ == 0;
}

Angle Angle::negated() const {
  if (kind_ == AngleKind::rational_pi) return rational_pi(-p_, q_);
  Angle a = *this;
  a.value_ = -value_;
  if (!a.text_.empty() && a.text_[0] == '-')
    a.text_.erase(0, 1);
  else if (!a.text_.empty() && a.text_[0] == '+')
    a.text_[0] = '-';
  else
    a.text_.insert(0, "-");
  return a;
}

std::string Angle::str() const {
  if (kind_ == AngleKind::rational_pi) return std::to_string(p_) + "/" + std::to_string(q_);
  return text_;
}

}  // namespace orbital
