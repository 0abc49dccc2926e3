#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "orbital/angle.hpp"

namespace orbital {

/// {offset + modulus*j : j >= 0}
struct Progression {
  std::uint64_t offset = 1;
  std::uint64_t modulus = 1;

  friend bool operator==(const Progression&, const Progression&) = default;
};

/// n is a member iff sin(omega) sin(n omega) >= c.
struct EPredicate {
  Angle omega;
  double c = 0;
};

/// Strictly increasing positive integers.
struct ExplicitSet {
  std::vector<std::uint64_t> members;
};

class IntegerSet {
 public:
  using Description = std::variant<ExplicitSet, Progression, EPredicate>;

  IntegerSet(Description d, std::uint64_t horizon);

  static IntegerSet progression(std::uint64_t offset, std::uint64_t modulus,
                                std::uint64_t horizon);

  const Description& description() const noexcept { return desc_; }
  std::uint64_t horizon() const noexcept { return horizon_; }

  bool contains(std::uint64_t n) const;

  /// Members in [1, limit], ascending.
  std::vector<std::uint64_t> members(std::uint64_t limit) const;

  /// Membership flags for n = 0 .. limit (index 0 is always false).
  std::vector<bool> indicator(std::uint64_t limit) const;

 private:
  Description desc_;
  std::uint64_t horizon_;
};

/// sin(n omega). Rational omega = p pi/q reduces n p mod 2q exactly; decimal
/// omega uses a double-double value of omega/(2 pi), so the error does not
/// grow with n.
double sin_multiple(const Angle& omega, std::uint64_t n);

/// sin(omega) sin(n omega), the quantity compared against c.
double e_value(const Angle& omega, std::uint64_t n);

struct DensityEstimate {
  std::vector<std::pair<std::uint64_t, double>> checkpoints;  // (N, |A n [1,N]|/N)
  double liminf_estimate = 0;  // min ratio over checkpoints in [N/10, N]
  std::uint64_t tail_start = 0;
};

DensityEstimate lower_density_profile(const IntegerSet& set, std::uint64_t N);

/// All n <= N with sin(omega) sin(n omega) >= c. Requires 0 < omega < pi
/// and c > 1/2.
IntegerSet e_set(const Angle& omega, double c, std::uint64_t N);

enum class WitnessCase { irrational_equidistribution, even_q_progression, odd_q_progression };

/// Certificate that omega lies in (pi/6, 5pi/6): a threshold c > 1/2 and a
/// set of positive lower density on which sin(omega) sin(n omega) >= c.
struct MWitness {
  WitnessCase which = WitnessCase::irrational_equidistribution;
  double c = 0;
  IntegerSet witness{ExplicitSet{}, 0};
  double closed_form = 0;            // sin w, sin w cos(pi/2q) or sin w * q_w
  std::optional<double> q_omega;     // decimal case
  std::optional<std::uint64_t> p_inverse;
  std::optional<std::uint64_t> modulus;
  std::optional<int> eta_q;          // odd q
  std::optional<double> rho;         // odd q: 1/(2 cos(pi/5))
};

MWitness m_witness(const Angle& omega);

struct LabelleResult {
  double value = 0;  // sin(p pi/q) cos(pi/2q)
  bool holds = false;
};

/// Requires gcd(p,q) = 1, q odd, q >= 3 and p pi/q in (pi/6, 5pi/6).
LabelleResult labelle_check(std::int64_t p, std::int64_t q);

struct LabelleSweep {
  std::uint64_t q_max = 0;
  std::uint64_t admissible = 0;
  std::uint64_t counterexamples = 0;
  double min_value = 1;
  std::int64_t argmin_p = 0;
  std::int64_t argmin_q = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> failures;  // first few
};

/// Every admissible (p, q) with q odd, 3 <= q <= q_max.
LabelleSweep labelle_sweep(std::uint64_t q_max);

/// Sum of 1/a over members a <= N.
double harmonic_partial(const IntegerSet& set, std::uint64_t N);

/// Least positive x with p x = 1 (mod m).
std::uint64_t mod_inverse(std::int64_t p, std::uint64_t m);

}  // namespace orbital
