#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "orbital/angle.hpp"
#include "orbital/combinatorics.hpp"
#include "orbital/real.hpp"

namespace orbital {

/// t_n(theta) = sum_k C(2k,k) C(2n-2k,n-k) exp(4ik theta), held as the
/// normalized value t_n / 4^n together with n. value() overflows to
/// infinity once 4^n leaves the double range (n > 511).
struct TnValue {
  std::complex<double> normalized;
  std::uint64_t n = 0;

  std::complex<double> value() const;
};

/// Bound on the absolute error of the normalized sum at this precision:
/// 2^(-bits + 16 + bit_width(n+1)). The extra bit_width term covers the
/// linear drift of the term-ratio recurrence.
double tolerance(const PrecisionCtx& ctx, std::uint64_t n);

/// Direct summation of t_n(theta)/4^n at working type T (long double or
/// HighReal). Terms follow the exact ratio
///   v_{k+1}/v_k = (2k+1)(n-k) / ((k+1)(2n-2k-1))
/// from v_0/4^n = C(2n,n)/4^n, accumulated with Neumaier compensation.
template <class T>
Complex<T> normalized_t(const Angle& theta, std::uint64_t n);

TnValue t_n(const Angle& theta, std::uint64_t n, const PrecisionCtx& ctx = {});

/// t_n(theta)/4^n. |phi| <= 1.
std::complex<double> phi(const Angle& theta, std::uint64_t n, const PrecisionCtx& ctx = {});

/// The matrix coefficient (pi_{2n}(a_theta) X, X) at the unit K-fixed
/// vector: exp(-2in theta) t_n(theta)/4^n, real-valued.
std::complex<double> spherical_value(const Angle& theta, std::uint64_t n,
                                     const PrecisionCtx& ctx = {});

/// s_n = t_n/4^n for every n in [n_lo, n_hi], via the three-term recurrence
///   (n+1) s_{n+1} = (1+z)(2n+1)/2 s_n - z n s_{n-1},   z = exp(4i theta),
/// which follows from multiplying the generating functions
/// (1-4x)^(-1/2) (1-4zx)^(-1/2). Blocks of kSequenceBlock indices restart
/// from direct summation and run in parallel.
std::vector<std::complex<double>> normalized_range(const Angle& theta, std::uint64_t n_lo,
                                                   std::uint64_t n_hi,
                                                   const PrecisionCtx& ctx = {});

inline constexpr std::uint64_t kSequenceBlock = 1u << 16;

/// Sum_r c_r zeta_m^r with zeta_m = exp(2 pi i / m) and integer c_r.
struct CyclotomicSum {
  std::int64_t modulus = 1;
  std::vector<BigInt> coeffs;

  /// Numeric value divided by 4^log4_scale, evaluated at working type T.
  template <class T>
  Complex<T> evaluate_scaled(std::uint64_t log4_scale) const;

  std::complex<double> evaluate_scaled(std::uint64_t log4_scale, const PrecisionCtx& ctx) const;
};

/// Exact regrouping of t_n(p pi/q): modulus 2q, c_r collects v_k over
/// 4kp = r (mod 2q). Rejects decimal angles.
CyclotomicSum t_n_exact(const Angle& theta, std::uint64_t n);

/// ||X_pi||^2 = sum_k (2k)! (2n-2k)! C(n,k)^2 for X_pi = (z1^2 + z2^2)^n.
BigInt norm_X(std::uint64_t n);

/// |t_n - (t1(theta) + exp(4in theta) t1(-theta) [+ middle])| / 4^n where
/// t1 sums the first half of the index range and the middle term
/// C(n,n/2)^2 exp(2in theta) is present for even n. Both sides are summed
/// independently.
double split_identity_residual(const Angle& theta, std::uint64_t n,
                               const PrecisionCtx& ctx = {});

/// Second-order Abel decomposition t_n = u_n v_0 - e^{4i theta}
/// sum_k u_{n-k-2} u_k |x_k| + residual. Every complex field is divided by
/// 4^n.
struct AbelDecomposition {
  std::uint64_t n = 0;
  std::complex<double> total;
  std::complex<double> leading;
  std::complex<double> correction;
  std::complex<double> alpha;
  std::complex<double> beta;
  std::complex<double> residual;
  double v0 = 0;          // C(2n,n)/4^n
  double w0 = 0;          // (v_0 - v_1)/4^n
  double sin_2theta = 0;
  double max_abs_u = 0;   // over every u_k used
  std::uint64_t terms = 0;
};

AbelDecomposition abel_decomposition(const Angle& theta, std::uint64_t n,
                                     const PrecisionCtx& ctx = {});

}  // namespace orbital
