#pragma once

// SU(2) with K = SO(2) realized as real rotations, the representations pi_n
// on homogeneous polynomials of degree n, and Monte Carlo estimates of the
// Fourier coefficients of convolution powers of the orbital measure.

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "orbital/angle.hpp"
#include "orbital/combinatorics.hpp"

namespace orbital {

using cplx = std::complex<double>;

struct SU2Matrix {
  // row-major [[a, b], [c, d]]
  std::array<cplx, 4> m{cplx(1), cplx(0), cplx(0), cplx(1)};

  static SU2Matrix identity() { return {}; }
  static SU2Matrix rotation(double t);

  cplx operator()(int row, int col) const { return m[2 * row + col]; }

  SU2Matrix adjoint() const;
  cplx determinant() const;
  /// max entry of |M M* - I| and |det M - 1|
  double unitarity_defect() const;

  friend SU2Matrix operator*(const SU2Matrix& x, const SU2Matrix& y);
};

struct ATheta {
  SU2Matrix matrix;
  bool in_normalizer = false;  // exp(4i theta) = 1
};

/// diag(e^{i theta}, e^{-i theta}) at the raw (unreduced) angle.
ATheta a_theta(const Angle& theta);

/// Independent stream for (seed, stream): mt19937_64 seeded through
/// splitmix64 so that nearby seeds do not produce correlated streams.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

/// Uniform rotation angle on [0, 2 pi).
SU2Matrix so2_sample(std::mt19937_64& rng);

/// sum_i a_i z1^i z2^(d-i)
struct HomPoly {
  std::vector<cplx> coeffs;  // size degree + 1

  HomPoly() : coeffs(1, cplx(0)) {}
  explicit HomPoly(std::vector<cplx> c);
  static HomPoly monomial(unsigned degree, unsigned k);

  unsigned degree() const { return static_cast<unsigned>(coeffs.size() - 1); }
};

/// (z1^2 + z2^2)^n, degree 2n.
HomPoly x_pi(unsigned n);

/// Integer coefficients of X_pi and the exact weighted inner product, for
/// checks that must hold to the last digit.
std::vector<BigInt> x_pi_exact(unsigned n);
BigInt inner_exact(const std::vector<BigInt>& a, const std::vector<BigInt>& b);

/// P((z1, z2) A), expanded by binomial convolution. Degrees above 64 are
/// accumulated in long double.
HomPoly pi_apply(const SU2Matrix& a, const HomPoly& p);

/// sum_k k! (d-k)! a_k conj(b_k); throws on a degree mismatch.
cplx inner(const HomPoly& p, const HomPoly& q);

struct MCEstimate {
  cplx mean;
  double std_error = 0;  // sample stddev / sqrt(M)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Orthonormal basis of E_n used for matrix entries. For even n slot 0 is
/// the unit K-fixed vector X_pi/||X_pi|| and the other slots are monomials
/// orthonormalized against it (z1^n is dropped, it lies in their span). For
/// odd n the slots are the normalized monomials.
std::vector<HomPoly> spherical_basis(unsigned n);

inline constexpr unsigned kSphericalSlot = 0;

/// (mu^(p)(pi_n) X_i, X_j): the average of (pi_n(g^-1) X_i, X_j) over
/// g = k_1 a k_2 a ... k_p a k_{p+1} with independent uniform k's. Fixed
/// chunking keeps the estimate independent of the thread count.
MCEstimate mc_fourier_entry(const Angle& theta, int p, unsigned n, unsigned i, unsigned j,
                            std::uint64_t samples, std::uint64_t seed);

/// The whole row i (all j) from one set of samples.
std::vector<MCEstimate> mc_fourier_row(const Angle& theta, int p, unsigned n, unsigned i,
                                       std::uint64_t samples, std::uint64_t seed);

/// Several rows sharing the same samples; result[r][j] is entry (rows[r], j).
std::vector<std::vector<MCEstimate>> mc_fourier_rows(const Angle& theta, int p, unsigned n,
                                                     const std::vector<unsigned>& rows,
                                                     std::uint64_t samples, std::uint64_t seed);

inline constexpr std::uint64_t kMinSamples = 1000;

}  // namespace orbital
