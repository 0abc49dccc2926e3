#pragma once

// Independent cross-check for t_n: the Laplace-type identity
//   t_n(theta) = 4^n exp(2in theta) P_n(cos 2 theta)
// with P_n from the Bonnet recurrence. Library computations never call
// this; it exists for tests and for the diagnostic checks of the CLI.

#include <cstdint>

#include "orbital/angle.hpp"
#include "orbital/spherical.hpp"

namespace orbital {

/// P_n(x) by (m+1) P_{m+1} = (2m+1) x P_m - m P_{m-1}.
template <class T>
T legendre_p(std::uint64_t n, const T& x);

/// exp(2in theta) P_n(cos 2 theta) at working type T.
template <class T>
Complex<T> legendre_oracle_normalized(const Angle& theta, std::uint64_t n);

TnValue legendre_oracle(const Angle& theta, std::uint64_t n, const PrecisionCtx& ctx = {});

}  // namespace orbital
