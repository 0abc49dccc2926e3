#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace orbital {

using BigInt = boost::multiprecision::mpz_int;

// Largest index the exact routines accept; beyond this a CapacityError is
// raised rather than attempting a multi-gigabyte integer.
inline constexpr std::uint64_t kMaxExactIndex = std::uint64_t{1} << 26;

/// Table of C(2k,k) for k <= limit, built once and read-only afterwards.
class CentralBinomialTable {
 public:
  explicit CentralBinomialTable(std::size_t limit = 4096);

  std::size_t limit() const noexcept { return values_.size() - 1; }

  /// C(2k,k); indices above the cached range are computed on demand.
  BigInt operator()(std::uint64_t k) const;

 private:
  std::vector<BigInt> values_;
};

/// Process-wide table shared by the exact routines below.
const CentralBinomialTable& shared_binomials();

BigInt binomial(std::uint64_t n, std::uint64_t k);

/// C(2k,k) exactly.
BigInt central_binomial(std::uint64_t k);

/// C(2k,k) for k = 0..n.
std::vector<BigInt> central_binomials_upto(std::uint64_t n);

/// Sum over k of C(2k,k) C(2n-2k,n-k), computed term by term.
BigInt lemma1_sum(std::uint64_t n);

BigInt pow4(std::uint64_t n);

/// Product weights v_k = C(2k,k) C(2n-2k,n-k) over the first half of the
/// index range, with first differences w and second differences x.
struct SeqTriple {
  std::uint64_t n = 0;
  std::vector<BigInt> v;  // k = 0 .. ceil(n/2)
  std::vector<BigInt> w;  // w[k] = v[k] - v[k+1]
  std::vector<BigInt> x;  // x[k] = w[k+1] - w[k]
};

SeqTriple vwx_sequences(std::uint64_t n);

/// C(2n,n) sqrt(pi n) / 4^n, which tends to 1.
double stirling_ratio(std::uint64_t n);

}  // namespace orbital
