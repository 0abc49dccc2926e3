#include "orbital/combinatorics.hpp"

#include <cmath>
#include <numbers>

#include "orbital/error.hpp"

namespace orbital {

namespace {

void check_capacity(std::uint64_t k) {
  if (k > kMaxExactIndex) throw CapacityError(k);
}

// C(2k+2,k+1) = C(2k,k) * 2(2k+1) / (k+1), exact at every step.
BigInt next_central(const BigInt& prev, std::uint64_t k) {
  BigInt r = prev * (2 * (2 * k + 1));
  r /= (k + 1);
  return r;
}

}  // namespace

CentralBinomialTable::CentralBinomialTable(std::size_t limit) {
  values_.reserve(limit + 1);
  values_.emplace_back(1);
  for (std::uint64_t k = 0; k < limit; ++k)
    values_.push_back(next_central(values_.back(), k));
}

BigInt CentralBinomialTable::operator()(std::uint64_t k) const {
  if (k < values_.size()) return values_[k];
  check_capacity(k);
  BigInt r = values_.back();
  for (std::uint64_t j = values_.size() - 1; j < k; ++j) r = next_central(r, j);
  return r;
}

const CentralBinomialTable& shared_binomials() {
  static const CentralBinomialTable table;
  return table;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return BigInt(0);
  check_capacity(n);
  k = std::min(k, n - k);
  BigInt r = 1;
  // r = C(n-k+i, i) after step i; each division is exact.
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

BigInt central_binomial(std::uint64_t k) { return shared_binomials()(k); }

std::vector<BigInt> central_binomials_upto(std::uint64_t n) {
  check_capacity(n);
  const auto& table = shared_binomials();
  std::vector<BigInt> out;
  out.reserve(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k)
    out.push_back(k <= table.limit() ? table(k) : next_central(out.back(), k - 1));
  return out;
}

BigInt pow4(std::uint64_t n) {
  check_capacity(n);
  BigInt r = 1;
  r <<= static_cast<unsigned>(2 * n);
  return r;
}

BigInt lemma1_sum(std::uint64_t n) {
  check_capacity(n);
  const std::vector<BigInt> c = central_binomials_upto(n);
  BigInt sum = 0;
  for (std::uint64_t k = 0; k <= n; ++k) sum += c[k] * c[n - k];
  return sum;
}

SeqTriple vwx_sequences(std::uint64_t n) {
  require(n >= 1, ErrorCode::invalid_argument, "vwx_sequences requires n >= 1");
  check_capacity(n);
  const std::vector<BigInt> c = central_binomials_upto(n);
  SeqTriple s;
  s.n = n;
  const std::uint64_t half = (n + 1) / 2;  // ceil(n/2)
  s.v.reserve(half + 1);
  for (std::uint64_t k = 0; k <= half; ++k) s.v.push_back(c[k] * c[n - k]);
  for (std::size_t k = 0; k + 1 < s.v.size(); ++k) s.w.push_back(s.v[k] - s.v[k + 1]);
  for (std::size_t k = 0; k + 1 < s.w.size(); ++k) s.x.push_back(s.w[k + 1] - s.w[k]);
  return s;
}

double stirling_ratio(std::uint64_t n) {
  require(n >= 1, ErrorCode::invalid_argument, "stirling_ratio requires n >= 1");
  // leading 60 bits of C(2n,n), rescaled by 2^-2n
  const BigInt c = central_binomial(n);
  const long bits = static_cast<long>(msb(c)) + 1;
  const long shift = std::max(0L, bits - 60);
  const double mantissa = static_cast<double>(BigInt(c >> shift));
  const double quotient = std::ldexp(mantissa, static_cast<int>(shift - 2 * static_cast<long>(n)));
  return quotient * std::sqrt(std::numbers::pi * static_cast<double>(n));
}

}  // namespace orbital
