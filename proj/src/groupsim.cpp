#include "orbital/groupsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail.hpp"
#include "orbital/error.hpp"
#include "orbital/parallel.hpp"

namespace orbital {

namespace {

// Monte Carlo work is cut into this many chunks regardless of the thread
// count; chunk c always draws from stream c.
constexpr std::uint64_t kChunks = 64;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Flat (n+1) x (n+1) table: row k holds the coefficients of
// (z1 a + z2 c)^k (z1 b + z2 d)^(n-k), the image of the monomial z1^k z2^(n-k).
template <class T>
class MonomialImages {
 public:
  explicit MonomialImages(unsigned n)
      : n_(n), pu_(tri(n)), pv_(tri(n)), out_((n + 1) * (n + 1)) {}

  void compute(const SU2Matrix& m) {
    const std::complex<T> a(m.m[0]), b(m.m[1]), c(m.m[2]), d(m.m[3]);
    power_table(pu_, c, a);
    power_table(pv_, d, b);
    std::fill(out_.begin(), out_.end(), std::complex<T>(0));
    for (unsigned k = 0; k <= n_; ++k) {
      const std::complex<T>* x = &pu_[offset(k)];
      const std::complex<T>* y = &pv_[offset(n_ - k)];
      std::complex<T>* r = &out_[k * (n_ + 1)];
      for (unsigned i = 0; i <= k; ++i)
        for (unsigned j = 0; j <= n_ - k; ++j) r[i + j] += x[i] * y[j];
    }
  }

  const std::complex<T>* row(unsigned k) const { return &out_[k * (n_ + 1)]; }

 private:
  static std::size_t tri(unsigned n) { return (std::size_t(n) + 1) * (n + 2) / 2; }
  static std::size_t offset(unsigned k) { return std::size_t(k) * (k + 1) / 2; }

  // powers 0..n of the linear form z2 * lo + z1 * hi
  void power_table(std::vector<std::complex<T>>& t, std::complex<T> lo, std::complex<T> hi) const {
    t[0] = 1;
    for (unsigned k = 1; k <= n_; ++k) {
      const std::complex<T>* prev = &t[offset(k - 1)];
      std::complex<T>* cur = &t[offset(k)];
      cur[k] = 0;
      for (unsigned i = 0; i < k; ++i) cur[i] = prev[i] * lo;
      for (unsigned i = 0; i < k; ++i) cur[i + 1] += prev[i] * hi;
    }
  }

  unsigned n_;
  std::vector<std::complex<T>> pu_, pv_, out_;
};

template <class T>
HomPoly apply_impl(const SU2Matrix& a, const HomPoly& p) {
  const unsigned n = p.degree();
  MonomialImages<T> images(n);
  images.compute(a);
  std::vector<std::complex<T>> acc(n + 1, std::complex<T>(0));
  for (unsigned k = 0; k <= n; ++k) {
    if (p.coeffs[k] == cplx(0)) continue;
    const std::complex<T> ck(p.coeffs[k]);
    const std::complex<T>* img = images.row(k);
    for (unsigned l = 0; l <= n; ++l) acc[l] += ck * img[l];
  }
  std::vector<cplx> out(n + 1);
  for (unsigned l = 0; l <= n; ++l) out[l] = cplx(acc[l]);
  return HomPoly(std::move(out));
}

// sqrt(k! (n-k)!) for k = 0..n
std::vector<long double> monomial_scales(unsigned n) {
  std::vector<long double> s(n + 1);
  for (unsigned k = 0; k <= n; ++k)
    s[k] = std::exp(0.5L * (std::lgamma(k + 1.0L) + std::lgamma(n - k + 1.0L)));
  return s;
}

using coords = std::vector<cplx>;

cplx dot(const coords& x, const coords& y) {
  cplx s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

// Orthonormal basis in the coordinates of the normalized monomials
// z1^k z2^(n-k) / sqrt(k!(n-k)!), where the inner product is Euclidean.
std::vector<coords> basis_coords(unsigned n) {
  std::vector<coords> out;
  if (n % 2 == 1) {
    for (unsigned k = 0; k <= n; ++k) {
      coords e(n + 1, cplx(0));
      e[k] = 1;
      out.push_back(std::move(e));
    }
    return out;
  }
  const auto s = monomial_scales(n);
  const unsigned m = n / 2;
  coords x(n + 1, cplx(0));
  for (unsigned j = 0; j <= m; ++j)
    x[2 * j] = static_cast<double>(s[2 * j]) * static_cast<double>(binomial(m, j));
  const double nx = std::sqrt(std::real(dot(x, x)));
  for (auto& v : x) v /= nx;
  out.push_back(std::move(x));
  for (unsigned k = 0; k < n; ++k) {
    coords e(n + 1, cplx(0));
    e[k] = 1;
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : out) {
        const cplx c = dot(e, b);
        for (unsigned l = 0; l <= n; ++l) e[l] -= c * b[l];
      }
    const double ne = std::sqrt(std::real(dot(e, e)));
    for (auto& v : e) v /= ne;
    out.push_back(std::move(e));
  }
  return out;
}

SU2Matrix diag_phase(cplx e) {
  SU2Matrix a;
  a.m = {e, cplx(0), cplx(0), std::conj(e)};
  return a;
}

struct ChunkSums {
  std::vector<cplx> sum;
  std::vector<double> sq;
};

}  // namespace

SU2Matrix SU2Matrix::rotation(double t) {
  SU2Matrix r;
  const double c = std::cos(t), s = std::sin(t);
  r.m = {cplx(c), cplx(s), cplx(-s), cplx(c)};
  return r;
}

SU2Matrix SU2Matrix::adjoint() const {
  SU2Matrix r;
  r.m = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
  return r;
}

cplx SU2Matrix::determinant() const { return m[0] * m[3] - m[1] * m[2]; }

double SU2Matrix::unitarity_defect() const {
  const SU2Matrix g = *this * adjoint();
  double worst = std::abs(determinant() - cplx(1));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      worst = std::max(worst, std::abs(g(r, c) - cplx(r == c ? 1.0 : 0.0)));
  return worst;
}

SU2Matrix operator*(const SU2Matrix& x, const SU2Matrix& y) {
  SU2Matrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[2 * i + j] = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
  return r;
}

ATheta a_theta(const Angle& theta) {
  cplx e;
  if (theta.is_rational()) {
    e = to_std(unit_root<long double>(theta.p(), 2 * theta.q()));
  } else {
    e = to_std(expi<long double>(theta.radians()));
  }
  return {diag_phase(e), theta.degenerate()};
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t st = seed;
  const std::uint64_t a = splitmix64(st);
  st ^= stream * 0xd1b54a32d192ed03ULL;
  const std::uint64_t b = splitmix64(st);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

SU2Matrix so2_sample(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
  return SU2Matrix::rotation(2 * std::numbers::pi * u);
}

HomPoly::HomPoly(std::vector<cplx> c) : coeffs(std::move(c)) {
  require(!coeffs.empty(), ErrorCode::invalid_argument, "a polynomial needs degree + 1 coefficients");
}

HomPoly HomPoly::monomial(unsigned degree, unsigned k) {
  require(k <= degree, ErrorCode::out_of_range, "monomial index exceeds the degree");
  std::vector<cplx> c(degree + 1, cplx(0));
  c[k] = 1;
  return HomPoly(std::move(c));
}

HomPoly x_pi(unsigned n) {
  std::vector<cplx> c(2 * n + 1, cplx(0));
  for (unsigned j = 0; j <= n; ++j) c[2 * j] = static_cast<double>(binomial(n, j));
  return HomPoly(std::move(c));
}

std::vector<BigInt> x_pi_exact(unsigned n) {
  std::vector<BigInt> c(2 * n + 1, BigInt(0));
  for (unsigned j = 0; j <= n; ++j) c[2 * j] = binomial(n, j);
  return c;
}

BigInt inner_exact(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  require(a.size() == b.size() && !a.empty(), ErrorCode::degree_mismatch,
          "inner product of polynomials of different degree");
  const std::size_t d = a.size() - 1;
  std::vector<BigInt> fact(d + 1, BigInt(1));
  for (std::size_t k = 1; k <= d; ++k) fact[k] = fact[k - 1] * k;
  BigInt s = 0;
  for (std::size_t k = 0; k <= d; ++k) s += fact[k] * fact[d - k] * a[k] * b[k];
  return s;
}

HomPoly pi_apply(const SU2Matrix& a, const HomPoly& p) {
  if (p.degree() <= 64) return apply_impl<double>(a, p);
  return apply_impl<long double>(a, p);
}

cplx inner(const HomPoly& p, const HomPoly& q) {
  require(p.degree() == q.degree(), ErrorCode::degree_mismatch,
          "inner product of polynomials of different degree");
  const unsigned d = p.degree();
  std::complex<long double> s(0);
  for (unsigned k = 0; k <= d; ++k) {
    const long double w = std::exp(std::lgamma(k + 1.0L) + std::lgamma(d - k + 1.0L));
    // integer weights are exact below 2^64; lgamma rounding is removed
    const long double wk = w < 0x1p63L ? std::round(w) : w;
    s += wk * std::complex<long double>(p.coeffs[k]) * std::conj(std::complex<long double>(q.coeffs[k]));
  }
  return cplx(s);
}

std::vector<HomPoly> spherical_basis(unsigned n) {
  const auto s = monomial_scales(n);
  std::vector<HomPoly> out;
  for (const auto& b : basis_coords(n)) {
    std::vector<cplx> c(n + 1);
    for (unsigned k = 0; k <= n; ++k) c[k] = b[k] / static_cast<double>(s[k]);
    out.emplace_back(std::move(c));
  }
  return out;
}

std::vector<std::vector<MCEstimate>> mc_fourier_rows(const Angle& theta, int p, unsigned n,
                                                     const std::vector<unsigned>& rows,
                                                     std::uint64_t samples, std::uint64_t seed) {
  require(p >= 1, ErrorCode::invalid_argument, "convolution power p must be >= 1");
  require(n >= 1, ErrorCode::invalid_argument, "representation degree must be positive");
  require(samples >= kMinSamples, ErrorCode::invalid_argument, "at least 1000 samples are required");
  for (unsigned i : rows) require(i <= n, ErrorCode::out_of_range, "matrix index exceeds the degree");

  const auto basis = basis_coords(n);
  const auto scale = monomial_scales(n);
  const SU2Matrix a = a_theta(theta).matrix;
  const std::size_t width = n + 1, cells = rows.size() * width;

  // Each requested basis vector as a plain polynomial: coefficient c_k / s_k.
  std::vector<std::vector<std::pair<unsigned, cplx>>> sparse(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (unsigned k = 0; k <= n; ++k)
      if (basis[rows[r]][k] != cplx(0))
        sparse[r].emplace_back(k, basis[rows[r]][k] / static_cast<double>(scale[k]));

  std::vector<ChunkSums> chunks(kChunks);
  parallel_for_blocks(kChunks, [&](std::size_t c) {
    auto rng = make_stream(seed, c);
    const std::uint64_t lo = samples * c / kChunks, hi = samples * (c + 1) / kChunks;
    ChunkSums acc{std::vector<cplx>(cells, cplx(0)), std::vector<double>(cells, 0.0)};
    std::vector<cplx> y(width);
    MonomialImages<double> images(n);
    for (std::uint64_t s = lo; s < hi; ++s) {
      SU2Matrix g = so2_sample(rng);
      for (int f = 0; f < p; ++f) g = g * a * so2_sample(rng);
      images.compute(g.adjoint());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        std::fill(y.begin(), y.end(), cplx(0));
        for (const auto& [k, ck] : sparse[r]) {
          const cplx* img = images.row(k);
          for (unsigned l = 0; l <= n; ++l) y[l] += ck * img[l];
        }
        for (unsigned l = 0; l <= n; ++l) y[l] *= static_cast<double>(scale[l]);
        for (unsigned j = 0; j <= n; ++j) {
          const cplx v = dot(y, basis[j]);
          acc.sum[r * width + j] += v;
          acc.sq[r * width + j] += std::norm(v);
        }
      }
    }
    chunks[c] = std::move(acc);
  });

  std::vector<std::vector<MCEstimate>> out(rows.size(), std::vector<MCEstimate>(width));
  const double m = static_cast<double>(samples);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    detail::CompensatedSum<double> re, im, sq;
    for (const auto& ch : chunks) {
      re.add(ch.sum[cell].real());
      im.add(ch.sum[cell].imag());
      sq.add(ch.sq[cell]);
    }
    const cplx mean(re.value() / m, im.value() / m);
    const double var = std::max(0.0, (sq.value() - m * std::norm(mean)) / (m - 1));
    MCEstimate& e = out[cell / width][cell % width];
    e.mean = mean;
    e.std_error = std::sqrt(var / m);
    e.samples = samples;
    e.seed = seed;
  }
  return out;
}

std::vector<MCEstimate> mc_fourier_row(const Angle& theta, int p, unsigned n, unsigned i,
                                       std::uint64_t samples, std::uint64_t seed) {
  return mc_fourier_rows(theta, p, n, {i}, samples, seed).front();
}

MCEstimate mc_fourier_entry(const Angle& theta, int p, unsigned n, unsigned i, unsigned j,
                            std::uint64_t samples, std::uint64_t seed) {
  require(j <= n, ErrorCode::out_of_range, "matrix index exceeds the degree");
  return mc_fourier_row(theta, p, n, i, samples, seed)[j];
}

}  // namespace orbital
