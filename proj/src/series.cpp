#include "orbital/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail.hpp"
#include "orbital/error.hpp"
#include "orbital/spherical.hpp"

namespace orbital {

void validate(const SeriesSpec& spec) {
  require(spec.p >= 1, ErrorCode::invalid_argument, "convolution power p must be >= 1");
  require(spec.n_max >= 16, ErrorCode::invalid_argument, "n_max must be >= 16");
  require(spec.checkpoints_per_decade >= 1, ErrorCode::invalid_argument,
          "need at least one checkpoint per decade");
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::converges: return "Converges";
    case Classification::diverges_log: return "DivergesLog";
    case Classification::diverges_linear: return "DivergesLinear";
    case Classification::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

double powered(double norm_sq, int p) {
  double r = 1;
  for (int i = 0; i < p; ++i) r *= norm_sq;
  return r;
}

}  // namespace

double term(std::uint64_t n, int p, const Angle& theta, const PrecisionCtx& ctx) {
  require(n >= 1, ErrorCode::invalid_argument, "n must be positive");
  require(p >= 1, ErrorCode::invalid_argument, "convolution power p must be >= 1");
  const double mag2 = std::norm(phi(theta, n, ctx));
  return static_cast<double>(2 * n + 1) * powered(mag2, p);
}

std::vector<double> terms(const SeriesSpec& spec, const PrecisionCtx& ctx) {
  validate(spec);
  const auto s = normalized_range(spec.theta, 1, spec.n_max, ctx);
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out[i] = static_cast<double>(2 * (i + 1) + 1) * powered(std::norm(s[i]), spec.p);
  return out;
}

std::vector<std::uint64_t> checkpoint_positions(std::uint64_t n_max, unsigned per_decade) {
  std::vector<std::uint64_t> pos;
  for (unsigned j = 0;; ++j) {
    const double e = 1.0 + static_cast<double>(j) / per_decade;
    const auto m = static_cast<std::uint64_t>(std::llround(std::pow(10.0, e)));
    if (m >= n_max) break;
    if (pos.empty() || pos.back() != m) pos.push_back(m);
  }
  pos.push_back(n_max);
  return pos;
}

namespace {

std::vector<Checkpoint> prefix_at(const std::vector<double>& t,
                                  const std::vector<std::uint64_t>& marks) {
  std::vector<Checkpoint> out;
  out.reserve(marks.size());
  detail::CompensatedSum<double> acc;
  std::size_t next = 0;
  for (std::uint64_t n = 1; n <= t.size() && next < marks.size(); ++n) {
    acc.add(t[n - 1]);
    if (n == marks[next]) {
      out.push_back({n, acc.value()});
      ++next;
    }
  }
  return out;
}

}  // namespace

std::vector<Checkpoint> partial_sum(const SeriesSpec& spec, const PrecisionCtx& ctx) {
  const auto t = terms(spec, ctx);
  return prefix_at(t, checkpoint_positions(spec.n_max, spec.checkpoints_per_decade));
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorCode::invalid_argument,
          "line fit needs at least two points");
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / n);
  return f;
}

namespace {

// log-log slope of geometric-bin means of the terms over [lo, hi]
double binned_exponent(const std::vector<double>& t, std::uint64_t lo, std::uint64_t hi,
                       unsigned bins) {
  std::vector<double> xs, ys;
  const double ratio = static_cast<double>(hi) / static_cast<double>(lo);
  std::uint64_t start = lo;
  for (unsigned b = 1; b <= bins; ++b) {
    const auto stop =
        b == bins ? hi + 1
                  : static_cast<std::uint64_t>(std::llround(
                        static_cast<double>(lo) * std::pow(ratio, static_cast<double>(b) / bins)));
    if (stop <= start) continue;
    double sum = 0;
    for (std::uint64_t n = start; n < stop; ++n) sum += t[n - 1];
    const double mean = sum / static_cast<double>(stop - start);
    if (mean > 0) {
      xs.push_back(0.5 * (std::log(static_cast<double>(start)) +
                          std::log(static_cast<double>(stop - 1))));
      ys.push_back(std::log(mean));
    }
    start = stop;
  }
  if (xs.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  return fit_line(xs, ys).slope;
}

}  // namespace

ConvergenceReport classify(const SeriesSpec& spec, const PrecisionCtx& ctx,
                           const ClassifyRules& rules) {
  validate(spec);
  require(spec.n_max >= 1000, ErrorCode::invalid_argument, "classify needs n_max >= 1000");
  ConvergenceReport rep;
  rep.rules = rules;
  const auto t = terms(spec, ctx);
  rep.checkpoints = prefix_at(t, checkpoint_positions(spec.n_max, spec.checkpoints_per_decade));

  const auto window_lo = static_cast<std::uint64_t>(
      std::max(1.0, static_cast<double>(spec.n_max) / std::pow(10.0, rules.fit_decades)));
  rep.fit_from = window_lo;
  rep.fit_to = spec.n_max;
  rep.term_exponent = binned_exponent(t, window_lo, spec.n_max, rules.exponent_bins);

  std::vector<double> ln_n, big_n, sums;
  for (const auto& cp : rep.checkpoints) {
    if (cp.n < window_lo) continue;
    ln_n.push_back(std::log(static_cast<double>(cp.n)));
    big_n.push_back(static_cast<double>(cp.n));
    sums.push_back(cp.sum);
  }
  if (sums.size() < 3 || std::isnan(rep.term_exponent)) return rep;

  const double growth = sums.back() - sums.front();
  const LineFit log_fit = fit_line(ln_n, sums);
  const LineFit lin_fit = fit_line(big_n, sums);
  rep.log_slope = log_fit.slope;
  rep.log_intercept = log_fit.intercept;
  rep.linear_slope = lin_fit.slope;
  rep.linear_intercept = lin_fit.intercept;
  const double inf = std::numeric_limits<double>::infinity();
  rep.log_fit_residual = growth > 0 ? log_fit.rms_residual / growth : inf;
  rep.linear_fit_residual = growth > 0 ? lin_fit.rms_residual / growth : inf;

  if (rep.term_exponent < rules.converge_exponent) {
    rep.classification = Classification::converges;
  } else if (rep.term_exponent > rules.linear_exponent && lin_fit.slope > 0 &&
             rep.linear_fit_residual < rules.fit_tolerance) {
    rep.classification = Classification::diverges_linear;
  } else if (log_fit.slope > 0 && rep.log_fit_residual < rules.fit_tolerance) {
    rep.classification = Classification::diverges_log;
  }
  return rep;
}

std::vector<double> scaled_magnitudes(const Angle& theta, std::uint64_t n_lo,
                                      std::uint64_t n_hi, const PrecisionCtx& ctx) {
  require(n_lo >= 1, ErrorCode::invalid_argument, "n must be positive");
  const auto s = normalized_range(theta, n_lo, n_hi, ctx);
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out[i] = std::sqrt(static_cast<double>(n_lo + i)) * std::abs(s[i]);
  return out;
}

BoundConstants bound_constants(const Angle& theta, std::uint64_t n_min, std::uint64_t n_max,
                               const std::optional<ESetSpec>& e_spec,
                               const PrecisionCtx& ctx) {
  require(n_min >= 16, ErrorCode::invalid_argument, "n_min must be >= 16");
  require(n_min <= n_max, ErrorCode::invalid_argument, "n_min exceeds n_max");
  if (theta.degenerate())
    fail(ErrorCode::degenerate_angle, "angle is 0 mod pi/2; the bounds are undefined");
  if (e_spec) require(e_spec->c > 0.5, ErrorCode::invalid_argument, "E-set threshold must exceed 1/2");

  BoundConstants b;
  b.n_min = n_min;
  b.n_max = n_max;
  const Angle r = theta.reduced();
  const double s2 = r.is_rational() ? sin_pi_ratio<double>(2 * r.p(), r.q())
                                    : std::sin(2.0 * static_cast<double>(r.radians()));
  b.c0 = 1.0 / std::abs(s2);

  const auto scaled = scaled_magnitudes(theta, n_min, n_max, ctx);
  b.c_lower_on_e = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    const std::uint64_t n = n_min + i;
    if (scaled[i] > b.c_upper) {
      b.c_upper = scaled[i];
      b.argmax = n;
    }
    if (e_spec && e_value(e_spec->omega, n + 1) >= e_spec->c) {
      ++b.e_count;
      if (scaled[i] < b.c_lower_on_e) {
        b.c_lower_on_e = scaled[i];
        b.argmin = n;
      }
    }
  }
  if (b.e_count == 0) b.c_lower_on_e = 0;
  return b;
}

std::vector<DecadeMax> decade_maxima(const Angle& theta, std::uint64_t n_lo,
                                     std::uint64_t n_hi, const PrecisionCtx& ctx) {
  require(n_lo >= 1 && n_lo <= n_hi, ErrorCode::invalid_argument, "bad index range");
  const auto scaled = scaled_magnitudes(theta, n_lo, n_hi, ctx);
  std::vector<DecadeMax> out;
  std::uint64_t from = n_lo;
  while (from < n_hi) {
    std::uint64_t to = 1;
    while (to <= from) to *= 10;
    to = std::min(to, n_hi);
    DecadeMax d{from, to, 0};
    for (std::uint64_t n = from; n <= to; ++n) d.max = std::max(d.max, scaled[n - n_lo]);
    out.push_back(d);
    from = to;
  }
  return out;
}

}  // namespace orbital
