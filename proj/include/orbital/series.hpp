#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbital/angle.hpp"
#include "orbital/density.hpp"
#include "orbital/real.hpp"

namespace orbital {

/// Partial sums of sum_{n>=1} (2n+1) |t_n(theta)/4^n|^(2p).
struct SeriesSpec {
  int p = 2;
  Angle theta = Angle::rational_pi(1, 4);
  std::uint64_t n_max = 1000;
  unsigned checkpoints_per_decade = 2;  // geometric spacing 10^(1/k)
};

void validate(const SeriesSpec& spec);

enum class Classification { converges, diverges_log, diverges_linear, inconclusive };

std::string to_string(Classification c);

/// Decision thresholds of classify().
struct ClassifyRules {
  double converge_exponent = -1.2;   // term exponent must fall below this
  double fit_tolerance = 1e-2;       // relative rms residual of the growth fit
  double linear_exponent = -0.5;     // terms decaying slower than this try the linear model
  double fit_decades = 2.0;          // fits use checkpoints in [n_max / 10^decades, n_max]
  unsigned exponent_bins = 20;
};

struct Checkpoint {
  std::uint64_t n = 0;
  double sum = 0;
};

struct ConvergenceReport {
  Classification classification = Classification::inconclusive;
  std::vector<Checkpoint> checkpoints;
  double term_exponent = 0;   // log-log slope of binned term means
  double log_slope = 0;       // S_N = log_slope ln N + log_intercept
  double log_intercept = 0;
  double log_fit_residual = 0;  // rms residual / growth over the fit window
  double linear_slope = 0;    // S_N = linear_slope N + linear_intercept
  double linear_intercept = 0;
  double linear_fit_residual = 0;
  std::uint64_t fit_from = 0;
  std::uint64_t fit_to = 0;
  ClassifyRules rules;
};

/// (2n+1) |t_n(theta)/4^n|^(2p)
double term(std::uint64_t n, int p, const Angle& theta, const PrecisionCtx& ctx = {});

/// Every term for n = 1 .. n_max; terms[0] holds n = 1.
std::vector<double> terms(const SeriesSpec& spec, const PrecisionCtx& ctx = {});

/// Geometric checkpoint positions 10, 10^(1+1/k), ..., always ending at n_max.
std::vector<std::uint64_t> checkpoint_positions(std::uint64_t n_max, unsigned per_decade);

/// S_N at each checkpoint. The prefix sum runs sequentially in index order,
/// so the values do not depend on the number of threads.
std::vector<Checkpoint> partial_sum(const SeriesSpec& spec, const PrecisionCtx& ctx = {});

ConvergenceReport classify(const SeriesSpec& spec, const PrecisionCtx& ctx = {},
                           const ClassifyRules& rules = {});

/// Terms of an E-set restriction: n is used when n+1 lies in E_{omega,c}.
struct ESetSpec {
  Angle omega;
  double c = 0;
};

struct BoundConstants {
  double c0 = 0;                 // 1/|sin 2 theta|
  double c_upper = 0;            // max sqrt(n)|t_n|/4^n
  std::uint64_t argmax = 0;
  double c_lower_on_e = 0;       // min over n with n+1 in E; 0 without E
  std::uint64_t argmin = 0;
  std::uint64_t e_count = 0;     // indices that entered the minimum
  std::uint64_t n_min = 0;
  std::uint64_t n_max = 0;
};

/// sqrt(n) |t_n(theta)|/4^n for n in [n_lo, n_hi].
std::vector<double> scaled_magnitudes(const Angle& theta, std::uint64_t n_lo,
                                      std::uint64_t n_hi, const PrecisionCtx& ctx = {});

BoundConstants bound_constants(const Angle& theta, std::uint64_t n_min, std::uint64_t n_max,
                               const std::optional<ESetSpec>& e_spec,
                               const PrecisionCtx& ctx = {});

struct DecadeMax {
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  double max = 0;
};

/// Maxima of sqrt(n)|t_n|/4^n over [10^j, 10^(j+1)] windows covering
/// [n_lo, n_hi].
std::vector<DecadeMax> decade_maxima(const Angle& theta, std::uint64_t n_lo,
                                     std::uint64_t n_hi, const PrecisionCtx& ctx = {});

/// Ordinary least squares y = slope x + intercept.
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double rms_residual = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace orbital
