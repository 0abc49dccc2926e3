#include "orbital/orbital.h"

#include <algorithm>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "orbital/combinatorics.hpp"
#include "orbital/density.hpp"
#include "orbital/error.hpp"
#include "orbital/groupsim.hpp"
#include "orbital/legendre_oracle.hpp"
#include "orbital/parallel.hpp"
#include "orbital/series.hpp"
#include "orbital/spherical.hpp"

struct orb_angle {
  orbital::Angle angle;
  std::string text;
};

struct orb_series {
  std::vector<orbital::Checkpoint> checkpoints;
  std::optional<orbital::ConvergenceReport> report;
  std::string classification;
};

struct orb_intset {
  orbital::IntegerSet set;
};

struct orb_density {
  orbital::DensityEstimate estimate;
};

namespace {

thread_local std::string last_error;

orb_status record(orb_status s, const char* what) {
  last_error = what;
  return s;
}

template <class F>
orb_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return ORB_OK;
  } catch (const orbital::Error& e) {
    return record(static_cast<orb_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return record(ORB_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return record(ORB_INTERNAL, e.what());
  } catch (...) {
    return record(ORB_INTERNAL, "unknown failure");
  }
}

void need(const void* p) {
  orbital::require(p != nullptr, orbital::ErrorCode::invalid_argument, "null pointer argument");
}

orbital::PrecisionCtx ctx_of(unsigned bits) {
  orbital::PrecisionCtx ctx{bits};
  orbital::validate(ctx);
  return ctx;
}

orb_complex wrap(std::complex<double> z) { return {z.real(), z.imag()}; }

orb_intset* new_set(orbital::IntegerSet s) { return new orb_intset{std::move(s)}; }

}  // namespace

extern "C" {

const char* orb_version(void) { return ORBITAL_VERSION; }

const char* orb_last_error(void) { return last_error.c_str(); }

const char* orb_status_name(orb_status s) {
  switch (s) {
    case ORB_OK: return "ok";
    case ORB_INVALID_ARGUMENT: return "invalid_argument";
    case ORB_DEGENERATE_ANGLE: return "degenerate_angle";
    case ORB_OUT_OF_RANGE: return "out_of_range";
    case ORB_NOT_INVERTIBLE: return "not_invertible";
    case ORB_DEGREE_MISMATCH: return "degree_mismatch";
    case ORB_CAPACITY: return "capacity";
    case ORB_INVARIANT_VIOLATION: return "invariant_violation";
    case ORB_IO: return "io";
    case ORB_BUFFER_TOO_SMALL: return "buffer_too_small";
    case ORB_INTERNAL: return "internal";
  }
  return "unknown";
}

void orb_set_threads(unsigned n) { orbital::set_max_threads(n); }

unsigned orb_threads(void) { return orbital::max_threads(); }

orb_status orb_angle_parse(const char* text, unsigned bits, orb_angle** out) {
  return guarded([&] {
    need(text);
    need(out);
    auto a = orbital::Angle::parse(text, bits);
    *out = new orb_angle{a, a.str()};
  });
}

orb_status orb_angle_rational(int64_t p, int64_t q, orb_angle** out) {
  return guarded([&] {
    need(out);
    auto a = orbital::Angle::rational_pi(p, q);
    *out = new orb_angle{a, a.str()};
  });
}

void orb_angle_free(orb_angle* a) { delete a; }

int orb_angle_is_rational(const orb_angle* a) { return a && a->angle.is_rational(); }

int64_t orb_angle_p(const orb_angle* a) { return a && a->angle.is_rational() ? a->angle.p() : 0; }

int64_t orb_angle_q(const orb_angle* a) { return a && a->angle.is_rational() ? a->angle.q() : 1; }

double orb_angle_radians(const orb_angle* a) {
  return a ? static_cast<double>(a->angle.radians()) : 0.0;
}

const char* orb_angle_str(const orb_angle* a) { return a ? a->text.c_str() : ""; }

int orb_angle_degenerate(const orb_angle* a) { return a && a->angle.degenerate(); }

orb_status orb_lemma1_check(uint64_t n, int* equal) {
  return guarded([&] {
    need(equal);
    *equal = orbital::lemma1_sum(n) == orbital::pow4(n);
  });
}

orb_status orb_tn(const orb_angle* theta, uint64_t n, unsigned bits, orb_tn_info* out) {
  return guarded([&] {
    need(theta);
    need(out);
    const auto ctx = ctx_of(bits);
    const auto t = orbital::t_n(theta->angle, n, ctx);
    out->n = n;
    out->normalized = wrap(t.normalized);
    out->value = wrap(t.value());
    out->spherical = wrap(orbital::spherical_value(theta->angle, n, ctx));
    out->tolerance = orbital::tolerance(ctx, n);
  });
}

orb_status orb_tn_oracle(const orb_angle* theta, uint64_t n, unsigned bits, orb_complex* out) {
  return guarded([&] {
    need(theta);
    need(out);
    *out = wrap(orbital::legendre_oracle(theta->angle, n, ctx_of(bits)).normalized);
  });
}

orb_status orb_tn_exact(const orb_angle* theta, uint64_t n, unsigned bits, orb_complex* out) {
  return guarded([&] {
    need(theta);
    need(out);
    *out = wrap(orbital::t_n_exact(theta->angle, n).evaluate_scaled(n, ctx_of(bits)));
  });
}

orb_status orb_tn_range(const orb_angle* theta, uint64_t n_lo, uint64_t n_hi, unsigned bits,
                        orb_complex* out) {
  return guarded([&] {
    need(theta);
    need(out);
    const auto s = orbital::normalized_range(theta->angle, n_lo, n_hi, ctx_of(bits));
    std::transform(s.begin(), s.end(), out, wrap);
  });
}

orb_status orb_split_residual(const orb_angle* theta, uint64_t n, unsigned bits, double* out) {
  return guarded([&] {
    need(theta);
    need(out);
    *out = orbital::split_identity_residual(theta->angle, n, ctx_of(bits));
  });
}

orb_status orb_series_run(const orb_angle* theta, int p, uint64_t n_max, unsigned per_decade,
                          unsigned bits, orb_series** out) {
  return guarded([&] {
    need(theta);
    need(out);
    orbital::SeriesSpec spec{p, theta->angle, n_max, per_decade};
    const auto ctx = ctx_of(bits);
    auto s = std::make_unique<orb_series>();
    if (n_max >= 1000) {
      s->report = orbital::classify(spec, ctx);
      s->checkpoints = s->report->checkpoints;
      s->classification = orbital::to_string(s->report->classification);
    } else {
      s->checkpoints = orbital::partial_sum(spec, ctx);
    }
    *out = s.release();
  });
}

void orb_series_free(orb_series* s) { delete s; }

const char* orb_series_classification(const orb_series* s) {
  return s ? s->classification.c_str() : "";
}

orb_status orb_series_get_fit(const orb_series* s, orb_series_fit* out) {
  return guarded([&] {
    need(s);
    need(out);
    orbital::require(s->report.has_value(), orbital::ErrorCode::out_of_range,
                     "series was too short to classify");
    const auto& r = *s->report;
    *out = orb_series_fit{r.term_exponent,       r.log_slope,
                          r.log_intercept,       r.log_fit_residual,
                          r.linear_slope,        r.linear_intercept,
                          r.linear_fit_residual, r.fit_from,
                          r.fit_to,              r.rules.converge_exponent,
                          r.rules.fit_tolerance, r.rules.linear_exponent,
                          r.rules.fit_decades};
  });
}

size_t orb_series_checkpoint_count(const orb_series* s) { return s ? s->checkpoints.size() : 0; }

orb_status orb_series_checkpoint(const orb_series* s, size_t i, uint64_t* n, double* sum) {
  return guarded([&] {
    need(s);
    orbital::require(i < s->checkpoints.size(), orbital::ErrorCode::out_of_range,
                     "checkpoint index out of range");
    if (n) *n = s->checkpoints[i].n;
    if (sum) *sum = s->checkpoints[i].sum;
  });
}

orb_status orb_bounds(const orb_angle* theta, uint64_t n_min, uint64_t n_max, int use_eset,
                      double c, unsigned bits, orb_bounds_info* out) {
  return guarded([&] {
    need(theta);
    need(out);
    std::optional<orbital::ESetSpec> e;
    if (use_eset) {
      e = orbital::ESetSpec{theta->angle.scaled(2), c};
    }
    const auto b = orbital::bound_constants(theta->angle, n_min, n_max, e, ctx_of(bits));
    *out = orb_bounds_info{b.c0,      b.c_upper, b.argmax, b.c_lower_on_e,
                           b.argmin,  b.e_count, b.n_min,  b.n_max};
  });
}

orb_status orb_scaled_magnitudes(const orb_angle* theta, uint64_t n_lo, uint64_t n_hi,
                                 unsigned bits, double* out) {
  return guarded([&] {
    need(theta);
    need(out);
    const auto v = orbital::scaled_magnitudes(theta->angle, n_lo, n_hi, ctx_of(bits));
    std::copy(v.begin(), v.end(), out);
  });
}

orb_status orb_decade_maxima(const orb_angle* theta, uint64_t n_lo, uint64_t n_hi, unsigned bits,
                             orb_decade_max* out, size_t cap, size_t* count) {
  orb_status status = ORB_OK;
  const orb_status s = guarded([&] {
    need(theta);
    need(count);
    const auto v = orbital::decade_maxima(theta->angle, n_lo, n_hi, ctx_of(bits));
    *count = v.size();
    if (v.size() > cap || (!out && !v.empty())) {
      status = ORB_BUFFER_TOO_SMALL;
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = {v[i].from, v[i].to, v[i].max};
  });
  if (s != ORB_OK) return s;
  if (status != ORB_OK) return record(status, "output buffer too small");
  return ORB_OK;
}

orb_status orb_e_value(const orb_angle* omega, uint64_t n, double* out) {
  return guarded([&] {
    need(omega);
    need(out);
    *out = orbital::e_value(omega->angle, n);
  });
}

orb_status orb_intset_eset(const orb_angle* omega, double c, uint64_t horizon, orb_intset** out) {
  return guarded([&] {
    need(omega);
    need(out);
    *out = new_set(orbital::e_set(omega->angle, c, horizon));
  });
}

orb_status orb_intset_progression(uint64_t offset, uint64_t modulus, uint64_t horizon,
                                  orb_intset** out) {
  return guarded([&] {
    need(out);
    *out = new_set(orbital::IntegerSet::progression(offset, modulus, horizon));
  });
}

void orb_intset_free(orb_intset* s) { delete s; }

orb_status orb_intset_contains(const orb_intset* s, uint64_t n, int* out) {
  return guarded([&] {
    need(s);
    need(out);
    *out = s->set.contains(n);
  });
}

orb_status orb_intset_members(const orb_intset* s, uint64_t limit, uint64_t* out, size_t cap,
                              size_t* count) {
  orb_status status = ORB_OK;
  const orb_status r = guarded([&] {
    need(s);
    need(count);
    const auto m = s->set.members(limit);
    *count = m.size();
    if (!out) return;
    if (m.size() > cap) {
      status = ORB_BUFFER_TOO_SMALL;
      return;
    }
    std::copy(m.begin(), m.end(), out);
  });
  if (r != ORB_OK) return r;
  if (status != ORB_OK) return record(status, "output buffer too small");
  return ORB_OK;
}

orb_status orb_harmonic_partial(const orb_intset* s, uint64_t n, double* out) {
  return guarded([&] {
    need(s);
    need(out);
    *out = orbital::harmonic_partial(s->set, n);
  });
}

orb_status orb_density_profile(const orb_intset* s, uint64_t n, orb_density** out) {
  return guarded([&] {
    need(s);
    need(out);
    *out = new orb_density{orbital::lower_density_profile(s->set, n)};
  });
}

void orb_density_free(orb_density* d) { delete d; }

double orb_density_liminf(const orb_density* d) { return d ? d->estimate.liminf_estimate : 0.0; }

uint64_t orb_density_tail_start(const orb_density* d) { return d ? d->estimate.tail_start : 0; }

size_t orb_density_checkpoint_count(const orb_density* d) {
  return d ? d->estimate.checkpoints.size() : 0;
}

orb_status orb_density_checkpoint(const orb_density* d, size_t i, uint64_t* n, double* ratio) {
  return guarded([&] {
    need(d);
    orbital::require(i < d->estimate.checkpoints.size(), orbital::ErrorCode::out_of_range,
                     "checkpoint index out of range");
    if (n) *n = d->estimate.checkpoints[i].first;
    if (ratio) *ratio = d->estimate.checkpoints[i].second;
  });
}

orb_status orb_mwitness(const orb_angle* omega, orb_mwitness_info* out, orb_intset** witness) {
  return guarded([&] {
    need(omega);
    need(out);
    const auto w = orbital::m_witness(omega->angle);
    orb_mwitness_info info{};
    switch (w.which) {
      case orbital::WitnessCase::irrational_equidistribution: info.which = ORB_WITNESS_IRRATIONAL; break;
      case orbital::WitnessCase::even_q_progression: info.which = ORB_WITNESS_EVEN_Q; break;
      case orbital::WitnessCase::odd_q_progression: info.which = ORB_WITNESS_ODD_Q; break;
    }
    info.c = w.c;
    info.closed_form = w.closed_form;
    if (const auto* p = std::get_if<orbital::Progression>(&w.witness.description())) {
      info.offset = p->offset;
      info.modulus = p->modulus;
    }
    if (w.p_inverse) info.has_p_inverse = 1, info.p_inverse = *w.p_inverse;
    if (w.eta_q) info.has_eta_q = 1, info.eta_q = *w.eta_q;
    if (w.rho) info.has_rho = 1, info.rho = *w.rho;
    if (w.q_omega) info.has_q_omega = 1, info.q_omega = *w.q_omega;
    if (witness) *witness = new_set(w.witness);
    *out = info;
  });
}

orb_status orb_labelle_check(int64_t p, int64_t q, double* value, int* holds) {
  return guarded([&] {
    const auto r = orbital::labelle_check(p, q);
    if (value) *value = r.value;
    if (holds) *holds = r.holds;
  });
}

orb_status orb_labelle_sweep(uint64_t q_max, orb_labelle_info* out) {
  return guarded([&] {
    need(out);
    const auto s = orbital::labelle_sweep(q_max);
    *out = orb_labelle_info{s.q_max,     s.admissible, s.counterexamples,
                            s.min_value, s.argmin_p,   s.argmin_q};
  });
}

orb_status orb_a_theta(const orb_angle* theta, orb_complex m[4], int* in_normalizer) {
  return guarded([&] {
    need(theta);
    need(m);
    const auto a = orbital::a_theta(theta->angle);
    for (int k = 0; k < 4; ++k) m[k] = wrap(a.matrix.m[k]);
    if (in_normalizer) *in_normalizer = a.in_normalizer;
  });
}

unsigned orb_mc_spherical_slot(void) { return orbital::kSphericalSlot; }

orb_status orb_mc_row(const orb_angle* theta, int p, unsigned n, unsigned i, uint64_t samples,
                      uint64_t seed, orb_mc_estimate* out) {
  return guarded([&] {
    need(theta);
    need(out);
    const auto row = orbital::mc_fourier_row(theta->angle, p, n, i, samples, seed);
    for (std::size_t j = 0; j < row.size(); ++j)
      out[j] = {wrap(row[j].mean), row[j].std_error, row[j].samples, row[j].seed};
  });
}

}  // extern "C"
