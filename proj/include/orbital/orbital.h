/* C interface to liborbital.
 *
 * Every fallible call returns an orb_status; on failure orb_last_error()
 * describes the problem for the calling thread. Handles are opaque and owned
 * by the caller, who releases them with the matching orb_*_free (passing
 * NULL is allowed). Angles are written "p/q" for p*pi/q (exact) or as decimal
 * radians. The bits argument selects working precision: 64 is long double,
 * anything wider runs on MPFR.
 */
#ifndef ORBITAL_ORBITAL_H
#define ORBITAL_ORBITAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ORB_API __declspec(dllexport)
#else
#define ORB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orb_status {
  ORB_OK = 0,
  ORB_INVALID_ARGUMENT = 1,
  ORB_DEGENERATE_ANGLE = 2,
  ORB_OUT_OF_RANGE = 3,
  ORB_NOT_INVERTIBLE = 4,
  ORB_DEGREE_MISMATCH = 5,
  ORB_CAPACITY = 6,
  ORB_INVARIANT_VIOLATION = 7,
  ORB_IO = 8,
  ORB_BUFFER_TOO_SMALL = 9,
  ORB_INTERNAL = 99
} orb_status;

typedef struct orb_angle orb_angle;
typedef struct orb_series orb_series;
typedef struct orb_intset orb_intset;
typedef struct orb_density orb_density;

typedef struct orb_complex {
  double re;
  double im;
} orb_complex;

ORB_API const char* orb_version(void);
ORB_API const char* orb_last_error(void);
ORB_API const char* orb_status_name(orb_status s);
/* 0 restores the hardware default */
ORB_API void orb_set_threads(unsigned n);
ORB_API unsigned orb_threads(void);

/* ---- angles ---- */

ORB_API orb_status orb_angle_parse(const char* text, unsigned bits, orb_angle** out);
ORB_API orb_status orb_angle_rational(int64_t p, int64_t q, orb_angle** out);
ORB_API void orb_angle_free(orb_angle* a);
ORB_API int orb_angle_is_rational(const orb_angle* a);
/* numerator and denominator of p*pi/q; 0 and 1 for decimal angles */
ORB_API int64_t orb_angle_p(const orb_angle* a);
ORB_API int64_t orb_angle_q(const orb_angle* a);
ORB_API double orb_angle_radians(const orb_angle* a);
/* valid while the handle lives */
ORB_API const char* orb_angle_str(const orb_angle* a);
/* theta = 0 mod pi/2 */
ORB_API int orb_angle_degenerate(const orb_angle* a);

/* ---- combinatorics ---- */

/* *equal = (sum_k C(2k,k) C(2n-2k,n-k) == 4^n), compared as big integers */
ORB_API orb_status orb_lemma1_check(uint64_t n, int* equal);

/* ---- spherical ---- */

typedef struct orb_tn_info {
  uint64_t n;
  orb_complex normalized; /* t_n / 4^n */
  orb_complex value;      /* t_n; infinite once 4^n overflows a double */
  orb_complex spherical;  /* exp(-2in theta) t_n / 4^n */
  double tolerance;       /* error bound of the normalized value */
} orb_tn_info;

ORB_API orb_status orb_tn(const orb_angle* theta, uint64_t n, unsigned bits, orb_tn_info* out);
/* t_n / 4^n from the Legendre identity, an independent cross-check */
ORB_API orb_status orb_tn_oracle(const orb_angle* theta, uint64_t n, unsigned bits,
                                 orb_complex* out);
/* t_n / 4^n from exact cyclotomic regrouping; rational angles only */
ORB_API orb_status orb_tn_exact(const orb_angle* theta, uint64_t n, unsigned bits,
                                orb_complex* out);
/* t_n / 4^n for n_lo..n_hi into out[0 .. n_hi - n_lo] */
ORB_API orb_status orb_tn_range(const orb_angle* theta, uint64_t n_lo, uint64_t n_hi,
                                unsigned bits, orb_complex* out);
ORB_API orb_status orb_split_residual(const orb_angle* theta, uint64_t n, unsigned bits,
                                      double* out);

/* ---- series ---- */

typedef struct orb_series_fit {
  double term_exponent;
  double log_slope;
  double log_intercept;
  double log_fit_residual;
  double linear_slope;
  double linear_intercept;
  double linear_fit_residual;
  uint64_t fit_from;
  uint64_t fit_to;
  /* decision thresholds that produced the classification */
  double converge_exponent;
  double fit_tolerance;
  double linear_exponent;
  double fit_decades;
} orb_series_fit;

/* Partial sums of sum_n (2n+1)|t_n/4^n|^(2p) up to n_max with per_decade
   geometric checkpoints, plus a classification when n_max >= 1000. */
ORB_API orb_status orb_series_run(const orb_angle* theta, int p, uint64_t n_max,
                                  unsigned per_decade, unsigned bits, orb_series** out);
ORB_API void orb_series_free(orb_series* s);
/* "Converges", "DivergesLog", "DivergesLinear", "Inconclusive" or "" when
   n_max was too small to classify */
ORB_API const char* orb_series_classification(const orb_series* s);
ORB_API orb_status orb_series_get_fit(const orb_series* s, orb_series_fit* out);
ORB_API size_t orb_series_checkpoint_count(const orb_series* s);
ORB_API orb_status orb_series_checkpoint(const orb_series* s, size_t i, uint64_t* n, double* sum);

/* ---- bounds ---- */

typedef struct orb_bounds_info {
  double c0;           /* 1/|sin 2 theta| */
  double c_upper;      /* max sqrt(n)|t_n|/4^n */
  uint64_t argmax;
  double c_lower_on_e; /* min over n with n+1 in E(2 theta, c); 0 without an E-set */
  uint64_t argmin;
  uint64_t e_count;
  uint64_t n_min;
  uint64_t n_max;
} orb_bounds_info;

typedef struct orb_decade_max {
  uint64_t from;
  uint64_t to;
  double max;
} orb_decade_max;

/* use_eset = 0 ignores c */
ORB_API orb_status orb_bounds(const orb_angle* theta, uint64_t n_min, uint64_t n_max,
                              int use_eset, double c, unsigned bits, orb_bounds_info* out);
/* sqrt(n)|t_n|/4^n into out[0 .. n_hi - n_lo] */
ORB_API orb_status orb_scaled_magnitudes(const orb_angle* theta, uint64_t n_lo, uint64_t n_hi,
                                         unsigned bits, double* out);
/* *count receives the number of windows; ORB_BUFFER_TOO_SMALL if cap is short */
ORB_API orb_status orb_decade_maxima(const orb_angle* theta, uint64_t n_lo, uint64_t n_hi,
                                     unsigned bits, orb_decade_max* out, size_t cap,
                                     size_t* count);

/* ---- density ---- */

ORB_API orb_status orb_e_value(const orb_angle* omega, uint64_t n, double* out);
/* {n <= horizon : sin(omega) sin(n omega) >= c} */
ORB_API orb_status orb_intset_eset(const orb_angle* omega, double c, uint64_t horizon,
                                   orb_intset** out);
ORB_API orb_status orb_intset_progression(uint64_t offset, uint64_t modulus, uint64_t horizon,
                                          orb_intset** out);
ORB_API void orb_intset_free(orb_intset* s);
ORB_API orb_status orb_intset_contains(const orb_intset* s, uint64_t n, int* out);
/* members in [1, limit]; out may be NULL to only count */
ORB_API orb_status orb_intset_members(const orb_intset* s, uint64_t limit, uint64_t* out,
                                      size_t cap, size_t* count);
ORB_API orb_status orb_harmonic_partial(const orb_intset* s, uint64_t n, double* out);

ORB_API orb_status orb_density_profile(const orb_intset* s, uint64_t n, orb_density** out);
ORB_API void orb_density_free(orb_density* d);
ORB_API double orb_density_liminf(const orb_density* d);
ORB_API uint64_t orb_density_tail_start(const orb_density* d);
ORB_API size_t orb_density_checkpoint_count(const orb_density* d);
ORB_API orb_status orb_density_checkpoint(const orb_density* d, size_t i, uint64_t* n,
                                          double* ratio);

typedef enum orb_witness_case {
  ORB_WITNESS_IRRATIONAL = 0,
  ORB_WITNESS_EVEN_Q = 1,
  ORB_WITNESS_ODD_Q = 2
} orb_witness_case;

typedef struct orb_mwitness_info {
  orb_witness_case which;
  double c;
  double closed_form;
  /* progression offset + modulus*j for rational omega, else both 0 */
  uint64_t offset;
  uint64_t modulus;
  int has_p_inverse;
  uint64_t p_inverse;
  int has_eta_q;
  int eta_q;
  int has_rho;
  double rho;
  int has_q_omega;
  double q_omega;
} orb_mwitness_info;

/* witness may be NULL; otherwise it receives the witness set */
ORB_API orb_status orb_mwitness(const orb_angle* omega, orb_mwitness_info* out,
                                orb_intset** witness);

typedef struct orb_labelle_info {
  uint64_t q_max;
  uint64_t admissible;
  uint64_t counterexamples;
  double min_value;
  int64_t argmin_p;
  int64_t argmin_q;
} orb_labelle_info;

ORB_API orb_status orb_labelle_check(int64_t p, int64_t q, double* value, int* holds);
ORB_API orb_status orb_labelle_sweep(uint64_t q_max, orb_labelle_info* out);

/* ---- group model ---- */

/* row-major diag(e^{i theta}, e^{-i theta}) */
ORB_API orb_status orb_a_theta(const orb_angle* theta, orb_complex m[4], int* in_normalizer);

typedef struct orb_mc_estimate {
  orb_complex mean;
  double std_error;
  uint64_t samples;
  uint64_t seed;
} orb_mc_estimate;

/* Slot of the K-fixed vector in the matrix basis (even n). */
ORB_API unsigned orb_mc_spherical_slot(void);
/* Row i of the Monte Carlo Fourier coefficient of the p-th convolution power
   in pi_n: out[j] estimates (mu^(p)(pi_n) X_i, X_j), j = 0..n. */
ORB_API orb_status orb_mc_row(const orb_angle* theta, int p, unsigned n, unsigned i,
                              uint64_t samples, uint64_t seed, orb_mc_estimate* out);

#ifdef __cplusplus
}
#endif

#endif
