#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbital/orbital.h"

namespace orbital_cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "orbital-report/1";

// A library call failed; carries the orb_status for the exit code.
struct LibraryFailure : std::runtime_error {
  orb_status status;
  LibraryFailure(orb_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(orb_status s) {
  if (s != ORB_OK)
    throw LibraryFailure(s, std::string(orb_status_name(s)) + ": " + orb_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using AnglePtr = std::unique_ptr<orb_angle, Deleter<orb_angle, orb_angle_free>>;
using SeriesPtr = std::unique_ptr<orb_series, Deleter<orb_series, orb_series_free>>;
using SetPtr = std::unique_ptr<orb_intset, Deleter<orb_intset, orb_intset_free>>;
using DensityPtr = std::unique_ptr<orb_density, Deleter<orb_density, orb_density_free>>;

AnglePtr parse_angle(const std::string& text, unsigned bits) {
  orb_angle* a = nullptr;
  const orb_status s = orb_angle_parse(text.c_str(), bits, &a);
  if (s != ORB_OK) throw UsageFailure("bad angle '" + text + "': " + orb_last_error());
  return AnglePtr(a);
}

std::string fmt(double x, int digits = 10) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string fmt_complex(orb_complex z, int digits = 10) {
  std::string im = fmt(std::abs(z.im), digits);
  return fmt(z.re, digits) + (z.im < 0 || (z.im == 0 && std::signbit(z.im)) ? " - " : " + ") + im + "i";
}

json complex_json(orb_complex z) { return json{{"re", z.re}, {"im", z.im}}; }

std::complex<double> to_std(orb_complex z) { return {z.re, z.im}; }

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string command;
  json config = json::object();
  json results = json::object();
  json constants = json::array();
  std::vector<Check> checks;
  std::vector<std::string> text;                  // human-readable lines
  std::vector<std::string> csv_columns;
  std::vector<std::vector<std::string>> csv_rows;
  std::string plot_columns;                       // "#" header of the plot file
  std::vector<std::pair<double, double>> plot_rows;

  void constant(const std::string& name, double value, const char* provenance) {
    constants.push_back(json{{"name", name}, {"value", value}, {"provenance", provenance}});
  }
  void add_check(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

struct Options {
  std::string format = "text";
  std::string output;
  std::string plot;
  unsigned threads = 0;
  unsigned precision = 64;
};

std::filesystem::path resolve(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("ORBITAL_OUTPUT_DIR"); dir && *dir)
      return std::filesystem::path(dir) / p;
  }
  return p;
}

void write_file(const std::string& path, const std::string& body) {
  const auto p = resolve(path);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw LibraryFailure(ORB_IO, "cannot open '" + p.string() + "' for writing");
  f << body;
  if (!f) throw LibraryFailure(ORB_IO, "write to '" + p.string() + "' failed");
}

std::string render_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  json results = r.results;
  results["constants"] = r.constants;
  json doc{{"schema", kSchema},
           {"command", r.command},
           {"version", orb_version()},
           {"config", r.config},
           {"results", results},
           {"checks", checks}};
  return doc.dump(2) + "\n";
}

std::string render_csv(const Report& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.csv_columns.size(); ++i)
    os << (i ? "," : "") << r.csv_columns[i];
  os << "\n";
  for (const auto& row : r.csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  for (const auto& line : r.text) os << line << "\n";
  for (const auto& c : r.checks)
    os << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL")
       << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  return os.str();
}

std::string render_plot(const Report& r) {
  std::ostringstream os;
  os << "# " << r.plot_columns << "\n";
  for (const auto& [x, y] : r.plot_rows) os << fmt(x, 17) << " " << fmt(y, 17) << "\n";
  return os.str();
}

// ---- subcommands ----

struct IdentityArgs {
  std::uint64_t n_max = 0;
};

Report cmd_identity(const IdentityArgs& a) {
  Report r;
  r.command = "identity";
  r.config["n_max"] = a.n_max;
  std::uint64_t matches = 0;
  json mismatches = json::array();
  r.csv_columns = {"n", "equal"};
  for (std::uint64_t n = 1; n <= a.n_max; ++n) {
    int eq = 0;
    check(orb_lemma1_check(n, &eq));
    if (eq) {
      ++matches;
    } else if (mismatches.size() < 16) {
      mismatches.push_back(n);
    }
    r.csv_rows.push_back({std::to_string(n), eq ? "1" : "0"});
  }
  r.results["matches"] = matches;
  r.results["checked"] = a.n_max;
  r.results["first_mismatches"] = mismatches;
  const bool ok = matches == a.n_max;
  r.text.push_back(std::string(ok ? "ok" : "FAIL") + ": " + std::to_string(matches) + "/" +
                   std::to_string(a.n_max) + " exact matches");
  r.add_check("central_binomial_convolution_equals_4_pow_n", ok,
              std::to_string(matches) + "/" + std::to_string(a.n_max));
  return r;
}

struct TnArgs {
  std::string angle;
  std::uint64_t n = 0;
};

Report cmd_tn(const TnArgs& a, const Options& o) {
  Report r;
  r.command = "tn";
  const auto theta = parse_angle(a.angle, o.precision);
  r.config["angle"] = orb_angle_str(theta.get());
  r.config["angle_exact"] = static_cast<bool>(orb_angle_is_rational(theta.get()));
  r.config["n"] = a.n;

  orb_tn_info t{};
  check(orb_tn(theta.get(), a.n, o.precision, &t));
  orb_complex oracle{};
  check(orb_tn_oracle(theta.get(), a.n, o.precision, &oracle));
  const double oracle_residual = std::abs(to_std(t.normalized) - to_std(oracle));

  r.results["t_n"] = complex_json(t.value);
  r.results["phi"] = complex_json(t.normalized);
  r.results["abs_phi"] = std::abs(to_std(t.normalized));
  r.results["spherical_value"] = complex_json(t.spherical);
  r.results["oracle_residual"] = oracle_residual;
  r.constant("tolerance", t.tolerance, "computed");

  r.text.push_back("theta: " + std::string(orb_angle_str(theta.get())) +
                   (orb_angle_is_rational(theta.get()) ? " (x pi)" : " rad"));
  r.text.push_back("n: " + std::to_string(a.n));
  r.text.push_back("t_n: " + fmt_complex(t.value, 17));
  r.text.push_back("phi = t_n/4^n: " + fmt_complex(t.normalized, 17));
  r.text.push_back("spherical value: " + fmt_complex(t.spherical, 17));
  r.text.push_back("legendre residual: " + fmt(oracle_residual, 3));
  r.add_check("legendre_oracle_agreement", oracle_residual <= t.tolerance,
              fmt(oracle_residual, 3) + " <= " + fmt(t.tolerance, 3));

  r.csv_columns = {"n", "phi_re", "phi_im", "abs_phi", "oracle_residual"};
  std::vector<std::string> row{std::to_string(a.n), fmt(t.normalized.re, 17),
                               fmt(t.normalized.im, 17),
                               fmt(std::abs(to_std(t.normalized)), 17), fmt(oracle_residual, 17)};

  if (orb_angle_is_rational(theta.get()) && orb_angle_q(theta.get()) <= 64 && a.n <= 5000) {
    orb_complex exact{};
    check(orb_tn_exact(theta.get(), a.n, std::max(o.precision, 128u), &exact));
    const double exact_residual = std::abs(to_std(t.normalized) - to_std(exact));
    r.results["exact_residual"] = exact_residual;
    r.text.push_back("cyclotomic residual: " + fmt(exact_residual, 3));
    r.add_check("cyclotomic_agreement", exact_residual <= t.tolerance,
                fmt(exact_residual, 3) + " <= " + fmt(t.tolerance, 3));
    r.csv_columns.push_back("exact_residual");
    row.push_back(fmt(exact_residual, 17));
  }
  r.csv_rows.push_back(std::move(row));
  return r;
}

struct SeriesArgs {
  std::string angle;
  int p = 2;
  std::uint64_t n_max = 0;
  unsigned per_decade = 10;
};

Report cmd_series(const SeriesArgs& a, const Options& o) {
  Report r;
  r.command = "series";
  const auto theta = parse_angle(a.angle, o.precision);
  r.config["angle"] = orb_angle_str(theta.get());
  r.config["angle_exact"] = static_cast<bool>(orb_angle_is_rational(theta.get()));
  r.config["p"] = a.p;
  r.config["n_max"] = a.n_max;
  r.config["checkpoints_per_decade"] = a.per_decade;

  orb_series* raw = nullptr;
  check(orb_series_run(theta.get(), a.p, a.n_max, a.per_decade, o.precision, &raw));
  SeriesPtr s(raw);

  json cps = json::array();
  r.csv_columns = {"N", "S_N"};
  r.plot_columns = "ln_N S_N";
  bool monotone = true;
  double prev = 0;
  for (std::size_t i = 0; i < orb_series_checkpoint_count(s.get()); ++i) {
    std::uint64_t n = 0;
    double sum = 0;
    check(orb_series_checkpoint(s.get(), i, &n, &sum));
    cps.push_back(json{{"N", n}, {"S_N", sum}});
    r.csv_rows.push_back({std::to_string(n), fmt(sum, 17)});
    r.plot_rows.emplace_back(std::log(static_cast<double>(n)), sum);
    monotone = monotone && sum >= prev;
    prev = sum;
  }

  r.text.push_back("theta: " + std::string(orb_angle_str(theta.get())) + ", p = " +
                   std::to_string(a.p) + ", N = " + std::to_string(a.n_max));
  r.text.push_back("S_N: " + fmt(prev, 12));
  const std::string cls = orb_series_classification(s.get());
  if (!cls.empty()) {
    orb_series_fit f{};
    check(orb_series_get_fit(s.get(), &f));
    r.results["classification"] = cls;
    r.results["term_exponent"] = f.term_exponent;
    r.results["log_fit"] = json{{"slope", f.log_slope},
                                {"intercept", f.log_intercept},
                                {"relative_residual", f.log_fit_residual}};
    r.results["linear_fit"] = json{{"slope", f.linear_slope},
                                   {"intercept", f.linear_intercept},
                                   {"relative_residual", f.linear_fit_residual}};
    r.results["fit_window"] = json{{"from", f.fit_from}, {"to", f.fit_to}};
    r.constant("converge_exponent", f.converge_exponent, "configured");
    r.constant("fit_tolerance", f.fit_tolerance, "configured");
    r.constant("linear_exponent", f.linear_exponent, "configured");
    r.constant("fit_decades", f.fit_decades, "configured");
    r.constant("term_exponent", f.term_exponent, "computed");
    r.constant("log_slope", f.log_slope, "computed");
    r.text.push_back("classification: " + cls);
    r.text.push_back("term exponent: " + fmt(f.term_exponent, 6));
    r.text.push_back("log fit: S_N = " + fmt(f.log_slope, 6) + " ln N + " +
                     fmt(f.log_intercept, 6) + " (residual " + fmt(f.log_fit_residual, 3) +
                     ")");
  } else {
    r.results["classification"] = nullptr;
    r.text.push_back("classification: skipped (needs N >= 1000)");
  }
  r.results["checkpoints"] = cps;
  r.add_check("partial_sums_nondecreasing", monotone, "terms are nonnegative");
  return r;
}

struct BoundsArgs {
  std::string angle;
  std::uint64_t n_min = 0;
  std::uint64_t n_max = 0;
  std::optional<double> eset;
};

Report cmd_bounds(const BoundsArgs& a, const Options& o) {
  Report r;
  r.command = "bounds";
  const auto theta = parse_angle(a.angle, o.precision);
  r.config["angle"] = orb_angle_str(theta.get());
  r.config["angle_exact"] = static_cast<bool>(orb_angle_is_rational(theta.get()));
  r.config["n_min"] = a.n_min;
  r.config["n_max"] = a.n_max;
  r.config["eset_c"] = a.eset ? json(*a.eset) : json(nullptr);

  orb_bounds_info b{};
  check(orb_bounds(theta.get(), a.n_min, a.n_max, a.eset.has_value(), a.eset.value_or(0),
                   o.precision, &b));
  std::vector<double> scaled(a.n_max - a.n_min + 1);
  check(orb_scaled_magnitudes(theta.get(), a.n_min, a.n_max, o.precision, scaled.data()));
  std::size_t count = 0;
  if (const orb_status s =
          orb_decade_maxima(theta.get(), a.n_min, a.n_max, o.precision, nullptr, 0, &count);
      s != ORB_BUFFER_TOO_SMALL)
    check(s);
  std::vector<orb_decade_max> dm(count);
  check(orb_decade_maxima(theta.get(), a.n_min, a.n_max, o.precision, dm.data(), dm.size(),
                          &count));

  r.results["C0"] = b.c0;
  r.results["C_upper"] = b.c_upper;
  r.results["argmax"] = b.argmax;
  if (a.eset) {
    r.results["C_lower_on_E"] = b.c_lower_on_e;
    r.results["argmin"] = b.argmin;
    r.results["e_count"] = b.e_count;
  }
  json windows = json::array();
  r.csv_columns = {"from", "to", "max_scaled_t"};
  for (const auto& d : dm) {
    windows.push_back(json{{"from", d.from}, {"to", d.to}, {"max", d.max}});
    r.csv_rows.push_back({std::to_string(d.from), std::to_string(d.to), fmt(d.max, 17)});
  }
  r.results["decade_maxima"] = windows;
  r.constant("C0", b.c0, "computed");
  r.constant("C_upper", b.c_upper, "computed");
  if (a.eset) r.constant("eset_c", *a.eset, "configured");

  double worst = 0;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    const double n = static_cast<double>(a.n_min + i);
    worst = std::max(worst, scaled[i] / std::sqrt(n));
  }
  r.add_check("normalized_sum_at_most_one", worst <= 1 + 1e-12, "max |t_n|/4^n = " + fmt(worst, 6));

  r.text.push_back("theta: " + std::string(orb_angle_str(theta.get())) + ", n in [" +
                   std::to_string(a.n_min) + ", " + std::to_string(a.n_max) + "]");
  r.text.push_back("C0 = 1/|sin 2theta|: " + fmt(b.c0, 10));
  r.text.push_back("C_upper = max sqrt(n)|t_n|/4^n: " + fmt(b.c_upper, 10) + " at n = " +
                   std::to_string(b.argmax));
  if (a.eset)
    r.text.push_back("C_lower on E: " + fmt(b.c_lower_on_e, 10) + " at n = " +
                     std::to_string(b.argmin) + " (" + std::to_string(b.e_count) + " indices)");
  for (const auto& d : dm)
    r.text.push_back("max over [" + std::to_string(d.from) + ", " + std::to_string(d.to) +
                     "]: " + fmt(d.max, 10));

  r.plot_columns = "n scaled_t";
  const std::size_t stride = std::max<std::size_t>(1, (scaled.size() + 19999) / 20000);
  for (std::size_t i = 0; i < scaled.size(); i += stride)
    r.plot_rows.emplace_back(static_cast<double>(a.n_min + i), scaled[i]);
  return r;
}

struct DensityArgs {
  std::string omega;
  double c = 0;
  std::uint64_t n = 0;
};

Report cmd_density(const DensityArgs& a, const Options& o) {
  Report r;
  r.command = "density";
  const auto omega = parse_angle(a.omega, o.precision);
  r.config["omega"] = orb_angle_str(omega.get());
  r.config["omega_exact"] = static_cast<bool>(orb_angle_is_rational(omega.get()));
  r.config["c"] = a.c;
  r.config["N"] = a.n;

  orb_intset* raw_set = nullptr;
  check(orb_intset_eset(omega.get(), a.c, a.n, &raw_set));
  SetPtr set(raw_set);
  orb_density* raw_d = nullptr;
  check(orb_density_profile(set.get(), a.n, &raw_d));
  DensityPtr d(raw_d);
  double harmonic = 0;
  check(orb_harmonic_partial(set.get(), a.n, &harmonic));
  std::size_t count = 0;
  check(orb_intset_members(set.get(), a.n, nullptr, 0, &count));
  std::vector<std::uint64_t> members(count);
  check(orb_intset_members(set.get(), a.n, members.data(), members.size(), &count));

  bool in_unit = true;
  json cps = json::array();
  r.csv_columns = {"N", "ratio"};
  r.plot_columns = "N ratio";
  for (std::size_t i = 0; i < orb_density_checkpoint_count(d.get()); ++i) {
    std::uint64_t n = 0;
    double ratio = 0;
    check(orb_density_checkpoint(d.get(), i, &n, &ratio));
    in_unit = in_unit && ratio >= 0 && ratio <= 1;
    cps.push_back(json{{"N", n}, {"ratio", ratio}});
    r.csv_rows.push_back({std::to_string(n), fmt(ratio, 17)});
    r.plot_rows.emplace_back(static_cast<double>(n), ratio);
  }
  bool satisfy = true;
  for (auto m : members) {
    double v = 0;
    check(orb_e_value(omega.get(), m, &v));
    satisfy = satisfy && v >= a.c;
  }

  r.results["count"] = count;
  r.results["lower_density_estimate"] = orb_density_liminf(d.get());
  r.results["tail_start"] = orb_density_tail_start(d.get());
  r.results["harmonic_partial"] = harmonic;
  r.results["checkpoints"] = cps;
  r.constant("c", a.c, "configured");
  r.constant("lower_density_estimate", orb_density_liminf(d.get()), "computed");
  r.add_check("ratios_in_unit_interval", in_unit, "");
  r.add_check("members_satisfy_predicate", satisfy,
              std::to_string(count) + " members with sin(w) sin(n w) >= c");

  r.text.push_back("omega: " + std::string(orb_angle_str(omega.get())) + ", c = " + fmt(a.c) +
                   ", N = " + std::to_string(a.n));
  r.text.push_back("|E n [1,N]|: " + std::to_string(count));
  r.text.push_back("lower density estimate: " + fmt(orb_density_liminf(d.get()), 8) +
                   " (min ratio over N' >= " + std::to_string(orb_density_tail_start(d.get())) +
                   ")");
  r.text.push_back("sum of 1/n over E: " + fmt(harmonic, 10));
  return r;
}

struct WitnessArgs {
  std::string omega;
  std::uint64_t verify = 10000;
};

const char* witness_name(orb_witness_case w) {
  switch (w) {
    case ORB_WITNESS_IRRATIONAL: return "equidistribution";
    case ORB_WITNESS_EVEN_Q: return "even_q_progression";
    case ORB_WITNESS_ODD_Q: return "odd_q_progression";
  }
  return "unknown";
}

Report cmd_mwitness(const WitnessArgs& a, const Options& o) {
  Report r;
  r.command = "mwitness";
  const auto omega = parse_angle(a.omega, o.precision);
  r.config["omega"] = orb_angle_str(omega.get());
  r.config["omega_exact"] = static_cast<bool>(orb_angle_is_rational(omega.get()));
  r.config["verify"] = a.verify;

  orb_mwitness_info w{};
  check(orb_mwitness(omega.get(), &w, nullptr));
  r.results["case"] = witness_name(w.which);
  r.results["c"] = w.c;
  r.results["closed_form"] = w.closed_form;
  r.constant("c", w.c, "computed");
  r.csv_columns = {"field", "value"};
  r.csv_rows.push_back({"case", witness_name(w.which)});
  r.csv_rows.push_back({"c", fmt(w.c, 17)});
  r.csv_rows.push_back({"closed_form", fmt(w.closed_form, 17)});
  r.text.push_back("omega: " + std::string(orb_angle_str(omega.get())));
  r.text.push_back("case: " + std::string(witness_name(w.which)));
  r.text.push_back("c: " + fmt(w.c, 17));
  r.text.push_back("closed form: " + fmt(w.closed_form, 17));
  if (w.modulus) {
    r.results["progression"] = json{{"offset", w.offset}, {"modulus", w.modulus}};
    r.csv_rows.push_back({"offset", std::to_string(w.offset)});
    r.csv_rows.push_back({"modulus", std::to_string(w.modulus)});
    r.text.push_back("witness: n = " + std::to_string(w.offset) + " + " +
                     std::to_string(w.modulus) + " j");
  }
  if (w.has_p_inverse) {
    r.results["p_inverse"] = w.p_inverse;
    r.csv_rows.push_back({"p_inverse", std::to_string(w.p_inverse)});
  }
  if (w.has_eta_q) {
    r.results["eta_q"] = w.eta_q;
    r.csv_rows.push_back({"eta_q", std::to_string(w.eta_q)});
  }
  if (w.has_rho) {
    r.results["rho"] = w.rho;
    r.constant("rho", w.rho, "computed");
    r.csv_rows.push_back({"rho", fmt(w.rho, 17)});
  }
  if (w.has_q_omega) {
    r.results["q_omega"] = w.q_omega;
    r.constant("q_omega", w.q_omega, "computed");
    r.csv_rows.push_back({"q_omega", fmt(w.q_omega, 17)});
    r.text.push_back("q_omega: " + fmt(w.q_omega, 17));
  }

  r.add_check("c_exceeds_half", w.c > 0.5, fmt(w.c, 17));
  r.add_check("c_matches_closed_form", std::abs(w.c - w.closed_form) <= 1e-12,
              fmt(std::abs(w.c - w.closed_form), 3));
  if (w.modulus) {
    std::uint64_t bad = 0;
    for (std::uint64_t j = 0; j < a.verify; ++j) {
      double v = 0;
      check(orb_e_value(omega.get(), w.offset + w.modulus * j, &v));
      if (v < w.c) ++bad;
    }
    r.results["verified_members"] = a.verify;
    r.add_check("progression_inside_E", bad == 0,
                std::to_string(a.verify - bad) + "/" + std::to_string(a.verify) + " members");
  }
  return r;
}

struct LabelleArgs {
  std::uint64_t q_max = 0;
};

Report cmd_labelle(const LabelleArgs& a) {
  Report r;
  r.command = "labelle";
  r.config["q_max"] = a.q_max;
  orb_labelle_info s{};
  check(orb_labelle_sweep(a.q_max, &s));
  r.results["admissible"] = s.admissible;
  r.results["counterexamples"] = s.counterexamples;
  r.results["min_value"] = s.min_value;
  r.results["argmin"] = json{{"p", s.argmin_p}, {"q", s.argmin_q}};
  r.constant("min_value", s.min_value, "computed");
  r.csv_columns = {"field", "value"};
  r.csv_rows = {{"q_max", std::to_string(s.q_max)},
                {"admissible", std::to_string(s.admissible)},
                {"counterexamples", std::to_string(s.counterexamples)},
                {"min_value", fmt(s.min_value, 17)},
                {"argmin_p", std::to_string(s.argmin_p)},
                {"argmin_q", std::to_string(s.argmin_q)}};
  r.text.push_back(std::to_string(s.counterexamples) +
                   " counterexamples among all admissible (p,q)");
  r.text.push_back("admissible pairs: " + std::to_string(s.admissible));
  r.text.push_back("min sin(p pi/q) cos(pi/2q): " + fmt(s.min_value, 12) + " at " +
                   std::to_string(s.argmin_p) + "/" + std::to_string(s.argmin_q));
  r.add_check("no_counterexamples", s.counterexamples == 0,
              std::to_string(s.admissible) + " admissible pairs");
  return r;
}

struct McArgs {
  std::string angle;
  int p = 2;
  unsigned n = 2;
  unsigned row = 0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
};

Report cmd_mc(const McArgs& a, const Options& o) {
  Report r;
  r.command = "mc";
  const auto theta = parse_angle(a.angle, o.precision);
  r.config["angle"] = orb_angle_str(theta.get());
  r.config["angle_exact"] = static_cast<bool>(orb_angle_is_rational(theta.get()));
  r.config["p"] = a.p;
  r.config["n"] = a.n;
  r.config["row"] = a.row;
  r.config["samples"] = a.samples;
  r.config["seed"] = a.seed;

  std::vector<orb_mc_estimate> est(a.n + 1);
  check(orb_mc_row(theta.get(), a.p, a.n, a.row, a.samples, a.seed, est.data()));

  const unsigned slot = orb_mc_spherical_slot();
  std::optional<std::complex<double>> expected;
  if (a.n % 2 == 0 && a.row == slot) {
    orb_tn_info t{};
    check(orb_tn(theta.get(), a.n / 2, o.precision, &t));
    expected = std::pow(std::conj(to_std(t.spherical)), a.p);
  }

  json entries = json::array();
  r.csv_columns = {"i", "j", "re", "im", "std_error"};
  double worst_zero = 0;
  bool zero_ok = true;
  for (unsigned j = 0; j <= a.n; ++j) {
    const auto& e = est[j];
    entries.push_back(json{{"j", j}, {"mean", complex_json(e.mean)}, {"std_error", e.std_error}});
    r.csv_rows.push_back({std::to_string(a.row), std::to_string(j), fmt(e.mean.re, 17),
                          fmt(e.mean.im, 17), fmt(e.std_error, 17)});
    r.text.push_back("(" + std::to_string(a.row) + "," + std::to_string(j) +
                     "): " + fmt_complex(e.mean, 8) + " +- " + fmt(e.std_error, 3));
    if (expected && j == slot) continue;
    const double dev = std::abs(to_std(e.mean));
    worst_zero = std::max(worst_zero, e.std_error > 0 ? dev / e.std_error : 0.0);
    zero_ok = zero_ok && dev <= 4 * e.std_error + 1e-9;
  }
  r.results["entries"] = entries;
  r.constant("sigma_multiple", 4, "configured");
  r.add_check("vanishing_entries_within_4_sigma", zero_ok,
              "worst |mean|/sigma = " + fmt(worst_zero, 4));
  if (expected) {
    const auto& e = est[slot];
    const double dev = std::abs(to_std(e.mean) - *expected);
    r.results["expected_spherical"] = json{{"re", expected->real()}, {"im", expected->imag()}};
    r.constant("expected_spherical_re", expected->real(), "computed");
    r.text.push_back("expected (conj phi)^p: " + fmt(expected->real(), 10) + " + " +
                     fmt(expected->imag(), 10) + "i");
    r.add_check("spherical_entry_within_4_sigma", dev <= 4 * e.std_error + 1e-9,
                "|mean - expected| = " + fmt(dev, 3) + ", sigma = " + fmt(e.std_error, 3));
  }
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spherical Fourier analysis of orbital measures on SU(2)/SO(2)", "orbital"};
  app.set_version_flag("--version", std::string(orb_version()));
  app.require_subcommand(1, 1);

  Options opt;
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", opt.output, "Write the report to this file");
  app.add_option("--plot", opt.plot, "Write two-column plot data to this file");
  app.add_option("--threads", opt.threads, "Cap on worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--precision", opt.precision, "Working precision in bits (64 = long double)")
      ->check(CLI::Range(64u, 65536u))
      ->capture_default_str();
  app.fallthrough();

  IdentityArgs ia;
  auto* identity = app.add_subcommand("identity", "Check sum C(2k,k)C(2n-2k,n-k) = 4^n for n <= n_max");
  identity->add_option("n_max", ia.n_max)->required()->check(CLI::Range(1ull, 100000ull));

  TnArgs ta;
  auto* tn = app.add_subcommand("tn", "Evaluate t_n(theta) and cross-check it");
  tn->add_option("--angle", ta.angle, "p/q for p*pi/q, or radians")->required();
  tn->add_option("--n", ta.n)->required();

  SeriesArgs sa;
  auto* series = app.add_subcommand("series", "Partial sums of the L2-norm series and their growth");
  series->add_option("--angle", sa.angle)->required();
  series->add_option("--p", sa.p)->required()->check(CLI::PositiveNumber);
  series->add_option("--nmax", sa.n_max)->required()->check(CLI::Range(16ull, 100000000ull));
  series->add_option("--per-decade", sa.per_decade, "Checkpoints per decade")
      ->check(CLI::Range(1u, 1000u))
      ->capture_default_str();

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Upper and E-set lower constants for sqrt(n)|t_n|/4^n");
  bounds->add_option("--angle", ba.angle)->required();
  bounds->add_option("--nmin", ba.n_min)->required()->check(CLI::PositiveNumber);
  bounds->add_option("--nmax", ba.n_max)->required()->check(CLI::Range(1ull, 100000000ull));
  bounds->add_option("--eset", ba.eset, "Restrict the minimum to n+1 in E(2 theta, c)");

  DensityArgs da;
  auto* density = app.add_subcommand("density", "Lower density of E(omega, c) up to N");
  density->add_option("--omega", da.omega)->required();
  density->add_option("--c", da.c)->required();
  density->add_option("--N", da.n)->required()->check(CLI::Range(100ull, 1000000000ull));

  WitnessArgs wa;
  auto* mwitness = app.add_subcommand("mwitness", "Certificate that omega lies in (pi/6, 5pi/6)");
  mwitness->add_option("--omega", wa.omega)->required();
  mwitness->add_option("--verify", wa.verify, "Progression members to test")->capture_default_str();

  LabelleArgs la;
  auto* labelle = app.add_subcommand("labelle", "Sweep sin(p pi/q) cos(pi/2q) > 1/2 over odd q");
  labelle->add_option("--qmax", la.q_max)->required()->check(CLI::Range(3ull, 1000000ull));

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Monte Carlo Fourier coefficient of the p-th convolution power");
  mc->add_option("--angle", ma.angle)->required();
  mc->add_option("--p", ma.p)->required()->check(CLI::PositiveNumber);
  mc->add_option("--n", ma.n)->required()->check(CLI::Range(1u, 200u));
  mc->add_option("--row", ma.row, "Basis index i of the row")->capture_default_str();
  mc->add_option("--samples", ma.samples)->capture_default_str();
  mc->add_option("--seed", ma.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << orb_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    orb_set_threads(opt.threads);
    Report rep;
    if (*identity) {
      rep = cmd_identity(ia);
    } else if (*tn) {
      rep = cmd_tn(ta, opt);
    } else if (*series) {
      rep = cmd_series(sa, opt);
    } else if (*bounds) {
      if (ba.n_min > ba.n_max) throw UsageFailure("--nmin exceeds --nmax");
      rep = cmd_bounds(ba, opt);
    } else if (*density) {
      rep = cmd_density(da, opt);
    } else if (*mwitness) {
      rep = cmd_mwitness(wa, opt);
    } else if (*labelle) {
      rep = cmd_labelle(la);
    } else {
      rep = cmd_mc(ma, opt);
    }
    rep.config["precision_bits"] = opt.precision;
    rep.config["threads"] = opt.threads;
    rep.config["format"] = opt.format;

    if (!opt.plot.empty()) {
      if (rep.plot_columns.empty())
        throw UsageFailure("command '" + rep.command + "' has no plot data");
      write_file(opt.plot, render_plot(rep));
    }
    const std::string body = opt.format == "json"  ? render_json(rep)
                             : opt.format == "csv" ? render_csv(rep)
                                                   : render_text(rep);
    if (opt.output.empty()) {
      out << body;
    } else {
      write_file(opt.output, body);
    }
    if (!rep.all_pass()) {
      for (const auto& c : rep.checks)
        if (!c.pass) err << "invariant failed: " << c.name << " (" << c.detail << ")\n";
      return kExitInvariant;
    }
    return kExitOk;
  } catch (const UsageFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LibraryFailure& e) {
    err << "error: " << e.what() << "\n";
    return e.status == ORB_INVARIANT_VIOLATION || e.status == ORB_INTERNAL ? kExitInvariant
                                                                           : kExitUsage;
  }
}

}  // namespace orbital_cli
