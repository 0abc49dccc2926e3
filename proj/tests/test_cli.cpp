#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"orbital"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = orbital_cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Sets ORBITAL_OUTPUT_DIR to a fresh directory for the lifetime of the object.
struct OutputDir {
  fs::path path;
  OutputDir() {
    path = fs::temp_directory_path() / ("orbital_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
    ::setenv("ORBITAL_OUTPUT_DIR", path.c_str(), 1);
  }
  ~OutputDir() {
    ::unsetenv("ORBITAL_OUTPUT_DIR");
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("identity") {
  const auto r = cli({"identity", "2000"});
  CHECK(r.code == orbital_cli::kExitOk);
  CHECK(first_line(r.out) == "ok: 2000/2000 exact matches");
  CHECK(r.out.find("check central_binomial_convolution_equals_4_pow_n: pass") != std::string::npos);
}

TEST_CASE("series report as json") {
  const auto r = cli({"--format", "json", "series", "--angle", "1/4", "--p", "2", "--nmax", "100000"});
  REQUIRE(r.code == orbital_cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "orbital-report/1");
  CHECK(j["command"] == "series");
  CHECK(j["config"]["p"] == 2);
  CHECK(j["config"]["checkpoints_per_decade"] == 10);
  CHECK(j["config"]["precision_bits"] == 64);
  CHECK(j["results"]["classification"] == "DivergesLog");
  CHECK(j["results"]["log_fit"]["slope"].get<double>() == doctest::Approx(0.405).epsilon(0.01));
  CHECK(j["results"]["checkpoints"].back()["N"] == 100000);
  for (const auto& c : j["results"]["constants"]) {
    const auto prov = c["provenance"].get<std::string>();
    CHECK((prov == "computed" || prov == "configured"));
  }
  for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("json output is reproducible byte for byte") {
  const std::initializer_list<const char*> args{"--format", "json", "mc",     "--angle", "1/5", "--p", "3",
                                                "--n",      "4",    "--samples", "5000", "--seed", "9"};
  const auto a = cli(args);
  const auto b = cli(args);
  REQUIRE(a.code == orbital_cli::kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("labelle sweep") {
  const auto r = cli({"labelle", "--qmax", "101"});
  CHECK(r.code == orbital_cli::kExitOk);
  CHECK(first_line(r.out) == "0 counterexamples among all admissible (p,q)");
  CHECK(r.out.find("admissible pairs: 1410") != std::string::npos);
}

TEST_CASE("t_n report") {
  const auto r = cli({"tn", "--angle", "1/8", "--n", "3"});
  CHECK(r.code == orbital_cli::kExitOk);
  CHECK(r.out.find("t_n: 8 - 8i") != std::string::npos);
  CHECK(r.out.find("check cyclotomic_agreement: pass") != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(cli({}).code == orbital_cli::kExitUsage);
  CHECK(cli({"tn", "--angle", "pi/x", "--n", "3"}).code == orbital_cli::kExitUsage);
  CHECK(cli({"mwitness", "--omega", "1/6"}).code == orbital_cli::kExitUsage);
  CHECK(cli({"density", "--omega", "2/5", "--c", "0.5", "--N", "1000"}).code == orbital_cli::kExitUsage);
  CHECK(cli({"--format", "yaml", "identity", "10"}).code == orbital_cli::kExitUsage);
  CHECK(cli({"--precision", "32", "identity", "10"}).code == orbital_cli::kExitUsage);
  const auto r = cli({"bounds", "--angle", "1/2", "--nmin", "100", "--nmax", "1000"});
  CHECK(r.code == orbital_cli::kExitUsage);
  CHECK(r.err.find("degenerate") != std::string::npos);
}

TEST_CASE("csv headers") {
  struct Case {
    std::initializer_list<const char*> args;
    const char* header;
  };
  const Case cases[] = {
      {{"--format", "csv", "identity", "3"}, "n,equal"},
      {{"--format", "csv", "tn", "--angle", "1/8", "--n", "3"},
       "n,phi_re,phi_im,abs_phi,oracle_residual,exact_residual"},
      {{"--format", "csv", "tn", "--angle", "0.7", "--n", "3"}, "n,phi_re,phi_im,abs_phi,oracle_residual"},
      {{"--format", "csv", "series", "--angle", "1/4", "--p", "2", "--nmax", "100"}, "N,S_N"},
      {{"--format", "csv", "bounds", "--angle", "1/5", "--nmin", "100", "--nmax", "10000"}, "from,to,max_scaled_t"},
      {{"--format", "csv", "density", "--omega", "2/5", "--c", "0.9", "--N", "1000"}, "N,ratio"},
      {{"--format", "csv", "mwitness", "--omega", "1/4"}, "field,value"},
      {{"--format", "csv", "labelle", "--qmax", "11"}, "field,value"},
      {{"--format", "csv", "mc", "--angle", "1/8", "--p", "2", "--n", "2", "--samples", "2000"},
       "i,j,re,im,std_error"},
  };
  for (const auto& c : cases) {
    const auto r = cli(c.args);
    CHECK(r.code == orbital_cli::kExitOk);
    CHECK(first_line(r.out) == c.header);
  }
}

TEST_CASE("plot files and output files land in ORBITAL_OUTPUT_DIR") {
  OutputDir dir;
  auto r = cli({"--plot", "d.dat", "density", "--omega", "2/5", "--c", "0.9", "--N", "1000"});
  CHECK(r.code == orbital_cli::kExitOk);
  CHECK(first_line(slurp(dir.path / "d.dat")) == "# N ratio");

  r = cli({"--plot", "b.dat", "bounds", "--angle", "1/5", "--nmin", "100", "--nmax", "10000"});
  CHECK(r.code == orbital_cli::kExitOk);
  const auto b = slurp(dir.path / "b.dat");
  CHECK(first_line(b) == "# n scaled_t");
  CHECK(std::count(b.begin(), b.end(), '\n') == 1 + 9901);

  r = cli({"--plot", "s.dat", "--output", "s.json", "--format", "json", "series", "--angle", "1/3", "--p", "2",
           "--nmax", "1000"});
  CHECK(r.code == orbital_cli::kExitOk);
  CHECK(r.out.empty());
  CHECK(first_line(slurp(dir.path / "s.dat")) == "# ln_N S_N");
  CHECK(nlohmann::json::parse(slurp(dir.path / "s.json"))["command"] == "series");
}

TEST_CASE("version") {
  const auto r = cli({"--version"});
  CHECK(r.code == orbital_cli::kExitOk);
  CHECK(r.out.find('.') != std::string::npos);
}

#ifdef ORBITAL_CLI_BINARY
TEST_CASE("the installed binary runs") {
  const std::string cmd = std::string(ORBITAL_CLI_BINARY) + " identity 50 > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
}
#endif
