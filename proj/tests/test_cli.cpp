#include "cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = ffp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kOperations = {
    "poly_from_roots", "roots", "signed_coeff", "power_sums_from_coeffs", "char_poly",
    "series_mul", "series_add", "series_ln", "series_exp", "series_derive", "series_revert",
    "voiculescu_r_series", "voiculescu_s_values",
    "u_transform", "u_inverse", "u_moments",
    "additive_convolve", "multiplicative_convolve", "operator_of", "apply", "additive_inverse",
    "finite_r_transform", "finite_k_transform", "quadrature_k_check", "r_additivity_check", "s_moment_values",
    "s_multiplicativity_check", "quadrature_n_check", "identity_s_reference", "r_convergence_study",
    "haar_orthogonal", "mc_expected_charpoly", "mixed_discriminant", "md_pattern", "check_free_position",
    "check_mult_identity", "search_free_rotation", "zero_diagonal_normalize", "additive_compound", "majorizes",
    "majorization_flow", "trace_distributivity_check", "binomial_identity_check", "projection_identity_check",
    "finite_gaussian", "laguerre", "finite_poisson", "finite_compound_poisson", "lln_run", "clt_run",
    "poisson_limit_exact", "mp_support_check", "restricted_invertibility_demo"};

}  // namespace

TEST_CASE("registry covers every operation") {
  std::set<std::string> reached;
  for (const auto& c : ffp::cli::registry()) reached.insert(c.operations.begin(), c.operations.end());
  for (const auto& op : kOperations) {
    INFO(op);
    CHECK(reached.count(op) == 1);
  }
  const std::set<std::string> paths = [] {
    std::set<std::string> s;
    for (const auto& c : ffp::cli::registry()) s.insert(c.path);
    return s;
  }();
  for (const char* p : {"conv add", "conv mult", "conv inverse", "utransform forward", "utransform inverse",
                        "utransform moments", "rtransform", "stransform", "check quadrature-k", "check quadrature-n",
                        "check r-add", "check s-mult", "check binomial", "check trace-dist", "study r-convergence",
                        "mc verify", "freepos check", "freepos search", "freepos normalize", "md eval", "compound",
                        "majorize check", "majorize flow", "dist hermite", "dist poisson", "dist compound",
                        "limit lln", "limit clt", "limit poisson", "ri demo"})
    CHECK(paths.count(p) == 1);
}

TEST_CASE("every registered example runs") {
  for (const auto& c : ffp::cli::registry()) {
    INFO(c.path);
    const Outcome r = invoke(c.example);
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(!r.out.empty());
  }
}

TEST_CASE("identical argv gives identical bytes") {
  for (const auto& c : ffp::cli::registry()) {
    INFO(c.path);
    std::vector<std::string> args = c.example;
    args.insert(args.end(), {"--seed", "11"});
    CHECK(invoke(args).out == invoke(args).out);
  }
  const std::vector<std::string> mc = {"mc", "verify", "--samples", "3000", "--seed", "5", "--threads", "3"};
  CHECK(invoke(mc).out == invoke(mc).out);
}

TEST_CASE("documented examples") {
  const Outcome add = invoke({"conv", "add", "--p", "[1,-6,11,-6]", "--q", "[1,-6,11,-6]", "--m", "3"});
  CHECK(add.code == 0);
  CHECK(add.out.find(R"("-12",)") != std::string::npos);
  CHECK(add.out.find(R"("46",)") != std::string::npos);
  CHECK(add.out.find(R"("-56")") != std::string::npos);

  const Outcome lim = invoke({"limit", "poisson", "--m", "4", "--lambda", "1", "--exact"});
  CHECK(lim.code == 0);
  CHECK(lim.out == "{\n  \"ok\": true\n}\n");
}

TEST_CASE("seed falls back to the environment") {
  const std::vector<std::string> args = {"mc", "verify", "--samples", "500"};
  setenv("FFT_SEED", "42", 1);
  const std::string env = invoke(args).out;
  unsetenv("FFT_SEED");
  std::vector<std::string> flagged = args;
  flagged.insert(flagged.end(), {"--seed", "42"});
  CHECK(env == invoke(flagged).out);
  CHECK(env != invoke(args).out);
}

TEST_CASE("usage errors name the flag") {
  const auto expect_usage = [](const std::vector<std::string>& args, const std::string& flag) {
    const Outcome r = invoke(args);
    CHECK(r.code == 2);
    CHECK(r.err.find(flag) != std::string::npos);
  };
  expect_usage({"conv", "add", "--p", "[1,2", "--q", "[1,0]"}, "--p");
  expect_usage({"conv", "add", "--p", "[1,2]"}, "--q");
  expect_usage({"conv", "add", "--p", "[1,\"x\"]", "--q", "[1,0]"}, "--p");
  expect_usage({"dist", "poisson", "--m", "3", "--lambda", "1/2"}, "--lambda");
  expect_usage({"mc", "verify", "--kind", "sum"}, "--kind");
  expect_usage({"--mode", "exact", "conv", "inverse", "--p", "[1,0]"}, "--mode");
  expect_usage({"freepos", "check", "--a", "[[1,2],[0,1]]", "--b", "[[1,0],[0,1]]"}, "--a");
  expect_usage({"dist", "hermite", "--m", "three"}, "--m");
  expect_usage({"conv", "inverse", "--p", "[1,0]", "--out", "/tmp/x.csv"}, "--out");
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"conv"}).code == 2);
  CHECK(invoke({"nonsense"}).code == 2);
}

TEST_CASE("failed checks exit with 1") {
  // diag(1,2) and diag(3,5) are not in free position
  const Outcome r = invoke({"freepos", "check", "--a", "[[1,0],[0,2]]", "--b", "[[3,0],[0,5]]"});
  CHECK(r.code == 1);
  CHECK(r.out.find("\"ok\": false") != std::string::npos);
  CHECK(invoke({"majorize", "check", "--x", "2,1", "--y", "3,0"}).out.find("false") != std::string::npos);
}

TEST_CASE("csv output") {
  const std::string path = "cli_roots_test.csv";
  const Outcome r = invoke({"--out", path, "dist", "hermite", "--m", "3"});
  CHECK(r.code == 0);
  std::ifstream f(path);
  std::stringstream body;
  body << f.rdbuf();
  CHECK(body.str().rfind("re,im\n", 0) == 0);
  std::remove(path.c_str());

  const std::string table = "cli_study_test.csv";
  CHECK(invoke({"study", "r-convergence", "--base", "[-1,1]", "--reps", "1,2", "--out", table}).code == 0);
  std::ifstream t(table);
  std::string header;
  std::getline(t, header);
  CHECK(header.rfind("replication,m,", 0) == 0);
  std::remove(table.c_str());
}

TEST_CASE("modes") {
  const Outcome f = invoke({"--mode", "float", "conv", "mult", "--p", "[1,-6,11,-6]", "--q", "[1,-6,11,-6]"});
  CHECK(f.out.find("\"float\"") != std::string::npos);
  const Outcome r = invoke({"conv", "mult", "--p", "[1,-6,11,-6]", "--q", "[1,-6,11,-6]"});
  CHECK(r.out.find("\"121/3\"") != std::string::npos);
  // global flags may also follow the subcommand
  CHECK(invoke({"conv", "mult", "--p", "[1,-1]", "--q", "[1,-2]", "--mode", "float"}).out.find("float") !=
        std::string::npos);
}
