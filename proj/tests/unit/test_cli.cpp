#include "tropdiff/cli.hpp"
#include "tropdiff/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace tropdiff;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TROPDIFF_TEST_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("tropdiff_test_" + name)).string();
}

}  // namespace

TEST(Cli, Usage) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check", "--system", data("exp_p3.json")}).code, 2);
  EXPECT_EQ(run({"selftest", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const Outcome missing = run({"tropicalize", "--system", "/nonexistent.json"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("tropdiff: InvalidArgument: cannot read"), std::string::npos) << missing.err;
}

TEST(Cli, Tropicalize) {
  const Outcome o = run({"tropicalize", "--system", data("exp_p3.json"), "--order", "1"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "trop(f1) = x' + (2, 3/2)*x\ntrop(d^1 f1) = x'' + (2, 3/2)*x' + (1, 3/2)*x\n");
  const Outcome g = run({"tropicalize", "--system", data("exp_p3.json"), "--grigoriev"});
  EXPECT_EQ(g.out, "trop(f1) = x' + (2, 0)*x\n");
  const Outcome j = run({"tropicalize", "--system", data("exp_p3.json"), "--format", "json"});
  EXPECT_NE(j.out.find("\"mode\": \"valued\""), std::string::npos);
}

TEST(Cli, Check) {
  const Outcome good = run({"check", "--system", data("exp_p3.json"), "--candidate", data("exp_p3_solution.json")});
  EXPECT_EQ(good.code, 0) << good.err;
  EXPECT_NE(good.out.find("tropical solution up to order 9 (N = 18)"), std::string::npos) << good.out;

  const Outcome bad = run({"check", "--system", data("exp_p3.json"), "--candidate", data("exp_p3_perturbed.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("not a tropical solution: generator 1 fails at order 0 (equation index 0)"),
            std::string::npos)
      << bad.out;

  const Outcome json = run({"check", "--system", data("exp_p3.json"), "--candidate", data("exp_p3_perturbed.json"),
                            "--format", "json", "--order", "2"});
  EXPECT_EQ(json.code, 1);
  EXPECT_NE(json.out.find("\"solution\": false"), std::string::npos);
  EXPECT_NE(json.out.find("\"order\": 2"), std::string::npos);

  const Outcome grig = run({"check", "--system", data("exp_p3.json"), "--candidate", data("exp_p3_solution.json"),
                            "--grigoriev"});
  EXPECT_EQ(grig.code, 0) << grig.out;
}

TEST(Cli, Initial) {
  const Outcome o = run({"initial", "--system", data("exp_p3.json"), "--candidate", data("exp_p3_solution.json")});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "in(f1) = x' + x\n");
  const Outcome mc = run({"initial", "--system", data("exp_p3.json"), "--candidate", data("exp_p3_perturbed.json"),
                          "--order", "3"});
  EXPECT_EQ(mc.code, 1);
  EXPECT_NE(mc.out.find("monomial initial form found up to order 3"), std::string::npos) << mc.out;
}

TEST(Cli, Radius) {
  const Outcome rule = run({"radius", "--rule", "p,auto", "--p", "3"});
  EXPECT_EQ(rule.code, 0) << rule.err;
  EXPECT_EQ(rule.out, "log_r = 0, r = 1 (base 3)\n");

  const Outcome with_series = run({"radius", "--series", data("exp_p3_solution.json"), "--rule", "p,auto"});
  EXPECT_EQ(with_series.code, 0) << with_series.out;
  const Outcome mismatch = run({"radius", "--series", data("exp_p3_perturbed.json"), "--rule", "p,auto"});
  EXPECT_EQ(mismatch.code, 1);
  EXPECT_NE(mismatch.out.find("rule disagrees with the series at a_3"), std::string::npos);

  const Outcome window = run({"radius", "--series", data("exp_p3_solution.json"), "--window-start", "6"});
  EXPECT_EQ(window.code, 0);
  EXPECT_EQ(window.out.rfind("log_r ~ ", 0), 0u) << window.out;
  EXPECT_NE(window.out.find("window estimate over [6, 18]"), std::string::npos) << window.out;

  EXPECT_EQ(run({"radius", "--rule", "2,3,0,off", "--base", "4"}).out, "log_r = 3/2, r = 4^(3/2) (base 4)\n");
  EXPECT_EQ(run({"radius", "--rule", "1,-1,0,0", "--base", "2"}).out, "log_r = -1, r = 1/2 (base 2)\n");
  EXPECT_EQ(run({"radius", "--rule", "p,auto"}).code, 2);
  EXPECT_EQ(run({"radius", "--rule", "1,1,0,0", "--base", "1"}).code, 2);
  EXPECT_EQ(run({"radius", "--rule", "4,auto"}).code, 2);
  EXPECT_EQ(run({"radius", "--series", data("exp_p3_solution.json"), "--window-start", "19"}).code, 2);
}

TEST(Cli, SolveLinear) {
  const Outcome o = run({"solve-linear", "--g", "3*zeta*t^2", "--N", "18", "--tropical"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, read_file(data("exp_p3_solution.json")));

  const Outcome padic = run({"solve-linear", "--g", "1", "--field", "padic:2", "--N", "3"});
  EXPECT_EQ(padic.code, 0);
  const SeriesFile s = parse_series(padic.out);
  EXPECT_EQ(s.classical[0][3], FieldElem::from_rational(Backend::padic(2), ratio(1, 6)));

  EXPECT_EQ(run({"solve-linear", "--g", "x", "--N", "3"}).code, 2);
  EXPECT_EQ(run({"solve-linear", "--g", "1", "--N", "0"}).code, 2);
  const Outcome syntax = run({"solve-linear", "--g", "3x", "--N", "3"});
  EXPECT_EQ(syntax.code, 2);
  EXPECT_NE(syntax.err.find("at offset 1"), std::string::npos) << syntax.err;
}

TEST(Cli, SelftestAndVerify) {
  const Outcome st = run({"selftest", "--p", "3"});
  EXPECT_EQ(st.code, 0) << st.out;
  EXPECT_NE(st.out.find("ALL PASS"), std::string::npos);
  EXPECT_NE(st.out.find("[PASS] radius (N = 18, m = 9)"), std::string::npos) << st.out;

  const Outcome v1 = run({"verify-ft", "--p", "3", "--count", "5", "--seed", "11", "--format", "json"});
  const Outcome v2 = run({"verify-ft", "--p", "3", "--count", "5", "--seed", "11", "--format", "json"});
  EXPECT_EQ(v1.code, 0);
  EXPECT_EQ(v1.out, v2.out);
  EXPECT_NE(v1.out.find("\"random-easy-inclusion\""), std::string::npos);
  EXPECT_NE(v1.out.find("\"seed\": 11"), std::string::npos);

  const std::string path = temp_path("verify.json");
  EXPECT_EQ(run({"verify-ft", "--p", "3", "--count", "2", "--seed", "11", "--out", path}).code, 0);
  EXPECT_NE(read_file(path).find("\"schema\": \"tropdiff/report-v1\""), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("TROPDIFF_SEED", "123", 1);
  const Outcome env = run({"verify-ft", "--p", "2", "--count", "3", "--format", "json"});
  const Outcome flag = run({"verify-ft", "--p", "2", "--count", "3", "--format", "json", "--seed", "5"});
  ::unsetenv("TROPDIFF_SEED");
  const Outcome plain = run({"verify-ft", "--p", "2", "--count", "3", "--format", "json"});
  EXPECT_NE(env.out.find("\"seed\": 123"), std::string::npos);
  EXPECT_NE(flag.out.find("\"seed\": 5"), std::string::npos);
  EXPECT_NE(plain.out.find("\"seed\": 20240917"), std::string::npos);
}
