#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "json_io.hpp"

namespace heun::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> generic_minus_one() {
  return {"--gamma", "0.5", "--delta", "0.7", "--epsilon", "-1",
          "--alpha", "-1.1", "--beta", "0.3", "--a", "3"};
}

std::vector<std::string> with(std::vector<std::string> head,
                              const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         (name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
}

TEST(FindQ, DerivedEpsilonExample) {
  const auto r = run_cli({"find-q", "--gamma0", "gamma", "--N", "0", "--gamma", "1",
                          "--delta", "1", "--alpha", "1", "--beta", "1", "--a", "2",
                          "--derive-epsilon"});
  ASSERT_EQ(r.code, kExitOk) << r.err << r.out;
  const auto doc = r.doc();
  const auto& roots = doc["outputs"]["roots"];
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_DOUBLE_EQ(roots[0]["q"].get<double>(), 2.0);
  EXPECT_EQ(roots[0]["verification"]["verdict"], "Pass");
  EXPECT_EQ(doc["inputs"]["params"]["epsilon"].get<double>(), 0.0);
  EXPECT_TRUE(doc["inputs"].contains("adjustments"));
}

TEST(FindQ, MissingFlagIsUsageError) {
  const auto r = run_cli({"find-q", "--gamma0", "gamma", "--gamma", "1", "--delta", "1",
                          "--alpha", "1", "--beta", "1", "--a", "2"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--N"), std::string::npos) << r.err;
  EXPECT_TRUE(r.doc()["outputs"].is_null());
  EXPECT_EQ(r.doc()["error"]["code"], "UsageError");
}

TEST(FindQ, MissingAIsNamed) {
  const auto r = run_cli({"find-q", "--N", "1", "--gamma", "0.5", "--delta", "0.7",
                          "--epsilon", "-1", "--alpha", "-1.1", "--beta", "0.3"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--a"), std::string::npos) << r.err;
}

TEST(FindQ, ValidationErrorsExitTwo) {
  const auto r = run_cli(with({"find-q", "--N", "1"},
                              {"--gamma", "0.5", "--delta", "0.9", "--epsilon", "-1",
                               "--alpha", "-1.1", "--beta", "0.3", "--a", "3"}));
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(r.doc()["error"]["code"], "FuchsianViolation");
  const auto wrong = run_cli(with({"find-q", "--N", "2"}, generic_minus_one()));
  EXPECT_EQ(wrong.code, kExitUsage);
  EXPECT_EQ(wrong.doc()["error"]["code"], "InvalidTerminationClass");
}

TEST(FindQ, TwoRootsBothPass) {
  const auto r = run_cli(with({"find-q", "--gamma0", "gamma", "--N", "1"}, generic_minus_one()));
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const auto doc = r.doc();
  EXPECT_EQ(doc["outputs"]["polynomial"]["degree"], 2);
  const auto& roots = doc["outputs"]["roots"];
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0]["q"].get<double>(), -3.637792684634964493579, 1e-12);
  EXPECT_NEAR(roots[1]["q"].get<double>(), -0.242207315365035506420, 1e-12);
  for (const auto& root : roots) {
    EXPECT_EQ(root["verification"]["verdict"], "Pass");
    EXPECT_LE(root["verification"]["residual_sup"].get<double>(), 1e-8);
  }
}

TEST(Solve, ZeroEpsilonSingleTerm) {
  const auto r = run_cli({"solve", "--N", "0", "--root-index", "0", "--gamma", "0.6", "--delta", "1.1",
                          "--epsilon", "0", "--alpha", "0.9", "--beta", "-0.2", "--a",
                          "2.5"});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const json doc = r.doc();
  const auto& terms = doc["outputs"]["solution"]["terms"];
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(terms[0]["coefficient"].get<double>(), 1.0);
  EXPECT_EQ(terms[0]["lower_parameter"].get<double>(), 0.6);
}

TEST(Solve, AlphaClassPowerLaw) {
  // β = δ − 1: u = (1 − z)^{1−δ}.
  const auto r = run_cli({"solve", "--gamma0", "alpha", "--N", "0", "--root-index", "0", "--gamma", "0.4",
                          "--delta", "2.7", "--epsilon", "0.35", "--alpha", "0.75",
                          "--beta", "1.7", "--a", "2.5"});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const auto outputs = r.doc()["outputs"];
  const auto& pref = outputs["reduced"]["prefactors"];
  ASSERT_EQ(pref.size(), 1u);
  EXPECT_EQ(pref[0]["base"], "OneMinusZ");
  EXPECT_NEAR(pref[0]["exponent"].get<double>(), 1 - 2.7, 1e-15);
  EXPECT_EQ(outputs["reduced"]["terms"].size(), 1u);
  EXPECT_EQ(outputs["verification"]["verdict"], "Pass");
}

TEST(Solve, SecondSolutionAddsWronskian) {
  const auto r = run_cli(with({"solve", "--N", "1", "--root-index", "1", "--second-solution"},
                              generic_minus_one()));
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const auto outputs = r.doc()["outputs"];
  EXPECT_EQ(outputs["second_solution"]["solution"]["frame"], "OneMinusZ");
  EXPECT_GT(std::abs(outputs["wronskian_at_half"].get<double>()), 1e-8);
}

TEST(Solve, RoundTripThroughVerify) {
  const auto path = temp_file("heun_solve.json");
  const auto solved = run_cli(with({"--output", path.string(), "solve", "--N", "1",
                                    "--root-index", "0"},
                                   generic_minus_one()));
  ASSERT_EQ(solved.code, kExitOk);
  std::ifstream in(path);
  const json solve_doc = json::parse(in);
  const auto verified = run_cli({"verify", "--from-json", path.string()});
  ASSERT_EQ(verified.code, kExitOk) << verified.out;
  const json& a = solve_doc["outputs"]["verification"];
  const json b = verified.doc()["outputs"]["verification"];
  EXPECT_EQ(a["verdict"], b["verdict"]);
  EXPECT_EQ(a["residual_sup"], b["residual_sup"]);
  EXPECT_EQ(a["oracle_max_deviation"], b["oracle_max_deviation"]);
  std::filesystem::remove(path);
}

TEST(Solve, FormJsonRoundTrip) {
  const auto r = run_cli(with({"solve", "--N", "1", "--root-index", "0"}, generic_minus_one()));
  const json form = r.doc()["outputs"]["solution"];
  EXPECT_EQ(solution_to_json(solution_from_json(form)), form);
}

TEST(Expand, TerminatingCaseEmitsZerosAfterN) {
  const auto r = run_cli({"expand", "--K", "6", "--gamma", "0.6", "--delta", "1.1",
                          "--epsilon", "0", "--alpha", "0.9", "--beta", "-0.2", "--q",
                          "-0.45", "--a", "2.5"});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const auto outputs = r.doc()["outputs"];
  EXPECT_EQ(outputs["terminated_at"], 0);
  const auto c = outputs["coefficients"].get<std::vector<double>>();
  ASSERT_EQ(c.size(), 7u);
  EXPECT_EQ(c[0], 1.0);
  for (std::size_t n = 1; n < c.size(); ++n) EXPECT_EQ(c[n], 0.0);
}

TEST(Expand, MinimalRun) {
  const auto r = run_cli(with({"expand", "--K", "1", "--q", "0.3"}, generic_minus_one()));
  ASSERT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.doc()["outputs"]["coefficients"].size(), 2u);
}

TEST(Expand, RatioDiagnostic) {
  for (const std::string a : {"3", "-0.5"}) {
    const auto r = run_cli({"expand", "--K", "200", "--gamma", "0.35", "--delta", "0.55",
                            "--epsilon", "0.45", "--alpha", "0.7", "--beta", "-0.35",
                            "--q", "0.2", "--a", a});
    ASSERT_EQ(r.code, kExitOk) << r.out;
    const auto outputs = r.doc()["outputs"];
    const double dominant = outputs["dominant_candidate"].get<double>();
    EXPECT_NEAR(outputs["tail_ratio"].get<double>(), dominant, 0.1 * dominant) << a;
  }
}

TEST(Expand, CsvFormat) {
  const auto r = run_cli(with({"expand", "--K", "3", "--q", "0.3", "--format", "csv"},
                              generic_minus_one()));
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("n,coefficient,ratio\n", 0), 0u) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Expand, BreakdownExitsThree) {
  const auto r = run_cli({"expand", "--K", "5", "--gamma", "0.5", "--delta", "2.3",
                          "--epsilon", "-0.3", "--alpha", "2", "--beta", "-0.5", "--q",
                          "0.7", "--a", "3"});
  EXPECT_EQ(r.code, kExitBreakdown);
  EXPECT_EQ(r.doc()["error"]["code"], "RecurrenceBreakdown");
  EXPECT_EQ(r.doc()["error"]["index"], 1);
}

TEST(Catalog, RowCountAndDeterminism) {
  const std::vector<std::string> args = {"catalog", "--class", "gamma", "--N-min", "0",
                                         "--N-max", "2", "--seeds", "5", "--seed", "7",
                                         "--jobs", "4"};
  const auto first = run_cli(args);
  ASSERT_EQ(first.code, kExitOk) << first.err;
  std::istringstream lines(first.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "class,N,seed,gamma,delta,epsilon,alpha,beta,a,root_index,q,residual_sup,verdict");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const auto comma = line.rfind(',');
    const std::string verdict = line.substr(comma + 1);
    if (verdict == "Pass") {
      const auto prev = line.rfind(',', comma - 1);
      EXPECT_LE(std::stod(line.substr(prev + 1, comma - prev - 1)), 1e-8) << line;
    }
  }
  EXPECT_EQ(rows, 30);

  auto serial = args;
  serial.back() = "1";
  EXPECT_EQ(run_cli(serial).out, first.out);
  EXPECT_EQ(run_cli(args).out, first.out);
}

TEST(JsonIo, ParamsRoundTripExactly) {
  const double alpha = 1.0 / 3;
  const auto p = make_params(0.1, 0.2, -0.7, alpha, 0.1 + 0.2 - 0.7 - 1 - alpha,
                             std::acos(-1.0), 2.5);
  EXPECT_EQ(params_from_json(json::parse(params_to_json(p).dump())), p);
}

}  // namespace
}  // namespace heun::cli
