#include "cli.hpp"

#include <gtest/gtest.h>
#include <fstream>

#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace meanlab::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json invoke_json(std::vector<std::string> args) {
  args.insert(args.end(), {"--format", "json"});
  const Outcome o = invoke(args);
  EXPECT_EQ(o.code, kSuccess) << o.err;
  return Json::parse(o.out);
}

TEST(CliEvalTest, WeightedArithmetic) {
  const Json j = invoke_json({"--gen", "x", "--gen", "2*x", "eval", "0.5", "3"});
  EXPECT_EQ(j["command"], "eval");
  EXPECT_NEAR(j["summary"]["value"].get<double>(), 13.0 / 6.0, 1e-12);
  EXPECT_EQ(j["summary"]["bounds"], "pass");
  EXPECT_EQ(j["summary"]["strict"], "pass");
  ASSERT_EQ(j["results"].size(), 1u);
  EXPECT_EQ(j["results"][0]["check_name"], "mean_bounds");
  EXPECT_TRUE(j.contains("runtime_ms"));
  EXPECT_EQ(j["config"]["interval"], "0,10");
}

TEST(CliEvalTest, SingleGeneratorIsVariadic) {
  const Json j = invoke_json({"--gen", "log(x)", "eval", "1", "2", "4"});
  EXPECT_NEAR(j["summary"]["value"].get<double>(), 2.0, 1e-12);
}

TEST(CliExitCodeTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kUsageError);
  EXPECT_EQ(invoke({"--gen", "x", "frobnicate"}).code, kUsageError);
  EXPECT_EQ(invoke({"--gen", "x", "--gen", "2*x", "eval", "1", "2", "3"}).code, kUsageError);
  EXPECT_EQ(invoke({"--gen", "log(", "eval", "1", "2"}).code, kUsageError);
  EXPECT_EQ(invoke({"--gen", "0 - x", "eval", "1", "2"}).code, kUsageError);
  EXPECT_EQ(invoke({"--gen", "x", "--interval", "5,1", "eval", "2"}).code, kUsageError);
  EXPECT_EQ(invoke({"--gen", "x", "eval", "11", "2"}).code, kUsageError);
  EXPECT_EQ(invoke({"--gen", "x", "--format", "xml", "eval", "2"}).code, kUsageError);
  EXPECT_EQ(invoke({"--gen", "x", "verify", "nonsense"}).code, kUsageError);
  const Outcome o = invoke({"--gen", "x", "--gen", "2*x", "compose", "0", "3"});
  EXPECT_EQ(o.code, kUsageError);
  EXPECT_NE(o.err.find("error"), std::string::npos);
}

TEST(CliExitCodeTest, ComposeConvergenceFailure) {
  const Outcome ok = invoke({"--gen", "x", "--gen", "2*x", "--interval", "-1,10", "compose", "0", "3"});
  EXPECT_EQ(ok.code, kSuccess) << ok.err;

  const Outcome o = invoke(
      {"--gen", "x", "--gen", "x^3", "--interval", "0,5", "--max-iter", "1", "--format", "json", "compose", "0.2", "4.9"});
  EXPECT_EQ(o.code, kConvergenceFailure);
  const Json j = Json::parse(o.out);
  EXPECT_EQ(j["summary"]["converged"], false);
  // The trace is reported on failure.
  std::size_t iterates = 0;
  for (const auto& r : j["results"]) iterates += r["check_name"] == "iterate";
  EXPECT_EQ(iterates, 2u);
}

TEST(CliExitCodeTest, UnwritableOutput) {
  const Outcome o = invoke({"--gen", "x", "--output", "/nonexistent-dir/report.json", "eval", "1", "2"});
  EXPECT_EQ(o.code, kOperationalFailure);
}

TEST(CliComposeTest, LimitAndClosedForm) {
  const Json j =
      invoke_json({"--gen", "x", "--gen", "2*x", "--interval", "-1,10", "--trace", "compose", "0", "3"});
  EXPECT_NEAR(j["summary"]["limit"].get<double>(), 1.5, 1e-10);
  EXPECT_NEAR(j["summary"]["closed_form"].get<double>(), 1.5, 1e-12);
  EXPECT_EQ(j["summary"]["converged"], true);
  EXPECT_GT(j["results"].size(), 2u);
}

TEST(CliVerifyTest, CyclicLimitSamples) {
  const Json j = invoke_json({"--gen", "x", "--gen", "x^3", "--interval", "0.1,5", "--samples", "30", "verify", "m1"});
  EXPECT_EQ(j["summary"]["passed"], true);
  EXPECT_EQ(j["results"].size(), 30u);
  EXPECT_LE(j["summary"]["max_residual"].get<double>(), 1e-7);
}

TEST(CliVerifyTest, Deterministic) {
  const std::vector<std::string> args{"--gen", "log(x)", "--gen", "x", "--interval", "0.1,10", "--seed", "42",
                                      "--samples", "20", "--format", "json", "verify", "m1"};
  Json a = Json::parse(invoke(args).out);
  Json b = Json::parse(invoke(args).out);
  a.erase("runtime_ms");
  b.erase("runtime_ms");
  EXPECT_EQ(a.dump(), b.dump());

  auto other = args;
  other[7] = "43";
  Json c = Json::parse(invoke(other).out);
  c.erase("runtime_ms");
  EXPECT_NE(a.dump(), c.dump());
}

TEST(CliVerifyTest, CsvLayout) {
  const Outcome o = invoke({"--gen", "x", "--gen", "2*x", "--samples", "5", "--format", "csv", "verify", "gbs"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  EXPECT_NE(o.out.find("check_name,sample_index,lhs,rhs,residual,verdict\n"), std::string::npos);
  EXPECT_EQ(o.out.rfind("# command=verify gbs", 0), 0u);
  std::istringstream lines(o.out);
  std::string line;
  int data = 0;
  bool header = false;
  while (std::getline(lines, line)) {
    if (header) ++data;
    if (line.rfind("check_name,", 0) == 0) header = true;
  }
  EXPECT_EQ(data, 5);
}

TEST(CliVerifyTest, BisymmetryAndAssociativity) {
  EXPECT_EQ(invoke_json({"--gen", "exp(x)", "--interval", "0,5", "--samples", "10", "verify", "bs"})["summary"]["passed"],
            true);
  EXPECT_EQ(invoke_json({"--gen", "sqrt(x)", "--samples", "12", "verify", "as"})["summary"]["passed"], true);
  EXPECT_EQ(invoke({"--gen", "x", "--gen", "2*x", "verify", "bs"}).code, kUsageError);
}

TEST(CliVerifyTest, EqualityFindsAffineMap) {
  const Json j = invoke_json({"--gen", "x", "--gen2", "2*x + 1", "verify", "equality"});
  EXPECT_EQ(j["summary"]["equal"], true);
  EXPECT_NEAR(j["summary"]["a"].get<double>(), 2.0, 1e-9);
  EXPECT_NEAR(j["summary"]["b"][0].get<double>(), 1.0, 1e-9);

  const Json k = invoke_json({"--gen", "x", "--gen2", "exp(x)", "verify", "equality"});
  EXPECT_EQ(k["summary"]["equal"], false);
  EXPECT_GT(k["summary"]["max_mean_discrepancy"].get<double>(), 1e-3);
}

TEST(CliVerifyTest, CharacterizeDemos) {
  const Json lehmer = invoke_json({"--demo", "lehmer2", "verify", "characterize"});
  EXPECT_EQ(lehmer["summary"]["verdict"], "refuted");
  EXPECT_EQ(lehmer["summary"]["failing_condition"], "cm-function");
  EXPECT_GT(lehmer["summary"]["witness_residual"].get<double>(), 1e-4);

  const Json blend = invoke_json({"--demo", "blend", "verify", "characterize"});
  EXPECT_EQ(blend["summary"]["failing_condition"], "generalized-bisymmetry");

  const Json gqam =
      invoke_json({"--gen", "x", "--gen", "x^3", "--interval", "0.1,5", "--samples", "50", "verify", "characterize"});
  EXPECT_EQ(gqam["summary"]["verdict"], "consistent");
}

TEST(CliOutputTest, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "meanlab_cli_test_report.json";
  const Outcome o = invoke({"--gen", "x", "--format", "json", "--output", path.string(), "eval", "1", "3"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  const Json j = Json::parse(in);
  EXPECT_NEAR(j["summary"]["value"].get<double>(), 2.0, 1e-14);
  std::filesystem::remove(path);
}

TEST(CliLoggingTest, QuietByDefaultInfoOnRequest) {
  ::unsetenv("MEANLAB_LOG");
  EXPECT_TRUE(invoke({"--gen", "x", "eval", "1", "3"}).err.empty());
  ::setenv("MEANLAB_LOG", "info", 1);
  const Outcome o = invoke({"--gen", "x", "eval", "1", "3"});
  ::unsetenv("MEANLAB_LOG");
  EXPECT_NE(o.err.find("[info]"), std::string::npos);
}

TEST(CliHelpTest, PrintsUsage) {
  const Outcome o = invoke({"--help"});
  EXPECT_EQ(o.code, kSuccess);
  EXPECT_NE(o.out.find("compose"), std::string::npos);
}

}  // namespace
}  // namespace meanlab::cli
