#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cli/checks.hpp"
#include "cli/commands.hpp"
#include "pompeiu/json_io.hpp"

namespace pompeiu::cli {
namespace {

using io::Json;

const std::string kHoldsSet = R"j([["0/1","1/1"],["1/1+1/1*sqrt(2)","1/1+2/1*sqrt(2)"]])j";
const std::string kRationalSet = R"j([["0","1"],["2","4"]])j";
const std::string kOddSet = R"j([["0","sqrt(2)"],["3/2","5/2+sqrt(2)"]])j";

CommandResult call(std::vector<std::string> args) { return run(args); }

TEST(Cli, DecideExitCodes) {
  auto r = call({"decide", "--set", kHoldsSet});
  EXPECT_EQ(r.exit_code, kOk);
  EXPECT_EQ(Json::parse(r.output)["reason"], "holds_not_H2");

  r = call({"decide", "--set", kRationalSet});
  EXPECT_EQ(r.exit_code, kPropertyFails);
  EXPECT_EQ(Json::parse(r.output)["reason"], "H1_fails");

  r = call({"decide", "--set", kOddSet});
  EXPECT_EQ(r.exit_code, kPropertyFails);
  Json j = Json::parse(r.output);
  EXPECT_EQ(j["reason"], "H2_odd");
  EXPECT_EQ(j["counterexample"]["variant"], "sine_affine");
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(call({"decide", "--set", "[[\"0\",\"1\"]]"}).exit_code, kInputError);
  EXPECT_EQ(call({"decide", "--set", "[[\"0\",\"1/0\"],[\"2\",\"3\"]]"}).exit_code, kInputError);
  EXPECT_EQ(call({"decide", "--set", kHoldsSet, "--field-d", "3"}).exit_code, kInputError);
  EXPECT_EQ(call({"decide"}).exit_code, kInputError);
  EXPECT_EQ(call({"frobnicate"}).exit_code, kInputError);
  EXPECT_EQ(call({"demo", "--only", "nonsense"}).exit_code, kInputError);
  EXPECT_EQ(call({"verify", "--function", "{\"variant\":\"constant\",\"value\":1}"}).exit_code,
            kInputError);
}

TEST(Cli, ConstructModes) {
  auto r = call({"construct", "--family", "translations", "--set", kRationalSet});
  ASSERT_EQ(r.exit_code, kOk) << r.error;
  Json j = Json::parse(r.output);
  EXPECT_EQ(j["descriptor"]["variant"], "recurrence_extension");
  EXPECT_EQ(j["trace"]["x"].size(), 201u);

  EXPECT_EQ(call({"construct", "--set", kHoldsSet}).exit_code, kNotApplicable);

  r = call({"construct", "--set", R"j([["0","1"],["2","3"],["4","5"]])j", "--constant", "3"});
  ASSERT_EQ(r.exit_code, kOk) << r.error;
  j = Json::parse(r.output);
  EXPECT_EQ(j["descriptor"]["mean"], 1.0);
  EXPECT_EQ(j["descriptor"]["period_exact"], "1/1");

  EXPECT_EQ(call({"construct", "--set", R"j([["0","1"],["2","3"],["4","4+sqrt(2)"]])j"}).exit_code,
            kNotApplicable);
  EXPECT_EQ(call({"construct", "--set", R"j([["0","1"],["2","3"],["5","6"]])j"}).exit_code,
            kNotApplicable);
  EXPECT_EQ(call({"construct", "--family", "translations", "--set", kRationalSet, "--seed-poly",
                  "0,1"})
                .exit_code,
            kInputError);
}

TEST(Cli, ConstructThenVerifyComposes) {
  for (const std::string& set : {kRationalSet, kOddSet}) {
    for (const char* family : {"translations", "full"}) {
      auto c = call({"construct", "--family", family, "--set", set, "--constant", "2"});
      ASSERT_EQ(c.exit_code, kOk) << c.error;
      auto v = call({"verify", "--function", c.output, "--random", "200"});
      EXPECT_EQ(v.exit_code, kOk) << family << " " << v.error;
      Json j = Json::parse(v.output);
      EXPECT_EQ(j["sigma_family"], family);
      EXPECT_NEAR(j["C_estimate"].get<double>(), 2.0, 1e-9);
    }
  }
}

TEST(Cli, VerifyOutcomes) {
  auto r = call({"verify", "--function", R"j({"variant":"constant","value":2})j", "--set", kHoldsSet,
                 "--family", "full"});
  EXPECT_EQ(r.exit_code, kOk);

  auto d = call({"decide", "--set", kOddSet});
  r = call({"verify", "--function", d.output, "--set", kHoldsSet});
  EXPECT_EQ(r.exit_code, kVerificationFailed);
  EXPECT_FALSE(r.error.empty());

  r = call({"verify", "--function", R"j({"variant":"constant","value":2})j", "--set", kHoldsSet,
            "--format", "csv", "--grid", "-1:1:3"});
  EXPECT_EQ(r.exit_code, kOk);
  EXPECT_EQ(r.output.rfind("t,reflected,integral\n", 0), 0u);
}

TEST(Cli, QuadratureBudgetExit) {
  auto r = call({"verify", "--function", R"j({"variant":"constant","value":2})j", "--set",
                 kHoldsSet, "--abs-tol", "1e-300", "--rel-tol", "1e-300", "--random", "3"});
  // A constant integrates exactly, so even absurd tolerances converge.
  EXPECT_EQ(r.exit_code, kOk);
  r = call({"verify", "--function",
            R"j({"variant":"periodic_samples","origin":0,"period":1,"samples":[0,1,0,-1,0]})j",
            "--set", kRationalSet, "--abs-tol", "1e-300", "--rel-tol", "1e-300", "--random", "2"});
  EXPECT_EQ(r.exit_code, kQuadratureBudget);
  EXPECT_FALSE(Json::parse(r.output)["quadrature_converged"].get<bool>());
}

TEST(Cli, OutputFileAndDeterminism) {
  auto path = std::filesystem::temp_directory_path() / "pompeiu_cli_test.json";
  auto r = call({"construct", "--set", kOddSet, "--out", path.string()});
  ASSERT_EQ(r.exit_code, kOk);
  EXPECT_TRUE(r.output.empty());
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(Json::parse(text)["descriptor"]["variant"], "sine_affine");
  auto v = call({"verify", "--function", "@" + path.string(), "--random", "50"});
  EXPECT_EQ(v.exit_code, kOk);
  std::filesystem::remove(path);

  auto a = call({"demo", "--only", "lemma-hole", "--only", "three-interval"});
  auto b = call({"demo", "--only", "lemma-hole", "--only", "three-interval", "--threads", "2"});
  EXPECT_EQ(a.exit_code, kOk);
  EXPECT_EQ(a.output, b.output);
  Json j = Json::parse(a.output);
  EXPECT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"][0]["name"], "lemma-hole");
}

TEST(Cli, DemoSeedChangesSamplesNotOutcome) {
  auto a = call({"demo", "--only", "necessity"});
  auto b = call({"demo", "--only", "necessity", "--seed", "7"});
  EXPECT_EQ(a.exit_code, kOk);
  EXPECT_EQ(b.exit_code, kOk);
  EXPECT_NE(a.output, b.output);
}

TEST(Checks, Registry) {
  EXPECT_EQ(check_names().size(), 8u);
  EXPECT_THROW(run_check("missing", {}), std::invalid_argument);
}

}  // namespace
}  // namespace pompeiu::cli
