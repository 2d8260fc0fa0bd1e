#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

using pemc::cli::run_cli;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pemc");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

TEST(Cli, ForceCsvHasThreeMethods) {
  const auto r = invoke({"force", "--theta-plus", "0", "--theta-minus", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_GE(l.size(), 4u);
  EXPECT_EQ(l[0], "method,value,abs_error_estimate,unit,ratio_to_pec_pec");
  EXPECT_EQ(l[1].rfind("analytic,", 0), 0u);
  EXPECT_EQ(l[2].rfind("quartic,", 0), 0u);
  EXPECT_EQ(l[3].rfind("quadrature,", 0), 0u);
  EXPECT_NE(l[1].find("hbar*c/L^4"), std::string::npos);
}

TEST(Cli, ForceJsonCarriesUnitsAndBoyerRatio) {
  const auto r = invoke({"force", "--m-plus", "inf", "--m-minus", "0", "--units", "si", "--L", "1e-6", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["config"]["units"], "si");
  bool seen = false;
  for (const auto& e : doc["results"]) {
    ASSERT_TRUE(e.contains("unit"));
    if (e.value("method", "") == "analytic") {
      EXPECT_EQ(e["unit"], "N/m^2");
      EXPECT_NEAR(e["ratio_to_pec_pec"].get<double>(), -0.875, 1e-12);
      seen = true;
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Cli, SweepIsDeterministicAndNormalized) {
  const auto a = invoke({"sweep", "--points", "7"});
  const auto b = invoke({"sweep", "--points", "7"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto l = lines(a.out);
  ASSERT_EQ(l.size(), 8u);
  EXPECT_EQ(l[0], "delta_rad,force_normalized");
  const auto value = [](const std::string& row) { return std::stod(row.substr(row.find(',') + 1)); };
  EXPECT_EQ(l[1].substr(0, 2), "0,");
  EXPECT_NEAR(value(l[1]), -1.0, 1e-14);
  EXPECT_NEAR(value(l[7]), 0.875, 1e-14);
  EXPECT_EQ(a.out.find('\r'), std::string::npos);
}

TEST(Cli, CritAndSumRule) {
  const auto c = invoke({"crit"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("delta_crit_closed_form,0.7550352635972"), std::string::npos);
  const auto s = invoke({"sumrule", "--format", "json"});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto doc = nlohmann::json::parse(s.out);
  EXPECT_TRUE(doc["checks"][0]["passed"].get<bool>());
}

TEST(Cli, VerifyPassesAndFlagsInjectedFault) {
  EXPECT_EQ(invoke({"verify"}).code, 0);
  const auto bad = invoke({"verify", "--inject-quartic-fault"});
  EXPECT_EQ(bad.code, pemc::cli::verification_failed);
  EXPECT_NE(bad.out.find("three_way_agreement,FAIL"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, pemc::cli::usage);
  EXPECT_EQ(invoke({"force", "--theta-plus", "0.1", "--m-minus", "2"}).code, pemc::cli::usage);
  EXPECT_EQ(invoke({"force", "--m-plus", "abc"}).code, pemc::cli::usage);
  EXPECT_EQ(invoke({"force", "--L", "-1"}).code, pemc::cli::usage);
  EXPECT_EQ(invoke({"sweep", "--points", "1"}).code, pemc::cli::usage);
  EXPECT_EQ(invoke({"force", "--units", "cgs"}).code, pemc::cli::usage);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, AccuracyFailureExitCode) {
  const auto r = invoke({"force", "--theta-plus", "0.3", "--max-subdivisions", "1"});
  EXPECT_EQ(r.code, pemc::cli::accuracy);
  EXPECT_NE(r.err.find("best estimate"), std::string::npos);
}

TEST(Cli, ParseMValue) {
  EXPECT_TRUE(std::isinf(pemc::cli::parse_m_value("inf")));
  EXPECT_TRUE(std::isinf(pemc::cli::parse_m_value("-infinity")));
  EXPECT_DOUBLE_EQ(pemc::cli::parse_m_value("2.5"), 2.5);
  EXPECT_THROW(pemc::cli::parse_m_value("nan"), pemc::cli::UsageError);
  EXPECT_THROW(pemc::cli::parse_m_value(""), pemc::cli::UsageError);
}

TEST(Cli, IdenticalPemcPlatesMatchPec) {
  const auto r = invoke({"force", "--theta-plus", "1.0", "--theta-minus", "1.0"});
  ASSERT_EQ(r.code, 0);
  const auto row = lines(r.out)[1];
  EXPECT_NEAR(std::stod(row.substr(row.rfind(',') + 1)), 1.0, 1e-14);
}

TEST(Cli, DefaultSweepShape) {
  const auto r = invoke({"sweep"});
  ASSERT_EQ(r.code, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 182u);
  int sign_changes = 0;
  double previous_delta = -1.0, previous_value = 0.0;
  for (std::size_t i = 1; i < l.size(); ++i) {
    const double delta = std::stod(l[i].substr(0, l[i].find(',')));
    const double value = std::stod(l[i].substr(l[i].find(',') + 1));
    EXPECT_GT(delta, previous_delta);
    if (i > 1 && (value > 0.0) != (previous_value > 0.0)) ++sign_changes;
    previous_delta = delta;
    previous_value = value;
  }
  EXPECT_EQ(sign_changes, 1);
  // Row 91 sits at delta = pi/4.
  EXPECT_NEAR(std::stod(l[91].substr(l[91].find(',') + 1)), 7.0 / 128.0, 1e-14);
  EXPECT_EQ(lines(invoke({"sweep", "--points", "2"}).out).size(), 3u);
}

}  // namespace
