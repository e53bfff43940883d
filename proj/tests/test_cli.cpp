#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chardep/cli.hpp"

using namespace chardep;
using cli::CommandConfig;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const CommandConfig& cfg) {
  std::ostringstream out, err;
  const int code = cli::run(cfg, out, err);
  return {code, out.str(), err.str()};
}

CommandConfig make(const std::string& sub) {
  CommandConfig c;
  c.subcommand = sub;
  return c;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("chardep_test_" + name)).string();
}

}  // namespace

TEST(CliGen, TextForSingleClass) {
  auto c = make("gen");
  c.n = 7;
  c.t = 2;
  c.cls = "a";
  const auto o = run(c);
  EXPECT_EQ(o.code, cli::kOk);
  EXPECT_NE(o.out.find("class a"), std::string::npos);
  EXPECT_NE(o.out.find(">= 0"), std::string::npos);
}

TEST(CliGen, WholeFamilyAsJson) {
  auto c = make("gen");
  c.n = 11;
  c.format = cli::Format::json;
  const auto o = run(c);
  ASSERT_EQ(o.code, cli::kOk);
  EXPECT_EQ(nlohmann::json::parse(o.out).size(), 6u);
}

TEST(CliGen, GuideFileTheorem) {
  const auto path = temp_path("custom.gm");
  std::ofstream(path) << "4 4 2\n1100\n0110\n1010\n1111\n";
  auto c = make("gen");
  c.guide_path = path;
  c.cls = "theorem";
  c.format = cli::Format::json;
  const auto o = run(c);
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["family"]["class"], "theorem_i");
  EXPECT_EQ(j[1]["family"]["class"], "theorem_ii");
}

TEST(CliGen, ParameterWindowErrors) {
  auto c = make("gen");
  c.n = 7;
  c.t = 3;
  auto o = run(c);
  EXPECT_EQ(o.code, cli::kUsage);
  EXPECT_NE(o.err.find("2 <= t <= floor((n-1)/2)-1"), std::string::npos);
  c.n = 6;
  c.t.reset();
  o = run(c);
  EXPECT_EQ(o.code, cli::kUsage);
  EXPECT_NE(o.err.find("n must be >= 7"), std::string::npos);
}

TEST(CliRank, Examples) {
  auto c = make("rank");
  c.n = 7;
  c.t = 2;
  c.primes = {2, 3, 5, 7};
  EXPECT_EQ(run(c).code, cli::kOk);

  c.n = 9;
  c.t = 3;
  c.primes = {3};
  c.format = cli::Format::json;
  const auto o = run(c);
  ASSERT_EQ(o.code, cli::kOk);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["profile"][0]["expected"], 3);
  EXPECT_EQ(j["profile"][0]["actual"], 3);

  const auto path = temp_path("identity.gm");
  std::ofstream(path) << "3 3 2\n100\n010\n001\n";
  auto id = make("rank");
  id.guide_path = path;
  id.t = 2;
  id.primes = {2};
  EXPECT_EQ(run(id).code, cli::kNegative);

  const auto bad = temp_path("bad.gm");
  std::ofstream(bad) << "3 3 2\n100\n020\n001\n";
  id.guide_path = bad;
  const auto e = run(id);
  EXPECT_EQ(e.code, cli::kUsage);
  EXPECT_NE(e.err.find("line 3"), std::string::npos);
}

TEST(CliVerify, ValiditySide) {
  auto c = make("verify");
  c.n = 7;
  c.t = 2;
  c.cls = "a";
  c.p = 2;
  c.d = 7;
  c.trials = 10000;
  c.format = cli::Format::json;
  const auto o = run(c);
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["violations"].size(), 0u);
}

TEST(CliVerify, GenOutputRoundTripsThroughExprFile) {
  auto g = make("gen");
  g.n = 9;
  g.t = 2;
  g.cls = "b";
  g.format = cli::Format::json;
  const auto path = temp_path("b92.json");
  g.out_path = path;
  ASSERT_EQ(run(g).code, cli::kOk);

  auto from_file = make("verify");
  from_file.expr_path = path;
  from_file.p = 3;
  from_file.trials = 500;
  from_file.format = cli::Format::json;
  auto direct = from_file;
  direct.expr_path.reset();
  direct.n = 9;
  direct.t = 2;
  direct.cls = "b";
  const auto a = nlohmann::json::parse(run(from_file).out);
  const auto b = nlohmann::json::parse(run(direct).out);
  EXPECT_EQ(a["min_slack"], b["min_slack"]);
  EXPECT_EQ(a["violations"], b["violations"]);
}

TEST(CliVerify, ViolationsGiveExitOne) {
  const auto path = temp_path("lopsided.json");
  std::ofstream(path) << R"({"terms":[{"coeff":{"num":1,"den":1},"vars":["A1"]},
                                      {"coeff":{"num":-1,"den":1},"vars":["A2"]}]})";
  auto c = make("verify");
  c.expr_path = path;
  c.p = 3;
  c.trials = 200;
  const auto o = run(c);
  EXPECT_EQ(o.code, cli::kNegative);
  EXPECT_NE(o.out.find("violation at trial"), std::string::npos);
}

TEST(CliVerify, UsageErrors) {
  auto c = make("verify");
  c.n = 7;
  c.t = 2;
  c.cls = "a";
  EXPECT_EQ(run(c).code, cli::kUsage);  // no --p
  c.p = 4;
  EXPECT_EQ(run(c).code, cli::kUsage);
  c.p = 2;
  c.seed = "abc";
  EXPECT_EQ(run(c).code, cli::kUsage);
  c.seed = "42";
  c.zeroed = {"Z"};
  EXPECT_EQ(run(c).code, cli::kUsage);
  c.zeroed.clear();
  c.exhaustive = true;
  c.d = 3;
  EXPECT_EQ(run(c).code, cli::kUsage);  // 16^7 exceeds the cap
}

TEST(CliRefute, Examples) {
  auto c = make("refute");
  c.n = 7;
  c.t = 2;
  c.cls = "a";
  c.p = 3;
  c.format = cli::Format::json;
  auto o = run(c);
  ASSERT_EQ(o.code, cli::kOk);
  const auto w = witness_from_json(nlohmann::json::parse(o.out));
  EXPECT_EQ(w.slack, -1);

  c.p = 2;
  c.budget = 1000;
  c.format = cli::Format::text;
  o = run(c);
  EXPECT_EQ(o.code, cli::kNegative);
  EXPECT_EQ(o.out, "none\n");
}

TEST(CliDispatch, UnknownSubcommand) { EXPECT_EQ(run(make("frobnicate")).code, cli::kUsage); }
