#include <gtest/gtest.h>

#include "chardep/acceptance.hpp"

using namespace chardep;

TEST(AcceptanceHarness, WrongExpectedRankIsReportedWithCell) {
  acceptance::Config cfg;
  cfg.quick = true;
  cfg.expected_rank = [](const GuideMatrix& g, std::uint32_t p) {
    const auto right = expected_rank(g, p);
    return g.n_rows() == 5 && g.t() == 2 && p == 3 ? right - 1 : right;
  };
  const auto r = acceptance::Runner(cfg).rank_profiles();
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.detail.find("(n,t,p)=(9,2,3)"), std::string::npos) << r.detail;
}

TEST(AcceptanceHarness, QuickRunPasses) {
  acceptance::Config cfg;
  cfg.quick = true;
  cfg.threads = 2;
  for (const auto& r : acceptance::Runner(cfg).run_all()) EXPECT_TRUE(r.passed) << acceptance::format_result(r);
}
