#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "orlicz_kit/corpus.hpp"
#include "orlicz_kit/errors.hpp"
#include "orlicz_kit/harness.hpp"

using namespace okit;

TEST(FitToGrid, QuarterOctaves)
{
    EXPECT_EQ(fit_to_grid(0), 0);
    EXPECT_EQ(fit_to_grid(-3), 0);
    EXPECT_EQ(fit_to_grid(kInf), kInf);
    EXPECT_NEAR(static_cast<double>(fit_to_grid(1)), 1.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(fit_to_grid(2)), 2.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(fit_to_grid(1.1L)), std::pow(2.0, 0.25), 1e-15);
    EXPECT_NEAR(static_cast<double>(fit_to_grid(0.3L)), std::pow(2.0, -1.5), 1e-15);  // 2^{-7/4} < 0.3
}

// seeded property: the fitted value is on the grid, at or above c, and the
// next grid point down is below c
TEST(FitToGrid, Property)
{
    SeededRng rng(31);
    for (int i = 0; i < 2000; ++i) {
        real c = std::exp(rng.uniform(-40, 40));
        real g = fit_to_grid(c);
        real k = 4 * std::log2(g);
        EXPECT_NEAR(static_cast<double>(k), std::round(static_cast<double>(k)), 1e-9);
        EXPECT_GE(g * (1 + 1e-15L), c);
        EXPECT_LT(g * std::pow(2.0L, -0.25L), c * (1 + 1e-15L));
    }
}

TEST(Suite, StatementIdsInOrder)
{
    const std::vector<std::string> want = {"THM_3_1", "THM_3_2", "THM_3_3", "THM_3_4", "THM_3_5",
                                           "LEM_4_2", "LEM_4_4", "LEM_4_6", "LEM_4_7", "LEM_4_8",
                                           "LEM_5_1", "LEM_5_2", "LEM_5_3", "LEM_5_4", "LEM_5_5",
                                           "LEM_5_6", "EQ_2_6",  "EQ_2_8",  "EQ_4_1",  "EQ_4_3"};
    std::set<std::string> got(statement_ids().begin(), statement_ids().end());
    EXPECT_EQ(got, std::set<std::string>(want.begin(), want.end()));
    EXPECT_EQ(got.size(), statement_ids().size());
}

TEST(Suite, UnknownIdThrows)
{
    EXPECT_THROW(run_suite(HarnessConfig{}, "THM_9_9"), UnknownIdError);
    EXPECT_THROW(run_suite(HarnessConfig{}, "EQ_4_1:nope"), UnknownIdError);
}

TEST(Suite, FilterSelectsStatement)
{
    auto cases = run_suite(HarnessConfig{}, "LEM_5_2");
    ASSERT_FALSE(cases.empty());
    for (const auto& pc : cases) EXPECT_EQ(pc.statement_id, "LEM_5_2");
}

TEST(Suite, VariantFilterSelectsOneCase)
{
    auto all = run_suite(HarnessConfig{}, "THM_3_1");
    ASSERT_GE(all.size(), 2u);
    const auto& pick = all[1];
    auto one = run_suite(HarnessConfig{}, "THM_3_1:" + pick.variant);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].variant, pick.variant);
    EXPECT_EQ(one[0].exact_constants, pick.exact_constants);
}

TEST(Suite, CaseFieldsConsistent)
{
    for (const char* id : {"EQ_2_6", "EQ_4_1", "LEM_4_4", "LEM_5_2"})
        for (const auto& pc : run_suite(HarnessConfig{}, id)) {
            SCOPED_TRACE(pc.statement_id + ":" + pc.variant);
            EXPECT_FALSE(pc.negative);
            EXPECT_FALSE(pc.skipped);
            ASSERT_FALSE(pc.exact_constants.empty());
            real mx = 0;
            for (real c : pc.exact_constants) mx = std::max(mx, c);
            EXPECT_EQ(pc.fitted_constant, fit_to_grid(mx));
            EXPECT_EQ(pc.pass, std::isfinite(pc.fitted_constant) && pc.violations == 0 &&
                                   pc.refinement_drift < pc.drift_threshold);
        }
}

TEST(Suite, ThreadCountIndependent)
{
    HarnessConfig one, many;
    one.threads = 1;
    many.threads = 4;
    auto a = run_suite(one, "LEM_4_4");
    auto b = run_suite(many, "LEM_4_4");
    EXPECT_EQ(suite_json(one, a), suite_json(one, b));
    EXPECT_EQ(suite_csv(a), suite_csv(b));
}

TEST(Suite, SkippedCasesIgnored)
{
    PropertyCase ok;
    ok.pass = true;
    PropertyCase skip;
    skip.skipped = true;
    EXPECT_TRUE(suite_passed({ok, skip}));
    PropertyCase bad;
    EXPECT_FALSE(suite_passed({ok, skip, bad}));
}

TEST(Serialise, NonFiniteAsStrings)
{
    PropertyCase pc;
    pc.statement_id = "EQ_4_1";
    pc.variant = "x";
    pc.exact_constants = {1.5L, kInf};
    pc.fitted_constant = kInf;
    pc.refinement_drift = std::nanl("");
    std::string j = suite_json(HarnessConfig{}, {pc});
    EXPECT_NE(j.find("\"inf\""), std::string::npos);
    EXPECT_NE(j.find("\"nan\""), std::string::npos);
    std::string c = suite_csv({pc});
    EXPECT_EQ(c.substr(0, c.find('\n')).find("statement_id"), 0u);
    EXPECT_NE(c.find("EQ_4_1"), std::string::npos);
}

TEST(Threads, RequestWins)
{
    EXPECT_EQ(thread_count(3), 3u);
    EXPECT_GE(thread_count(0), 1u);
}
