#include <gtest/gtest.h>

#include "orlicz_kit/config.hpp"
#include "orlicz_kit/errors.hpp"

using namespace okit;

TEST(Config, EmptyGivesDefaults)
{
    RunConfig c = parse_config("");
    EXPECT_EQ(c.dim, 1);
    EXPECT_EQ(c.L, 4);
    EXPECT_EQ(c.h, 1.0L / 32);
    EXPECT_EQ(c.phi.family, "power");
    EXPECT_EQ(c.seed, 20240601u);
    EXPECT_FALSE(c.family_r0.has_value());
}

TEST(Config, SectionsAndComments)
{
    RunConfig c = parse_config(R"(
# grid
[grid]
n = 2
L = 2
h = 0.02   # trailing comment
[phi]
family = shifted_square
[weight]
family = power_with_log
lambda = -0.5
beta = 1
[kernel]
family = log_kernel
alpha = 1
K1 = 0.5
[family]
r0 = 0.1
kappa = 1.5
J = 6
[rgrid]
lo = 1e-3
hi = 1e3
count = 50
[run]
seed = 7
corpus = 10
threads = 2
tolerance = 1e-6
out = results
)");
    EXPECT_EQ(c.dim, 2);
    EXPECT_EQ(c.h, 0.02L);
    EXPECT_EQ(c.phi.family, "shifted_square");
    EXPECT_TRUE(c.phi.params.empty());  // section replaces the default spec
    EXPECT_EQ(c.weight.params.at("beta"), 1);
    EXPECT_EQ(*c.family_r0, 0.1L);
    EXPECT_EQ(c.family_J, 6);
    EXPECT_EQ(c.rgrid_count, 50);
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.threads, 2u);
    EXPECT_EQ(c.out_dir, "results");

    EXPECT_EQ(make_young(c.phi).label(), YoungFunction::shifted_square().label());
    EXPECT_NO_THROW(make_weight(c.weight, c.dim));
    auto k = make_kernel(c.kernel);
    EXPECT_EQ(k.K1(), 0.5L);
    EXPECT_EQ(make_r_grid(c).size(), 50u);
    HarnessConfig hc = harness_config(c);
    EXPECT_EQ(hc.seed, 7u);
    EXPECT_EQ(hc.corpus_size, 10);
}

TEST(Config, Rejects)
{
    for (const char* bad : {
             "[run]\nseed = 12x\n",
             "[run]\nseed = -1\n",
             "[run]\ntolerance = 0\n",
             "[grid]\nh = 0.5\n",       // h > L/100
             "[grid]\nn = 3\n",
             "[nowhere]\n",
             "[grid]\nwidth = 3\n",
             "n = 1\n",                 // outside any section
             "[grid\n",
             "[grid]\nL\n",
             "[phi]\np = two\n",
             "[rgrid]\nlo = 10\nhi = 1\n",
         }) {
        SCOPED_TRACE(bad);
        EXPECT_THROW(parse_config(bad), InputError);
    }
}

TEST(Config, UnknownFamiliesAndMissingParameters)
{
    EXPECT_THROW(make_young({"cubic", {}, ""}), InputError);
    EXPECT_THROW(make_young({"power", {}, ""}), InputError);
    EXPECT_THROW(make_weight({"tabulated", {}, ""}, 1), InputError);
    EXPECT_THROW(make_kernel({"gauss", {}, ""}), InputError);
    EXPECT_THROW(load_config("/nonexistent/run.ini"), InputError);
}
