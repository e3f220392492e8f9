#include <gtest/gtest.h>

#include <cmath>

#include "orlicz_kit/criteria.hpp"
#include "orlicz_kit/errors.hpp"
#include "orlicz_kit/grid.hpp"

using namespace okit;

namespace {

// Power case in dimension n: Phi = t^p, Psi = t^q, phi = r^lambda,
// rho = t^alpha.  Closed forms:
//   int_0^r t^{alpha-1} dt            = r^alpha / alpha
//   int_r^inf t^{alpha-1+lambda/p} dt = r^{alpha+lambda/p} / (-(alpha+lambda/p))
// so lhs/rhs = r^{alpha + lambda/p - lambda/q} (1/alpha - 1/(alpha+lambda/p)).
struct PowerTuple {
    real p, q, alpha, lambda;
    real exponent() const { return alpha + lambda / p - lambda / q; }
    real constant() const { return 1 / alpha - 1 / (alpha + lambda / p); }
};

std::vector<real> wide_grid() { return log_grid(1e-60L, 1e60L, 200); }

} // namespace

TEST(IrA, AdamsTupleHolds)
{
    PowerTuple t{2, 4, 0.25L, -1};
    ASSERT_NEAR(static_cast<double>(t.exponent()), 0.0, 1e-15);
    auto rep = eval_Ir_A(YoungFunction::power(t.p), YoungFunction::power(t.q), WeightFunction::power(t.lambda),
                         KernelFunction::power(t.alpha), default_r_grid());
    EXPECT_EQ(rep.verdict, Verdict::Holds);
    EXPECT_NEAR(static_cast<double>(rep.ratio_sup), static_cast<double>(t.constant()), 1e-7);
    for (size_t i = 0; i < rep.r_grid.size(); ++i)
        EXPECT_NEAR(static_cast<double>(rep.lhs[i] / rep.rhs[i]), static_cast<double>(t.constant()), 1e-7);
    EXPECT_LT(rep.stability, 1e-6L);
}

TEST(IrA, OvershootFails)
{
    PowerTuple t{2, 4.2L, 0.25L, -1};
    auto rep = eval_Ir_A(YoungFunction::power(t.p), YoungFunction::power(t.q), WeightFunction::power(t.lambda),
                         KernelFunction::power(t.alpha), wide_grid());
    EXPECT_EQ(rep.verdict, Verdict::Fails);
    EXPECT_TRUE(rep.monotone);
    // ratio is C r^e with e < 0, so growth = (1e120)^{|e|}
    EXPECT_NEAR(static_cast<double>(std::log10(rep.growth)), 120 * std::fabs(static_cast<double>(t.exponent())),
                1e-6);
    for (size_t i = 0; i < rep.r_grid.size(); i += 20) {
        real expect = t.constant() * std::pow(rep.r_grid[i], t.exponent());
        EXPECT_NEAR(static_cast<double>(rep.lhs[i] / rep.rhs[i] / expect), 1.0, 1e-7);
    }
}

TEST(IrA, NonIntegrableKernelRejected)
{
    EXPECT_THROW(eval_Ir_A(YoungFunction::power(2), YoungFunction::power(4), WeightFunction::power(-1),
                           KernelFunction::constant(1e-6L), default_r_grid()),
                 PreconditionError);
}

TEST(IrA, DivergentTailFails)
{
    // alpha + lambda/p = 0.75 - 0.5 > 0: the tail integral diverges
    auto rep = eval_Ir_A(YoungFunction::power(2), YoungFunction::power(4), WeightFunction::power(-1),
                         KernelFunction::power(0.75L), default_r_grid());
    EXPECT_EQ(rep.verdict, Verdict::Fails);
    EXPECT_FALSE(rep.diagnostic.empty());
}

TEST(IrAprime, Examples)
{
    PowerTuple t{2, 4, 0.25L, -1};
    auto rep = eval_Ir_Aprime(YoungFunction::power(t.p), YoungFunction::power(t.q), WeightFunction::power(t.lambda),
                              KernelFunction::power(t.alpha), default_r_grid());
    EXPECT_EQ(rep.verdict, Verdict::Holds);
    EXPECT_NEAR(static_cast<double>(rep.ratio_sup), 1 / 0.25, 1e-7);

    // Psi = Phi: ratio r^alpha / alpha grows without bound
    auto bad = eval_Ir_Aprime(YoungFunction::power(2), YoungFunction::power(2), WeightFunction::power(-1),
                              KernelFunction::power(0.25L), default_r_grid());
    EXPECT_EQ(bad.verdict, Verdict::Fails);

    // exp L^1 -> exp L^2 with the log kernel of order 1/2: -1/p + alpha = -1/q
    auto ex = eval_Ir_Aprime(YoungFunction::exp_power(1), YoungFunction::exp_power(2), WeightFunction::power(-1),
                             KernelFunction::log_kernel(0.5L), default_r_grid());
    EXPECT_TRUE(std::isfinite(ex.ratio_sup));
    EXPECT_NE(ex.verdict, Verdict::Fails);
}

TEST(MrA, Examples)
{
    PowerTuple t{2, 4, 0.25L, -1};
    auto rep = eval_Mr_A(YoungFunction::power(t.p), YoungFunction::power(t.q), WeightFunction::power(t.lambda),
                         KernelFunction::power(t.alpha), default_r_grid());
    EXPECT_EQ(rep.verdict, Verdict::Holds);
    EXPECT_NEAR(static_cast<double>(rep.ratio_sup), 1.0, 1e-9);
    ASSERT_TRUE(rep.side_hypothesis.has_value());
    EXPECT_TRUE(*rep.side_hypothesis);

    auto one = eval_Mr_A(YoungFunction::shifted_square(), YoungFunction::shifted_square(), WeightFunction::power(-1),
                         KernelFunction::constant(1), default_r_grid());
    EXPECT_EQ(one.verdict, Verdict::Holds);
    EXPECT_NEAR(static_cast<double>(one.ratio_sup), 1.0, 1e-12);
}

TEST(MrA, LogKernelSeparatesFromIrA)
{
    auto Phi = YoungFunction::power(2);
    auto phi = WeightFunction::power(-1);
    auto rho = KernelFunction::log_kernel(1);
    auto m = eval_Mr_A(Phi, Phi, phi, rho, default_r_grid());
    auto i = eval_Ir_A(Phi, Phi, phi, rho, default_r_grid());
    EXPECT_EQ(m.verdict, Verdict::Holds);
    EXPECT_EQ(i.verdict, Verdict::Fails);
}

TEST(WeightIntegral, Examples)
{
    for (int n : {1, 2, 3})
        for (real lam : {-0.5L, 0.0L, 1.5L}) {
            real l = lam * n;
            auto rep = check_weight_integral(WeightFunction::power(l), n, default_r_grid());
            EXPECT_EQ(rep.verdict, Verdict::Holds);
            EXPECT_NEAR(static_cast<double>(rep.ratio_sup), static_cast<double>(1 / (n + l)), 1e-8);
        }
    EXPECT_EQ(check_weight_integral(WeightFunction::power(-1), 1, default_r_grid()).verdict, Verdict::Fails);
    EXPECT_EQ(check_weight_integral(WeightFunction::power(-2), 2, default_r_grid()).verdict, Verdict::Fails);
    auto c = check_weight_integral(WeightFunction::constant(1), 1, default_r_grid());
    EXPECT_EQ(c.verdict, Verdict::Holds);
    EXPECT_NEAR(static_cast<double>(c.ratio_sup), 1.0, 1e-8);
}

TEST(AdamsExponent, Examples)
{
    EXPECT_NEAR(static_cast<double>(solve_adams_exponent(2, 0.25L, -1, 1)), 4.0, 1e-15);
    EXPECT_THROW(solve_adams_exponent(2, 0.5L, -1, 1), PreconditionError);
    EXPECT_THROW(solve_adams_exponent(0.5L, 0.25L, -1, 1), InputError);
    EXPECT_NEAR(static_cast<double>(solve_adams_exponent(3, 1e-9L, -2, 2)), 3.0, 1e-6);
    // lambda = -n: q = np/(n - alpha p)
    for (int n : {1, 2, 3})
        for (real p : {1.0L, 1.5L, 2.0L})
            for (real a : {0.1L, 0.3L}) {
                if (a * p >= n) continue;
                EXPECT_NEAR(static_cast<double>(solve_adams_exponent(p, a, -n, n)),
                            static_cast<double>(n * p / (n - a * p)), 1e-12);
            }
}

// --- properties -----------------------------------------------------------

TEST(CriteriaProperty, IrAImpliesMrA)
{
    for (real p : {1.5L, 2.0L, 3.0L})
        for (real a : {0.1L, 0.25L})
            for (real lam : {-1.0L, -0.5L}) {
                if (a + lam / p >= 0) continue;
                real q = solve_adams_exponent(p, a, lam, 1);
                auto Phi = YoungFunction::power(p), Psi = YoungFunction::power(q);
                auto phi = WeightFunction::power(lam);
                auto rho = KernelFunction::power(a);
                auto ir = eval_Ir_A(Phi, Psi, phi, rho, default_r_grid());
                ASSERT_EQ(ir.verdict, Verdict::Holds);
                auto mr = eval_Mr_A(Phi, Psi, phi, rho, default_r_grid());
                EXPECT_EQ(mr.verdict, Verdict::Holds);
                // sup rho(t) on (0,r] = r^a <= a int_0^r rho(t)/t dt
                EXPECT_LE(mr.ratio_sup, a * ir.ratio_sup * (1 + 1e-8L));
            }
}

TEST(CriteriaProperty, ScaleCovarianceForPowers)
{
    for (real c : {1e-3L, 0.5L, 7.0L, 1e4L}) {
        auto phi = WeightFunction::custom("c r^-1", [c](real s) { return std::log(c) - s; });
        for (real q : {4.0L, 4.2L}) {
            auto base = eval_Ir_A(YoungFunction::power(2), YoungFunction::power(q), WeightFunction::power(-1),
                                  KernelFunction::power(0.25L), default_r_grid());
            auto scaled = eval_Ir_A(YoungFunction::power(2), YoungFunction::power(q), phi,
                                    KernelFunction::power(0.25L), default_r_grid());
            EXPECT_EQ(base.verdict, scaled.verdict);
        }
    }
}
