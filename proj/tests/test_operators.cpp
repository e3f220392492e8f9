#include <gtest/gtest.h>

#include <cmath>

#include "orlicz_kit/catalog.hpp"
#include "orlicz_kit/corpus.hpp"
#include "orlicz_kit/errors.hpp"
#include "orlicz_kit/operators.hpp"

using namespace okit;

namespace {

SampledField chi(real r, real L, real h)
{
    return SampledField::sample(1, L, h, [=](real x, real) { return std::fabs(x) < r ? 1.0L : 0.0L; });
}

// every cell centre with radii k h, k = 1..kmax
BallFamily dense_family(const SampledField& f, int kmax)
{
    BallFamily F;
    for (size_t k = 0; k < f.size(); ++k) F.centres.push_back(f.point(k));
    for (int k = 1; k <= kmax; ++k) F.radii.push_back(k * f.h());
    return F;
}

} // namespace

TEST(HLMaximal, IndicatorProfile)
{
    // best interval for x > 1 is (-1, x): mean 2/(x+1)
    const real h = 0.02L;
    auto f = chi(1, 6, h);
    auto Mf = hl_maximal(f, dense_family(f, 300)).field;
    for (size_t i = 0; i < f.size(); ++i) {
        real x = f.centre(static_cast<int>(i));
        if (x < 1.2L || x > 5) continue;
        EXPECT_NEAR(static_cast<double>(Mf[i] / (2 / (x + 1))), 1.0, 0.03) << static_cast<double>(x);
    }
}

TEST(HLMaximal, ConstantAndDominance)
{
    auto c = SampledField::sample(1, 2, 0.05L, [](real, real) { return 1.75L; });
    auto Mc = hl_maximal(c, default_family(c)).field;
    for (size_t i = 0; i < c.size(); ++i) EXPECT_EQ(Mc[i], 1.75L);
    for (const auto& spec : make_corpus(1, 8, 3)) {
        auto f = spec.sample(1, 2, 0.05L);
        auto Mf = hl_maximal(f, default_family(f)).field;
        for (size_t i = 0; i < f.size(); ++i) EXPECT_GE(Mf[i], std::fabs(f[i]) * (1 - 1e-15L));
    }
    BallFamily sparse;
    sparse.centres = {{0, 0}};
    sparse.radii = {0.1L};
    EXPECT_THROW(hl_maximal(c, sparse), InputError);
}

TEST(HLMaximal, TwoDimensionalConstant)
{
    auto c = SampledField::sample(2, 1, 0.125L, [](real, real) { return 2.0L; });
    auto Mc = hl_maximal(c, default_family(c)).field;
    for (size_t i = 0; i < c.size(); ++i) EXPECT_EQ(Mc[i], 2.0L);
}

TEST(FracIntegral, Examples)
{
    // rho(t) = t in 1D: rho(t)/t = 1, so I chi_[-1,1](x) = 2 for |x| < 1
    const real h = 0.01L;
    auto f = chi(1, 3, h);
    auto I = frac_integral(f, KernelFunction::power(1)).field;
    for (size_t i = 0; i < f.size(); ++i) {
        real x = f.centre(static_cast<int>(i));
        if (std::fabs(x) < 0.5L) EXPECT_NEAR(static_cast<double>(I[i]), 2.0, 1e-9);
        if (std::fabs(x) > 1.5L) EXPECT_NEAR(static_cast<double>(I[i]), 2.0, 1e-9);
    }
    auto z = frac_integral(SampledField::zeros(1, 3, h), KernelFunction::power(0.5L)).field;
    for (real v : z.values()) EXPECT_EQ(v, 0);
    EXPECT_THROW(frac_integral(f, KernelFunction::constant(1)), PreconditionError);
}

TEST(FracIntegral, PowerKernelAgainstClosedForm)
{
    // rho = t^a: I chi_[-1,1](x) = ((1+x)^a + (1-x)^a)/a for |x| < 1
    const real a = 0.5L, h = 1.0L / 256;
    auto f = chi(1, 2, h);
    auto I = frac_integral(f, KernelFunction::power(a)).field;
    for (size_t i = 0; i < f.size(); ++i) {
        real x = f.centre(static_cast<int>(i));
        if (std::fabs(x) > 0.9L) continue;
        real exact = (std::pow(1 + x, a) + std::pow(1 - x, a)) / a;
        EXPECT_NEAR(static_cast<double>(I[i] / exact), 1.0, 0.01) << static_cast<double>(x);
    }
}

TEST(FracIntegral, LowerBoundOnHalfBall)
{
    // int_0^{R/2} rho(t)/t dt <= C I_rho chi_B(0,R)(x) on B(0,R/2); for
    // power kernels C = 1/2 in the continuum
    const real h = 1.0L / 128;
    for (const auto& rho : kernel_catalog())
        for (real R : {0.5L, 1.0L, 2.0L}) {
            auto f = chi(R, 4, h);
            auto I = frac_integral(f, rho).field;
            auto g = [&](real s) { return rho.eval_log(s); };
            real lhs = integrate_to_zero(g, R / 2).value;
            real C = 0;
            for (size_t i = 0; i < f.size(); ++i)
                if (std::fabs(f.centre(static_cast<int>(i))) < R / 2) C = std::max(C, lhs / I[i]);
            EXPECT_LE(C, 0.75L) << rho.label() << " R=" << static_cast<double>(R);
        }
}

TEST(FracMaximal, Examples)
{
    auto f = make_corpus(1, 3, 9)[1].sample(1, 2, 0.05L);
    auto F = default_family(f);
    auto M = hl_maximal(f, F).field;
    auto M1 = frac_maximal(f, KernelFunction::constant(1), F).field;
    EXPECT_EQ(M.values(), M1.values());
    auto z = frac_maximal(SampledField::zeros(1, 2, 0.05L), KernelFunction::power(0.5L), F).field;
    for (real v : z.values()) EXPECT_EQ(v, 0);
}

TEST(FracMaximal, LowerBoundOnBall)
{
    // M_rho chi_B(0,r)(x) >= sup_{t <= r} rho(t) on B(0,r)
    const real h = 1.0L / 64;
    for (const auto& rho : kernel_catalog())
        for (real r : {0.25L, 1.0L, 3.0L}) {
            auto f = chi(r, 4, h);
            BallFamily F = dense_family(f, static_cast<int>(std::lround(4 / h)));
            auto M = frac_maximal(f, rho, F).field;
            real sup = 0;
            for (int k = 1; k <= 4000; ++k) sup = std::max(sup, rho(r * k / 4000));
            for (size_t i = 0; i < f.size(); ++i)
                if (f[i] != 0) EXPECT_GE(M[i], sup * 0.98L) << rho.label() << " r=" << static_cast<double>(r);
        }
}

TEST(FarSupport, Examples)
{
    const real h = 1.0L / 32;
    Ball B{{0, 0}, 0.5L};
    auto annulus = SampledField::sample(1, 4, h, [](real x, real) {
        real d = std::fabs(x);
        return d >= 1.5L && d < 2 ? 1.0L : 0.0L;
    });
    auto F = default_family(annulus);
    auto Phi = YoungFunction::power(2);
    auto phi = WeightFunction::power(-1);
    auto res = far_support_bound(annulus, Phi, phi, B, false, F);
    EXPECT_GT(res.max_on_B, 0);
    EXPECT_TRUE(std::isfinite(res.ratio));
    EXPECT_LT(res.ratio, 10);
    auto z = far_support_bound(SampledField::zeros(1, 4, h), Phi, phi, B, true, F);
    EXPECT_EQ(z.max_on_B, 0);
    auto near = SampledField::sample(1, 4, h, [](real x, real) { return std::fabs(x) < 0.9L ? 1.0L : 0.0L; });
    EXPECT_THROW(far_support_bound(near, Phi, phi, B, false, F), InputError);
}

TEST(FarSupport, BoundScalesWithRadius)
{
    // f just outside 2B for shrinking gaps: the needed constant stays bounded
    const real h = 1.0L / 32;
    auto Phi = YoungFunction::power(2);
    auto phi = WeightFunction::power(-1);
    Ball B{{0, 0}, 0.5L};
    real worst = 0;
    for (real eps : {0.5L, 0.25L, 0.125L, 0.0625L}) {
        auto f = SampledField::sample(1, 4, h, [=](real x, real) {
            real d = std::fabs(x);
            return d >= 1 + eps && d < 1.5L + eps ? 1.0L : 0.0L;
        });
        worst = std::max(worst, far_support_bound(f, Phi, phi, B, false, default_family(f)).ratio);
    }
    EXPECT_LT(worst, 10);
}

// --- properties -----------------------------------------------------------

TEST(OperatorProperty, SublinearAndMonotone)
{
    auto corpus = make_corpus(1, 16, 77);
    const real h = 0.05L;
    auto rho = KernelFunction::power(0.5L);
    for (size_t i = 0; i + 1 < corpus.size(); ++i) {
        auto f = corpus[i].sample(1, 2, h), g = corpus[i + 1].sample(1, 2, h);
        auto F = default_family(f);
        std::vector<real> sum(f.size()), big(f.size());
        for (size_t k = 0; k < f.size(); ++k) {
            sum[k] = f[k] + g[k];
            big[k] = std::max(f[k], g[k]);
        }
        auto fg = f.with_values(sum);
        auto Mf = hl_maximal(f, F).field, Mg = hl_maximal(g, F).field, Mfg = hl_maximal(fg, F).field;
        auto fb = f.with_values(big);
        auto Mb = hl_maximal(fb, F).field;
        auto Rf = frac_maximal(f, rho, F).field, Rb = frac_maximal(fb, rho, F).field;
        auto If = frac_integral(f, rho).field, Ib = frac_integral(fb, rho).field;
        for (size_t k = 0; k < f.size(); ++k) {
            EXPECT_LE(Mfg[k], (Mf[k] + Mg[k]) * (1 + 1e-12L));
            EXPECT_LE(Mf[k], Mb[k] * (1 + 1e-12L));
            EXPECT_LE(Rf[k], Rb[k] * (1 + 1e-12L));
            EXPECT_LE(If[k], Ib[k] * (1 + 1e-12L));
        }
    }
}

TEST(OperatorProperty, WeakOneOneBound)
{
    // m(Mf > t) <= (C/t) int_{|f| > t/2} |f| with the uncentred 1D constant
    // C = 4 (2 for the weak (1,1) bound, 2 for the truncation)
    const real h = 0.02L;
    real C = 0;
    for (const auto& spec : make_corpus(1, 24, 13)) {
        auto f = spec.sample(1, 4, h);
        auto Mf = hl_maximal(f, default_family(f)).field;
        for (real t : {0.05L, 0.1L, 0.25L, 0.5L, 1.0L, 2.0L}) {
            real lhs = distribution(Mf, std::nullopt, t);
            real rhs = 0;
            for (real v : f.values())
                if (std::fabs(v) > t / 2) rhs += std::fabs(v) * h;
            if (lhs > 0) C = std::max(C, lhs * t / rhs);
        }
    }
    EXPECT_GT(C, 0);
    EXPECT_LE(C, 4);
}
