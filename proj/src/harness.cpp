#include "orlicz_kit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "orlicz_kit/catalog.hpp"
#include "orlicz_kit/corpus.hpp"
#include "orlicz_kit/criteria.hpp"
#include "orlicz_kit/errors.hpp"
#include "orlicz_kit/grid.hpp"
#include "orlicz_kit/operators.hpp"
#include "orlicz_kit/quadrature.hpp"

namespace okit {

namespace {

// ---------------------------------------------------------------------------
// shared helpers

real level_h(const HarnessConfig& c, int k) { return c.h / std::exp2(static_cast<real>(k)); }

std::vector<FieldSpec> corpus_of(const HarnessConfig& c) { return make_corpus(1, c.corpus_size, c.seed); }

std::string fmt(real x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x));
    return buf;
}

// Distinct magnitudes in decreasing order, with the number of samples at or
// above each.  sup_t Phi(t) m(g, t) is attained just below one of them.
struct Levels {
    std::vector<real> v, count;
};

Levels levels_of(const std::vector<real>& vals)
{
    std::vector<real> a;
    for (real x : vals)
        if (x != 0) a.push_back(std::fabs(x));
    std::sort(a.begin(), a.end(), std::greater<real>());
    Levels L;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i + 1 < a.size() && a[i + 1] == a[i]) continue;
        L.v.push_back(a[i]);
        L.count.push_back(static_cast<real>(i + 1));
    }
    return L;
}

// sup_t Phi(t) m(C g, t)
real weak_modular(const YoungFunction& Phi, const Levels& L, real cell, real C = 1)
{
    real best = 0;
    for (size_t k = 0; k < L.v.size(); ++k) best = std::max(best, ext_mul(Phi(C * L.v[k]), L.count[k] * cell));
    return best;
}

// int Phi(C |g|)
real strong_modular(const YoungFunction& Phi, const std::vector<real>& vals, real cell, real C = 1)
{
    real s = 0;
    for (real x : vals)
        if (x != 0) s += Phi(C * std::fabs(x));
    return ext_mul(s, cell);
}

// Smallest C >= 0 with rhs(C) >= lhs for a nondecreasing rhs.
real min_multiplier(real lhs, const std::function<real(real)>& rhs)
{
    if (lhs == 0) return 0;
    real hi = 1;
    while (rhs(hi) < lhs) {
        hi *= 2;
        if (hi > 1e30L) return kInf;
    }
    real lo = hi / 2;
    while (rhs(lo) >= lhs) {
        hi = lo;
        lo /= 2;
        if (lo < 1e-30L) return 0;
    }
    while (hi / lo > 1 + 1e-12L) {
        real mid = std::sqrt(lo * hi);
        (rhs(mid) >= lhs ? hi : lo) = mid;
    }
    return hi;
}

SampledField chi_ball(int dim, real L, real h, Point a, real r)
{
    return SampledField::sample(dim, L, h, [=](real x, real y) {
        real d = dim == 1 ? std::fabs(x - a[0]) : std::hypot(x - a[0], y - a[1]);
        return d < r ? 1.0L : 0.0L;
    });
}

real radial(int dim, real x, real y) { return dim == 1 ? std::fabs(x) : std::hypot(x, y); }

// Positive fits: the fitted constant covers every level; drift is the
// largest relative change between consecutive levels.  Negative cases pass
// when every refinement more than doubles the constant.
void finish(PropertyCase& pc)
{
    if (pc.skipped) {
        pc.pass = false;
        pc.fitted_constant = kInf;
        return;
    }
    const auto& e = pc.exact_constants;
    real worst = 0;
    for (real c : e) worst = std::max(worst, c);
    if (e.empty()) worst = kInf;
    pc.fitted_constant = fit_to_grid(worst);
    if (pc.negative) {
        real growth = kInf;
        for (size_t k = 0; k + 1 < e.size(); ++k) growth = std::min(growth, ext_div(e[k + 1], e[k]) - 1);
        pc.refinement_drift = e.size() < 2 ? 0 : growth;
        pc.pass = e.size() >= 2 && pc.refinement_drift >= 1;
        return;
    }
    real drift = 0;
    for (size_t k = 0; k + 1 < e.size(); ++k) {
        if (e[k] == e[k + 1]) continue;
        drift = std::max(drift, ext_div(std::fabs(e[k + 1] - e[k]), e[k]));
    }
    pc.refinement_drift = drift;
    pc.pass = std::isfinite(pc.fitted_constant) && pc.violations == 0 && drift < pc.drift_threshold;
}

PropertyCase make_case(std::string id, std::string variant, std::string inputs)
{
    PropertyCase pc;
    pc.statement_id = std::move(id);
    pc.variant = std::move(variant);
    pc.inputs = std::move(inputs);
    return pc;
}

PropertyCase skipped_case(std::string id, std::string variant, std::string inputs, std::string why)
{
    PropertyCase pc;
    pc.statement_id = std::move(id);
    pc.variant = std::move(variant);
    pc.inputs = std::move(inputs);
    pc.skipped = true;
    pc.diagnostics = "skipped: " + why;
    return pc;
}

std::string join_constants(const std::vector<real>& e)
{
    std::string s;
    for (size_t k = 0; k < e.size(); ++k) s += (k ? ";" : "") + fmt(e[k]);
    return s;
}

struct Tuple {
    YoungFunction Phi, Psi;
    WeightFunction phi;
    KernelFunction rho;
    std::string label;
};

// p = 2, alpha = 1/4, lambda = -1, q = 4 in 1D
Tuple adams_tuple()
{
    return {YoungFunction::power(2), YoungFunction::power(4), WeightFunction::power(-1), KernelFunction::power(0.25L),
            "Phi=t^2 Psi=t^4 phi=r^-1 rho=t^0.25"};
}

// Phi = Psi = t^2 with the log kernel: (Mr A) holds, (Ir A) fails
Tuple log_tuple()
{
    return {YoungFunction::power(2), YoungFunction::power(2), WeightFunction::power(-1), KernelFunction::log_kernel(1),
            "Phi=Psi=t^2 phi=r^-1 rho=log_kernel(1)"};
}

real weak_sup_over_window(const SampledField& g, const YoungFunction& Phi)
{
    return weak_modular(Phi, levels_of(g.values()), g.cell_volume());
}

// ---------------------------------------------------------------------------
// identities (one level)

PropertyCase eq_2_6(const HarnessConfig&)
{
    PropertyCase pc = make_case("EQ_2_6", "catalog", "7 catalog Young functions, 400-point u-grid and 0");
    auto grid = default_t_grid();
    grid.insert(grid.begin(), 0);
    size_t underflow = 0;
    real worst = 0;
    for (const auto& Phi : young_catalog()) {
        YClass cls = classify_Y(Phi);
        for (real u : grid) {
            real lhs = Phi(gen_inverse(Phi, u));
            if (lhs > u * (1 + 1e-9L) + 1e-300L) ++pc.violations;
            if (u > 0) worst = std::max(worst, lhs / u);
            real fu = Phi(u);
            if (fu == 0 && u > thresholds(Phi).a) {
                ++underflow;
                continue;
            }
            if (u > gen_inverse(Phi, fu) * (1 + 1e-9L)) ++pc.violations;
            if (cls != YClass::Y3 && !rel_close(lhs, u, 1e-9L)) ++pc.violations;
        }
    }
    pc.exact_constants = {worst};
    pc.diagnostics = "Phi(u) underflowed to 0 above a(Phi) at " + std::to_string(underflow) + " points (not checked)";
    return pc;
}

PropertyCase eq_2_8(const HarnessConfig& c)
{
    PropertyCase pc = make_case("EQ_2_8", "step_fields", "100 seeded random step fields on [-2,2], catalog Young functions");
    SeededRng rng(c.seed ^ 0x28);
    real worst = 1;
    for (int k = 0; k < 100; ++k) {
        auto f = random_blocks(rng, 1, 3 + rng.index(10)).sample(1, 2, c.h);
        for (const auto& Phi : young_catalog())
            for (const auto& B : {std::optional<Ball>{}, std::optional<Ball>{Ball{{0, 0}, 1}}}) {
                auto w = weak_type_identity(f, Phi, B);
                if (!w.ok) ++pc.violations;
                real lo = std::min({w.s1, w.s2, w.s3}), hi = std::max({w.s1, w.s2, w.s3});
                if (lo > 0 && std::isfinite(hi)) worst = std::max(worst, hi / lo);
            }
    }
    pc.exact_constants = {worst};
    pc.diagnostics = "constant is the largest ratio between the three sups";
    return pc;
}

PropertyCase eq_4_1(const HarnessConfig&)
{
    PropertyCase pc = make_case("EQ_4_1", "catalog", "catalog Young functions and t, default t-grid");
    auto all = young_catalog();
    all.push_back(YoungFunction::power(1));
    real worst = 0;
    for (const auto& Phi : all) {
        auto conj = complementary(Phi);
        for (real t : default_t_grid()) {
            real prod = gen_inverse(Phi, t) * gen_inverse(conj, t);
            if (prod < t * (1 - 1e-6L) || prod > 2 * t * (1 + 1e-6L)) ++pc.violations;
            worst = std::max(worst, prod / t);
        }
    }
    pc.exact_constants = {worst};
    pc.diagnostics = "constant is max Phi^-1(t) conj^-1(t) / t";
    return pc;
}

PropertyCase eq_4_3(const HarnessConfig& c)
{
    PropertyCase pc = make_case("EQ_4_3", "random_pairs",
                    "200 seeded pairs of step fields, Phi=t^3/3 and its conjugate, catalog weights, random balls");
    SeededRng rng(c.seed ^ 0x43);
    auto Phi = YoungFunction::power_over_p(3);
    auto conj = complementary(Phi);
    auto weights = weight_catalog(1);
    real worst = 0;
    for (int k = 0; k < 200; ++k) {
        auto f = random_blocks(rng, 1, 3 + rng.index(10)).sample(1, 2, c.h);
        auto g = random_blocks(rng, 1, 3 + rng.index(10)).sample(1, 2, c.h);
        Ball B{{rng.uniform(-1, 1), 0}, rng.uniform(4 * c.h, 1.5L)};
        auto res = holder_pairing(f, g, Phi, conj, weights[k % weights.size()], B);
        if (!res.ok) ++pc.violations;
        if (res.rhs > 0) worst = std::max(worst, res.lhs / res.rhs);
    }
    pc.exact_constants = {worst};
    pc.diagnostics = "constant is max pairing / (norm f * conj norm g); the bound is 2";
    return pc;
}

// ---------------------------------------------------------------------------
// Young-function and embedding lemmas

PropertyCase lem_4_2(const HarnessConfig& c)
{
    PropertyCase pc = make_case("LEM_4_2", "chi_ball",
                    "chi_B for all catalog (Phi, phi) pairs and 20 balls r >= 10h; global sandwich for "
                    "Phi in {t^2, shifted_square}, phi in {r^-1, r^-1/2}, r in {0.25,0.5,1,2}");
    const real L = c.L;
    for (const auto& Phi : young_catalog())
        for (const auto& phi : weight_catalog(1))
            for (int k = 0; k < 20; ++k) {
                // centre on a cell boundary and r a multiple of h, so the
                // lattice volume of B equals its continuum volume
                real r = (10 + 4 * k) * c.h;
                Point a{(2 * k - 20) * c.h, 0};
                auto f = chi_ball(1, L, c.h, a, r);
                Ball B{a, r};
                real expect = 1 / gen_inverse(Phi, phi(r));
                if (!rel_close(luxemburg_norm(f, Phi, phi, B), expect, 1e-6L)) ++pc.violations;
                if (!rel_close(weak_norm(f, Phi, phi, B), expect, 1e-6L)) ++pc.violations;
            }
    // 1/Phi^-1(phi(r)) <= ||chi_B||_global <= C/Phi^-1(phi(r))
    for (int lvl = 0; lvl < 2; ++lvl) {
        real h = level_h(c, lvl), worst = 0;
        for (const auto& Phi : {YoungFunction::power(2), YoungFunction::shifted_square()})
            for (const auto& phi : {WeightFunction::power(-1), WeightFunction::power(-0.5L)})
                for (real r : {0.25L, 0.5L, 1.0L, 2.0L}) {
                    auto f = chi_ball(1, L, h, {0, 0}, r);
                    BallFamily F = default_family(f);
                    F.centres.push_back({0, 0});  // so that B itself is a family ball
                    real ratio = global_norm(f, Phi, phi, F, false).value * gen_inverse(Phi, phi(r));
                    if (ratio < 1 - 1e-9L) ++pc.violations;
                    worst = std::max(worst, ratio);
                }
        pc.exact_constants.push_back(worst);
    }
    pc.diagnostics = "constant is max ||chi_B||_global Phi^-1(phi(r)) per level";
    return pc;
}

// mean of |f| on B against Phi^-1(phi(r)) times the ball norm
real mean_value_constant(const SampledField& f, const YoungFunction& Phi, const WeightFunction& phi,
                         const BallFamily& F, bool weak)
{
    real worst = 0;
    for (real r : F.radii) {
        real scale = gen_inverse(Phi, phi(r));
        for (const Point& a : F.centres) {
            Ball B{a, r};
            real mean = ball_abs_mean(f, B);
            if (mean == 0) continue;
            real n = weak ? weak_norm(f, Phi, phi, B) : luxemburg_norm(f, Phi, phi, B);
            worst = std::max(worst, ext_div(mean, ext_mul(scale, n)));
        }
    }
    return worst;
}

PropertyCase lem_4_4(const HarnessConfig& c, const YoungFunction& Phi)
{
    PropertyCase pc = make_case("LEM_4_4", Phi.label(), "corpus, phi=r^-1, every family ball; " + Phi.label());
    auto phi = WeightFunction::power(-1);
    real worst = 0;
    for (const auto& spec : corpus_of(c)) {
        auto f = spec.sample(1, c.L, c.h);
        real k = mean_value_constant(f, Phi, phi, default_family(f), false);
        if (k > 2 * (1 + 1e-9L)) ++pc.violations;
        worst = std::max(worst, k);
    }
    pc.exact_constants = {worst};
    pc.diagnostics = "explicit constant 2; measured max ratio " + fmt(worst);
    return pc;
}

PropertyCase lem_4_6(const HarnessConfig& c, const YoungFunction& Phi)
{
    PropertyCase pc = make_case("LEM_4_6", Phi.label(), "corpus, phi=r^-1, weak ball norms, h and h/2; " + Phi.label());
    auto phi = WeightFunction::power(-1);
    auto corpus = corpus_of(c);
    for (int lvl = 0; lvl < 2; ++lvl) {
        real worst = 0;
        for (const auto& spec : corpus) {
            auto f = spec.sample(1, c.L, level_h(c, lvl));
            worst = std::max(worst, mean_value_constant(f, Phi, phi, default_family(f), true));
        }
        pc.exact_constants.push_back(worst);
    }
    // the proof's split at t0 = Phi^-1(phi(r)) gives 1 + 1/(p-1) for powers
    if (auto p = Phi.homogeneity(); p && *p > 1)
        for (real e : pc.exact_constants)
            if (e > (1 + 1 / (*p - 1)) * 1.01L) ++pc.violations;
    return pc;
}

// max over B(0,r) of Mf against Phi^-1(phi(r)) ||f|| for f supported away from 2B
PropertyCase far_support(const HarnessConfig& c, bool weak)
{
    PropertyCase pc = make_case(weak ? "LEM_4_8" : "LEM_4_7", weak ? "weak" : "strong",
                    "corpus shifted by 2.5, Phi=t^2, phi=r^-1, B(0,r) for r in {0.25,0.5,0.7}, h and h/2");
    auto Phi = YoungFunction::power(2);
    auto phi = WeightFunction::power(-1);
    auto corpus = corpus_of(c);
    for (int lvl = 0; lvl < 2; ++lvl) {
        real h = level_h(c, lvl), worst = 0;
        for (const auto& spec : corpus) {
            auto f = SampledField::sample(1, c.L, h, [&](real x, real y) { return spec.fn(x - 2.5L, y); });
            auto F = default_family(f);
            auto Mf = hl_maximal(f, F).field;
            real norm = global_norm(f, Phi, phi, F, weak).value;
            for (real r : {0.25L, 0.5L, 0.7L}) {
                for (auto [a, b] : cells_in(f, Ball{{0, 0}, 2 * r}).runs)
                    for (size_t k = a; k < b; ++k)
                        if (f[k] != 0) throw InputError("far-support field meets 2B");
                real mx = 0;
                for (auto [a, b] : cells_in(f, Ball{{0, 0}, r}).runs)
                    for (size_t k = a; k < b; ++k) mx = std::max(mx, Mf[k]);
                if (mx > 0) worst = std::max(worst, ext_div(mx, ext_mul(gen_inverse(Phi, phi(r)), norm)));
            }
        }
        pc.exact_constants.push_back(worst);
    }
    return pc;
}

// ---------------------------------------------------------------------------
// lemmas on kernels and extremal functions

PropertyCase lem_5_1(const HarnessConfig&)
{
    PropertyCase pc = make_case("LEM_5_1", "dyadic_sums",
                    "kernel catalog, tau(t)=1/t, r in [1e-6,1e6]; sums truncated at |j| <= 60 and 120");
    auto rgrid = log_grid(1e-6L, 1e6L, 25);
    for (int J : {60, 120}) {
        real worst = 0;
        for (const auto& rho : kernel_catalog()) {
            auto near = [&](real s) { return rho.eval_log(s); };
            auto tail = [&](real s) { return std::exp(rho.log_eval(s) - s); };
            for (real r : rgrid) {
                real lo = 0, hi = 0;
                for (int j = -J; j <= -1; ++j) lo += tilde_rho(rho, std::ldexp(r, j));
                for (int j = 0; j <= J; ++j) {
                    real t = std::ldexp(r, j);
                    hi += tilde_rho(rho, t) / t;
                }
                QuadResult a = integrate_to_zero(near, rho.K2() * r);
                QuadResult b = integrate_to_inf(tail, rho.K1() * r);
                if (!a.finite || !b.finite) {
                    ++pc.violations;
                    continue;
                }
                worst = std::max({worst, lo / a.value, hi / b.value});
            }
        }
        pc.exact_constants.push_back(worst);
    }
    pc.diagnostics = "levels are truncation depths, not grid spacings";
    return pc;
}

PropertyCase lem_5_2(const HarnessConfig& c)
{
    PropertyCase pc = make_case("LEM_5_2", "chi_ball", "kernel catalog, R in {0.25,0.5,1,2}, x in B(0,R/2), h and h/2");
    for (int lvl = 0; lvl < 2; ++lvl) {
        real h = level_h(c, lvl), worst = 0;
        for (const auto& rho : kernel_catalog()) {
            auto g = [&](real s) { return rho.eval_log(s); };
            for (real R : {0.25L, 0.5L, 1.0L, 2.0L}) {
                auto f = chi_ball(1, c.L, h, {0, 0}, R);
                auto I = frac_integral(f, rho).field;
                real lhs = integrate_to_zero(g, R / 2).value;
                for (size_t i = 0; i < f.size(); ++i)
                    if (std::fabs(f.centre(static_cast<int>(i))) < R / 2) worst = std::max(worst, lhs / I[i]);
            }
        }
        pc.exact_constants.push_back(worst);
    }
    return pc;
}

PropertyCase lem_5_3(const HarnessConfig& c, const YoungFunction& Phi, const WeightFunction& phi)
{
    std::string inputs = "g = Phi^-1(phi(|x|)) on [-4,4], " + Phi.label() + ", " + phi.label() + ", h and h/2";
    auto wi = check_weight_integral(phi, 1, default_r_grid());
    if (wi.verdict != Verdict::Holds)
        return skipped_case("LEM_5_3", Phi.label() + "," + phi.label(), inputs,
                            "int_0^r phi(t) dt <= C phi(r) r is not satisfied");
    PropertyCase pc = make_case("LEM_5_3", Phi.label() + "," + phi.label(), inputs);
    for (int lvl = 0; lvl < 2; ++lvl) {
        auto g = SampledField::sample(1, c.L, level_h(c, lvl),
                                      [&](real x, real y) { return gen_inverse(Phi, phi(radial(1, x, y))); });
        pc.exact_constants.push_back(global_norm(g, Phi, phi, default_family(g), false).value);
    }
    pc.diagnostics = "constant is ||g||";
    return pc;
}

PropertyCase lem_5_4(const HarnessConfig& c)
{
    PropertyCase pc = make_case("LEM_5_4", "g_R",
                    "Phi=t^2, phi=r^-1, rho=t^0.25, R in {0.125,0.25,0.5,1}, x in B(0,R), h and h/2; "
                    "tail integral cut at the window edge");
    auto Phi = YoungFunction::power(2);
    auto phi = WeightFunction::power(-1);
    auto rho = KernelFunction::power(0.25L);
    const real L = c.L;
    auto integrand = [&](real s) { return ext_mul(rho.eval_log(s), gen_inverse(Phi, phi.eval_log(s))); };
    for (int lvl = 0; lvl < 2; ++lvl) {
        real h = level_h(c, lvl), worst = 0;
        for (real R : {0.125L, 0.25L, 0.5L, 1.0L}) {
            auto g = SampledField::sample(1, L, h, [&](real x, real) {
                real d = std::fabs(x);
                return d >= R ? gen_inverse(Phi, phi(d)) : 0.0L;
            });
            auto I = frac_integral(g, rho).field;
            real lhs = integrate_dt_over_t(integrand, 2 * R, L);
            for (size_t i = 0; i < g.size(); ++i)
                if (std::fabs(g.centre(static_cast<int>(i))) < R) worst = std::max(worst, lhs / I[i]);
        }
        pc.exact_constants.push_back(worst);
    }
    return pc;
}

// every cell centre with radii k h for k h <= rmax
BallFamily dense_family(const SampledField& f, real rmax)
{
    BallFamily F;
    for (size_t k = 0; k < f.size(); ++k) F.centres.push_back(f.point(k));
    for (int k = 1; k * f.h() <= rmax + f.h(); ++k) F.radii.push_back(k * f.h());
    return F;
}

real sup_up_to(const KernelFunction& rho, real r)
{
    real best = 0;
    for (int k = 1; k <= 4000; ++k) best = std::max(best, rho(r * k / 4000));
    return best;
}

PropertyCase lem_5_5(const HarnessConfig& c)
{
    PropertyCase pc = make_case("LEM_5_5", "chi_ball",
                    "rho in {t^0.25, t^0.5, log_kernel(1), bessel_type(0.5)}, 10 radii in [0.25,3], radii kh "
                    "family, h=1/64 and 1/128");
    auto radii = log_grid(0.25L, 3, 10);
    const real h0 = std::min(c.h, real(1) / 64);
    for (int lvl = 0; lvl < 2; ++lvl) {
        real h = h0 / std::exp2(static_cast<real>(lvl)), worst = 0;
        for (const auto& rho : kernel_catalog())
            for (real r : radii) {
                auto f = chi_ball(1, c.L, h, {0, 0}, r);
                auto M = frac_maximal(f, rho, dense_family(f, r)).field;
                real sup = sup_up_to(rho, r);
                for (size_t i = 0; i < f.size(); ++i) {
                    if (f[i] == 0) continue;
                    real k = sup / M[i];
                    if (k > 1.02L) ++pc.violations;
                    worst = std::max(worst, k);
                }
            }
        pc.exact_constants.push_back(worst);
    }
    pc.diagnostics = "constant is max sup rho / M_rho chi; 2% allowance";
    return pc;
}

PropertyCase lem_5_6(const HarnessConfig& c)
{
    PropertyCase pc = make_case("LEM_5_6", "weak_1_1", "corpus, t in {0.05 2^{k/2}}, h and h/2");
    auto corpus = corpus_of(c);
    for (int lvl = 0; lvl < 2; ++lvl) {
        real h = level_h(c, lvl), worst = 0;
        for (const auto& spec : corpus) {
            auto f = spec.sample(1, c.L, h);
            auto Mf = hl_maximal(f, default_family(f)).field;
            for (int k = 0; k <= 12; ++k) {
                real t = 0.05L * std::exp2(k / 2.0L);
                real lhs = distribution(Mf, std::nullopt, t);
                real rhs = 0;
                for (real v : f.values())
                    if (std::fabs(v) > t / 2) rhs += std::fabs(v) * f.cell_volume();
                if (lhs > 0) worst = std::max(worst, ext_div(lhs * t, rhs));
            }
        }
        pc.exact_constants.push_back(worst);
    }
    return pc;
}

// ---------------------------------------------------------------------------
// theorems

// sup_t Phi(t) m(Mf, t) <= int Phi(C |f|)
PropertyCase thm_3_1_weak(const HarnessConfig& c, bool indicator)
{
    auto Phi = indicator ? YoungFunction::power(1) : YoungFunction::power(2);
    PropertyCase pc = make_case("THM_3_1", indicator ? "weak,t,indicator" : "weak,t^2,corpus",
                    indicator ? "Phi=t, f=chi_[-1,1], h and h/2" : "Phi=t^2, corpus, h and h/2");
    std::vector<FieldSpec> fields = indicator ? std::vector<FieldSpec>{okit::indicator(0, 1)} : corpus_of(c);
    for (int lvl = 0; lvl < 2; ++lvl) {
        real worst = 0;
        for (const auto& spec : fields) {
            auto f = spec.sample(1, c.L, level_h(c, lvl));
            auto Mf = hl_maximal(f, default_family(f)).field;
            real lhs = weak_sup_over_window(Mf, Phi);
            real C = min_multiplier(lhs, [&](real m) { return strong_modular(Phi, f.values(), f.cell_volume(), m); });
            if (!std::isfinite(C)) ++pc.violations;
            worst = std::max(worst, C);
        }
        pc.exact_constants.push_back(worst);
    }
    if (indicator)
        for (real e : pc.exact_constants)
            if (e > 4) ++pc.violations;
    return pc;
}

// int Phi(Mf) <= int Phi(C |f|), only claimed under nabla2
PropertyCase thm_3_1_strong(const HarnessConfig& c)
{
    auto Phi = YoungFunction::power(2);
    std::string inputs = "Phi=t^2, corpus, h and h/2";
    if (!check_nabla2(Phi, default_t_grid(), default_k_grid()).holds)
        return skipped_case("THM_3_1", "strong,t^2,corpus", inputs, "Phi not in nabla2");
    PropertyCase pc = make_case("THM_3_1", "strong,t^2,corpus", inputs);
    auto corpus = corpus_of(c);
    for (int lvl = 0; lvl < 2; ++lvl) {
        real worst = 0;
        for (const auto& spec : corpus) {
            auto f = spec.sample(1, c.L, level_h(c, lvl));
            auto Mf = hl_maximal(f, default_family(f)).field;
            real lhs = strong_modular(Phi, Mf.values(), Mf.cell_volume());
            worst = std::max(worst, min_multiplier(lhs, [&](real m) {
                                 return strong_modular(Phi, f.values(), f.cell_volume(), m);
                             }));
        }
        pc.exact_constants.push_back(worst);
    }
    return pc;
}

// Phi = t is not in nabla2: int Mf grows with the window for f = chi
PropertyCase thm_3_1_strong_negative(const HarnessConfig& c)
{
    PropertyCase pc = make_case("THM_3_1", "strong,t,negative", "Phi=t, f=chi_[-1,1], windows L, 2L, 4L, 8L");
    pc.negative = true;
    auto Phi = YoungFunction::power(1);
    for (real L : {c.L, 2 * c.L, 4 * c.L, 8 * c.L}) {
        auto f = indicator(0, 1).sample(1, L, c.h);
        auto Mf = hl_maximal(f, default_family(f)).field;
        real lhs = strong_modular(Phi, Mf.values(), Mf.cell_volume());
        pc.exact_constants.push_back(
            min_multiplier(lhs, [&](real m) { return strong_modular(Phi, f.values(), f.cell_volume(), m); }));
    }
    pc.diagnostics = "constants per window: " + join_constants(pc.exact_constants);
    return pc;
}

// sup Phi(t) m(Mf,t) <= sup Phi(t) m(C f, t)
real ww_constant(const SampledField& f, const YoungFunction& Phi)
{
    auto Mf = hl_maximal(f, default_family(f)).field;
    real lhs = weak_sup_over_window(Mf, Phi);
    Levels lv = levels_of(f.values());
    return min_multiplier(lhs, [&](real m) { return weak_modular(Phi, lv, f.cell_volume(), m); });
}

PropertyCase thm_3_2(const HarnessConfig& c, const YoungFunction& Phi, real amplitude)
{
    PropertyCase pc = make_case("THM_3_2", Phi.label(),
                    Phi.label() + ", corpus scaled by " + fmt(amplitude) + ", h, h/2, h/4, h/8");
    pc.drift_threshold = 0.05L;
    if (!check_nabla2(Phi, default_t_grid(), default_k_grid()).holds)
        return skipped_case("THM_3_2", Phi.label(), pc.inputs, "Phi not in nabla2");
    auto corpus = corpus_of(c);
    for (int lvl = 0; lvl < 4; ++lvl) {
        real worst = 0;
        for (const auto& spec : corpus) {
            auto f = SampledField::sample(1, c.L, level_h(c, lvl),
                                          [&](real x, real y) { return amplitude * spec.fn(x, y); });
            real C = ww_constant(f, Phi);
            if (!std::isfinite(C)) ++pc.violations;
            worst = std::max(worst, C);
        }
        pc.exact_constants.push_back(worst);
    }
    return pc;
}

PropertyCase thm_3_2_negative(const HarnessConfig& c)
{
    PropertyCase pc = make_case("THM_3_2", "t,negative", "Phi=t, f=min(1/|x|, 1/h), h, h/2, h/4, h/8");
    pc.negative = true;
    auto Phi = YoungFunction::power(1);
    for (int lvl = 0; lvl < 4; ++lvl) {
        real h = level_h(c, lvl);
        auto f = SampledField::sample(1, c.L, h, [&](real x, real) { return std::min(1 / std::fabs(x), 1 / h); });
        pc.exact_constants.push_back(ww_constant(f, Phi));
    }
    pc.diagnostics = "constants per level: " + join_constants(pc.exact_constants);
    return pc;
}

// ||Mf|| / ||f|| between strong and weak global norms
PropertyCase thm_3_3(const HarnessConfig& c, const YoungFunction& Phi, bool weak_in, bool weak_out)
{
    std::string variant = std::string(weak_in ? "weak" : "strong") + "->" + (weak_out ? "weak" : "strong") + "," +
                          Phi.label();
    std::string inputs = Phi.label() + ", phi=r^-1, corpus, h and h/2";
    bool needs_nabla2 = weak_in || !weak_out;
    if (needs_nabla2 && !check_nabla2(Phi, default_t_grid(), default_k_grid()).holds)
        return skipped_case("THM_3_3", variant, inputs, "variant only claimed for Phi in nabla2");
    PropertyCase pc = make_case("THM_3_3", variant, inputs);
    auto phi = WeightFunction::power(-1);
    auto corpus = corpus_of(c);
    for (int lvl = 0; lvl < 2; ++lvl) {
        real worst = 0;
        for (const auto& spec : corpus) {
            auto f = spec.sample(1, c.L, level_h(c, lvl));
            auto F = default_family(f);
            auto Mf = hl_maximal(f, F).field;
            real k = ext_div(global_norm(Mf, Phi, phi, F, weak_out).value, global_norm(f, Phi, phi, F, weak_in).value);
            if (!std::isfinite(k)) ++pc.violations;
            worst = std::max(worst, k);
        }
        pc.exact_constants.push_back(worst);
    }
    return pc;
}

// C1 = max_x |T f(x)| / (||f|| Psi^-1(Phi(Mf(x) / ||f||))), C0 = 1
real pointwise_constant(const SampledField& Tf, const SampledField& Mf, real norm, const Tuple& t)
{
    real worst = 0;
    for (size_t i = 0; i < Tf.size(); ++i) {
        real a = std::fabs(Tf[i]);
        if (a == 0) continue;
        real b = ext_mul(norm, gen_inverse(t.Psi, t.Phi(Mf[i] / norm)));
        worst = std::max(worst, ext_div(a, b));
    }
    return worst;
}

// |T f| <= C (Mf)^{p/q} ||f||^{1-p/q}
real morrey_constant(const SampledField& Tf, const SampledField& Mf, real norm, real p, real q)
{
    real worst = 0;
    for (size_t i = 0; i < Tf.size(); ++i) {
        real a = std::fabs(Tf[i]);
        if (a == 0) continue;
        worst = std::max(worst, ext_div(a, std::pow(Mf[i], p / q) * std::pow(norm, 1 - p / q)));
    }
    return worst;
}

enum class Pointwise { Ir, Mr };

PropertyCase pointwise_case(const HarnessConfig& c, Pointwise op, const Tuple& t, bool morrey)
{
    std::string id = op == Pointwise::Ir ? "THM_3_4" : "THM_3_5";
    std::string variant = std::string("i,") + (morrey ? "morrey," : "") + t.rho.label();
    std::string inputs = t.label + ", C0=1, corpus, h and h/2";
    ConditionReport gate = op == Pointwise::Ir ? eval_Ir_A(t.Phi, t.Psi, t.phi, t.rho, default_r_grid())
                                               : eval_Mr_A(t.Phi, t.Psi, t.phi, t.rho, default_r_grid());
    if (gate.verdict != Verdict::Holds)
        return skipped_case(id, variant, inputs, gate.condition_id + " verdict " + to_string(gate.verdict));
    PropertyCase pc = make_case(id, variant, inputs);
    auto corpus = corpus_of(c);
    for (int lvl = 0; lvl < 2; ++lvl) {
        real worst = 0;
        for (const auto& spec : corpus) {
            auto f = spec.sample(1, c.L, level_h(c, lvl));
            auto F = default_family(f);
            auto Mf = hl_maximal(f, F).field;
            real norm = global_norm(f, t.Phi, t.phi, F, false).value;
            if (norm == 0) continue;
            auto Tf = op == Pointwise::Ir ? frac_integral(f, t.rho).field : frac_maximal(f, t.rho, F).field;
            real k = morrey ? morrey_constant(Tf, Mf, norm, *t.Phi.homogeneity(), *t.Psi.homogeneity())
                            : pointwise_constant(Tf, Mf, norm, t);
            if (!std::isfinite(k)) ++pc.violations;
            worst = std::max(worst, k);
        }
        pc.exact_constants.push_back(worst);
    }
    if (op == Pointwise::Mr) {
        auto ir = eval_Ir_A(t.Phi, t.Psi, t.phi, t.rho, default_r_grid());
        pc.diagnostics = "Ir_A verdict for the same tuple: " + to_string(ir.verdict) + "; " + gate.side_detail;
    }
    return pc;
}

// rho = 1, Phi = Psi: M_rho = M and C1 = C0 = 1
PropertyCase thm_3_5_unit_kernel(const HarnessConfig& c)
{
    Tuple t{YoungFunction::power(2), YoungFunction::power(2), WeightFunction::power(-1), KernelFunction::constant(1),
            "Phi=Psi=t^2 phi=r^-1 rho=1"};
    PropertyCase pc = make_case("THM_3_5", "i,rho=1", t.label + ", C0=1, corpus, h");
    real worst = 0;
    for (const auto& spec : corpus_of(c)) {
        auto f = spec.sample(1, c.L, c.h);
        auto F = default_family(f);
        auto Mf = hl_maximal(f, F).field;
        real norm = global_norm(f, t.Phi, t.phi, F, false).value;
        if (norm == 0) continue;
        real k = pointwise_constant(frac_maximal(f, t.rho, F).field, Mf, norm, t);
        if (std::fabs(k - 1) > 1e-12L) ++pc.violations;
        worst = std::max(worst, k);
    }
    pc.exact_constants = {worst};
    return pc;
}

// f = chi_(-1,1): I f(0) = 2/alpha and Mf(0) = 1 for rho = t^alpha
PropertyCase thm_3_4_indicator(const HarnessConfig& c)
{
    Tuple t = adams_tuple();
    PropertyCase pc = make_case("THM_3_4", "i,indicator", t.label + ", f=chi_(-1,1), x=0, h and h/2");
    for (int lvl = 0; lvl < 2; ++lvl) {
        auto f = indicator(0, 1).sample(1, c.L, level_h(c, lvl));
        auto F = default_family(f);
        auto If = frac_integral(f, t.rho).field;
        auto Mf = hl_maximal(f, F).field;
        size_t mid = f.size() / 2;  // centre h/2
        const real x = f.h() / 2, a = 0.25L;
        real expect_I = (std::pow(1 - x, a) + std::pow(1 + x, a)) / a;
        if (std::fabs(If[mid] / expect_I - 1) > 0.01L) ++pc.violations;
        if (Mf[mid] != 1) ++pc.violations;
        real norm = global_norm(f, t.Phi, t.phi, F, false).value;
        pc.exact_constants.push_back(ext_div(If[mid], ext_mul(norm, gen_inverse(t.Psi, t.Phi(Mf[mid] / norm)))));
    }
    pc.diagnostics = "continuum value of the constant at x=0 is 2/alpha = 8";
    return pc;
}

PropertyCase thm_3_4_overshoot_gate(const HarnessConfig&)
{
    Tuple t = adams_tuple();
    t.Psi = YoungFunction::power(4.2L);
    auto rep = eval_Ir_A(t.Phi, t.Psi, t.phi, t.rho, default_r_grid());
    std::string inputs = "Phi=t^2 Psi=t^4.2 phi=r^-1 rho=t^0.25";
    if (rep.verdict == Verdict::Holds) {
        PropertyCase pc = make_case("THM_3_4", "i,overshoot", inputs);
        pc.violations = 1;
        pc.diagnostics = "Ir_A unexpectedly holds for q = 4.2";
        pc.exact_constants = {kInf};
        return pc;
    }
    return skipped_case("THM_3_4", "i,overshoot", inputs, "Ir_A verdict " + to_string(rep.verdict));
}

// Necessity through extremals: the condition ratio at r against the
// measured operator norm on the extremal input.
PropertyCase thm_3_4_necessity_near(const HarnessConfig& c)
{
    Tuple t = adams_tuple();
    PropertyCase pc = make_case("THM_3_4", "ii,near", t.label + ", chi_B(0,2r), r in {0.125,0.25,0.5,1}, h and h/2");
    auto g = [&](real s) { return t.rho.eval_log(s); };
    for (int lvl = 0; lvl < 2; ++lvl) {
        real worst = 0;
        for (real r : {0.125L, 0.25L, 0.5L, 1.0L}) {
            auto f = chi_ball(1, c.L, level_h(c, lvl), {0, 0}, 2 * r);
            auto F = default_family(f);
            auto If = frac_integral(f, t.rho).field;
            real op = ext_div(global_norm(If, t.Psi, t.phi, F, true).value,
                              global_norm(f, t.Phi, t.phi, F, false).value);
            real cond = integrate_to_zero(g, r).value * gen_inverse(t.Phi, t.phi(r)) / gen_inverse(t.Psi, t.phi(r));
            worst = std::max(worst, ext_div(cond, op));
        }
        pc.exact_constants.push_back(worst);
    }
    pc.diagnostics = "constant is (Ir A') ratio at r over ||I chi||_w / ||chi||";
    return pc;
}

PropertyCase thm_3_4_necessity_tail(const HarnessConfig& c)
{
    // needs int_0^r phi(t) dt <= C phi(r) r, so phi = r^-1/2; q from p = 2,
    // alpha = 0.1
    real q = solve_adams_exponent(2, 0.1L, -0.5L, 1);
    Tuple t{YoungFunction::power(2), YoungFunction::power(q), WeightFunction::power(-0.5L),
            KernelFunction::power(0.1L), "Phi=t^2 Psi=t^q phi=r^-1/2 rho=t^0.1, q=" + fmt(q)};
    std::string inputs = t.label + ", g_{r/2}, r in {0.25,0.5,1}, h and h/2; tail integral cut at the window edge";
    if (check_weight_integral(t.phi, 1, default_r_grid()).verdict != Verdict::Holds)
        return skipped_case("THM_3_4", "ii,tail", inputs, "weight integral condition fails");
    PropertyCase pc = make_case("THM_3_4", "ii,tail", inputs);
    const real L = c.L;
    auto integrand = [&](real s) { return ext_mul(t.rho.eval_log(s), gen_inverse(t.Phi, t.phi.eval_log(s))); };
    for (int lvl = 0; lvl < 2; ++lvl) {
        real h = level_h(c, lvl), worst = 0;
        auto full = SampledField::sample(1, L, h, [&](real x, real) { return gen_inverse(t.Phi, t.phi(std::fabs(x))); });
        real gnorm = global_norm(full, t.Phi, t.phi, default_family(full), false).value;
        for (real r : {0.25L, 0.5L, 1.0L}) {
            auto gR = SampledField::sample(1, L, h, [&](real x, real) {
                real d = std::fabs(x);
                return d >= r / 2 ? gen_inverse(t.Phi, t.phi(d)) : 0.0L;
            });
            auto I = frac_integral(gR, t.rho).field;
            real op = ext_div(global_norm(I, t.Psi, t.phi, default_family(I), true).value, gnorm);
            real cond = integrate_dt_over_t(integrand, r, L) / gen_inverse(t.Psi, t.phi(r));
            worst = std::max(worst, ext_div(cond, op));
        }
        pc.exact_constants.push_back(worst);
    }
    return pc;
}

PropertyCase thm_3_5_necessity(const HarnessConfig& c)
{
    Tuple t = adams_tuple();
    PropertyCase pc = make_case("THM_3_5", "ii", t.label + ", chi_B(0,r), r in {0.125,0.25,0.5,1,2}, h and h/2");
    for (int lvl = 0; lvl < 2; ++lvl) {
        real worst = 0;
        for (real r : {0.125L, 0.25L, 0.5L, 1.0L, 2.0L}) {
            auto f = chi_ball(1, c.L, level_h(c, lvl), {0, 0}, r);
            auto F = default_family(f);
            auto Mr = frac_maximal(f, t.rho, F).field;
            real op = ext_div(global_norm(Mr, t.Psi, t.phi, F, true).value,
                              global_norm(f, t.Phi, t.phi, F, false).value);
            real cond = sup_up_to(t.rho, r) * gen_inverse(t.Phi, t.phi(r)) / gen_inverse(t.Psi, t.phi(r));
            worst = std::max(worst, ext_div(cond, op));
        }
        pc.exact_constants.push_back(worst);
    }
    pc.diagnostics = "constant is (Mr A) ratio at r over ||M_rho chi||_w / ||chi||";
    return pc;
}

// ||chi_B||_{w(Psi,phi)} ~ ||chi_B||_{(1, Psi^-1(phi))} ~ 1/Psi^-1(phi(r))
PropertyCase chi_equivalence(const HarnessConfig& c, const std::string& id, const Tuple& t)
{
    PropertyCase pc = make_case(id, "iii", t.label + ", chi_B(0,r) for 8 radii in [10h, 2], h and h/2");
    auto theta = WeightFunction::custom("Psi^-1(phi)", [Psi = t.Psi, phi = t.phi](real s) {
        return std::log(gen_inverse(Psi, phi.eval_log(s)));
    });
    auto one = YoungFunction::power(1);
    auto radii = log_grid(10 * c.h, 2, 8);
    for (int lvl = 0; lvl < 2; ++lvl) {
        real worst = 1;
        for (real r : radii) {
            auto f = chi_ball(1, c.L, level_h(c, lvl), {0, 0}, r);
            auto F = default_family(f);
            real ref = 1 / gen_inverse(t.Psi, t.phi(r));
            real a = global_norm(f, t.Psi, t.phi, F, true).value;
            real b = global_norm(f, one, theta, F, false).value;
            worst = std::max({worst, a / ref, ref / a, b / ref, ref / b});
        }
        pc.exact_constants.push_back(worst);
    }
    return pc;
}

// ---------------------------------------------------------------------------
// registry

struct Job {
    std::string id;
    std::function<PropertyCase(const HarnessConfig&)> run;
};

const std::vector<Job>& jobs()
{
    static const std::vector<Job> all = [] {
        std::vector<Job> j;
        auto add = [&](std::string id, std::function<PropertyCase(const HarnessConfig&)> fn) {
            j.push_back({std::move(id), std::move(fn)});
        };
        add("THM_3_1", [](const HarnessConfig& c) { return thm_3_1_weak(c, true); });
        add("THM_3_1", [](const HarnessConfig& c) { return thm_3_1_weak(c, false); });
        add("THM_3_1", thm_3_1_strong);
        add("THM_3_1", thm_3_1_strong_negative);
        add("THM_3_2", [](const HarnessConfig& c) { return thm_3_2(c, YoungFunction::power(2), 1); });
        add("THM_3_2", [](const HarnessConfig& c) { return thm_3_2(c, YoungFunction::shifted_square(), 4); });
        add("THM_3_2", thm_3_2_negative);
        add("THM_3_3", [](const HarnessConfig& c) { return thm_3_3(c, YoungFunction::power(2), false, true); });
        add("THM_3_3", [](const HarnessConfig& c) { return thm_3_3(c, YoungFunction::power(2), false, false); });
        add("THM_3_3", [](const HarnessConfig& c) { return thm_3_3(c, YoungFunction::power(2), true, true); });
        add("THM_3_3", [](const HarnessConfig& c) { return thm_3_3(c, YoungFunction::power(1), false, true); });
        add("THM_3_3", [](const HarnessConfig& c) { return thm_3_3(c, YoungFunction::power(1), false, false); });
        add("THM_3_4", [](const HarnessConfig& c) { return pointwise_case(c, Pointwise::Ir, adams_tuple(), false); });
        add("THM_3_4", [](const HarnessConfig& c) { return pointwise_case(c, Pointwise::Ir, adams_tuple(), true); });
        add("THM_3_4", thm_3_4_indicator);
        add("THM_3_4", thm_3_4_overshoot_gate);
        add("THM_3_4", thm_3_4_necessity_near);
        add("THM_3_4", thm_3_4_necessity_tail);
        add("THM_3_4", [](const HarnessConfig& c) { return chi_equivalence(c, "THM_3_4", adams_tuple()); });
        add("THM_3_5", [](const HarnessConfig& c) { return pointwise_case(c, Pointwise::Mr, adams_tuple(), false); });
        add("THM_3_5", [](const HarnessConfig& c) { return pointwise_case(c, Pointwise::Mr, adams_tuple(), true); });
        add("THM_3_5", [](const HarnessConfig& c) { return pointwise_case(c, Pointwise::Mr, log_tuple(), false); });
        add("THM_3_5", thm_3_5_unit_kernel);
        add("THM_3_5", thm_3_5_necessity);
        add("THM_3_5", [](const HarnessConfig& c) { return chi_equivalence(c, "THM_3_5", log_tuple()); });
        add("LEM_4_2", lem_4_2);
        add("LEM_4_4", [](const HarnessConfig& c) { return lem_4_4(c, YoungFunction::power(2)); });
        add("LEM_4_4", [](const HarnessConfig& c) { return lem_4_4(c, YoungFunction::shifted_square()); });
        add("LEM_4_6", [](const HarnessConfig& c) { return lem_4_6(c, YoungFunction::power(2)); });
        add("LEM_4_6", [](const HarnessConfig& c) { return lem_4_6(c, YoungFunction::shifted_square()); });
        add("LEM_4_7", [](const HarnessConfig& c) { return far_support(c, false); });
        add("LEM_4_8", [](const HarnessConfig& c) { return far_support(c, true); });
        add("LEM_5_1", lem_5_1);
        add("LEM_5_2", lem_5_2);
        add("LEM_5_3", [](const HarnessConfig& c) {
            return lem_5_3(c, YoungFunction::power(2), WeightFunction::power(-0.5L));
        });
        add("LEM_5_3", [](const HarnessConfig& c) {
            return lem_5_3(c, YoungFunction::power(1), WeightFunction::power(-0.5L));
        });
        add("LEM_5_3", [](const HarnessConfig& c) {
            return lem_5_3(c, YoungFunction::power(2), WeightFunction::power(-1));
        });
        add("LEM_5_4", lem_5_4);
        add("LEM_5_5", lem_5_5);
        add("LEM_5_6", lem_5_6);
        add("EQ_2_6", eq_2_6);
        add("EQ_2_8", eq_2_8);
        add("EQ_4_1", eq_4_1);
        add("EQ_4_3", eq_4_3);
        return j;
    }();
    return all;
}

bool matches(const Job& j, const std::string& filter) { return filter.empty() || j.id == filter; }

PropertyCase run_job(const Job& j, const HarnessConfig& c)
{
    PropertyCase pc;
    try {
        pc = j.run(c);
    } catch (const std::exception& e) {
        pc = make_case(j.id, "error", "");
        pc.violations = 1;
        pc.diagnostics = std::string("exception: ") + e.what();
    }
    finish(pc);
    return pc;
}

nlohmann::ordered_json num(real x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return "inf";
    return static_cast<double>(x);
}

} // namespace


const std::vector<std::string>& statement_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& j : jobs())
            if (std::find(out.begin(), out.end(), j.id) == out.end()) out.push_back(j.id);
        return out;
    }();
    return ids;
}

real fit_to_grid(real c)
{
    if (!(c > 0)) return 0;
    if (std::isinf(c)) return kInf;
    real k = std::ceil(4 * std::log2(c));
    if (std::exp2(k / 4) < c) k += 1;
    if (std::exp2((k - 1) / 4) >= c) k -= 1;
    return std::exp2(k / 4);
}

unsigned thread_count(unsigned requested)
{
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ORLICZ_KIT_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::vector<PropertyCase> run_suite(const HarnessConfig& cfg, const std::string& filter)
{
    std::string id = filter, variant;
    if (auto colon = filter.find(':'); colon != std::string::npos) {
        id = filter.substr(0, colon);
        variant = filter.substr(colon + 1);
    }
    const auto& ids = statement_ids();
    if (!id.empty() && std::find(ids.begin(), ids.end(), id) == ids.end())
        throw UnknownIdError("unknown statement id: " + id);

    std::vector<const Job*> selected;
    for (const auto& j : jobs())
        if (matches(j, id)) selected.push_back(&j);

    std::vector<PropertyCase> out(selected.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t k = next++; k < selected.size(); k = next++) out[k] = run_job(*selected[k], cfg);
    };
    unsigned n = std::min<unsigned>(thread_count(cfg.threads), static_cast<unsigned>(selected.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    if (!variant.empty()) {
        std::vector<PropertyCase> kept;
        for (auto& pc : out)
            if (pc.variant == variant) kept.push_back(std::move(pc));
        if (kept.empty()) throw UnknownIdError("unknown variant for " + id + ": " + variant);
        return kept;
    }
    return out;
}

std::vector<PropertyCase> run_statement(const HarnessConfig& cfg, const std::string& id)
{
    HarnessConfig serial = cfg;
    serial.threads = 1;
    return run_suite(serial, id);
}

bool suite_passed(const std::vector<PropertyCase>& cases)
{
    for (const auto& pc : cases)
        if (!pc.skipped && !pc.pass) return false;
    return true;
}

std::string suite_json(const HarnessConfig& cfg, const std::vector<PropertyCase>& cases)
{
    nlohmann::ordered_json j;
    j["config"] = {{"dim", cfg.dim},
                   {"L", num(cfg.L)},
                   {"h", num(cfg.h)},
                   {"corpus_size", cfg.corpus_size},
                   {"seed", cfg.seed}};
    j["passed"] = suite_passed(cases);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& pc : cases) {
        nlohmann::ordered_json e;
        e["statement_id"] = pc.statement_id;
        e["variant"] = pc.variant;
        e["inputs"] = pc.inputs;
        e["negative"] = pc.negative;
        e["skipped"] = pc.skipped;
        e["fitted_constant"] = num(pc.fitted_constant);
        auto ex = nlohmann::ordered_json::array();
        for (real x : pc.exact_constants) ex.push_back(nlohmann::ordered_json(num(x)));
        e["exact_constants"] = ex;
        e["refinement_drift"] = num(pc.refinement_drift);
        e["drift_threshold"] = num(pc.drift_threshold);
        e["violations"] = pc.violations;
        e["pass"] = pc.pass;
        e["diagnostics"] = pc.diagnostics;
        arr.push_back(e);
    }
    j["cases"] = arr;
    return j.dump(2) + "\n";
}

std::string suite_csv(const std::vector<PropertyCase>& cases)
{
    std::ostringstream os;
    os << "statement_id,variant,negative,skipped,fitted_constant,refinement_drift,violations,pass\n";
    for (const auto& pc : cases) {
        std::string v = pc.variant;
        if (v.find(',') != std::string::npos) v = "\"" + v + "\"";
        os << pc.statement_id << ',' << v << ',' << (pc.negative ? 1 : 0) << ',' << (pc.skipped ? 1 : 0) << ','
           << fmt(pc.fitted_constant) << ',' << fmt(pc.refinement_drift) << ',' << pc.violations << ','
           << (pc.pass ? 1 : 0) << '\n';
    }
    return os.str();
}

} // namespace okit
