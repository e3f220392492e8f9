#include "orlicz_kit/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz_kit/errors.hpp"
#include "orlicz_kit/grid.hpp"
#include "orlicz_kit/quadrature.hpp"

namespace okit {

namespace {

struct Sample {
    std::vector<real> lhs, rhs;
    bool diverged = false;
    std::string diagnostic;
};

using Sampler = std::function<Sample(const std::vector<real>&)>;

real sup_ratio(const Sample& s)
{
    real best = 0;
    for (size_t i = 0; i < s.lhs.size(); ++i) {
        real q = ext_div(s.lhs[i], s.rhs[i]);
        if (std::isnan(q)) continue;
        best = std::max(best, q);
    }
    return best;
}

ConditionReport build_report(std::string id, const std::vector<real>& grid, const Sampler& sampler)
{
    ConditionReport rep;
    rep.condition_id = std::move(id);
    rep.r_grid = grid;
    Sample base = sampler(grid);
    rep.lhs = base.lhs;
    rep.rhs = base.rhs;
    rep.diagnostic = base.diagnostic;
    if (base.diverged) {
        rep.verdict = Verdict::Fails;
        return rep;
    }
    rep.ratio_sup = sup_ratio(base);

    std::vector<real> ratio;
    for (size_t i = 0; i < base.lhs.size(); ++i) ratio.push_back(ext_div(base.lhs[i], base.rhs[i]));
    bool up = true, down = true;
    real lo = kInf, hi = 0;
    for (size_t i = 0; i < ratio.size(); ++i) {
        if (std::isnan(ratio[i])) continue;
        lo = std::min(lo, ratio[i]);
        hi = std::max(hi, ratio[i]);
        if (i > 0 && !std::isnan(ratio[i - 1])) {
            if (ratio[i] < ratio[i - 1] * (1 - 1e-9L)) up = false;
            if (ratio[i] > ratio[i - 1] * (1 + 1e-9L)) down = false;
        }
    }
    rep.monotone = up || down;
    rep.growth = lo > 0 ? hi / lo : kInf;

    Sample wide = sampler(widened_grid(grid));
    if (wide.diverged) {
        rep.verdict = Verdict::Fails;
        rep.diagnostic = wide.diagnostic;
        return rep;
    }
    rep.ratio_sup_widened = sup_ratio(wide);
    if (std::isfinite(rep.ratio_sup) && std::isfinite(rep.ratio_sup_widened) && rep.ratio_sup > 0)
        rep.stability = std::fabs(rep.ratio_sup_widened - rep.ratio_sup) / rep.ratio_sup;

    if (std::isfinite(rep.ratio_sup) && rep.stability < 0.01L)
        rep.verdict = Verdict::Holds;
    else if (rep.monotone && rep.growth > 10)
        rep.verdict = Verdict::Fails;
    else
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

void require_int_rho(const KernelFunction& rho)
{
    IntRhoResult ir = check_int_rho(rho);
    if (!ir.finite) throw PreconditionError("kernel is not integrable at the origin: " + ir.diagnostic);
}

real inv_of_weight(const YoungFunction& Phi, const WeightFunction& phi, real s)
{
    return gen_inverse(Phi, phi.eval_log(s));
}

Sample sample_Ir(const YoungFunction& Phi, const YoungFunction& Psi, const WeightFunction& phi,
                 const KernelFunction& rho, const std::vector<real>& grid, bool with_tail)
{
    Sample out;
    auto near = [&](real s) { return rho.eval_log(s); };
    auto tail = [&](real s) { return ext_mul(rho.eval_log(s), inv_of_weight(Phi, phi, s)); };
    for (real r : grid) {
        real s = std::log(r);
        QuadResult a = integrate_to_zero(near, r, 1e-10L);
        real v = ext_mul(a.value, inv_of_weight(Phi, phi, s));
        if (!a.finite) {
            out.diverged = true;
            out.diagnostic = "integral of rho(t)/t near 0 diverges: " + a.diagnostic;
        }
        if (with_tail) {
            QuadResult b = integrate_to_inf(tail, r, 1e-10L);
            if (!b.finite) {
                out.diverged = true;
                out.diagnostic = "tail integral diverges: " + b.diagnostic;
            }
            v += b.value;
        }
        out.lhs.push_back(v);
        out.rhs.push_back(inv_of_weight(Psi, phi, s));
        if (out.diverged) break;
    }
    return out;
}

// side hypothesis of the maximal-operator condition
void record_side_hypothesis(ConditionReport& rep, const YoungFunction& Phi, const YoungFunction& Psi,
                            const WeightFunction& phi)
{
    auto quotient = WeightFunction::custom("Psi^-1/Phi^-1", [&](real s) {
        real u = std::exp(s);
        return std::log(gen_inverse(Psi, u)) - std::log(gen_inverse(Phi, u));
    });
    ClassCheck ad = check_almost_decreasing(quotient, default_t_grid());
    // phi(r) -> 0: sampled far out, strictly below 1e-12 of phi(1)
    bool vanishes = true;
    real prev = kInf;
    for (int k = 2; k <= 64; k *= 2) {
        real v = phi.eval_log(std::log(real(10)) * 5 * k);
        if (!(v <= prev)) vanishes = false;
        prev = v;
    }
    vanishes = vanishes && prev < 1e-12L * phi(1);
    rep.side_hypothesis = ad.holds || vanishes;
    rep.side_detail = std::string("Psi^-1/Phi^-1 almost decreasing: ") + (ad.holds ? "yes" : "no") +
                      "; phi(r) -> 0 at infinity: " + (vanishes ? "yes" : "no");
}

} // namespace

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    default: return "inconclusive";
    }
}

ConditionReport eval_Ir_A(const YoungFunction& Phi, const YoungFunction& Psi, const WeightFunction& phi,
                          const KernelFunction& rho, const std::vector<real>& r_grid)
{
    require_int_rho(rho);
    return build_report("Ir_A", r_grid,
                        [&](const std::vector<real>& g) { return sample_Ir(Phi, Psi, phi, rho, g, true); });
}

ConditionReport eval_Ir_Aprime(const YoungFunction& Phi, const YoungFunction& Psi, const WeightFunction& phi,
                               const KernelFunction& rho, const std::vector<real>& r_grid)
{
    require_int_rho(rho);
    return build_report("Ir_Aprime", r_grid,
                        [&](const std::vector<real>& g) { return sample_Ir(Phi, Psi, phi, rho, g, false); });
}

ConditionReport eval_Mr_A(const YoungFunction& Phi, const YoungFunction& Psi, const WeightFunction& phi,
                          const KernelFunction& rho, const std::vector<real>& r_grid)
{
    auto sampler = [&](const std::vector<real>& g) {
        Sample out;
        // running max of rho over a log sample of (0, r]: 32 points per
        // octave from far below the grid, plus decades down to 1e-300
        real run = 0;
        const real step = std::log(real(2)) / 32;
        real s_lo = std::log(g.front()) - 25;
        for (real s = std::log(real(1e-300L)); s < s_lo; s += std::log(real(10))) run = std::max(run, rho.eval_log(s));
        real s = s_lo;
        for (real r : g) {
            real sr = std::log(r);
            for (; s < sr; s += step) run = std::max(run, rho.eval_log(s));
            run = std::max(run, rho.eval_log(sr));
            out.lhs.push_back(ext_mul(run, inv_of_weight(Phi, phi, sr)));
            out.rhs.push_back(inv_of_weight(Psi, phi, sr));
        }
        return out;
    };
    ConditionReport rep = build_report("Mr_A", r_grid, sampler);
    record_side_hypothesis(rep, Phi, Psi, phi);
    return rep;
}

ConditionReport check_weight_integral(const WeightFunction& phi, int n, const std::vector<real>& r_grid)
{
    if (n < 1) throw InputError("dimension must be positive");
    auto sampler = [&](const std::vector<real>& g) {
        Sample out;
        auto integrand = [&](real s) { return std::exp(phi.log_eval(s) + n * s); };
        for (real r : g) {
            QuadResult q = integrate_to_zero(integrand, r, 1e-10L);
            if (!q.finite) {
                out.diverged = true;
                out.diagnostic = "integral of phi(t) t^{n-1} near 0 diverges: " + q.diagnostic;
                break;
            }
            out.lhs.push_back(q.value);
            out.rhs.push_back(std::exp(phi.log_eval(std::log(r)) + n * std::log(r)));
        }
        return out;
    };
    return build_report("weight_integral", r_grid, sampler);
}

real solve_adams_exponent(real p, real alpha, real lambda, int n)
{
    if (!(p >= 1) || !(alpha > 0) || n < 1 || !(lambda >= -n) || !(lambda < 0))
        throw InputError("solve_adams_exponent needs p >= 1, alpha > 0, -n <= lambda < 0");
    if (!(alpha + lambda / p < 0))
        throw PreconditionError("alpha + lambda/p >= 0: the tail integral diverges, no admissible q");
    return lambda * p / (lambda + alpha * p);
}

} // namespace okit
