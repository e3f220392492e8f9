#include "orlicz_kit/operators.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "orlicz_kit/errors.hpp"

namespace okit {

namespace {

// Shared body of M and M_rho.  Ball sums of |f| come from prefix sums over
// the flat index, which is valid because cells_in returns row runs.
SampledField maximal_over(const SampledField& f, const BallFamily& F, const KernelFunction* rho)
{
    if (F.size() == 0) throw InputError("ball family is empty");
    std::vector<real> pre(f.size() + 1, 0);
    for (size_t k = 0; k < f.size(); ++k) pre[k + 1] = pre[k] + std::fabs(f[k]);
    std::vector<real> out(f.size(), 0);
    std::vector<char> covered(f.size(), 0);
    for (real r : F.radii) {
        real w = (rho && !rho->is_constant_one()) ? (*rho)(r) : 1;
        for (const Point& c : F.centres) {
            BallCells cells = cells_in(f, Ball{c, r});
            if (cells.runs.empty()) continue;
            real s = 0;
            for (auto [a, b] : cells.runs) s += pre[b] - pre[a];
            real mean = s / static_cast<real>(cells.lattice_count);
            if (w != 1) mean = ext_mul(w, mean);
            for (auto [a, b] : cells.runs)
                for (size_t k = a; k < b; ++k) {
                    covered[k] = 1;
                    if (mean > out[k]) out[k] = mean;
                }
        }
    }
    for (char c : covered)
        if (!c) throw InputError("ball family does not cover every grid point");
    return f.with_values(std::move(out));
}

} // namespace

std::string family_id(const BallFamily& F)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "family(centres=%zu,radii=%zu,rmin=%.6Lg,rmax=%.6Lg)", F.centres.size(),
                  F.radii.size(), F.radii.empty() ? real(0) : F.radii.front(),
                  F.radii.empty() ? real(0) : F.radii.back());
    return buf;
}

OperatorResult hl_maximal(const SampledField& f, const BallFamily& F)
{
    return {maximal_over(f, F, nullptr), "M", "none", family_id(F), ""};
}

OperatorResult frac_maximal(const SampledField& f, const KernelFunction& rho, const BallFamily& F)
{
    return {maximal_over(f, F, &rho), "M_rho", rho.label(), family_id(F), ""};
}

OperatorResult frac_integral(const SampledField& f, const KernelFunction& rho)
{
    IntRhoResult ir = check_int_rho(rho);
    if (!ir.finite) throw PreconditionError("integral condition violated: " + ir.diagnostic);
    const real h = f.h();
    const int N = f.n_per_axis();
    const real cell = f.cell_volume();
    auto g = [&](real s) { return rho.eval_log(s); };
    // the core replaces the own cell by the ball of equal volume
    const real r_core = f.dim() == 1 ? h / 2 : h / std::sqrt(std::numbers::pi_v<real>);
    QuadResult core_q = integrate_to_zero(g, r_core, 1e-10L);
    if (!core_q.finite) throw PreconditionError("integral condition violated near the origin");
    const real sigma = f.dim() == 1 ? 2 : 2 * std::numbers::pi_v<real>;
    const real core = sigma * core_q.value;

    std::vector<real> out(f.size(), 0);
    if (f.dim() == 1) {
        std::vector<real> K(N, 0);
        for (int k = 1; k < N; ++k) K[k] = rho(k * h) / (k * h) * cell;
        for (int i = 0; i < N; ++i) {
            real s = 0;
            for (int j = 0; j < N; ++j)
                if (j != i && f[j] != 0) s += K[std::abs(i - j)] * f[j];
            out[i] = s + f[i] * core;
        }
    } else {
        std::vector<real> K(static_cast<size_t>(N) * N, 0);
        for (int dy = 0; dy < N; ++dy)
            for (int dx = 0; dx < N; ++dx) {
                if (dx == 0 && dy == 0) continue;
                real d = h * std::hypot(static_cast<real>(dx), static_cast<real>(dy));
                K[static_cast<size_t>(dy) * N + dx] = rho(d) / (d * d) * cell;
            }
        std::vector<size_t> support;
        for (size_t k = 0; k < f.size(); ++k)
            if (f[k] != 0) support.push_back(k);
        for (int iy = 0; iy < N; ++iy)
            for (int ix = 0; ix < N; ++ix) {
                size_t self = static_cast<size_t>(iy) * N + ix;
                real s = 0;
                for (size_t k : support) {
                    if (k == self) continue;
                    int jx = static_cast<int>(k % N), jy = static_cast<int>(k / N);
                    s += K[static_cast<size_t>(std::abs(iy - jy)) * N + std::abs(ix - jx)] * f[k];
                }
                out[self] = s + f[self] * core;
            }
    }
    char diag[96];
    std::snprintf(diag, sizeof diag, "core_integral=%.17Lg", core_q.value);
    return {f.with_values(std::move(out)), "I_rho", rho.label(), "none", diag};
}

FarSupportBound far_support_bound(const SampledField& f, const YoungFunction& Phi, const WeightFunction& phi,
                                  const Ball& B, bool weak, const BallFamily& F)
{
    for (auto [a, b] : cells_in(f, Ball{B.centre, 2 * B.r}).runs)
        for (size_t k = a; k < b; ++k)
            if (f[k] != 0) throw InputError("far_support_bound: f does not vanish on 2B");
    FarSupportBound res;
    SampledField Mf = hl_maximal(f, F).field;
    for (auto [a, b] : cells_in(f, B).runs)
        for (size_t k = a; k < b; ++k) res.max_on_B = std::max(res.max_on_B, Mf[k]);
    real norm = global_norm(f, Phi, phi, F, weak).value;
    res.scale = ext_mul(gen_inverse(Phi, phi(B.r)), norm);
    res.ratio = res.max_on_B == 0 ? 0 : ext_div(res.max_on_B, res.scale);
    return res;
}

} // namespace okit
