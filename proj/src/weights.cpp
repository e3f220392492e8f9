#include "orlicz_kit/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "orlicz_kit/csv.hpp"
#include "orlicz_kit/errors.hpp"
#include "orlicz_kit/grid.hpp"

namespace okit {

namespace {

std::string num(real x)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6Lg", x);
    return buf;
}

// log(e + e^{x}) without overflow.
real log_e_plus_exp(real x)
{
    const real e = std::exp(real(1));
    if (x > 0) return x + std::log1p(e * std::exp(-x));
    return std::log(e + std::exp(x));
}

RadialFunction::LogFn loglog_table(std::vector<real> r, std::vector<real> v)
{
    if (r.size() != v.size() || r.size() < 2) throw InputError("tabulated radial function: need >= 2 nodes");
    std::vector<real> lr, lv;
    for (size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0) || !(v[i] > 0) || is_inf(v[i]))
            throw InputError("tabulated radial function: radii and values must be positive and finite");
        if (i > 0 && !(r[i] > r[i - 1])) throw InputError("tabulated radial function: radii must increase");
        lr.push_back(std::log(r[i]));
        lv.push_back(std::log(v[i]));
    }
    return [lr, lv](real s) {
        size_t m = lr.size();
        size_t j;
        if (s <= lr[0])
            j = 1;
        else if (s >= lr[m - 1])
            j = m - 1;
        else
            j = static_cast<size_t>(std::upper_bound(lr.begin(), lr.end(), s) - lr.begin());
        real w = (s - lr[j - 1]) / (lr[j] - lr[j - 1]);
        return lv[j - 1] + w * (lv[j] - lv[j - 1]);
    };
}

bool stable(real a, real b) { return std::isfinite(a) && std::isfinite(b) && rel_close(a, b, 0.01L); }

std::vector<real> log_nodes(const std::vector<real>& r)
{
    std::vector<real> s;
    for (real x : r) s.push_back(std::log(x));
    return s;
}

// log radii of the grid, plus any corners of theta inside its range.  Extra
// corner offsets (e.g. -ln 2 for the doubling check) are merged as well.
std::vector<real> logs_of(const std::vector<real>& g, const RadialFunction& th = RadialFunction("", nullptr),
                          std::initializer_list<real> offsets = {0})
{
    std::vector<real> s;
    s.reserve(g.size());
    for (real r : g) s.push_back(std::log(r));
    if (s.empty()) return s;
    real lo = s.front(), hi = s.back();
    for (real b : th.log_breaks())
        for (real o : offsets)
            if (b + o > lo && b + o < hi) s.push_back(b + o);
    std::sort(s.begin(), s.end());
    return s;
}

real gdec_log_constant(const RadialFunction& phi, int n, const std::vector<real>& grid)
{
    std::vector<real> s = logs_of(grid, phi);
    real best = 0;
    real min_lphi = std::numeric_limits<real>::infinity();
    real max_lg = -std::numeric_limits<real>::infinity();
    for (real si : s) {
        real lphi = phi.log_eval(si);
        real lg = lphi + n * si;
        if (min_lphi < kInf) {
            best = std::max(best, lphi - min_lphi);
            best = std::max(best, max_lg - lg);
        }
        min_lphi = std::min(min_lphi, lphi);
        max_lg = std::max(max_lg, lg);
    }
    return best;
}

// max over sample points s of |log theta(s + d) - log theta(s)| for
// 0 < d <= ln 2.
real doubling_log_constant(const RadialFunction& th, const std::vector<real>& grid)
{
    const real ln2 = std::log(real(2));
    std::vector<real> s = logs_of(grid, th, {0, -ln2});
    const int k = 16;
    real best = 0;
    for (real si : s) {
        real l0 = th.log_eval(si);
        for (int j = 1; j <= k; ++j) best = std::max(best, std::fabs(th.log_eval(si + ln2 * j / k) - l0));
    }
    return best;
}

// max of rho over [e^s, e^{s+width}] from a log-spaced sample, in log form.
real log_sup_window(const KernelFunction& rho, real s, real width)
{
    real best = -kInf;
    const int k = 64;
    for (int i = 0; i <= k; ++i) best = std::max(best, rho.log_eval(s + width * i / k));
    return best;
}

// log of int_{K1 r}^{K2 r} rho(t)/t dt, with the integrand rescaled by its
// window maximum so that neither tail overflows.
real log_tilde_rho(const KernelFunction& rho, real r)
{
    real a = rho.K1() * r, b = rho.K2() * r;
    real shift = log_sup_window(rho, std::log(a), std::log(b / a));
    if (!std::isfinite(shift)) return shift;
    auto g = [&](real s) { return std::exp(rho.log_eval(s) - shift); };
    return std::log(integrate_dt_over_t(g, a, b, 1e-10L)) + shift;
}

real sup_rho_constant(const KernelFunction& rho, const std::vector<real>& grid)
{
    real best = 0;
    for (real r : grid) {
        real ls = log_sup_window(rho, std::log(r), std::log(real(2)));
        real lt = log_tilde_rho(rho, r);
        if (!std::isfinite(lt)) throw std::logic_error("tilde_rho vanished for a positive kernel");
        best = std::max(best, std::exp(ls - lt));
    }
    return best;
}

} // namespace

WeightFunction WeightFunction::power(real lambda)
{
    return WeightFunction("power(lambda=" + num(lambda) + ")", [lambda](real s) { return lambda * s; });
}

WeightFunction WeightFunction::power_with_log(real lambda, real beta)
{
    WeightFunction w("power_with_log(lambda=" + num(lambda) + ",beta=" + num(beta) + ")",
                     [lambda, beta](real s) { return lambda * s + beta * std::log1p(std::fabs(s)); });
    w.set_log_breaks({0});
    return w;
}

WeightFunction WeightFunction::constant(real c)
{
    if (!(c > 0)) throw InputError("constant weight must be positive");
    real lc = std::log(c);
    return WeightFunction("constant(c=" + num(c) + ")", [lc](real) { return lc; });
}

WeightFunction WeightFunction::reciprocal_power_n(int n)
{
    if (n < 1) throw InputError("dimension must be positive");
    return WeightFunction("reciprocal_power_n(n=" + std::to_string(n) + ")",
                          [n](real s) { return -n * s; });
}

WeightFunction WeightFunction::tabulated(std::vector<real> r, std::vector<real> v)
{
    std::string label = "tabulated(" + std::to_string(r.size()) + " nodes)";
    auto b = log_nodes(r);
    WeightFunction w(label, loglog_table(std::move(r), std::move(v)));
    w.set_log_breaks(std::move(b));
    return w;
}

WeightFunction WeightFunction::tabulated_from_csv(const std::string& path)
{
    auto [r, v] = read_two_column_csv(path);
    return tabulated(std::move(r), std::move(v));
}

WeightFunction WeightFunction::custom(std::string label, LogFn log_fn)
{
    return WeightFunction(std::move(label), std::move(log_fn));
}

KernelFunction KernelFunction::power(real alpha)
{
    return KernelFunction("power(alpha=" + num(alpha) + ")", [alpha](real s) { return alpha * s; });
}

KernelFunction KernelFunction::log_kernel(real alpha)
{
    if (!(alpha > 0)) throw InputError("log_kernel needs alpha > 0");
    return KernelFunction("log_kernel(alpha=" + num(alpha) + ")", [alpha](real s) {
        real small = log_e_plus_exp(-s);  // log(e + 1/r)
        real large = log_e_plus_exp(s);   // log(e + r)
        return -(alpha + 1) * std::log(small) + (alpha - 1) * std::log(large);
    });
}

KernelFunction KernelFunction::bessel_type(real alpha)
{
    return KernelFunction("bessel_type(alpha=" + num(alpha) + ")", [alpha](real s) {
        real e = s > 11000 ? kInf : std::exp(s);
        return std::min(alpha * s, -e / 2);
    });
}

KernelFunction KernelFunction::constant(real c)
{
    if (!(c > 0)) throw InputError("constant kernel must be positive");
    real lc = std::log(c);
    KernelFunction k("constant(c=" + num(c) + ")", [lc](real) { return lc; });
    k.unit_ = (c == 1);
    return k;
}

KernelFunction KernelFunction::tabulated(std::vector<real> r, std::vector<real> v)
{
    std::string label = "tabulated(" + std::to_string(r.size()) + " nodes)";
    auto b = log_nodes(r);
    KernelFunction k(label, loglog_table(std::move(r), std::move(v)));
    k.set_log_breaks(std::move(b));
    return k;
}

KernelFunction KernelFunction::custom(std::string label, LogFn log_fn)
{
    return KernelFunction(std::move(label), std::move(log_fn));
}

KernelFunction KernelFunction::tabulated_from_csv(const std::string& path)
{
    auto [r, v] = read_two_column_csv(path);
    return tabulated(std::move(r), std::move(v));
}

KernelFunction KernelFunction::with_window(real K1, real K2) const
{
    if (!(K1 > 0 && K1 < K2) || is_inf(K2)) throw InputError("kernel window needs 0 < K1 < K2");
    KernelFunction k = *this;
    k.K1_ = K1;
    k.K2_ = K2;
    return k;
}

std::vector<real> default_r_grid() { return log_grid(1e-6L, 1e6L, 200); }

std::vector<real> widened_grid(const std::vector<real>& g)
{
    return extended_grid(g.front(), g.back(), static_cast<int>(g.size()), 10);
}

ClassCheck check_gdec(const RadialFunction& phi, int n, const std::vector<real>& r_grid)
{
    ClassCheck c;
    c.C = std::exp(gdec_log_constant(phi, n, r_grid));
    if (std::isfinite(c.C))
        c.holds = stable(c.C, std::exp(gdec_log_constant(phi, n, widened_grid(r_grid))));
    return c;
}

ClassCheck check_doubling(const RadialFunction& theta, const std::vector<real>& r_grid)
{
    ClassCheck c;
    c.C = std::exp(doubling_log_constant(theta, r_grid));
    if (std::isfinite(c.C))
        c.holds = stable(c.C, std::exp(doubling_log_constant(theta, widened_grid(r_grid))));
    return c;
}

real almost_decreasing_constant(const std::vector<real>& log_values)
{
    real best = 0;
    real min_so_far = kInf;
    for (real lv : log_values) {
        if (min_so_far < kInf) best = std::max(best, lv - min_so_far);
        min_so_far = std::min(min_so_far, lv);
    }
    return std::exp(best);
}

ClassCheck check_almost_decreasing(const RadialFunction& g, const std::vector<real>& r_grid)
{
    auto constant_on = [&](const std::vector<real>& grid) {
        std::vector<real> lv;
        for (real s : logs_of(grid, g)) lv.push_back(g.log_eval(s));
        return almost_decreasing_constant(lv);
    };
    ClassCheck c;
    c.C = constant_on(r_grid);
    if (std::isfinite(c.C)) c.holds = stable(c.C, constant_on(widened_grid(r_grid)));
    return c;
}

IntRhoResult check_int_rho(const KernelFunction& rho)
{
    auto g = [&](real s) { return rho.eval_log(s); };
    QuadResult q = integrate_to_zero(g, 1, 1e-10L);
    IntRhoResult r;
    r.finite = q.finite;
    r.value = q.value;
    r.diagnostic = q.diagnostic;
    return r;
}

real tilde_rho(const KernelFunction& rho, real r)
{
    if (!(r > 0)) throw InputError("tilde_rho needs r > 0");
    return std::exp(log_tilde_rho(rho, r));
}

ClassCheck check_sup_rho(const KernelFunction& rho, const std::vector<real>& r_grid)
{
    ClassCheck c;
    c.C = sup_rho_constant(rho, r_grid);
    if (std::isfinite(c.C)) c.holds = stable(c.C, sup_rho_constant(rho, widened_grid(r_grid)));
    return c;
}

WeightFunction strictify(const WeightFunction& phi, int n, const std::vector<real>& r_grid)
{
    if (!check_gdec(phi, n, r_grid).holds) throw InputError("strictify needs a weight in the G^dec class");
    size_t N = r_grid.size();
    std::vector<real> lv(N);
    for (size_t i = 0; i < N; ++i) lv[i] = phi.log_eval(std::log(r_grid[i]));
    bool strict = true;
    for (size_t i = 1; i < N; ++i)
        if (!(lv[i] < lv[i - 1])) strict = false;
    std::vector<real> out(N);
    if (strict) {
        for (size_t i = 0; i < N; ++i) out[i] = std::exp(lv[i]);
    } else {
        // running sup from the right, then a tilt that decreases strictly
        // from 1.5 to 1
        real m = -kInf;
        std::vector<real> sup_right(N);
        for (size_t k = N; k-- > 0;) {
            m = std::max(m, lv[k]);
            sup_right[k] = m;
        }
        for (size_t i = 0; i < N; ++i) {
            real tilt = 1 + static_cast<real>(N - 1 - i) / (2 * static_cast<real>(N));
            out[i] = std::exp(sup_right[i]) * tilt;
        }
    }
    WeightFunction w = WeightFunction::tabulated(r_grid, out);
    WeightFunction res = WeightFunction::custom("strictified(" + phi.label() + ")",
                                                [w](real s) { return w.log_eval(s); });
    res.set_log_breaks(w.log_breaks());
    return res;
}

} // namespace okit
