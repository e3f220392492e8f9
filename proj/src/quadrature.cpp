#include "orlicz_kit/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace okit {

namespace {

real simpson_rec(const std::function<real(real)>& f, real a, real b, real fa, real fm, real fb,
                 real whole, real eps, int depth)
{
    real m = (a + b) / 2;
    real lm = (a + m) / 2, rm = (m + b) / 2;
    real flm = f(lm), frm = f(rm);
    real left = (m - a) / 6 * (fa + 4 * flm + fm);
    real right = (b - m) / 6 * (fm + 4 * frm + fb);
    real delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15 * eps || !std::isfinite(delta))
        return left + right + delta / 15;
    return simpson_rec(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

// Integrand values that are 0 * inf products come back as NaN; the
// convention 0 * inf = 0 applies.
real clean(real v) { return std::isnan(v) ? 0 : v; }

QuadResult integrate_half_line(const LogIntegrand& g, real s0, real dir, real rel_tol)
{
    auto h = [&](real w) {
        real ew = std::exp(w);
        return clean(g(s0 + dir * (ew - 1))) * ew;
    };
    QuadResult res;
    real total = 0;
    real prev_chunk = -1;
    int stalled = 0;
    const int max_chunks = 200;
    for (int k = 0; k < max_chunks; ++k) {
        real a = k, b = k + 1;
        real chunk = boost::math::quadrature::gauss_kronrod<real, 31>::integrate(h, a, b, 15, rel_tol * 1e-2L);
        if (!std::isfinite(chunk)) {
            res.finite = false;
            res.value = kInf;
            res.diagnostic = "integrand not finite at truncation depth " + std::to_string(k);
            return res;
        }
        total += chunk;
        if (k >= 2 && std::fabs(chunk) <= rel_tol * std::fabs(total)) {
            res.value = total;
            return res;
        }
        if (k >= 1 && chunk >= 0.999L * prev_chunk && chunk > 0.01L * (total - chunk))
            ++stalled;
        else
            stalled = 0;
        if (stalled >= 4) {
            res.finite = false;
            res.value = kInf;
            res.diagnostic = "running value grows by more than 1% per step over 4 steps";
            return res;
        }
        prev_chunk = chunk;
        if (total == 0 && k >= 8) return res;
    }
    res.finite = false;
    res.value = kInf;
    res.diagnostic = "tail did not decay below tolerance";
    return res;
}

} // namespace

real adaptive_simpson(const std::function<real(real)>& f, real a, real b, real rel_tol,
                      int max_depth)
{
    if (a == b) return 0;
    real fa = f(a), fb = f(b), fm = f((a + b) / 2);
    real whole = (b - a) / 6 * (fa + 4 * fm + fb);
    real eps = rel_tol * std::fabs(whole);
    if (eps == 0) eps = std::numeric_limits<real>::min();
    return simpson_rec(f, a, b, fa, fm, fb, whole, eps, max_depth);
}

real integrate_dt_over_t(const LogIntegrand& g, real a, real b, real rel_tol)
{
    auto h = [&](real s) { return clean(g(s)); };
    real la = std::log(a), lb = std::log(b);
    // Split into unit pieces of log t so that features at different scales
    // are seen by the initial samples.
    int pieces = std::max(1, static_cast<int>(std::ceil(lb - la)));
    real sum = 0;
    for (int i = 0; i < pieces; ++i) {
        real x0 = la + (lb - la) * i / pieces;
        real x1 = la + (lb - la) * (i + 1) / pieces;
        sum += adaptive_simpson(h, x0, x1, rel_tol);
    }
    return sum;
}

QuadResult integrate_to_zero(const LogIntegrand& g, real r, real rel_tol)
{
    return integrate_half_line(g, std::log(r), -1, rel_tol);
}

QuadResult integrate_to_inf(const LogIntegrand& g, real r, real rel_tol)
{
    return integrate_half_line(g, std::log(r), 1, rel_tol);
}

} // namespace okit
