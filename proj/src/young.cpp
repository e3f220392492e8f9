#include "orlicz_kit/young.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "orlicz_kit/csv.hpp"
#include "orlicz_kit/errors.hpp"

namespace okit {

namespace {

std::string num(real x)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6Lg", x);
    return buf;
}

constexpr real kHuge = std::numeric_limits<real>::max() / 16;

real finite_or_huge(real x) { return std::isfinite(x) ? x : kHuge; }

// Coarse scan over [lo, hi] followed by Brent refinement in the best cell.
// Works for unimodal objectives and is robust to a few local bumps.
std::pair<real, real> minimize_scan(const std::function<real(real)>& f, real lo, real hi,
                                    int cells)
{
    real best_x = lo, best_f = finite_or_huge(f(lo));
    int best_i = 0;
    for (int i = 1; i <= cells; ++i) {
        real x = lo + (hi - lo) * i / cells;
        real fx = finite_or_huge(f(x));
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
            best_i = i;
        }
    }
    real step = (hi - lo) / cells;
    real a = lo + step * std::max(0, best_i - 1);
    real b = lo + step * std::min(cells, best_i + 1);
    std::uintmax_t iters = 200;
    auto g = [&](real x) { return finite_or_huge(f(x)); };
    auto r = boost::math::tools::brent_find_minima(g, a, b,
                                                   std::numeric_limits<real>::digits / 2, iters);
    if (r.second < best_f) return {r.first, r.second};
    return {best_x, best_f};
}

real tab_eval(const std::vector<real>& ts, const std::vector<real>& vs, real t)
{
    size_t m = ts.size();
    if (t <= ts[0]) return vs[0];
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    if (it == ts.end()) {
        // linear extension of the last finite segment
        real tl = ts[m - 1], vl = vs[m - 1];
        if (is_inf(vl)) return kInf;
        if (m < 2) return vl;
        real slope = (vl - vs[m - 2]) / (tl - ts[m - 2]);
        return vl + slope * (t - tl);
    }
    size_t j = static_cast<size_t>(it - ts.begin());
    if (*it == t) return vs[j];
    real v0 = vs[j - 1], v1 = vs[j];
    if (is_inf(v1)) return kInf;
    return v0 + (v1 - v0) * (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
}

real tab_inverse(const std::vector<real>& ts, const std::vector<real>& vs, real u)
{
    size_t m = ts.size();
    // first node with value > u; ties resolve toward the smallest t
    auto it = std::upper_bound(vs.begin(), vs.end(), u);
    if (it == vs.end()) {
        if (m < 2) return kInf;
        real slope = (vs[m - 1] - vs[m - 2]) / (ts[m - 1] - ts[m - 2]);
        if (slope <= 0) return kInf;
        return ts[m - 1] + (u - vs[m - 1]) / slope;
    }
    size_t j = static_cast<size_t>(it - vs.begin());
    if (j == 0) return 0;
    if (is_inf(vs[j])) return ts[j - 1];
    return ts[j - 1] + (u - vs[j - 1]) * (ts[j] - ts[j - 1]) / (vs[j] - vs[j - 1]);
}

// sup_u (t u - Phi(u)) by a search over log u.
real conj_value(const YoungFunction& phi, real t)
{
    if (t == 0) return 0;
    if (is_inf(t)) return kInf;
    Thresholds th = thresholds(phi);
    real U;
    if (!is_inf(th.b)) {
        U = th.b;
    } else {
        // past U the slope of Phi exceeds t, so the maximiser lies below U
        U = 1;
        while (!(phi(U) - phi(U / 2) > t * U / 2)) {
            U *= 2;
            if (U > 1e4000L) return kInf;
        }
    }
    real vhi = std::log(U);
    real vlo = vhi - 230;
    auto negg = [&](real v) {
        real u = std::exp(v);
        real val = phi(u);
        if (is_inf(val)) return kInf;
        return -(t * u - val);
    };
    auto r = minimize_scan(negg, vlo, vhi, 460);
    real best = -r.second;
    // the endpoint u = b can carry the sup for jump-type functions
    real at_b = phi(U);
    if (!is_inf(at_b)) best = std::max(best, t * U - at_b);
    return std::max<real>(0, best);
}

// inf_v (u + Phi(v)) / v, which equals inf{t : conj(t) > u}.
real conj_inverse(const YoungFunction& phi, real u)
{
    if (is_inf(u)) return kInf;
    Thresholds th = thresholds(phi);
    real vhi = is_inf(th.b) ? 300.0L : std::log(th.b);
    real vlo = vhi - 600;
    auto h = [&](real v) {
        real x = std::exp(v);
        real val = phi(x);
        if (is_inf(val)) return kInf;
        return (u + val) / x;
    };
    auto r = minimize_scan(h, vlo, vhi, 1200);
    real best = r.second;
    if (!is_inf(th.b)) {
        real val = phi(th.b);
        if (!is_inf(val)) best = std::min(best, (u + val) / th.b);
    }
    return best;
}

} // namespace

YoungFunction YoungFunction::power(real p)
{
    if (!(p >= 1)) throw InputError("power Young function needs p >= 1");
    YoungFunction f;
    f.family_ = Family::Power;
    f.p_ = p;
    f.label_ = "power(p=" + num(p) + ")";
    return f;
}

YoungFunction YoungFunction::power_over_p(real p)
{
    if (!(p >= 1)) throw InputError("power_over_p needs p >= 1");
    YoungFunction f;
    f.family_ = Family::PowerOverP;
    f.p_ = p;
    f.label_ = "power_over_p(p=" + num(p) + ")";
    return f;
}

YoungFunction YoungFunction::scaled_power(real c, real p)
{
    if (!(p >= 1) || !(c > 0)) throw InputError("scaled_power needs c > 0, p >= 1");
    YoungFunction f;
    f.family_ = Family::ScaledPower;
    f.p_ = p;
    f.c_ = c;
    f.label_ = "scaled_power(c=" + num(c) + ",p=" + num(p) + ")";
    return f;
}

YoungFunction YoungFunction::capped_linear()
{
    YoungFunction f;
    f.family_ = Family::CappedLinear;
    f.label_ = "capped_linear";
    return f;
}

YoungFunction YoungFunction::shifted_linear()
{
    YoungFunction f;
    f.family_ = Family::ShiftedLinear;
    f.label_ = "shifted_linear";
    return f;
}

YoungFunction YoungFunction::shifted_square()
{
    YoungFunction f;
    f.family_ = Family::ShiftedSquare;
    f.label_ = "shifted_square";
    return f;
}

YoungFunction YoungFunction::shifted_square_conj()
{
    YoungFunction f;
    f.family_ = Family::ShiftedSquareConj;
    f.label_ = "shifted_square_conj";
    return f;
}

YoungFunction YoungFunction::exp_power(real p)
{
    if (!(p > 0)) throw InputError("exp_power needs p > 0");
    YoungFunction f;
    f.family_ = Family::ExpPower;
    f.p_ = p;
    f.label_ = "exp_power(p=" + num(p) + ")";
    return f;
}

YoungFunction YoungFunction::jump(real c)
{
    if (!(c > 0) || is_inf(c)) throw InputError("jump needs 0 < c < inf");
    YoungFunction f;
    f.family_ = Family::Jump;
    f.c_ = c;
    f.label_ = "jump(c=" + num(c) + ")";
    return f;
}

YoungFunction YoungFunction::tabulated(std::vector<real> t, std::vector<real> v)
{
    if (t.size() != v.size() || t.size() < 2) throw InputError("tabulated: need >= 2 nodes");
    if (t[0] != 0 || v[0] != 0) throw InputError("tabulated: first node must be (0, 0)");
    for (size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1]) || is_inf(t[i])) throw InputError("tabulated: t must increase");
        if (!(v[i] >= v[i - 1])) throw InputError("tabulated: values not increasing");
    }
    // drop repeated inf nodes, one marks the blow-up
    size_t cut = t.size();
    for (size_t i = 1; i < t.size(); ++i)
        if (is_inf(v[i])) {
            cut = i + 1;
            break;
        }
    t.resize(cut);
    v.resize(cut);
    bool any_positive = false;
    for (real x : v)
        if (x > 0) any_positive = true;
    if (!any_positive) throw InputError("tabulated: identically zero");
    YoungFunction f;
    f.family_ = Family::Tabulated;
    f.tab_t_ = std::move(t);
    f.tab_v_ = std::move(v);
    f.label_ = "tabulated(" + std::to_string(f.tab_t_.size()) + " nodes)";
    return f;
}

YoungFunction YoungFunction::tabulated_from_csv(const std::string& path)
{
    auto [t, v] = read_two_column_csv(path);
    return tabulated(std::move(t), std::move(v));
}

YoungFunction YoungFunction::numeric_conjugate(const YoungFunction& base)
{
    YoungFunction f;
    f.family_ = Family::NumericConjugate;
    f.base_ = std::make_shared<const YoungFunction>(base);
    f.label_ = "conj(" + base.label() + ")";
    return f;
}

YoungFunction YoungFunction::majorant(const YoungFunction& base, real delta)
{
    YoungFunction f;
    f.family_ = Family::Majorant;
    f.base_ = std::make_shared<const YoungFunction>(base);
    f.delta_ = delta;
    f.base_b_ = thresholds(base).b;
    f.label_ = "majorant(" + base.label() + ",delta=" + num(delta) + ")";
    return f;
}

real YoungFunction::operator()(real t) const
{
    if (t <= 0) return 0;
    if (is_inf(t)) return kInf;
    switch (family_) {
    case Family::Power:
        return std::pow(t, p_);
    case Family::PowerOverP:
        return std::pow(t, p_) / p_;
    case Family::ScaledPower:
        return c_ * std::pow(t, p_);
    case Family::CappedLinear:
        return t <= 1 ? t : kInf;
    case Family::ShiftedLinear:
        return t <= 1 ? 0 : t - 1;
    case Family::ShiftedSquare:
        return t <= 2 ? 0 : (t - 2) * (t + 2);
    case Family::ShiftedSquareConj:
        return t <= 4 ? 2 * t : t * t / 4 + 4;
    case Family::ExpPower: {
        real tp = std::pow(t, p_);
        return t <= 1 ? std::exp(1 - 1 / tp) : std::exp(tp - 1);
    }
    case Family::Jump:
        return t <= c_ ? 0 : kInf;
    case Family::Tabulated:
        return tab_eval(tab_t_, tab_v_, t);
    case Family::NumericConjugate:
        return conj_value(*base_, t);
    case Family::Majorant: {
        real b = base_b_;
        if (t >= b) return kInf;
        real theta = std::max<real>(0, (t - delta_ * b) / (b - t));
        return (*base_)(t) + theta;
    }
    }
    return kInf;
}

std::optional<real> YoungFunction::homogeneity() const
{
    switch (family_) {
    case Family::Power:
    case Family::PowerOverP:
    case Family::ScaledPower:
        return p_;
    default:
        return std::nullopt;
    }
}

std::string to_string(YClass c)
{
    switch (c) {
    case YClass::Y1: return "Y1";
    case YClass::Y2: return "Y2";
    case YClass::Y3: return "Y3";
    }
    return "?";
}

real eval(const YoungFunction& phi, real t) { return phi(t); }

Thresholds thresholds(const YoungFunction& phi)
{
    using F = YoungFunction::Family;
    switch (phi.family()) {
    case F::Power:
    case F::PowerOverP:
    case F::ScaledPower:
    case F::ShiftedSquareConj:
    case F::ExpPower:
        return {0, kInf};
    case F::CappedLinear:
        return {0, 1};
    case F::ShiftedLinear:
        return {1, kInf};
    case F::ShiftedSquare:
        return {2, kInf};
    case F::Jump:
        return {phi.c(), phi.c()};
    case F::Tabulated: {
        const auto& t = phi.table_t();
        const auto& v = phi.table_v();
        Thresholds th;
        for (size_t i = 0; i < v.size() && v[i] == 0; ++i) th.a = t[i];
        for (size_t i = 1; i < v.size(); ++i)
            if (is_inf(v[i])) {
                th.b = t[i - 1];
                break;
            }
        return th;
    }
    case F::NumericConjugate: {
        const YoungFunction& base = *phi.base();
        Thresholds th;
        th.a = conj_inverse(base, 0);
        if (!is_inf(thresholds(base).b)) return th;
        const real U = 1e1000L;
        real slope = base(U) / U;
        th.b = std::isfinite(slope) ? slope : kInf;
        return th;
    }
    case F::Majorant: {
        Thresholds tb = thresholds(*phi.base());
        return {std::min(tb.a, phi.delta() * tb.b), tb.b};
    }
    }
    return {};
}

real gen_inverse(const YoungFunction& phi, real u)
{
    if (is_inf(u)) return kInf;
    if (u < 0) u = 0;
    using F = YoungFunction::Family;
    const real p = phi.p();
    switch (phi.family()) {
    case F::Power:
        return std::pow(u, 1 / p);
    case F::PowerOverP:
        return std::pow(p * u, 1 / p);
    case F::ScaledPower:
        return std::pow(u / phi.c(), 1 / p);
    case F::CappedLinear:
        return std::min<real>(u, 1);
    case F::ShiftedLinear:
        return 1 + u;
    case F::ShiftedSquare:
        return std::sqrt(u + 4);
    case F::ShiftedSquareConj:
        return u <= 8 ? u / 2 : 2 * std::sqrt(u - 4);
    case F::ExpPower:
        if (u == 0) return 0;
        if (u <= 1) return std::pow(1 / (1 - std::log(u)), 1 / p);
        return std::pow(1 + std::log(u), 1 / p);
    case F::Jump:
        return phi.c();
    case F::Tabulated:
        return tab_inverse(phi.table_t(), phi.table_v(), u);
    case F::NumericConjugate:
        return conj_inverse(*phi.base(), u);
    case F::Majorant: {
        real lo = 0, hi = thresholds(phi).b;
        for (int i = 0; i < 400 && hi - lo > 0; ++i) {
            real mid = lo + (hi - lo) / 2;
            if (mid == lo || mid == hi) break;
            if (phi(mid) > u)
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    }
    }
    return kInf;
}

YoungFunction complementary(const YoungFunction& phi)
{
    using F = YoungFunction::Family;
    const real p = phi.p();
    auto dual = [](real q) { return q / (q - 1); };
    switch (phi.family()) {
    case F::Power:
        if (p == 1) return YoungFunction::jump(1);
        return YoungFunction::scaled_power((p - 1) * std::pow(p, -dual(p)), dual(p));
    case F::PowerOverP:
        if (p == 1) return YoungFunction::jump(1);
        return YoungFunction::power_over_p(dual(p));
    case F::ScaledPower: {
        real c = phi.c();
        if (p == 1) return YoungFunction::jump(c);
        return YoungFunction::scaled_power((p - 1) * c * std::pow(c * p, -dual(p)), dual(p));
    }
    case F::CappedLinear:
        return YoungFunction::shifted_linear();
    case F::ShiftedLinear:
        return YoungFunction::capped_linear();
    case F::ShiftedSquare:
        return YoungFunction::shifted_square_conj();
    case F::ShiftedSquareConj:
        return YoungFunction::shifted_square();
    case F::Jump:
        if (phi.c() == 1) return YoungFunction::power(1);
        return YoungFunction::scaled_power(phi.c(), 1);
    case F::NumericConjugate:
        return *phi.base();
    case F::ExpPower:
    case F::Tabulated:
    case F::Majorant:
        break;
    }
    if (phi.family() == F::Tabulated) {
        // a bounded-slope table has a conjugate that is infinite past the
        // slope; the numeric sup needs at least two finite segments
        const auto& v = phi.table_v();
        int finite = 0;
        for (real x : v)
            if (!is_inf(x)) ++finite;
        if (finite < 2) throw InputError("tabulated grid too coarse to bracket the conjugate sup");
    }
    return YoungFunction::numeric_conjugate(phi);
}

std::vector<real> doubled_grid(const std::vector<real>& g)
{
    real lo = g.front(), hi = g.back();
    real centre = std::sqrt(lo * hi);
    real half = std::log(hi / lo) / 2;
    std::vector<real> out;
    int n = static_cast<int>(g.size()) * 2;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(centre * std::exp(-2 * half + 4 * half * i / (n - 1)));
    return out;
}

namespace {

real delta2_constant(const YoungFunction& phi, const std::vector<real>& grid)
{
    real c = 0;
    for (real t : grid) {
        real r = ext_div(phi(2 * t), phi(t));
        if (std::isnan(r)) continue;
        c = std::max(c, r);
    }
    return c;
}

std::optional<real> nabla2_witness(const YoungFunction& phi, const std::vector<real>& grid,
                                   const std::vector<real>& k_grid)
{
    std::vector<real> ks = k_grid;
    std::sort(ks.begin(), ks.end());
    for (real k : ks) {
        if (!(k > 1)) continue;
        bool ok = true;
        for (real t : grid) {
            real lhs = phi(t);
            real rhs = phi(k * t) / (2 * k);
            if (lhs > rhs * (1 + 1e-12L)) {
                ok = false;
                break;
            }
        }
        if (ok) return k;
    }
    return std::nullopt;
}

real almost_increasing_constant(const std::vector<real>& g)
{
    real run_max = 0, k = 0;
    bool have = false;
    for (real x : g) {
        if (have) {
            real r = ext_div(run_max, x);
            if (!std::isnan(r)) k = std::max(k, r);
        }
        if (!is_inf(x)) {
            run_max = std::max(run_max, x);
            have = true;
        }
    }
    return std::max<real>(k, 1);
}

bool stable(real a, real b) { return std::isfinite(a) && std::isfinite(b) && rel_close(a, b, 0.01L); }

} // namespace

Delta2Result check_delta2(const YoungFunction& phi, const std::vector<real>& t_grid)
{
    Delta2Result r;
    r.constant = delta2_constant(phi, t_grid);
    if (std::isfinite(r.constant))
        r.holds = stable(r.constant, delta2_constant(phi, doubled_grid(t_grid)));
    return r;
}

std::vector<real> default_k_grid()
{
    std::vector<real> k;
    for (int j = 1; j <= 40; ++j) k.push_back(std::exp2(static_cast<real>(j) / 4));
    return k;
}

Nabla2Result check_nabla2(const YoungFunction& phi, const std::vector<real>& t_grid,
                          const std::vector<real>& k_grid)
{
    Nabla2Result r;
    r.witness_k = nabla2_witness(phi, t_grid, k_grid);
    if (r.witness_k) {
        auto wide = nabla2_witness(phi, doubled_grid(t_grid), k_grid);
        r.holds = wide && stable(*wide, *r.witness_k);
    }
    return r;
}

AlmostIncreasingResult check_almost_increasing_power(const YoungFunction& phi,
                                                     const std::vector<real>& t_grid)
{
    AlmostIncreasingResult res;
    const real ps[] = {1.01L, 1.05L, 1.1L, 1.25L, 1.5L, 2.0L};
    auto ratio = [&](const std::vector<real>& grid, real p) {
        std::vector<real> g;
        g.reserve(grid.size());
        for (real t : grid) g.push_back(phi(t) / std::pow(t, p));
        return almost_increasing_constant(g);
    };
    std::vector<real> wide = doubled_grid(t_grid);
    for (real p : ps) {
        real k1 = ratio(t_grid, p);
        if (!std::isfinite(k1)) continue;
        real k2 = ratio(wide, p);
        if (stable(k1, k2)) {
            res.holds = true;
            res.witness_p = p;
            res.constant = k1;
            return res;
        }
    }
    return res;
}

YClass classify_Y(const YoungFunction& phi)
{
    Thresholds th = thresholds(phi);
    if (is_inf(th.b)) return YClass::Y1;
    // Evaluation at b is the left limit for every left-continuous family here.
    return is_inf(phi(th.b)) ? YClass::Y2 : YClass::Y3;
}

YoungFunction y3_to_y2_majorant(const YoungFunction& phi, real delta)
{
    if (!(delta > 0 && delta < 1)) throw InputError("majorant needs delta in (0,1)");
    if (classify_Y(phi) != YClass::Y3) throw InputError("majorant needs a Y3 input");
    return YoungFunction::majorant(phi, delta);
}

namespace {

std::optional<real> equiv_witness(const YoungFunction& phi, const YoungFunction& psi,
                                  const std::vector<real>& C_grid, const std::vector<real>& grid)
{
    std::vector<real> cs = C_grid;
    std::sort(cs.begin(), cs.end());
    const real slack = 1 + 1e-12L;
    for (real C : cs) {
        bool ok = true;
        for (real t : grid) {
            real mid = psi(t);
            if (phi(t / C) > mid * slack || mid > phi(C * t) * slack) {
                ok = false;
                break;
            }
        }
        if (ok) return C;
    }
    return std::nullopt;
}

} // namespace

EquivResult approx_equiv(const YoungFunction& phi, const YoungFunction& psi,
                         const std::vector<real>& C_grid, const std::vector<real>& t_grid)
{
    EquivResult r;
    r.witness_C = equiv_witness(phi, psi, C_grid, t_grid);
    if (r.witness_C) {
        auto wide = equiv_witness(phi, psi, C_grid, doubled_grid(t_grid));
        r.equiv = wide && stable(*wide, *r.witness_C);
    }
    return r;
}

YoungFunction convex_minorant(const YoungFunction& phi, const std::vector<real>& nodes)
{
    std::vector<real> xs, ys;
    for (real t : nodes) {
        real v = phi(t);
        if (is_inf(v)) break;
        xs.push_back(t);
        ys.push_back(v);
    }
    if (xs.empty() || xs[0] != 0) throw InputError("convex_minorant: nodes must start at 0");
    // lower hull by monotone chain
    std::vector<size_t> hull;
    for (size_t i = 0; i < xs.size(); ++i) {
        while (hull.size() >= 2) {
            size_t a = hull[hull.size() - 2], b = hull.back();
            real cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    std::vector<real> ht, hv;
    for (size_t i : hull) {
        ht.push_back(xs[i]);
        hv.push_back(ys[i]);
    }
    return YoungFunction::tabulated(std::move(ht), std::move(hv));
}

} // namespace okit
