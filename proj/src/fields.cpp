#include "orlicz_kit/fields.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "orlicz_kit/csv.hpp"
#include "orlicz_kit/errors.hpp"

namespace okit {

namespace {

constexpr real kNormTol = 1e-10L;

struct Range {
    long long lo, hi;  // inclusive; empty when lo > hi
};

// Lattice indices whose centres satisfy |centre - c| < w.  Work in index
// units, snapping values within 1e-9 of an integer (or half-integer for the
// centre) so that balls centred on cells or cell boundaries with radii that
// are multiples of h do not pick up neighbours through rounding.
real snap(real x, real step)
{
    real k = std::round(x / step) * step;
    return std::fabs(x - k) < 1e-9L * std::max(real(1), std::fabs(x)) ? k : x;
}

Range lattice_range(const SampledField& f, real c, real w)
{
    if (!(w > 0)) return {0, -1};
    real u = snap((c + f.L()) / f.h() - real(0.5), real(0.5));
    real wr = snap(w / f.h(), real(1));
    long long lo = static_cast<long long>(std::floor(u - wr)) + 1;
    long long hi = static_cast<long long>(std::ceil(u + wr)) - 1;
    return {lo, hi};
}

real sup_of(const std::vector<real>& v)
{
    real m = 0;
    for (real x : v) m = std::max(m, x);
    return m;
}

// Luxemburg modular without the lambda: sum Phi(v/lambda) * scale.
real strong_modular(const YoungFunction& Phi, const std::vector<real>& v, real scale, real lambda)
{
    real s = 0;
    for (real x : v) {
        if (x == 0) continue;
        real y = Phi(x / lambda);
        if (is_inf(y)) return kInf;
        s += y;
    }
    return ext_mul(s, scale);
}

// Distinct magnitudes in decreasing order with the count of samples >= each.
std::vector<std::pair<real, size_t>> upper_counts(std::vector<real> v)
{
    std::sort(v.begin(), v.end(), std::greater<real>());
    std::vector<std::pair<real, size_t>> out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) break;
        if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
        out.emplace_back(v[i], i + 1);
    }
    return out;
}

// max_k Phi(u_k / lambda) * count_k * scale.
real weak_modular(const YoungFunction& Phi, const std::vector<std::pair<real, size_t>>& uc, real scale,
                  real lambda)
{
    real best = 0;
    for (const auto& [u, c] : uc) best = std::max(best, ext_mul(Phi(u / lambda), static_cast<real>(c) * scale));
    return best;
}

real from_homogeneous(real mod1, real p) { return is_inf(mod1) ? kInf : std::pow(mod1, 1 / p); }

real modular_scale(const SampledField& f, const WeightFunction& phi, const Ball& B)
{
    return f.cell_volume() / (ball_volume(f.dim(), B.r) * phi(B.r));
}

} // namespace

SampledField::SampledField(int dim, real L, real h, std::vector<real> values)
    : dim_(dim), L_(L), h_(h), values_(std::move(values))
{
    if (dim != 1 && dim != 2) throw InputError("field dimension must be 1 or 2");
    if (!(h > 0) || !(L > 0)) throw InputError("field needs L > 0 and h > 0");
    N_ = static_cast<int>(std::lround(2 * L / h));
    if (N_ < 1) throw InputError("field window holds no cells");
    size_t expect = dim == 1 ? static_cast<size_t>(N_) : static_cast<size_t>(N_) * N_;
    if (values_.size() != expect) throw InputError("field sample count does not match the grid");
}

SampledField SampledField::zeros(int dim, real L, real h)
{
    int N = static_cast<int>(std::lround(2 * L / h));
    return SampledField(dim, L, h, std::vector<real>(dim == 1 ? N : static_cast<size_t>(N) * N, 0));
}

SampledField SampledField::sample(int dim, real L, real h, const std::function<real(real, real)>& fn)
{
    SampledField f = zeros(dim, L, h);
    for (size_t k = 0; k < f.size(); ++k) {
        Point p = f.point(k);
        f.values_[k] = fn(p[0], p[1]);
    }
    return f;
}

Point SampledField::point(size_t flat) const
{
    if (dim_ == 1) return {centre(static_cast<int>(flat)), 0};
    return {centre(static_cast<int>(flat % N_)), centre(static_cast<int>(flat / N_))};
}

real ball_volume(int dim, real r) { return dim == 1 ? 2 * r : std::numbers::pi_v<real> * r * r; }

BallCells cells_in(const SampledField& f, const Ball& B)
{
    BallCells out;
    const long long N = f.n_per_axis();
    auto clip = [&](Range rg) { return Range{std::max(rg.lo, 0LL), std::min(rg.hi, N - 1)}; };
    if (f.dim() == 1) {
        Range rg = lattice_range(f, B.centre[0], B.r);
        if (rg.hi >= rg.lo) out.lattice_count = static_cast<size_t>(rg.hi - rg.lo + 1);
        Range c = clip(rg);
        if (c.hi >= c.lo) out.runs.emplace_back(c.lo, c.hi + 1);
        return out;
    }
    Range rows = lattice_range(f, B.centre[1], B.r);
    for (long long j = rows.lo; j <= rows.hi; ++j) {
        real dy = (static_cast<real>(j) - snap((B.centre[1] + f.L()) / f.h() - real(0.5), real(0.5))) * f.h();
        real w2 = B.r * B.r - dy * dy;
        if (!(w2 > 0)) continue;
        Range cols = lattice_range(f, B.centre[0], std::sqrt(w2));
        if (cols.hi < cols.lo) continue;
        out.lattice_count += static_cast<size_t>(cols.hi - cols.lo + 1);
        if (j < 0 || j >= N) continue;
        Range c = clip(cols);
        if (c.hi >= c.lo) out.runs.emplace_back(static_cast<size_t>(j * N + c.lo), static_cast<size_t>(j * N + c.hi + 1));
    }
    return out;
}

std::vector<real> magnitudes_in(const SampledField& f, const Ball& B)
{
    std::vector<real> v;
    for (auto [a, b] : cells_in(f, B).runs)
        for (size_t k = a; k < b; ++k) v.push_back(std::fabs(f[k]));
    return v;
}

BallFamily geometric_family(const SampledField& f, real r0, real kappa, int J)
{
    if (!(r0 > 0) || !(kappa > 1) || J < 0) throw InputError("ball family needs r0 > 0, kappa > 1, J >= 0");
    BallFamily F;
    for (size_t k = 0; k < f.size(); ++k) F.centres.push_back(f.point(k));
    for (int j = 0; j <= J; ++j) F.radii.push_back(r0 * std::pow(kappa, static_cast<real>(j)));
    return F;
}

BallFamily default_family(const SampledField& f)
{
    BallFamily F;
    for (size_t k = 0; k < f.size(); ++k) F.centres.push_back(f.point(k));
    for (int k = 0;; ++k) {
        real r = f.h() * std::exp2(static_cast<real>(k) / 2);
        if (r > 2 * f.L() * (1 + 1e-12L)) break;
        F.radii.push_back(r);
    }
    return F;
}

real distribution(const SampledField& f, const std::optional<Ball>& G, real t)
{
    if (t < 0) throw InputError("distribution needs t >= 0");
    size_t count = 0;
    if (!G) {
        for (real v : f.values())
            if (std::fabs(v) > t) ++count;
    } else {
        for (auto [a, b] : cells_in(f, *G).runs)
            for (size_t k = a; k < b; ++k)
                if (std::fabs(f[k]) > t) ++count;
    }
    return static_cast<real>(count) * f.cell_volume();
}

namespace {

template <class Tr>
real ball_average(const SampledField& f, const Ball& B, Tr tr)
{
    BallCells c = cells_in(f, B);
    if (c.lattice_count == 0) throw InputError("ball contains no cell centres (radius below resolution)");
    real s = 0;
    for (auto [a, b] : c.runs)
        for (size_t k = a; k < b; ++k) s += tr(f[k]);
    return s / static_cast<real>(c.lattice_count);
}

} // namespace

real ball_mean(const SampledField& f, const Ball& B)
{
    return ball_average(f, B, [](real x) { return x; });
}

real ball_abs_mean(const SampledField& f, const Ball& B)
{
    return ball_average(f, B, [](real x) { return std::fabs(x); });
}

real norm_from_modular(const std::function<real(real)>& modular, real start, std::string* diagnostic)
{
    real hi = start, lo = start;
    while (!(modular(hi) <= 1)) {
        hi *= 2;
        if (hi > start * 1e30L) {
            if (diagnostic) *diagnostic = "bracket expansion exceeded 1e30";
            return kInf;
        }
    }
    if (hi == start) {
        int guard = 0;
        while (modular(lo) <= 1) {
            lo /= 2;
            if (++guard > 16000) return 0;
        }
        hi = lo * 2;
    } else {
        lo = hi / 2;
    }
    while (hi / lo > 1 + kNormTol) {
        real mid = std::sqrt(lo * hi);
        if (modular(mid) <= 1)
            hi = mid;
        else
            lo = mid;
    }
    return std::sqrt(lo * hi);
}

real luxemburg_norm(const SampledField& f, const YoungFunction& Phi, const WeightFunction& phi, const Ball& B)
{
    std::vector<real> v = magnitudes_in(f, B);
    real m = sup_of(v);
    if (m == 0) return 0;
    real scale = modular_scale(f, phi, B);
    if (auto p = Phi.homogeneity()) return from_homogeneous(strong_modular(Phi, v, scale, 1), *p);
    return norm_from_modular([&](real lam) { return strong_modular(Phi, v, scale, lam); }, m);
}

real weak_norm(const SampledField& f, const YoungFunction& Phi, const WeightFunction& phi, const Ball& B)
{
    std::vector<real> v = magnitudes_in(f, B);
    real m = sup_of(v);
    if (m == 0) return 0;
    real scale = modular_scale(f, phi, B);
    auto uc = upper_counts(std::move(v));
    if (auto p = Phi.homogeneity()) return from_homogeneous(weak_modular(Phi, uc, scale, 1), *p);
    return norm_from_modular([&](real lam) { return weak_modular(Phi, uc, scale, lam); }, m);
}

GlobalNorm global_norm(const SampledField& f, const YoungFunction& Phi, const WeightFunction& phi,
                       const BallFamily& F, bool weak)
{
    if (F.size() == 0) throw InputError("ball family is empty");
    GlobalNorm g;
    bool first = true;
    auto offer = [&](real v, const Ball& B) {
        if (first || v > g.value) {
            g.value = v;
            g.argmax = B;
            first = false;
        }
    };
    auto p = Phi.homogeneity();
    if (f.dim() == 1 && p && !weak) {
        // modular at lambda = 1 from prefix sums of Phi(|f|)
        std::vector<real> pre(f.size() + 1, 0);
        for (size_t k = 0; k < f.size(); ++k) pre[k + 1] = pre[k] + Phi(std::fabs(f[k]));
        for (real r : F.radii)
            for (const Point& c : F.centres) {
                Ball B{c, r};
                BallCells cells = cells_in(f, B);
                if (cells.lattice_count == 0) {
                    ++g.skipped;
                    continue;
                }
                real s = 0;
                for (auto [a, b] : cells.runs) s += pre[b] - pre[a];
                offer(from_homogeneous(s * modular_scale(f, phi, B), *p), B);
            }
        return g;
    }
    for (real r : F.radii)
        for (const Point& c : F.centres) {
            Ball B{c, r};
            if (cells_in(f, B).lattice_count == 0) {
                ++g.skipped;
                continue;
            }
            offer(weak ? weak_norm(f, Phi, phi, B) : luxemburg_norm(f, Phi, phi, B), B);
        }
    return g;
}

real orlicz_norm(const SampledField& f, const YoungFunction& Phi)
{
    std::vector<real> v;
    for (real x : f.values()) v.push_back(std::fabs(x));
    real m = sup_of(v);
    if (m == 0) return 0;
    if (auto p = Phi.homogeneity()) return from_homogeneous(strong_modular(Phi, v, f.cell_volume(), 1), *p);
    return norm_from_modular([&](real lam) { return strong_modular(Phi, v, f.cell_volume(), lam); }, m);
}

HolderResult holder_pairing(const SampledField& f, const SampledField& g, const YoungFunction& Phi,
                            const YoungFunction& Phi_conj, const WeightFunction& phi, const Ball& B)
{
    if (f.size() != g.size() || f.h() != g.h() || f.dim() != g.dim())
        throw InputError("holder_pairing needs fields on the same grid");
    HolderResult res;
    real s = 0;
    for (auto [a, b] : cells_in(f, B).runs)
        for (size_t k = a; k < b; ++k) s += std::fabs(f[k] * g[k]);
    res.lhs = s * modular_scale(f, phi, B);
    res.rhs = ext_mul(luxemburg_norm(f, Phi, phi, B), luxemburg_norm(g, Phi_conj, phi, B));
    res.ok = res.lhs <= 2 * res.rhs * (1 + 1e-6L);
    return res;
}

WeakTypeIdentity weak_type_identity(const SampledField& f, const YoungFunction& Phi, const std::optional<Ball>& B)
{
    std::vector<real> v;
    if (B)
        v = magnitudes_in(f, *B);
    else
        for (real x : f.values()) v.push_back(std::fabs(x));
    const real cell = f.cell_volume();
    WeakTypeIdentity w;

    auto uc = upper_counts(v);
    for (const auto& [u, c] : uc) w.s1 = std::max(w.s1, ext_mul(Phi(u), static_cast<real>(c) * cell));

    std::vector<real> pv;
    for (real x : v) pv.push_back(Phi(x));
    for (const auto& [u, c] : upper_counts(pv)) w.s3 = std::max(w.s3, ext_mul(u, static_cast<real>(c) * cell));

    // t -> m(B, f, Phi^{-1}(t)) is a step function; on each open interval
    // between consecutive breakpoints Phi(u_k) evaluate it once at the
    // midpoint and pair it with the right endpoint.
    std::vector<real> T{0};
    bool has_inf = false;
    for (const auto& [u, c] : uc) {
        real y = Phi(u);
        if (is_inf(y))
            has_inf = true;
        else
            T.push_back(y);
    }
    std::sort(T.begin(), T.end());
    T.erase(std::unique(T.begin(), T.end()), T.end());
    auto m_at = [&](real t) {
        real thr = gen_inverse(Phi, t);
        size_t n = 0;
        for (real x : v)
            if (x > thr) ++n;
        return static_cast<real>(n) * cell;
    };
    for (size_t i = 1; i < T.size(); ++i) w.s2 = std::max(w.s2, T[i] * m_at((T[i - 1] + T[i]) / 2));
    if (has_inf) {
        real t = T.back() + 1;
        if (m_at(t) > 0) w.s2 = kInf;
    }

    w.ok = rel_close(w.s1, w.s2, 1e-9L) && rel_close(w.s2, w.s3, 1e-9L) && rel_close(w.s1, w.s3, 1e-9L);
    return w;
}

SampledField read_field_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open field file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        rows.push_back(std::move(cells));
    }
    if (rows.empty()) throw InputError(path + ": empty field file");
    if (rows[0].size() == 3 && rows[0][0] == "n") {
        if (rows.size() < 2 || rows[1].size() != 3) throw InputError(path + ": missing n,L,h line");
        real n = parse_real(rows[1][0]), L = parse_real(rows[1][1]), h = parse_real(rows[1][2]);
        if (n != 2) throw InputError(path + ": grid header must have n = 2");
        std::vector<real> vals;
        for (size_t i = 2; i < rows.size(); ++i)
            for (const auto& c : rows[i]) vals.push_back(parse_real(c));
        return SampledField(2, L, h, std::move(vals));
    }
    size_t start = 0;
    if (rows[0].size() == 2 && rows[0][0] == "x") start = 1;
    std::vector<real> x, v;
    for (size_t i = start; i < rows.size(); ++i) {
        if (rows[i].size() != 2) throw InputError(path + ": expected two columns x,value");
        x.push_back(parse_real(rows[i][0]));
        v.push_back(parse_real(rows[i][1]));
    }
    if (x.size() < 2) throw InputError(path + ": need at least two samples");
    real h = (x.back() - x.front()) / static_cast<real>(x.size() - 1);
    if (!(h > 0)) throw InputError(path + ": x must increase");
    for (size_t i = 1; i < x.size(); ++i)
        if (std::fabs(x[i] - x[i - 1] - h) > 1e-6L * h) throw InputError(path + ": x must be equally spaced");
    real L = h * static_cast<real>(x.size()) / 2;
    if (std::fabs(x.front() + L - h / 2) > 1e-6L * h) throw InputError(path + ": window must be centred at 0");
    return SampledField(1, L, h, std::move(v));
}

void write_field_csv(const SampledField& f, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw InputError("cannot write field file: " + path);
    if (f.dim() == 1) {
        out << "x,value\n";
        for (size_t k = 0; k < f.size(); ++k) out << format_real(f.centre(static_cast<int>(k))) << ',' << format_real(f[k]) << '\n';
        return;
    }
    out << "n,L,h\n2," << format_real(f.L()) << ',' << format_real(f.h()) << '\n';
    const int N = f.n_per_axis();
    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) out << (i ? "," : "") << format_real(f[static_cast<size_t>(j) * N + i]);
        out << '\n';
    }
}

} // namespace okit
