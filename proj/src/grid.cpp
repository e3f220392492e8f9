#include "orlicz_kit/grid.hpp"

#include <cmath>

namespace okit {

std::vector<real> log_grid(real lo, real hi, int count)
{
    std::vector<real> g;
    if (count <= 0) return g;
    if (count == 1) return {lo};
    g.reserve(static_cast<size_t>(count));
    real a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < count; ++i) {
        real s = a + (b - a) * static_cast<real>(i) / static_cast<real>(count - 1);
        g.push_back(std::exp(s));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<real> default_t_grid() { return log_grid(1e-8L, 1e8L, 400); }

std::vector<real> with_sentinels(const std::vector<real>& g)
{
    std::vector<real> out;
    out.reserve(g.size() + 2);
    out.push_back(0);
    out.insert(out.end(), g.begin(), g.end());
    out.push_back(kInf);
    return out;
}

std::vector<real> extended_grid(real lo, real hi, int count, real widen)
{
    return log_grid(lo / widen, hi * widen, 2 * count);
}

std::vector<real> quarter_octave_grid(int kmax)
{
    std::vector<real> g;
    g.reserve(static_cast<size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k) g.push_back(std::exp2(static_cast<real>(k) / 4));
    return g;
}

} // namespace okit
