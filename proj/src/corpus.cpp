#include "orlicz_kit/corpus.hpp"

#include <cmath>
#include <cstdio>

namespace okit {

namespace {

std::string fmt(const char* f, real a, real b, real c = 0)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, f, static_cast<double>(a), static_cast<double>(b), static_cast<double>(c));
    return buf;
}

real dist(real x, real y, real a, real b) { return std::hypot(x - a, y - b); }

} // namespace

FieldSpec indicator(real a, real r)
{
    return {fmt("indicator(a=%.4g,r=%.4g)", a, r), [a, r](real x, real y) { return dist(x, y, a, 0) < r ? 1.0L : 0.0L; }};
}

FieldSpec two_level(real a, real r, real c1, real c2)
{
    return {fmt("two_level(a=%.4g,r=%.4g,c2=%.4g)", a, r, c2), [a, r, c1, c2](real x, real y) {
                real d = dist(x, y, a, 0);
                return d < r / 2 ? c2 : (d < r ? c1 : 0.0L);
            }};
}

FieldSpec random_blocks(SeededRng& rng, int dim, int blocks)
{
    std::vector<real> v(dim == 1 ? blocks : blocks * blocks);
    for (real& x : v) x = rng.uniform() < 0.25L ? 0 : rng.uniform(0, 2);
    return {"random_blocks(" + std::to_string(blocks) + ")", [v, blocks, dim](real x, real y) {
                if (std::fabs(x) >= 1 || std::fabs(y) >= 1) return 0.0L;
                int i = std::min(blocks - 1, static_cast<int>((x + 1) / 2 * blocks));
                if (dim == 1) return v[i];
                int j = std::min(blocks - 1, static_cast<int>((y + 1) / 2 * blocks));
                return v[j * blocks + i];
            }};
}

std::vector<FieldSpec> make_corpus(int dim, int count, std::uint64_t seed)
{
    SeededRng rng(seed);
    std::vector<FieldSpec> out;
    for (int k = 0; k < count; ++k) {
        switch (k % 4) {
        case 0: {
            real r = rng.uniform(0.2L, 0.6L);
            out.push_back(indicator(rng.uniform(-1 + r, 1 - r), r));
            break;
        }
        case 1: {
            real r = rng.uniform(0.3L, 0.6L);
            real a = rng.uniform(-1 + r, 1 - r);
            real c1 = rng.uniform(0.5L, 1);
            out.push_back(two_level(a, r, c1, c1 + rng.uniform(0.5L, 2)));
            break;
        }
        case 2: {
            // |x - a|^{-beta} on B(a, R), capped at a fixed scale so the
            // field does not change under refinement
            real beta = rng.uniform(0.1L, 0.45L) * dim;
            real R = rng.uniform(0.3L, 0.7L);
            real a = rng.uniform(-1 + R, 1 - R);
            out.push_back({fmt("radial_power(a=%.4g,R=%.4g,beta=%.4g)", a, R, beta), [a, R, beta](real x, real y) {
                               real d = dist(x, y, a, 0);
                               if (d >= R) return 0.0L;
                               return std::pow(std::max(d, real(0.05)), -beta);
                           }});
            break;
        }
        default:
            out.push_back(random_blocks(rng, dim, 4 + rng.index(9)));
        }
    }
    return out;
}

} // namespace okit
