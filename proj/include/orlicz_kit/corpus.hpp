#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "orlicz_kit/fields.hpp"

namespace okit {

/// Uniform draws from a seeded mt19937_64.  The mapping to [0,1) is done by
/// hand (top 53 bits) so that sequences do not depend on the standard
/// library's distribution implementation.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}
    real uniform() { return static_cast<real>(gen_() >> 11) * 0x1.0p-53L; }
    real uniform(real a, real b) { return a + (b - a) * uniform(); }
    int index(int n) { return static_cast<int>(uniform() * n); }

private:
    std::mt19937_64 gen_;
};

/// A field given in physical coordinates, so the same instance can be
/// resampled at any spacing.
struct FieldSpec {
    std::string label;
    std::function<real(real, real)> fn;
    SampledField sample(int dim, real L, real h) const { return SampledField::sample(dim, L, h, fn); }
};

/// Corpus of compactly supported nonnegative fields in [-1, 1]^n: ball
/// indicators, two-level steps, truncated radial powers and random block
/// fields, cycled in that order.
std::vector<FieldSpec> make_corpus(int dim, int count, std::uint64_t seed);

/// Random piecewise-constant field on `blocks` equal blocks of [-1,1]
/// (1D) with values in [0, 2]; some blocks are zero.
FieldSpec random_blocks(SeededRng& rng, int dim, int blocks);

/// c1 on B(a, r) and c2 on B(a, r/2), c2 > c1.
FieldSpec two_level(real a, real r, real c1, real c2);

FieldSpec indicator(real a, real r);

} // namespace okit
