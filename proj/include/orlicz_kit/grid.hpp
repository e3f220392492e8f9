#pragma once

#include <vector>

#include "orlicz_kit/ext_real.hpp"

namespace okit {

// count log-spaced points in [lo, hi], endpoints included.
std::vector<real> log_grid(real lo, real hi, int count);

// Default t/u grid: 400 log-spaced points in [1e-8, 1e8].
std::vector<real> default_t_grid();

// Same grid with the 0 and inf sentinels appended at the ends.
std::vector<real> with_sentinels(const std::vector<real>& g);

// Grid used for stability checks: range widened by `widen` on each side
// (multiplicatively) and point count doubled.
std::vector<real> extended_grid(real lo, real hi, int count, real widen = 10);

// Geometric constant grid {2^{k/4} : k = 0..kmax}.
std::vector<real> quarter_octave_grid(int kmax = 160);

} // namespace okit
