#pragma once

#include <vector>

#include "orlicz_kit/weights.hpp"
#include "orlicz_kit/young.hpp"

namespace okit {

/// The seven reference Young functions: power(2), power_over_p(3),
/// capped_linear, shifted_square, exp_power(1), jump(1) and a convex table.
std::vector<YoungFunction> young_catalog();

/// Convex piecewise-linear table through (k, k^2/2), k = 0..10.
YoungFunction catalog_table();

/// Weights of the class G^dec in dimension n.
std::vector<WeightFunction> weight_catalog(int n);

/// Admissible kernels (integrable at the origin, sup condition satisfied).
std::vector<KernelFunction> kernel_catalog();

} // namespace okit
