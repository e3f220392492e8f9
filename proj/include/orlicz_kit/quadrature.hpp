#pragma once

#include <functional>
#include <string>

#include "orlicz_kit/ext_real.hpp"

namespace okit {

using LogIntegrand = std::function<real(real)>;  // s -> F(e^s)

struct QuadResult {
    real value = 0;
    bool finite = true;
    std::string diagnostic;
};

// Adaptive Simpson on [a, b]; interval halving until the local change is
// below rel_tol relative to the running estimate.
real adaptive_simpson(const std::function<real(real)>& f, real a, real b, real rel_tol,
                      int max_depth = 30);

// int_a^b F(t) dt / t computed as int_{log a}^{log b} F(e^s) ds.
real integrate_dt_over_t(const LogIntegrand& g, real a, real b, real rel_tol = 1e-10L);

// int_0^r F(t) dt / t.  The half line in s = log t is mapped through
// s = log r - (e^w - 1) and integrated in unit chunks of w.  Divergence is
// declared when four consecutive chunks fail to shrink while each adds more
// than 1% to the running value.
QuadResult integrate_to_zero(const LogIntegrand& g, real r, real rel_tol = 1e-10L);

// int_r^inf F(t) dt / t, same scheme mirrored.
QuadResult integrate_to_inf(const LogIntegrand& g, real r, real rel_tol = 1e-10L);

} // namespace okit
