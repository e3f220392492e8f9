#pragma once

// Nonnegative extended reals.  Stored as long double; +inf is the only
// non-finite value that is allowed to appear.

#include <cmath>
#include <limits>

namespace okit {

using real = long double;

inline constexpr real kInf = std::numeric_limits<real>::infinity();

inline bool is_inf(real x) { return std::isinf(x); }

// c * x with the measure-theoretic convention 0 * inf = 0.
inline real ext_mul(real c, real x)
{
    if (c == 0 || x == 0) return 0;
    return c * x;
}

inline real ext_add(real x, real y) { return x + y; }

// x / y for x, y >= 0: 0/0 is reported as NaN so callers can skip it,
// x/0 with x > 0 is inf.
inline real ext_div(real x, real y)
{
    if (y == 0) return x == 0 ? std::numeric_limits<real>::quiet_NaN() : kInf;
    if (is_inf(y)) return is_inf(x) ? std::numeric_limits<real>::quiet_NaN() : 0;
    return x / y;
}

// Relative closeness with an inf-aware shortcut.
inline bool rel_close(real a, real b, real tol)
{
    if (is_inf(a) || is_inf(b)) return a == b;
    real scale = std::fmax(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) <= tol * scale;
}

} // namespace okit
