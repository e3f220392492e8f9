#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orlicz_kit/ext_real.hpp"

namespace okit {

/// Extended-real valued increasing function on [0, inf] with Phi(0) = 0,
/// left-continuous below its blow-up point.
class YoungFunction {
public:
    enum class Family {
        Power,             // t^p
        PowerOverP,        // t^p / p
        ScaledPower,       // c t^p
        CappedLinear,      // t on [0,1], inf beyond
        ShiftedLinear,     // max(0, t - 1)
        ShiftedSquare,     // max(0, t^2 - 4)
        ShiftedSquareConj, // 2t on [0,4], t^2/4 + 4 beyond
        ExpPower,          // e^{1 - 1/t^p} for t <= 1, e^{t^p - 1} beyond
        Jump,              // 0 on [0,c], inf beyond
        Tabulated,         // piecewise linear through (t_i, v_i)
        NumericConjugate,  // sup_u (t u - base(u)) evaluated numerically
        Majorant,          // base + reciprocal-gap blow-up at b(base)
    };

    static YoungFunction power(real p);
    static YoungFunction power_over_p(real p);
    static YoungFunction scaled_power(real c, real p);
    static YoungFunction capped_linear();
    static YoungFunction shifted_linear();
    static YoungFunction shifted_square();
    static YoungFunction shifted_square_conj();
    static YoungFunction exp_power(real p);
    static YoungFunction jump(real c = 1);
    /// Nodes must start at t = 0 with value 0 and be nondecreasing; a value of
    /// inf makes the function inf past the preceding node.  Past the last
    /// finite node the last segment is extended linearly.
    static YoungFunction tabulated(std::vector<real> t, std::vector<real> v);
    static YoungFunction tabulated_from_csv(const std::string& path);
    static YoungFunction numeric_conjugate(const YoungFunction& base);
    static YoungFunction majorant(const YoungFunction& base, real delta);

    Family family() const { return family_; }
    real p() const { return p_; }
    real c() const { return c_; }
    const std::string& label() const { return label_; }
    const std::vector<real>& table_t() const { return tab_t_; }
    const std::vector<real>& table_v() const { return tab_v_; }
    const YoungFunction* base() const { return base_.get(); }
    real delta() const { return delta_; }

    real operator()(real t) const;

    /// Degree of homogeneity when Phi(s t) = s^p Phi(t), otherwise empty.
    std::optional<real> homogeneity() const;

private:
    YoungFunction() = default;

    Family family_ = Family::Power;
    real p_ = 1;
    real c_ = 1;
    real delta_ = 0;
    real base_b_ = kInf;
    std::vector<real> tab_t_, tab_v_;
    std::shared_ptr<const YoungFunction> base_;
    std::string label_;
};

struct Thresholds {
    real a = 0;
    real b = kInf;
};

enum class YClass { Y1, Y2, Y3 };

std::string to_string(YClass c);

real eval(const YoungFunction& phi, real t);
Thresholds thresholds(const YoungFunction& phi);

/// inf{t >= 0 : Phi(t) > u}, with the value inf at u = inf.
real gen_inverse(const YoungFunction& phi, real u);

/// Convex conjugate, in closed form where one is known.
YoungFunction complementary(const YoungFunction& phi);

struct Delta2Result {
    bool holds = false;
    real constant = kInf;
};
Delta2Result check_delta2(const YoungFunction& phi, const std::vector<real>& t_grid);

struct Nabla2Result {
    bool holds = false;
    std::optional<real> witness_k;
};
Nabla2Result check_nabla2(const YoungFunction& phi, const std::vector<real>& t_grid,
                          const std::vector<real>& k_grid);
std::vector<real> default_k_grid();

/// Whether Phi(t)/t^p is almost increasing for some p > 1 on the grid.
struct AlmostIncreasingResult {
    bool holds = false;
    std::optional<real> witness_p;
    real constant = kInf;
};
AlmostIncreasingResult check_almost_increasing_power(const YoungFunction& phi,
                                                     const std::vector<real>& t_grid);

YClass classify_Y(const YoungFunction& phi);

YoungFunction y3_to_y2_majorant(const YoungFunction& phi, real delta);

struct EquivResult {
    bool equiv = false;
    std::optional<real> witness_C;
};
EquivResult approx_equiv(const YoungFunction& phi, const YoungFunction& psi,
                         const std::vector<real>& C_grid, const std::vector<real>& t_grid);

/// Greatest convex minorant of Phi sampled at the given nodes (which must
/// start at 0), returned as a tabulated function.
YoungFunction convex_minorant(const YoungFunction& phi, const std::vector<real>& nodes);

/// Doubled grid used by the finite-sample stability rule: log-extent and
/// point count both doubled around the geometric centre.
std::vector<real> doubled_grid(const std::vector<real>& g);

} // namespace okit
