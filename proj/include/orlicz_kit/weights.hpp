#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "orlicz_kit/ext_real.hpp"
#include "orlicz_kit/quadrature.hpp"

namespace okit {

/// Positive function of the radius.  Everything is evaluated through
/// log_eval(s) = log theta(e^s) so that very large and very small radii
/// stay representable.
class RadialFunction {
public:
    using LogFn = std::function<real(real)>;

    RadialFunction(std::string label, LogFn log_fn)
        : label_(std::move(label)), log_fn_(std::make_shared<LogFn>(std::move(log_fn)))
    {
    }

    real log_eval(real s) const { return (*log_fn_)(s); }
    real eval_log(real s) const { return std::exp(log_eval(s)); }
    real operator()(real r) const { return eval_log(std::log(r)); }
    const std::string& label() const { return label_; }
    /// Log radii where a tabulated function has corners; class checks add
    /// them to the sampling grid since extremes sit there.
    const std::vector<real>& log_breaks() const { return breaks_; }
    void set_log_breaks(std::vector<real> b) { breaks_ = std::move(b); }

private:
    std::string label_;
    std::shared_ptr<LogFn> log_fn_;
    std::vector<real> breaks_;
};

/// Weight phi(r).  The dimension n is carried for the r^{-n} family and for
/// class checks.
class WeightFunction : public RadialFunction {
public:
    static WeightFunction power(real lambda);
    static WeightFunction power_with_log(real lambda, real beta);  // r^lambda (1+|log r|)^beta
    static WeightFunction constant(real c = 1);
    static WeightFunction reciprocal_power_n(int n);
    /// log-log interpolation between nodes, end slopes extended.
    static WeightFunction tabulated(std::vector<real> r, std::vector<real> v);
    static WeightFunction tabulated_from_csv(const std::string& path);
    static WeightFunction custom(std::string label, LogFn log_fn);

private:
    using RadialFunction::RadialFunction;
};

/// Kernel rho(t) with the window constants K1 < K2 of the sup condition.
class KernelFunction : public RadialFunction {
public:
    static KernelFunction power(real alpha);
    /// 1/log(1/r)^{alpha+1} near 0 and log(r)^{alpha-1} near infinity,
    /// glued as log(e + 1/r)^{-(alpha+1)} * log(e + r)^{alpha-1}.
    static KernelFunction log_kernel(real alpha);
    static KernelFunction bessel_type(real alpha);  // min(r^alpha, e^{-r/2})
    static KernelFunction constant(real c = 1);
    static KernelFunction tabulated(std::vector<real> r, std::vector<real> v);
    static KernelFunction tabulated_from_csv(const std::string& path);
    static KernelFunction custom(std::string label, LogFn log_fn);

    KernelFunction with_window(real K1, real K2) const;
    real K1() const { return K1_; }
    real K2() const { return K2_; }
    bool is_constant_one() const { return unit_; }

private:
    using RadialFunction::RadialFunction;
    real K1_ = 1, K2_ = 2;
    bool unit_ = false;
};

struct ClassCheck {
    bool holds = false;
    real C = kInf;
};

std::vector<real> default_r_grid();

/// max over r < s of max(phi(s)/phi(r), phi(r) r^n / (phi(s) s^n)).
ClassCheck check_gdec(const RadialFunction& phi, int n, const std::vector<real>& r_grid);

/// sup over grid pairs with 1/2 <= r/s <= 2 of theta(r)/theta(s).
ClassCheck check_doubling(const RadialFunction& theta, const std::vector<real>& r_grid);

/// max over r < s of g(s)/g(r) for g sampled in log form (almost decreasing
/// constant; 1 means nonincreasing).
real almost_decreasing_constant(const std::vector<real>& log_values);
ClassCheck check_almost_decreasing(const RadialFunction& g, const std::vector<real>& r_grid);

struct IntRhoResult {
    bool finite = false;
    real value = kInf;
    std::string diagnostic;
};
IntRhoResult check_int_rho(const KernelFunction& rho);

/// int_{K1 r}^{K2 r} rho(t)/t dt.
real tilde_rho(const KernelFunction& rho, real r);

ClassCheck check_sup_rho(const KernelFunction& rho, const std::vector<real>& r_grid);

/// Strictly decreasing equivalent of a weight, tabulated on the grid.
WeightFunction strictify(const WeightFunction& phi, int n, const std::vector<real>& r_grid);

/// Stability grid for weights and kernels: range widened 10x per side and
/// density doubled.
std::vector<real> widened_grid(const std::vector<real>& g);

} // namespace okit
