#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orlicz_kit/weights.hpp"
#include "orlicz_kit/young.hpp"

namespace okit {

enum class Verdict { Holds, Fails, Inconclusive };
std::string to_string(Verdict v);

/// lhs(r) <= A rhs(r) sampled on an r-grid.
///
/// holds: ratio_sup finite and within 1% of its value on the widened grid.
/// fails: a tail integral diverged, or the ratio is monotone in r and grows
/// by more than 10x across the grid.  Anything else is inconclusive.
struct ConditionReport {
    std::string condition_id;
    std::vector<real> r_grid, lhs, rhs;
    real ratio_sup = kInf;
    real ratio_sup_widened = kInf;
    real stability = kInf;  // relative change of ratio_sup on the widened grid
    real growth = 0;        // max/min of the ratio across r_grid
    bool monotone = false;
    Verdict verdict = Verdict::Inconclusive;
    std::string diagnostic;
    /// Only for Mr_A: whether Psi^{-1}/Phi^{-1} is almost decreasing, or
    /// phi(r) -> 0 as r -> inf.
    std::optional<bool> side_hypothesis;
    std::string side_detail;
};

/// int_0^r rho(t)/t dt Phi^{-1}(phi(r)) + int_r^inf rho(t) Phi^{-1}(phi(t))/t dt
/// against Psi^{-1}(phi(r)).  Throws PreconditionError if rho is not
/// integrable at the origin.
ConditionReport eval_Ir_A(const YoungFunction& Phi, const YoungFunction& Psi, const WeightFunction& phi,
                          const KernelFunction& rho, const std::vector<real>& r_grid);

/// Only the first term of eval_Ir_A.
ConditionReport eval_Ir_Aprime(const YoungFunction& Phi, const YoungFunction& Psi, const WeightFunction& phi,
                               const KernelFunction& rho, const std::vector<real>& r_grid);

/// (sup_{0<t<=r} rho(t)) Phi^{-1}(phi(r)) against Psi^{-1}(phi(r)).
ConditionReport eval_Mr_A(const YoungFunction& Phi, const YoungFunction& Psi, const WeightFunction& phi,
                          const KernelFunction& rho, const std::vector<real>& r_grid);

/// int_0^r phi(t) t^{n-1} dt against phi(r) r^n.
ConditionReport check_weight_integral(const WeightFunction& phi, int n, const std::vector<real>& r_grid);

/// q = lambda p / (lambda + alpha p), the target exponent of the power case.
/// Throws InputError outside 1 <= p, 0 < alpha, -n <= lambda < 0, and
/// PreconditionError when alpha + lambda/p >= 0.
real solve_adams_exponent(real p, real alpha, real lambda, int n);

} // namespace okit
