#pragma once

#include <string>

#include "orlicz_kit/fields.hpp"
#include "orlicz_kit/weights.hpp"
#include "orlicz_kit/young.hpp"

namespace okit {

struct OperatorResult {
    SampledField field;
    std::string op_id;
    std::string kernel_id;
    std::string family_id;
    std::string diagnostics;
};

/// Uncentred maximal function over the family: max over B containing x of
/// the mean of |f| on B.  Throws if some grid point lies in no ball.
OperatorResult hl_maximal(const SampledField& f, const BallFamily& F);

/// int rho(|x-y|)/|x-y|^n f(y) dy: a cell sum over the other cells plus the
/// core f(x) sigma_n int_0^{r_c} rho(t)/t dt, r_c the radius of the ball with
/// the volume of one cell.  Throws PreconditionError when rho is not
/// integrable at the origin.
OperatorResult frac_integral(const SampledField& f, const KernelFunction& rho);

/// max over B(a,r) in F containing x of rho(r) times the mean of |f| on B.
OperatorResult frac_maximal(const SampledField& f, const KernelFunction& rho, const BallFamily& F);

struct FarSupportBound {
    real max_on_B = 0;
    real scale = 0;  // Phi^{-1}(phi(r)) ||f||
    real ratio = 0;  // max_on_B / scale, the constant needed
};
/// Checks that f vanishes on 2B, then compares max_B Mf with
/// Phi^{-1}(phi(r)) times the global norm of f over the family.
FarSupportBound far_support_bound(const SampledField& f, const YoungFunction& Phi, const WeightFunction& phi,
                                  const Ball& B, bool weak, const BallFamily& F);

std::string family_id(const BallFamily& F);

} // namespace okit
