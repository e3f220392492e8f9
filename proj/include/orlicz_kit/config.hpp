#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orlicz_kit/fields.hpp"
#include "orlicz_kit/harness.hpp"
#include "orlicz_kit/weights.hpp"
#include "orlicz_kit/young.hpp"

namespace okit {

/// A catalog entry: family name, numeric parameters and, for tabulated
/// families, a CSV path.
struct FunctionSpec {
    std::string family;
    std::map<std::string, real> params;
    std::string path;
};

/// Run configuration.  Text format:
///
///   # comment
///   [grid]
///   n = 1
///   L = 4
///   h = 0.03125
///   [phi]
///   family = power
///   p = 2
///
/// Sections: grid, phi, psi, weight, kernel, family, rgrid, run.  Numbers
/// are decimal literals; "inf" is accepted where a real is expected.
struct RunConfig {
    int dim = 1;
    real L = 4;
    real h = 1.0L / 32;

    FunctionSpec phi{"power", {{"p", 2}}, ""};
    FunctionSpec psi{"power", {{"p", 4}}, ""};
    FunctionSpec weight{"power", {{"lambda", -1}}, ""};
    FunctionSpec kernel{"power", {{"alpha", 0.25L}}, ""};

    // geometric ball family; the default family is used when unset
    std::optional<real> family_r0;
    real family_kappa = 2;
    int family_J = 10;

    real rgrid_lo = 1e-6L, rgrid_hi = 1e6L;
    int rgrid_count = 200;

    real tolerance = 1e-9L;
    std::uint64_t seed = 20240601;
    int corpus_size = 50;
    unsigned threads = 0;
    std::string out_dir = "out";
};

/// Throws InputError on syntax errors, unknown sections or keys, values of
/// the wrong type and violated invariants (tolerance > 0, h <= L/100).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

YoungFunction make_young(const FunctionSpec& s);
WeightFunction make_weight(const FunctionSpec& s, int dim);
KernelFunction make_kernel(const FunctionSpec& s);

BallFamily make_family(const RunConfig& c, const SampledField& f);
std::vector<real> make_r_grid(const RunConfig& c);
HarnessConfig harness_config(const RunConfig& c);

} // namespace okit
