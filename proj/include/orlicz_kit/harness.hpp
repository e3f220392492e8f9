#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orlicz_kit/ext_real.hpp"

namespace okit {

// The suite runs on 1D grids; dim is carried for reports only.
struct HarnessConfig {
    int dim = 1;
    real L = 4;                  // window half-width
    real h = 1.0L / 32;          // base spacing; refinements halve it
    int corpus_size = 50;
    std::uint64_t seed = 20240601;
    unsigned threads = 0;        // 0: ORLICZ_KIT_THREADS or hardware
};

/// One executable restatement.  For positive cases pass means a finite
/// fitted constant with drift below the case threshold; for negative cases
/// pass means the constant diverged as prescribed (grew by at least 2x per
/// refinement).
struct PropertyCase {
    std::string statement_id;
    std::string variant;
    std::string inputs;
    bool negative = false;
    bool skipped = false;           // gated off; counts as neither pass nor fail
    real fitted_constant = kInf;    // on the geometric grid {2^{k/4}}
    std::vector<real> exact_constants;  // minimal constant per refinement level
    real refinement_drift = kInf;   // max relative change between levels
    real drift_threshold = 0.10L;
    size_t violations = 0;
    bool pass = false;
    std::string diagnostics;
};

/// Statement ids in suite order.
const std::vector<std::string>& statement_ids();

/// Smallest 2^{k/4} (k integer) at or above c.
real fit_to_grid(real c);

/// Runs every case whose statement id equals `filter` (all when empty);
/// "ID:variant" selects a single case.  Throws UnknownIdError for an
/// unknown id or variant.  Results are in suite order
/// regardless of scheduling.
std::vector<PropertyCase> run_suite(const HarnessConfig& cfg, const std::string& filter = "");

/// Cases of a single statement, run serially.
std::vector<PropertyCase> run_statement(const HarnessConfig& cfg, const std::string& id);

bool suite_passed(const std::vector<PropertyCase>& cases);

/// Deterministic serialisations.
std::string suite_json(const HarnessConfig& cfg, const std::vector<PropertyCase>& cases);
std::string suite_csv(const std::vector<PropertyCase>& cases);

unsigned thread_count(unsigned requested);

} // namespace okit
