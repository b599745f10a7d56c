#pragma once

#include "padicfk/io_util.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace padicfk {

struct CheckResult {
    std::string id;
    bool passed = false;
    double observed = 0.0;  // the quantity compared against the bound
    double bound = 0.0;
    std::string detail;
};

struct ValidationOptions {
    uint64_t seed = 2024;
    long long mc_samples = 20000;
    int threads = 1;
    // Per-check bound overrides (by check id); mainly for exercising the
    // failure path deliberately.
    std::map<std::string, double> bound_overrides;
};

// Cross-checks each analytic identity against an independent route:
// character-ball-integral, dual-lattice-sandwich, density positivity and
// normalization, moment scaling, log-periodic band, model route agreement,
// semigroup convolution, product-moment factorization, quaternion division,
// model trace identity, rng known answers.
std::vector<CheckResult> run_validation_suite(const ValidationOptions& opts);

Json validation_report(const std::vector<CheckResult>& results);

} // namespace padicfk
