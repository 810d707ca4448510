#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace geodev {

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;   // worst case over the sampled points
    double tolerance = 0.0;
    std::string detail;
};

struct CheckOptions {
    // Test hook: scales every analytic gradient by (1 + gradient_perturbation)
    // before the derivative cross-checks. Zero leaves the models untouched.
    double gradient_perturbation = 0.0;
    std::uint64_t seed = 0;
    int points = 20;
};

// Geometry and energy invariants: finite-difference cross-checks of every
// analytic derivative, Christoffel symbols against an independent solve,
// metric algebra, geodesic speed, flat-metric reduction and model identities.
std::vector<CheckResult> run_checks(const CheckOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);
nlohmann::json check_report(const std::vector<CheckResult>& results);

}  // namespace geodev
