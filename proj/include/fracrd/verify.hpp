#pragma once

#include <string>
#include <vector>

namespace fracrd {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Property bundle behind `fracrd verify`: Getoor residuals, operator
/// symmetry/PSD, the comparison-principle cases, weighted-mass monotonicity,
/// dual-forward equivalence, fixed-point behavior, and the structural
/// checkers on every shipped preset.
std::vector<CheckResult> run_verification(int threads = 1);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace fracrd
