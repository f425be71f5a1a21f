#pragma once

#include <string>
#include <vector>

namespace chainbench {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Fast self-contained invariant and property checks spanning every
// module: probability vectors, feedback discipline, estimator
// unbiasedness, schedule identities, tree geometry and accounting,
// approximation bounds, comparator identities, and CSV determinism.
// Everything runs in a few seconds.
std::vector<CheckResult> run_verification();

} // namespace chainbench
