#pragma once

#include <string>
#include <vector>

namespace qst {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Built-in oracle and invariant suite at the default parameters; writes no
/// files.  Covers basis indexing, operator algebra, Hamiltonian structure,
/// collapse-channel structure, closed-form agreement and master-equation
/// invariants.
std::vector<CheckResult> run_self_checks();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qst
