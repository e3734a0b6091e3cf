#pragma once

#include <string>
#include <vector>

namespace tritter {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    /// One-line summary of what was measured (worst deviation, counts, ...).
    std::string detail;
    /// Extra findings worth printing (suspected errata, per-lambda roots).
    std::vector<std::string> notes;
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;

    bool all_pass() const;
};

/// Lambda grid of the lossy checks: 0.1, 0.2, ..., 0.9.
std::vector<double> verify_lambda_grid();

/// Transmissivity grid of the lossy checks: 0, 0.05, ..., 1.
std::vector<double> verify_t_grid();

CriterionResult check_golden_cm();
CriterionResult check_convention_closure();
CriterionResult check_ideal_closed_forms();
CriterionResult check_lossy_closed_forms();
CriterionResult check_thresholds();
CriterionResult check_pairwise_steering();
CriterionResult check_monogamy();
CriterionResult check_hierarchy();
CriterionResult check_rankings();
CriterionResult check_invariance_and_determinism();

/// All ten checks, in order.
VerifyReport run_acceptance();

/// "[PASS] 3 ideal closed forms: ..." style line.
std::string summary_line(const CriterionResult& c);

} // namespace tritter
