#pragma once

#include <string>
#include <vector>

#include "bellbox/scan.hpp"
#include "bellbox/solver.hpp"

namespace bellbox {

struct ClaimResult {
    std::string id;
    std::string statement;
    std::string status;  // pass | fail | report-only
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::vector<std::string> notes;
};

struct VerificationReport {
    std::vector<ClaimResult> claims;
    // Report-only entries never fail the suite.
    bool all_passed() const;
};

// Stable claim identifiers, in execution order.
const std::vector<std::string>& verification_claim_ids();

// Runs the fixed claim suite, or the subset named in `only`. Unknown ids in
// `only` raise ParseError. Results are deterministic for a fixed config.
VerificationReport verify_claims(const SolverConfig& config,
                                 const std::vector<std::string>& only = {});

}  // namespace bellbox
