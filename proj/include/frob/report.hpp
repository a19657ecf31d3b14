#pragma once

#include <string>
#include <vector>

namespace frob {

enum class CheckStatus { Pass, Fail, Skipped, Unsolved };

struct CheckOutcome {
    std::string id;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;  // residual excerpt or skip reason
    double seconds = 0.0;
};

struct VerificationReport {
    std::string example;
    std::vector<CheckOutcome> checks;

    void add(std::string id, CheckStatus status, std::string detail, double seconds);
    bool all_green() const;  // no Fail / Unsolved
    void sort_by_id();
};

std::string emit_text(const std::vector<VerificationReport>& reports);
std::string emit_json(const std::vector<VerificationReport>& reports);

// 0: no FAIL/UNSOLVED, 1: some check failed, 2 is reserved for usage errors
int exit_code(const std::vector<VerificationReport>& reports);

}  // namespace frob
