#include "frob/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace frob {

namespace {
const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Skipped: return "SKIPPED";
        case CheckStatus::Unsolved: return "UNSOLVED";
    }
    return "?";
}
}  // namespace

void VerificationReport::add(std::string id, CheckStatus status, std::string detail,
                             double seconds) {
    checks.push_back({std::move(id), status, std::move(detail), seconds});
}

bool VerificationReport::all_green() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail || c.status == CheckStatus::Unsolved) return false;
    return true;
}

void VerificationReport::sort_by_id() {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const CheckOutcome& a, const CheckOutcome& b) { return a.id < b.id; });
}

std::string emit_text(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    for (const auto& r : reports) {
        os << r.example << "\n";
        for (const auto& c : r.checks) {
            os << "  " << c.id << ": " << status_name(c.status);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3fs", c.seconds);
            os << "  [" << buf << "]";
            if (!c.detail.empty()) os << "  " << c.detail;
            os << "\n";
        }
    }
    std::size_t pass = 0, fail = 0, skip = 0, unsolved = 0;
    for (const auto& r : reports)
        for (const auto& c : r.checks) {
            if (c.status == CheckStatus::Pass) ++pass;
            if (c.status == CheckStatus::Fail) ++fail;
            if (c.status == CheckStatus::Skipped) ++skip;
            if (c.status == CheckStatus::Unsolved) ++unsolved;
        }
    os << "total: " << pass << " pass, " << fail << " fail, " << skip << " skipped, " << unsolved
       << " unsolved\n";
    return os.str();
}

std::string emit_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json jr;
        jr["example"] = r.example;
        jr["checks"] = nlohmann::json::array();
        for (const auto& c : r.checks) {
            nlohmann::json jc;
            jc["id"] = c.id;
            jc["status"] = status_name(c.status);
            jc["detail"] = c.detail;
            jc["seconds"] = c.seconds;
            jr["checks"].push_back(jc);
        }
        out.push_back(jr);
    }
    return out.dump(2);
}

int exit_code(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.all_green()) return 1;
    return 0;
}

}  // namespace frob
