#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cartan::suites {

enum class CheckStatus { Pass, Fail, Anomaly };

inline const char* status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    default:
        return "anomaly";
    }
}

struct CheckRecord {
    std::string name;
    std::string anchor;
    CheckStatus status = CheckStatus::Pass;
    std::uint64_t passes = 0;
    std::vector<nlohmann::json> witnesses; // one entry per recorded mismatch
};

struct SuiteParams {
    std::uint32_t p = 5;
    std::uint32_t n = 0; // 0 = per-suite default
    std::uint64_t seed = 1;
    std::uint32_t trials = 100;
    std::uint32_t jobs = 1;
};

struct SuiteReport {
    std::string suite;
    SuiteParams params; // with n resolved
    std::vector<CheckRecord> checks;
    std::int64_t elapsed_ms = 0;

    bool failed() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::Fail) return true;
        return false;
    }

    nlohmann::json to_json() const;
    /// One line per check, plus a summary line.
    std::string render_text() const;
};

struct SuiteInfo {
    std::string id;
    bool s_side;            // n names the S_n ambient (default 3); else W_n (default 2)
    std::string summary;
};

const std::vector<SuiteInfo>& all_suites();

/// Runs one suite.  Throws cartan::DomainError for an unknown id or invalid
/// parameters.  Reports are deterministic functions of (suite, p, n, seed,
/// trials); jobs only changes the schedule.
SuiteReport run_suite(const std::string& id, SuiteParams params);

} // namespace cartan::suites
