#pragma once

// Structured verdicts for the verification batteries.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qd {

enum class CheckStatus { PASS, FAIL, INCONCLUSIVE };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::PASS: return "PASS";
        case CheckStatus::FAIL: return "FAIL";
        case CheckStatus::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "?";
}

struct CheckItem {
    std::string id;
    CheckStatus status = CheckStatus::PASS;
    std::size_t residual_terms = 0;
    std::int64_t millis = 0;
};

struct CheckReport {
    std::string suite;
    std::string preset;
    std::string gamma = "default";
    std::vector<CheckItem> checks;
    std::vector<std::string> notes;

    void add(const std::string& id, CheckStatus status, std::size_t residual_terms = 0,
             std::int64_t millis = 0) {
        checks.push_back({id, status, residual_terms, millis});
    }
    void note(const std::string& text) { notes.push_back(text); }

    std::size_t count(CheckStatus s) const {
        std::size_t n = 0;
        for (const auto& c : checks)
            if (c.status == s) ++n;
        return n;
    }
    bool all_pass() const { return count(CheckStatus::PASS) == checks.size(); }
    bool any_fail() const { return count(CheckStatus::FAIL) > 0; }

    void merge(const CheckReport& other, const std::string& prefix = "") {
        for (auto c : other.checks) {
            if (!prefix.empty()) c.id = prefix + c.id;
            checks.push_back(std::move(c));
        }
        for (const auto& n : other.notes) notes.push_back(n);
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["suite"] = suite;
        j["preset"] = preset;
        j["gamma"] = gamma;
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
            nlohmann::ordered_json jc;
            jc["id"] = c.id;
            jc["status"] = to_string(c.status);
            jc["residual_terms"] = c.residual_terms;
            jc["millis"] = c.millis;
            j["checks"].push_back(jc);
        }
        j["summary"] = {{"pass", count(CheckStatus::PASS)},
                        {"fail", count(CheckStatus::FAIL)},
                        {"inconclusive", count(CheckStatus::INCONCLUSIVE)}};
        if (!notes.empty()) j["notes"] = notes;
        return j;
    }
};

}  // namespace qd
