#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "prt/error.hpp"

namespace prt {

/// What a CLI invocation prints. `status` carries a PR verdict (decide, and
/// the S-unit check of rank); the other commands report an `outcome`.
struct Report {
    std::string command;
    std::string status;                  // PR / PR_CONSTANT / NOT_PR / UNKNOWN, or empty
    std::string outcome;                 // command-specific result, or empty
    std::string system_class;            // empty when no equation was involved
    std::vector<std::string> vars;
    std::vector<std::string> witnesses;  // decimal strings, or "all"
    nlohmann::json certificates = nlohmann::json::object();
    nlohmann::json details = nlohmann::json::object();
    std::vector<std::string> summary;    // human-readable lines
    std::vector<std::string> notes;
    std::int64_t elapsed_us = 0;

    bool unknown() const { return status == "UNKNOWN" || outcome == "UNKNOWN"; }
    int exit_code() const { return unknown() ? 2 : 0; }

    bool operator==(const Report&) const = default;
};

inline const std::set<std::string>& verdict_statuses() {
    static const std::set<std::string> s = {"PR", "PR_CONSTANT", "NOT_PR", "UNKNOWN"};
    return s;
}

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json j;
    j["command"] = r.command;
    if (!r.status.empty()) j["status"] = r.status;
    if (!r.outcome.empty()) j["outcome"] = r.outcome;
    if (!r.system_class.empty()) j["class"] = r.system_class;
    j["vars"] = r.vars;
    j["witnesses"] = r.witnesses;
    j["certificates"] = r.certificates;
    j["details"] = r.details;
    j["summary"] = r.summary;
    j["notes"] = r.notes;
    j["timing"] = {{"elapsed_us", r.elapsed_us}};
    return j;
}

inline Report report_from_json(const nlohmann::json& j) {
    static const std::set<std::string> allowed = {"command", "status", "outcome", "class", "vars", "witnesses",
                                                  "certificates", "details", "summary", "notes", "timing"};
    if (!j.is_object()) throw Error(ErrorKind::Schema, "report must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw Error(ErrorKind::Schema, "unknown report field '" + k + "'");
    for (const char* k : {"command", "vars", "witnesses", "certificates", "details", "summary", "notes", "timing"})
        if (!j.contains(k)) throw Error(ErrorKind::Schema, std::string("report lacks '") + k + "'");
    try {
        Report r;
        r.command = j.at("command").get<std::string>();
        if (j.contains("status")) {
            r.status = j.at("status").get<std::string>();
            if (!verdict_statuses().count(r.status)) throw Error(ErrorKind::Schema, "invalid status '" + r.status + "'");
        }
        if (j.contains("outcome")) r.outcome = j.at("outcome").get<std::string>();
        if (j.contains("class")) r.system_class = j.at("class").get<std::string>();
        r.vars = j.at("vars").get<std::vector<std::string>>();
        r.witnesses = j.at("witnesses").get<std::vector<std::string>>();
        r.certificates = j.at("certificates");
        r.details = j.at("details");
        if (!r.certificates.is_object() || !r.details.is_object())
            throw Error(ErrorKind::Schema, "'certificates' and 'details' must be objects");
        r.summary = j.at("summary").get<std::vector<std::string>>();
        r.notes = j.at("notes").get<std::vector<std::string>>();
        r.elapsed_us = j.at("timing").at("elapsed_us").get<std::int64_t>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Schema, std::string("malformed report: ") + e.what());
    }
}

inline void print_text(const Report& r, std::ostream& out) {
    if (!r.status.empty()) out << "status: " << r.status << "\n";
    if (!r.outcome.empty()) out << "outcome: " << r.outcome << "\n";
    if (!r.system_class.empty()) out << "class: " << r.system_class << "\n";
    if (!r.vars.empty()) {
        out << "variables:";
        for (const auto& v : r.vars) out << " " << v;
        out << "\n";
    }
    if (!r.witnesses.empty()) {
        out << "witness" << (r.witnesses.size() > 1 ? "es" : "") << ":";
        for (const auto& w : r.witnesses) out << " " << w;
        out << "\n";
    }
    for (const auto& s : r.summary) out << s << "\n";
    for (const auto& n : r.notes) out << "note: " << n << "\n";
    out << "time: " << r.elapsed_us << " us\n";
}

}  // namespace prt
