#pragma once

#include <circreg/verify.hpp>
#include <json.hpp>

namespace circreg {

inline nlohmann::ordered_json to_json(const VerificationReport& r, bool timings = true) {
    nlohmann::ordered_json j;
    j["header"] = {{"suite", r.suite},
                   {"version", r.version},
                   {"seed", r.seed},
                   {"primes", r.primes},
                   {"limits", {{"lattice_limit", r.lattice_limit}, {"extended", r.extended}}}};
    auto records = nlohmann::ordered_json::array();
    for (const auto& c : r.records) {
        nlohmann::ordered_json rec;
        rec["check"] = c.check;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : c.params)
            params[k] = v;
        rec["params"] = params;
        rec["expected"] = c.expected;
        rec["computed"] = c.computed;
        if (!c.formula_case.empty())
            rec["formula_case"] = c.formula_case;
        rec["status"] = to_string(c.status);
        if (!c.reason.empty())
            rec["reason"] = c.reason;
        if (timings)
            rec["millis"] = c.millis;
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    j["footer"] = {{"pass", r.count(CheckStatus::pass)},
                   {"fail", r.count(CheckStatus::fail)},
                   {"skipped", r.count(CheckStatus::skipped)}};
    return j;
}

} // namespace circreg
