#pragma once

#include "report.hpp"

#include <json.hpp>

#include <string>

namespace wmha {

/// {name, statement, status, witness?} per check; values keep their insertion order.
inline nlohmann::ordered_json to_json(const Report& r)
{
    nlohmann::ordered_json j;
    j["title"] = r.title;
    j["passed"] = r.all_pass();
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["statement"] = c.statement;
        e["status"] = c.pass ? "pass" : "fail";
        if (!c.pass)
            e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    nlohmann::ordered_json v = nlohmann::ordered_json::object();
    for (const auto& [k, x] : r.values)
        v[k] = x;
    j["values"] = std::move(v);
    return j;
}

} // namespace wmha
