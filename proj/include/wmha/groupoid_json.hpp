#pragma once

#include "groupoid.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wmha {

/// Malformed groupoid document; the message names the offending field.
struct GroupoidParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/*
 * {"elements": [names], "units": [names], "product": [[p, q, r], ...],
 *  "inverse": {p: q, ...}}.  Absent product pairs are undefined.  The result
 * is validated before it is returned.
 */
inline FiniteGroupoid groupoid_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw GroupoidParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object())
        throw GroupoidParseError("top level: expected an object");
    for (const char* key : {"elements", "units", "product", "inverse"})
        if (!j.contains(key))
            throw GroupoidParseError(std::string("missing field \"") + key + "\"");
    const auto& el = j["elements"];
    if (!el.is_array() || el.empty())
        throw GroupoidParseError("field \"elements\": expected a nonempty array of names");
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < el.size(); ++i) {
        if (!el[i].is_string())
            throw GroupoidParseError("elements[" + std::to_string(i) + "]: expected a string");
        std::string s = el[i].get<std::string>();
        if (!index.emplace(s, i).second)
            throw GroupoidParseError("elements[" + std::to_string(i) + "]: duplicate name \"" + s + "\"");
        names.push_back(s);
    }
    auto lookup = [&](const nlohmann::json& v, const std::string& where) {
        if (!v.is_string())
            throw GroupoidParseError(where + ": expected an element name");
        auto it = index.find(v.get<std::string>());
        if (it == index.end())
            throw GroupoidParseError(where + ": unknown element \"" + v.get<std::string>() + "\"");
        return it->second;
    };
    const auto& un = j["units"];
    if (!un.is_array())
        throw GroupoidParseError("field \"units\": expected an array");
    std::vector<std::size_t> units;
    for (std::size_t i = 0; i < un.size(); ++i)
        units.push_back(lookup(un[i], "units[" + std::to_string(i) + "]"));
    const auto& pr = j["product"];
    if (!pr.is_array())
        throw GroupoidParseError("field \"product\": expected an array of triples");
    std::vector<std::array<std::size_t, 3>> prod;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    for (std::size_t i = 0; i < pr.size(); ++i) {
        std::string at = "product[" + std::to_string(i) + "]";
        if (!pr[i].is_array() || pr[i].size() != 3)
            throw GroupoidParseError(at + ": expected [p, q, pq]");
        std::array<std::size_t, 3> t{lookup(pr[i][0], at + "[0]"), lookup(pr[i][1], at + "[1]"), lookup(pr[i][2], at + "[2]")};
        auto [it, fresh] = seen.emplace(std::make_pair(t[0], t[1]), t[2]);
        if (!fresh && it->second != t[2])
            throw GroupoidParseError(at + ": conflicting product for (" + names[t[0]] + ", " + names[t[1]] + ")");
        prod.push_back(t);
    }
    const auto& inv = j["inverse"];
    if (!inv.is_object())
        throw GroupoidParseError("field \"inverse\": expected an object");
    std::vector<std::size_t> inverse(names.size(), names.size());
    for (const auto& [k, v] : inv.items()) {
        std::size_t p = lookup(nlohmann::json(k), "inverse key");
        inverse[p] = lookup(v, "inverse[\"" + k + "\"]");
    }
    for (std::size_t p = 0; p < names.size(); ++p)
        if (inverse[p] == names.size())
            throw GroupoidParseError("field \"inverse\": no entry for \"" + names[p] + "\"");
    FiniteGroupoid G(names, units, prod, inverse);
    auto bad = validate(G);
    if (!bad.empty())
        throw GroupoidParseError("invalid groupoid: " + bad.front());
    return G;
}

} // namespace wmha
