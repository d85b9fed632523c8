#pragma once

#include <exception>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace wmha {

struct CheckResult {
    std::string name;
    std::string statement; // the identity in words
    bool pass = false;
    std::string witness;   // empty on success
};

/// Ordered list of checks plus ordered recorded values; order is the insertion order.
struct Report {
    std::string title;
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, std::string>> values;

    void add(std::string name, std::string statement, bool pass, std::string witness = {})
    {
        checks.push_back({std::move(name), std::move(statement), pass, pass ? std::string() : std::move(witness)});
    }
    void record(std::string key, std::string value) { values.emplace_back(std::move(key), std::move(value)); }

    void append(const Report& r, const std::string& prefix = {})
    {
        for (const auto& c : r.checks)
            checks.push_back({prefix + c.name, c.statement, c.pass, c.witness});
        for (const auto& v : r.values)
            values.emplace_back(prefix + v.first, v.second);
    }

    bool all_pass() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }

    const CheckResult* first_failure() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return &c;
        return nullptr;
    }

    const CheckResult* find(const std::string& name) const
    {
        for (const auto& c : checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }

    std::string value(const std::string& key) const
    {
        for (const auto& v : values)
            if (v.first == key)
                return v.second;
        return {};
    }
};

namespace detail {

/// Runs fn; an exception becomes a failed check carrying its message.
inline void guarded(Report& r, const std::string& name, const std::string& statement, const std::function<std::string()>& fn)
{
    try {
        std::string w = fn();
        r.add(name, statement, w.empty(), w);
    } catch (const std::exception& ex) {
        r.add(name, statement, false, std::string("not evaluated: ") + ex.what());
    }
}

inline void skipped(Report& r, const std::string& name, const std::string& statement, const std::string& why)
{
    r.add(name, statement, false, "not evaluated: " + why);
}

} // namespace detail

} // namespace wmha
