#pragma once

#include "wmha.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fixtures {

struct NamedGroupoid {
    std::string name;
    wmha::FiniteGroupoid G;
};

/// The six groupoids of the axiom suite.
inline std::vector<NamedGroupoid> standard_groupoids()
{
    using namespace wmha;
    auto Z2 = cyclic_group(2), Z3 = cyclic_group(3);
    return {
        {"pair(2)", pair_groupoid(2)},
        {"pair(3)", pair_groupoid(3)},
        {"Z2", group_groupoid(Z2)},
        {"Z3", group_groupoid(Z3)},
        {"Z2+Z3", disjoint_union(group_groupoid(Z2), group_groupoid(Z3))},
        {"action(3,Z2)", action_groupoid(3, Z2, cyclic_action(Z2, {1, 0, 2}))},
    };
}

/// K(G) and ℂG for every standard groupoid: twelve bundles.
inline std::vector<std::pair<NamedGroupoid, wmha::WmhaBundle>> standard_bundles()
{
    std::vector<std::pair<NamedGroupoid, wmha::WmhaBundle>> out;
    for (const auto& g : standard_groupoids()) {
        out.push_back({g, wmha::function_wmha(g.G, "K(" + g.name + ")")});
        out.push_back({g, wmha::groupoid_algebra_wmha(g.G, "C(" + g.name + ")")});
    }
    return out;
}

inline std::string failures(const wmha::Report& r)
{
    std::string s;
    for (const auto& c : r.checks)
        if (!c.pass)
            s += c.name + ": " + c.witness + "\n";
    return s;
}

inline std::size_t composable_pairs(const wmha::FiniteGroupoid& G)
{
    std::size_t k = 0;
    for (std::size_t p = 0; p < G.size(); ++p)
        for (std::size_t q = 0; q < G.size(); ++q)
            k += G.mul(p, q).has_value();
    return k;
}

} // namespace fixtures
