#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wmha {

/// Finite group by multiplication table; element 0 is the identity.
struct FiniteGroup {
    std::string name;
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> mul;
    std::vector<std::size_t> inv;

    std::size_t order() const { return mul.size(); }
    std::size_t operator()(std::size_t g, std::size_t h) const { return mul[g][h]; }
};

inline FiniteGroup cyclic_group(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("cyclic_group: order must be positive");
    FiniteGroup g;
    g.name = "Z" + std::to_string(n);
    g.mul.assign(n, std::vector<std::size_t>(n));
    g.inv.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.labels.push_back(i == 0 ? "e" : (n == 2 ? std::string("g") : "g" + std::to_string(i)));
        for (std::size_t j = 0; j < n; ++j)
            g.mul[i][j] = (i + j) % n;
        g.inv[i] = (n - i) % n;
    }
    return g;
}

/// Symmetric group on 3 letters; elements are permutations in lexicographic order.
inline FiniteGroup symmetric_group3()
{
    std::vector<std::array<std::size_t, 3>> perms = {
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto index = [&](const std::array<std::size_t, 3>& p) {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p)
                return i;
        throw std::logic_error("symmetric_group3: not a permutation");
    };
    FiniteGroup g;
    g.name = "S3";
    g.mul.assign(6, std::vector<std::size_t>(6));
    g.inv.resize(6);
    for (std::size_t i = 0; i < 6; ++i) {
        std::string l;
        for (auto x : perms[i])
            l += std::to_string(x + 1);
        g.labels.push_back(i == 0 ? "e" : l);
        for (std::size_t j = 0; j < 6; ++j) {
            std::array<std::size_t, 3> c{};
            for (std::size_t k = 0; k < 3; ++k)
                c[k] = perms[i][perms[j][k]];
            g.mul[i][j] = index(c);
            if (g.mul[i][j] == 0)
                g.inv[i] = j;
        }
    }
    return g;
}

/// Parses "Z<n>" or "S3".
inline FiniteGroup group_by_name(const std::string& s)
{
    if (s == "S3")
        return symmetric_group3();
    if (s.size() >= 2 && (s[0] == 'Z' || s[0] == 'z')) {
        std::size_t pos = 0;
        unsigned long n = 0;
        try {
            n = std::stoul(s.substr(1), &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == s.size() - 1 && n >= 1 && n <= 64)
            return cyclic_group(n);
    }
    throw std::invalid_argument("unknown group '" + s + "' (expected Z<n> or S3)");
}

/// Group action as a table act[h][x] = h ▷ x.
using ActionTable = std::vector<std::vector<std::size_t>>;

/// Empty result means act is a left action of H on {0..npoints-1}.
inline std::vector<std::string> action_violations(const FiniteGroup& H, std::size_t npoints, const ActionTable& act)
{
    std::vector<std::string> out;
    if (act.size() != H.order()) {
        out.push_back("action table has wrong number of group rows");
        return out;
    }
    for (std::size_t h = 0; h < H.order(); ++h) {
        if (act[h].size() != npoints) {
            out.push_back("action row " + H.labels[h] + " has wrong length");
            return out;
        }
        for (auto y : act[h])
            if (y >= npoints) {
                out.push_back("action row " + H.labels[h] + " leaves the set");
                return out;
            }
    }
    for (std::size_t x = 0; x < npoints; ++x)
        if (act[0][x] != x)
            out.push_back("identity moves point " + std::to_string(x + 1));
    for (std::size_t h = 0; h < H.order(); ++h)
        for (std::size_t k = 0; k < H.order(); ++k)
            for (std::size_t x = 0; x < npoints; ++x)
                if (act[H(h, k)][x] != act[h][act[k][x]])
                    out.push_back("compatibility fails at (" + H.labels[h] + "," + H.labels[k] + "," + std::to_string(x + 1) + ")");
    return out;
}

/// Action of a cyclic group whose generator acts by the given permutation.
inline ActionTable cyclic_action(const FiniteGroup& H, const std::vector<std::size_t>& generator_perm)
{
    std::size_t n = generator_perm.size();
    ActionTable act(H.order(), std::vector<std::size_t>(n));
    std::vector<std::size_t> cur(n);
    for (std::size_t x = 0; x < n; ++x)
        cur[x] = x;
    for (std::size_t k = 0; k < H.order(); ++k) {
        act[k] = cur;
        for (std::size_t x = 0; x < n; ++x)
            cur[x] = generator_perm[cur[x]];
    }
    return act;
}

/*
 * Finite groupoid.  The partial product is the explicit triple list `products`;
 * absent pairs are undefined.  Units are a subset of the elements.
 */
class FiniteGroupoid {
public:
    FiniteGroupoid() = default;
    FiniteGroupoid(std::vector<std::string> names, std::vector<std::size_t> units,
        std::vector<std::array<std::size_t, 3>> products, std::vector<std::size_t> inverse)
        : names_(std::move(names)), units_(std::move(units)), products_(std::move(products)), inverse_(std::move(inverse))
    {
        std::size_t n = names_.size();
        table_.assign(n * n, std::nullopt);
        for (const auto& t : products_) {
            if (t[0] >= n || t[1] >= n || t[2] >= n)
                throw std::out_of_range("FiniteGroupoid: product refers to unknown element");
            table_[t[0] * n + t[1]] = t[2];
        }
        if (inverse_.size() != n)
            throw std::invalid_argument("FiniteGroupoid: inverse table incomplete");
        for (auto i : inverse_)
            if (i >= n)
                throw std::out_of_range("FiniteGroupoid: inverse refers to unknown element");
        for (auto u : units_)
            if (u >= n)
                throw std::out_of_range("FiniteGroupoid: unknown unit");
        is_unit_.assign(n, false);
        for (auto u : units_)
            is_unit_[u] = true;
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t p) const { return names_[p]; }
    const std::vector<std::size_t>& units() const { return units_; }
    bool is_unit(std::size_t p) const { return is_unit_[p]; }
    const std::vector<std::array<std::size_t, 3>>& products() const { return products_; }
    std::optional<std::size_t> mul(std::size_t p, std::size_t q) const { return table_[p * size() + q]; }
    std::size_t inv(std::size_t p) const { return inverse_[p]; }

    /// s(p) = p⁻¹p; only meaningful on a valid groupoid.
    std::size_t source(std::size_t p) const { return mul(inv(p), p).value(); }
    /// t(p) = pp⁻¹
    std::size_t target(std::size_t p) const { return mul(p, inv(p)).value(); }

    std::optional<std::size_t> find(const std::string& nm) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == nm)
                return i;
        return std::nullopt;
    }

private:
    std::vector<std::string> names_;
    std::vector<std::size_t> units_;
    std::vector<std::array<std::size_t, 3>> products_;
    std::vector<std::size_t> inverse_;
    std::vector<std::optional<std::size_t>> table_;
    std::vector<bool> is_unit_;
};

/// Every violated groupoid axiom, one entry each; empty means valid.
inline std::vector<std::string> validate(const FiniteGroupoid& G)
{
    std::vector<std::string> out;
    const std::size_t n = G.size();
    auto nm = [&](std::size_t p) { return G.name(p); };
    if (n == 0)
        out.push_back("empty groupoid");

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& t : G.products())
        if (!seen.insert({t[0], t[1]}).second)
            out.push_back("duplicate product entry for (" + nm(t[0]) + "," + nm(t[1]) + ")");

    for (auto e : G.units()) {
        auto ee = G.mul(e, e);
        if (!ee || *ee != e)
            out.push_back("unit " + nm(e) + " is not idempotent");
    }

    std::vector<std::optional<std::size_t>> src(n), tgt(n);
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t q = G.inv(p);
        if (G.inv(q) != p)
            out.push_back("inverse of inverse of " + nm(p) + " is not " + nm(p));
        auto s = G.mul(q, p), t = G.mul(p, q);
        if (!s || !G.is_unit(*s))
            out.push_back("inverse violation: " + nm(q) + "*" + nm(p) + " is not a unit");
        else
            src[p] = s;
        if (!t || !G.is_unit(*t))
            out.push_back("inverse violation: " + nm(p) + "*" + nm(q) + " is not a unit");
        else
            tgt[p] = t;
    }
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t q = G.inv(p);
        if (src[q] && tgt[p] && *src[q] != *tgt[p])
            out.push_back("inverse violation: s(" + nm(q) + ") differs from t(" + nm(p) + ")");
    }

    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (!src[p] || !tgt[q])
                continue;
            bool defined = G.mul(p, q).has_value();
            bool composable = *src[p] == *tgt[q];
            if (defined != composable)
                out.push_back("domain violation at (" + nm(p) + "," + nm(q) + "): product "
                    + (defined ? "defined" : "undefined") + " but s(p)" + (composable ? "=" : "!=") + "t(q)");
        }

    for (auto e : G.units())
        for (std::size_t p = 0; p < n; ++p) {
            if (auto r = G.mul(e, p); r && *r != p)
                out.push_back("unit law fails: " + nm(e) + "*" + nm(p));
            if (auto r = G.mul(p, e); r && *r != p)
                out.push_back("unit law fails: " + nm(p) + "*" + nm(e));
        }

    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            auto pq = G.mul(p, q);
            for (std::size_t r = 0; r < n; ++r) {
                auto qr = G.mul(q, r);
                std::optional<std::size_t> lhs = pq ? G.mul(*pq, r) : std::nullopt;
                std::optional<std::size_t> rhs = qr ? G.mul(p, *qr) : std::nullopt;
                if (pq && qr && lhs != rhs)
                    out.push_back("associativity fails at (" + nm(p) + "," + nm(q) + "," + nm(r) + ")");
            }
        }
    return out;
}

inline std::string point_name(std::size_t x) { return std::to_string(x + 1); }

/// Pair groupoid on {1..n}; element (z,y) has index z*n+y, target z, source y.
inline FiniteGroupoid pair_groupoid(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("pair_groupoid: empty set");
    std::vector<std::string> names;
    std::vector<std::size_t> units, inv(n * n);
    std::vector<std::array<std::size_t, 3>> prod;
    for (std::size_t z = 0; z < n; ++z)
        for (std::size_t y = 0; y < n; ++y) {
            names.push_back("(" + point_name(z) + "," + point_name(y) + ")");
            inv[z * n + y] = y * n + z;
            if (z == y)
                units.push_back(z * n + y);
            for (std::size_t x = 0; x < n; ++x)
                prod.push_back({z * n + y, y * n + x, z * n + x});
        }
    return {names, units, prod, inv};
}

/// Only units, one per point: the set {1..n} as a groupoid.
inline FiniteGroupoid discrete_groupoid(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("discrete_groupoid: empty set");
    std::vector<std::string> names;
    std::vector<std::size_t> units, inv;
    std::vector<std::array<std::size_t, 3>> prod;
    for (std::size_t x = 0; x < n; ++x) {
        names.push_back(point_name(x));
        units.push_back(x);
        inv.push_back(x);
        prod.push_back({x, x, x});
    }
    return {names, units, prod, inv};
}

inline FiniteGroupoid group_groupoid(const FiniteGroup& H)
{
    std::vector<std::array<std::size_t, 3>> prod;
    for (std::size_t g = 0; g < H.order(); ++g)
        for (std::size_t h = 0; h < H.order(); ++h)
            prod.push_back({g, h, H(g, h)});
    return {H.labels, {0}, prod, H.inv};
}

/// Elements (y,h,x) with y = h▷x, indexed h*npoints + x.
inline FiniteGroupoid action_groupoid(std::size_t npoints, const FiniteGroup& H, const ActionTable& act)
{
    if (npoints == 0)
        throw std::invalid_argument("action_groupoid: empty set");
    auto bad = action_violations(H, npoints, act);
    if (!bad.empty())
        throw std::invalid_argument("action_groupoid: " + bad.front());
    std::size_t n = npoints;
    auto idx = [n](std::size_t h, std::size_t x) { return h * n + x; };
    std::vector<std::string> names;
    std::vector<std::size_t> units, inv(H.order() * n);
    std::vector<std::array<std::size_t, 3>> prod;
    for (std::size_t h = 0; h < H.order(); ++h)
        for (std::size_t x = 0; x < n; ++x) {
            std::size_t y = act[h][x];
            names.push_back("(" + point_name(y) + "," + H.labels[h] + "," + point_name(x) + ")");
            inv[idx(h, x)] = idx(H.inv[h], y);
            if (h == 0)
                units.push_back(idx(h, x));
            // (z,k,y)(y,h,x) = (z,kh,x)
            for (std::size_t k = 0; k < H.order(); ++k)
                prod.push_back({idx(k, y), idx(h, x), idx(H(k, h), x)});
        }
    return {names, units, prod, inv};
}

inline FiniteGroupoid disjoint_union(const FiniteGroupoid& G1, const FiniteGroupoid& G2)
{
    std::size_t off = G1.size();
    std::vector<std::string> names;
    for (const auto& s : G1.names())
        names.push_back("1:" + s);
    for (const auto& s : G2.names())
        names.push_back("2:" + s);
    std::vector<std::size_t> units = G1.units(), inv;
    for (auto u : G2.units())
        units.push_back(u + off);
    auto prod = G1.products();
    for (auto t : G2.products())
        prod.push_back({t[0] + off, t[1] + off, t[2] + off});
    for (std::size_t p = 0; p < G1.size(); ++p)
        inv.push_back(G1.inv(p));
    for (std::size_t p = 0; p < G2.size(); ++p)
        inv.push_back(G2.inv(p) + off);
    return {names, units, prod, inv};
}

} // namespace wmha
