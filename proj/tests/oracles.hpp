#pragma once

// Independent reference computations.  Only groupoid data and GMP rationals
// are used here; nothing goes through the library's linear algebra or engine.

#include "wmha/groupoid.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Row = std::vector<mpq_class>;
using Dense = std::vector<Row>;

/// Plain Gauss–Jordan rank on a dense copy.
inline std::size_t rank(Dense m)
{
    std::size_t r = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m[i][c] != 0) {
                mpq_class f = m[i][c] / m[r][c];
                for (std::size_t k = c; k < cols; ++k)
                    m[i][k] -= f * m[r][k];
            }
        ++r;
    }
    return r;
}

inline std::vector<std::size_t> sources(const wmha::FiniteGroupoid& G)
{
    std::vector<std::size_t> s;
    for (std::size_t p = 0; p < G.size(); ++p)
        s.push_back(G.source(p));
    return s;
}

inline std::vector<std::size_t> targets(const wmha::FiniteGroupoid& G)
{
    std::vector<std::size_t> t;
    for (std::size_t p = 0; p < G.size(); ++p)
        t.push_back(G.target(p));
    return t;
}

/*
 * Multiplication C⊗B → A for K(G): C is spanned by the indicator functions of
 * the target fibres, B by those of the source fibres.  Rows are basis
 * elements of A, columns the pairs (u, v) of units.
 */
inline Dense function_gamma_matrix(const wmha::FiniteGroupoid& G)
{
    auto s = sources(G), t = targets(G);
    const auto& U = G.units();
    Dense m(G.size(), Row(U.size() * U.size(), 0));
    for (std::size_t i = 0; i < U.size(); ++i)
        for (std::size_t j = 0; j < U.size(); ++j)
            for (std::size_t p = 0; p < G.size(); ++p)
                if (t[p] == U[i] && s[p] == U[j])
                    m[p][i * U.size() + j] = 1;
    return m;
}

/// The same for ℂG, where B = C = span{λ_u : u a unit} and λ_uλ_v = δ_uv λ_u.
inline Dense convolution_gamma_matrix(const wmha::FiniteGroupoid& G)
{
    const auto& U = G.units();
    Dense m(G.size(), Row(U.size() * U.size(), 0));
    for (std::size_t i = 0; i < U.size(); ++i)
        m[U[i]][i * U.size() + i] = 1;
    return m;
}

inline std::size_t kernel_dim(const Dense& m) { return (m.empty() ? 0 : m[0].size()) - rank(m); }

/// ε_s(δ_r) = [r unit] Σ_{s(q)=r} δ_q and ε_t(δ_r) = [r unit] Σ_{t(p)=r} δ_p on K(G), as dense columns.
inline Dense function_eps_s(const wmha::FiniteGroupoid& G)
{
    auto s = sources(G);
    Dense m(G.size(), Row(G.size(), 0));
    for (std::size_t r = 0; r < G.size(); ++r)
        if (G.is_unit(r))
            for (std::size_t q = 0; q < G.size(); ++q)
                if (s[q] == r)
                    m[r][q] = 1;
    return m;
}

inline Dense function_eps_t(const wmha::FiniteGroupoid& G)
{
    auto t = targets(G);
    Dense m(G.size(), Row(G.size(), 0));
    for (std::size_t r = 0; r < G.size(); ++r)
        if (G.is_unit(r))
            for (std::size_t p = 0; p < G.size(); ++p)
                if (t[p] == r)
                    m[r][p] = 1;
    return m;
}

/// ε_s(λ_p) = λ_{s(p)}, ε_t(λ_p) = λ_{t(p)} on ℂG.
inline Dense convolution_eps(const wmha::FiniteGroupoid& G, bool source)
{
    auto s = sources(G), t = targets(G);
    Dense m(G.size(), Row(G.size(), 0));
    for (std::size_t p = 0; p < G.size(); ++p)
        m[p][source ? s[p] : t[p]] = 1;
    return m;
}

/// Units and number of unit pairs (u, v) joined by an arrow.
inline std::pair<std::size_t, std::size_t> unit_profile(const wmha::FiniteGroupoid& G)
{
    auto s = sources(G), t = targets(G);
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t p = 0; p < G.size(); ++p)
        pairs.insert({t[p], s[p]});
    return {G.units().size(), pairs.size()};
}

// ---- generators for property tests ----------------------------------------

/// Rational in [-k, k] with denominators up to d, zero with probability ~1/3.
inline mpq_class random_q(std::mt19937& rng, int k = 5, int d = 4)
{
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
        return 0;
    mpq_class q(std::uniform_int_distribution<int>(-k, k)(rng), std::uniform_int_distribution<int>(1, d)(rng));
    q.canonicalize();
    return q;
}

inline Dense random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols)
{
    Dense m(rows, Row(cols));
    for (auto& r : m)
        for (auto& x : r)
            x = random_q(rng);
    return m;
}

/// Random permutation action of Z_k on n points: the generator acts by a random permutation of order dividing k.
inline std::vector<std::size_t> random_generator(std::mt19937& rng, std::size_t n, std::size_t k)
{
    for (;;) {
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i)
            perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::size_t> cur = perm;
        for (std::size_t step = 1; step < k; ++step) {
            std::vector<std::size_t> nxt(n);
            for (std::size_t x = 0; x < n; ++x)
                nxt[x] = perm[cur[x]];
            cur = nxt;
        }
        bool identity = true;
        for (std::size_t x = 0; x < n; ++x)
            identity = identity && cur[x] == x;
        if (identity)
            return perm;
    }
}

/// A small random groupoid: a disjoint union of pieces drawn from pair, group and action groupoids.
inline wmha::FiniteGroupoid random_groupoid(std::mt19937& rng, std::size_t max_size = 12)
{
    auto piece = [&]() -> wmha::FiniteGroupoid {
        switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0:
            return wmha::pair_groupoid(std::uniform_int_distribution<std::size_t>(1, 3)(rng));
        case 1:
            return wmha::group_groupoid(wmha::cyclic_group(std::uniform_int_distribution<std::size_t>(1, 3)(rng)));
        case 2:
            return wmha::discrete_groupoid(std::uniform_int_distribution<std::size_t>(1, 3)(rng));
        default: {
            auto H = wmha::cyclic_group(2);
            std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
            return wmha::action_groupoid(n, H, wmha::cyclic_action(H, random_generator(rng, n, 2)));
        }
        }
    };
    wmha::FiniteGroupoid G = piece();
    while (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        auto H = piece();
        if (G.size() + H.size() > max_size)
            break;
        G = wmha::disjoint_union(G, H);
    }
    return G;
}

} // namespace oracle
