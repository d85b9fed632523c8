#pragma once

#include "algebra.hpp"
#include "groupoid.hpp"
#include "report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wmha {

/// E ∈ M(B⊗C) with its antipodal maps and distinguished functionals; the optional parts may be solved for.
struct SeparabilityIdempotent {
    std::string name;
    Algebra B, C;
    Multiplier E;                               // on B⊗C, index i*dim C + j
    std::optional<std::vector<Multiplier>> S_B; // S_B(b_i) ∈ M(C)
    std::optional<std::vector<Multiplier>> S_C; // S_C(c_j) ∈ M(B)
    std::optional<Vec> phi_B, phi_C;
    bool test_stock = false; // generator that no construction of the theory produces
};

struct SepVerification {
    Report report;
    bool valid = false;
    SeparabilityIdempotent completed; // solved data filled in where it was missing
    std::vector<SVec> E_1_c;          // E(1⊗c_j) as elements of B⊗C
    std::vector<SVec> b_1_E;          // (b_i⊗1)E
};

// ---- small algebras -------------------------------------------------------

/// Functions on an n-point set with pointwise product.
inline Algebra function_algebra(std::size_t n, const std::string& name = "K(X)", const std::vector<std::string>& points = {})
{
    std::vector<std::string> labels;
    std::vector<std::vector<SVec>> t(n, std::vector<SVec>(n));
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("δ" + (points.empty() ? std::to_string(i + 1) : points[i]));
        t[i][i] = SVec::unit(i);
    }
    return Algebra(name, labels, t);
}

inline Algebra group_algebra(const FiniteGroup& H)
{
    const std::size_t n = H.order();
    std::vector<std::string> labels;
    std::vector<std::vector<SVec>> t(n, std::vector<SVec>(n));
    for (std::size_t g = 0; g < n; ++g) {
        labels.push_back("λ" + H.labels[g]);
        for (std::size_t h = 0; h < n; ++h)
            t[g][h] = SVec::unit(H(g, h));
    }
    return Algebra("C" + H.name, labels, t);
}

/// n×n matrices, basis e_ij at i*n+j; opposite = true reverses the product.
inline Algebra matrix_algebra(std::size_t n, bool opposite = false)
{
    const std::size_t d = n * n;
    std::vector<std::string> labels;
    std::vector<std::vector<SVec>> t(d, std::vector<SVec>(d));
    for (std::size_t a = 0; a < d; ++a) {
        labels.push_back("e" + std::to_string(a / n + 1) + std::to_string(a % n + 1));
        for (std::size_t b = 0; b < d; ++b) {
            std::size_t x = opposite ? b : a, y = opposite ? a : b;
            if (x % n == y / n)
                t[a][b] = SVec::unit((x / n) * n + y % n);
        }
    }
    return Algebra(opposite ? "M" + std::to_string(n) + "op" : "M" + std::to_string(n), labels, t);
}

/// x ∈ B⊗C as a multiplier of B⊗C.
inline Multiplier tensor_element_multiplier(const Algebra& B, const Algebra& C, const SVec& x)
{
    const std::size_t N = B.dim() * C.dim();
    Multiplier m;
    for (std::size_t j = 0; j < N; ++j) {
        m.L.push_back(tensor_mul(B, C, x, SVec::unit(j)));
        m.R.push_back(tensor_mul(B, C, SVec::unit(j), x));
    }
    return m;
}

namespace detail {

/// Reads elements of B⊗C from their products with test elements, using units when both exist.
class PairReader {
public:
    PairReader(const Algebra& B, const Algebra& C) : rb_(B), rc_(C)
    {
        ub_ = unit_of(B);
        uc_ = unit_of(C);
    }

    std::optional<SVec> read(Side s1, Side s2, const std::function<SVec(const SVec&, const SVec&)>& data) const
    {
        if (ub_ && uc_)
            return data(*ub_, *uc_);
        return recover_tensor(rb_, s1, rc_, s2, [&](std::size_t u, std::size_t v) { return data(SVec::unit(u), SVec::unit(v)); });
    }

private:
    static std::optional<SVec> unit_of(const Algebra& A)
    {
        std::vector<SVec> all;
        for (std::size_t i = 0; i < A.dim(); ++i)
            all.push_back(SVec::unit(i));
        return local_units_for(A, all);
    }

    Recoverer rb_, rc_;
    std::optional<SVec> ub_, uc_;
};

/// Span of the first (leg = 0) or second legs of x ∈ V1⊗V2.
inline void add_legs(Subspace& s, const SVec& x, std::size_t n2, int leg)
{
    std::map<std::size_t, SVec> parts;
    for (const auto& [idx, c] : x) {
        if (leg == 0)
            parts[idx % n2].add(idx / n2, c);
        else
            parts[idx / n2].add(idx % n2, c);
    }
    for (const auto& [k, v] : parts)
        s.add(v);
}

inline Multiplier combine(const std::vector<Multiplier>& basis, const SVec& x, std::size_t n)
{
    return linear_combination(basis, x, n);
}

} // namespace detail

/*
 * Checks every defining property of a separability idempotent.  The antipodal
 * maps are solved from E(b⊗1) = E(1⊗S_B(b)) and (1⊗c)E = (S_C(c)⊗1)E over
 * M(C) and M(B); the functionals from (φ_B⊗ι)(E(1⊗c)) = c and
 * (ι⊗φ_C)((b⊗1)E) = b.  Each solution must be unique and agree with the
 * supplied value when one is given.
 */
inline SepVerification verify_sep(const SeparabilityIdempotent& S)
{
    SepVerification out;
    out.completed = S;
    Report& r = out.report;
    r.title = S.name;
    const Algebra& B = S.B;
    const Algebra& C = S.C;
    const std::size_t p = B.dim(), q = C.dim(), N = p * q;
    r.record("dim B", std::to_string(p));
    r.record("dim C", std::to_string(q));
    if (S.test_stock)
        r.record("origin", "test stock outside the constructions");
    if (S.E.L.size() != N || S.E.R.size() != N) {
        r.add("sep.dimensions", "E acts on B⊗C", false, "E has the wrong size");
        return out;
    }
    for (const auto* A : {&B, &C}) {
        auto rep = check_algebra(*A);
        bool ok = rep.associative && rep.nondegenerate && rep.idempotent;
        r.add("sep.algebra." + A->name, "the algebra is associative, non-degenerate and idempotent", ok, rep.witness);
    }
    const Algebra BC = tensor_algebra(B, C);
    detail::guarded(r, "sep.multiplier", "E is a two-sided multiplier of B⊗C", [&]() -> std::string {
        if (auto f = compatibility_failure(BC, S.E))
            return "at (" + BC.labels[f->first] + "," + BC.labels[f->second] + ")";
        return {};
    });
    detail::guarded(r, "sep.idempotent", "E² = E", [&]() -> std::string { return S.E * S.E == S.E ? "" : "E² differs from E"; });

    detail::PairReader reader(B, C);
    bool legs_ok = true;
    detail::guarded(r, "sep.E_1_C", "E(1⊗c) lies in B⊗C for every c", [&]() -> std::string {
        for (std::size_t j = 0; j < q; ++j) {
            auto x = reader.read(Side::Right, Side::Right, [&](const SVec& u, const SVec& v) {
                return apply_map(S.E.L, tensor(u, C.mul(SVec::unit(j), v), q));
            });
            if (!x) {
                legs_ok = false;
                return "c=" + C.labels[j];
            }
            out.E_1_c.push_back(*x);
        }
        return {};
    });
    detail::guarded(r, "sep.B_1_E", "(b⊗1)E lies in B⊗C for every b", [&]() -> std::string {
        for (std::size_t i = 0; i < p; ++i) {
            auto x = reader.read(Side::Left, Side::Left, [&](const SVec& u, const SVec& v) {
                return apply_map(S.E.R, tensor(B.mul(u, SVec::unit(i)), v, q));
            });
            if (!x) {
                legs_ok = false;
                return "b=" + B.labels[i];
            }
            out.b_1_E.push_back(*x);
        }
        return {};
    });
    if (!legs_ok) {
        out.valid = false;
        return out;
    }
    detail::guarded(r, "sep.full", "the left legs of E(1⊗C) span B and the right legs of (B⊗1)E span C", [&]() -> std::string {
        Subspace lb(p), rc(q);
        for (const auto& x : out.E_1_c)
            detail::add_legs(lb, x, q, 0);
        for (const auto& x : out.b_1_E)
            detail::add_legs(rc, x, q, 1);
        if (lb.dim() != p)
            return "left leg has dimension " + std::to_string(lb.dim()) + " of " + std::to_string(p);
        if (rc.dim() != q)
            return "right leg has dimension " + std::to_string(rc.dim()) + " of " + std::to_string(q);
        return {};
    });

    // antipodal maps
    const MultiplierAlgebra MB = multiplier_algebra(B), MC = multiplier_algebra(C);
    std::optional<std::vector<Multiplier>> SB, SC;
    detail::guarded(r, "sep.S_B", "E(b⊗1) = E(1⊗S_B(b)) has exactly one solution S_B(b) ∈ M(C)", [&]() -> std::string {
        std::vector<Multiplier> sol;
        for (std::size_t i = 0; i < p; ++i) {
            std::vector<SVec> cols(MC.dim());
            SVec rhs;
            for (std::size_t u = 0; u < p; ++u)
                for (std::size_t v = 0; v < q; ++v) {
                    const std::size_t off = (u * q + v) * N;
                    for (std::size_t k = 0; k < MC.dim(); ++k)
                        for (const auto& [o, c] : apply_map(S.E.L, tensor(SVec::unit(u), MC.basis[k].L[v], q)))
                            cols[k].add(off + o, c);
                    for (const auto& [o, c] : apply_map(S.E.L, tensor(B.mul(SVec::unit(i), SVec::unit(u)), SVec::unit(v), q)))
                        rhs.add(off + o, c);
                }
            auto s = solve_columns(cols, rhs);
            if (!s.consistent)
                return "no solution for b=" + B.labels[i];
            if (!s.kernel.empty())
                return "solution not unique for b=" + B.labels[i];
            sol.push_back(MC.element(s.particular));
        }
        if (S.S_B)
            for (std::size_t i = 0; i < p; ++i)
                if ((*S.S_B)[i] != sol[i])
                    return "supplied S_B differs at b=" + B.labels[i];
        SB = std::move(sol);
        return {};
    });
    detail::guarded(r, "sep.S_C", "(1⊗c)E = (S_C(c)⊗1)E has exactly one solution S_C(c) ∈ M(B)", [&]() -> std::string {
        std::vector<Multiplier> sol;
        for (std::size_t j = 0; j < q; ++j) {
            std::vector<SVec> cols(MB.dim());
            SVec rhs;
            for (std::size_t u = 0; u < p; ++u)
                for (std::size_t v = 0; v < q; ++v) {
                    const std::size_t off = (u * q + v) * N;
                    for (std::size_t k = 0; k < MB.dim(); ++k)
                        for (const auto& [o, c] : apply_map(S.E.R, tensor(MB.basis[k].R[u], SVec::unit(v), q)))
                            cols[k].add(off + o, c);
                    for (const auto& [o, c] : apply_map(S.E.R, tensor(SVec::unit(u), C.mul(SVec::unit(v), SVec::unit(j)), q)))
                        rhs.add(off + o, c);
                }
            auto s = solve_columns(cols, rhs);
            if (!s.consistent)
                return "no solution for c=" + C.labels[j];
            if (!s.kernel.empty())
                return "solution not unique for c=" + C.labels[j];
            sol.push_back(MB.element(s.particular));
        }
        if (S.S_C)
            for (std::size_t j = 0; j < q; ++j)
                if ((*S.S_C)[j] != sol[j])
                    return "supplied S_C differs at c=" + C.labels[j];
        SC = std::move(sol);
        return {};
    });
    auto anti_hom = [](const Algebra& X, const std::vector<Multiplier>& f, std::size_t m) -> std::string {
        for (std::size_t i = 0; i < X.dim(); ++i)
            for (std::size_t j = 0; j < X.dim(); ++j)
                if (detail::combine(f, X.table[i][j], m) != f[j] * f[i])
                    return "at (" + X.labels[i] + "," + X.labels[j] + ")";
        return {};
    };
    auto nondegenerate = [](const std::vector<Multiplier>& f, std::size_t m) -> std::string {
        Subspace left(m), right(m), img(2 * m * m);
        for (const auto& x : f) {
            for (std::size_t k = 0; k < m; ++k) {
                left.add(x.L[k]);
                right.add(x.R[k]);
            }
            img.add(flatten(x));
        }
        if (left.dim() != m)
            return "image times target spans dimension " + std::to_string(left.dim());
        if (right.dim() != m)
            return "target times image spans dimension " + std::to_string(right.dim());
        if (img.dim() != f.size())
            return "not injective: image has dimension " + std::to_string(img.dim());
        return {};
    };
    if (SB) {
        detail::guarded(r, "sep.S_B_anti_hom", "S_B(bb') = S_B(b')S_B(b)", [&] { return anti_hom(B, *SB, q); });
        detail::guarded(r, "sep.S_B_nondegenerate", "S_B(B)C = C = CS_B(B) and S_B is injective", [&] { return nondegenerate(*SB, q); });
    }
    if (SC) {
        detail::guarded(r, "sep.S_C_anti_hom", "S_C(cc') = S_C(c')S_C(c)", [&] { return anti_hom(C, *SC, p); });
        detail::guarded(r, "sep.S_C_nondegenerate", "S_C(C)B = B = BS_C(C) and S_C is injective", [&] { return nondegenerate(*SC, p); });
    }

    // distinguished functionals
    std::optional<Vec> phiB, phiC;
    detail::guarded(r, "sep.phi_B", "(φ_B⊗ι)(E(1⊗c)) = c has exactly one solution", [&]() -> std::string {
        std::vector<SVec> cols(p);
        SVec rhs;
        for (std::size_t j = 0; j < q; ++j) {
            for (const auto& [idx, c] : out.E_1_c[j])
                cols[idx / q].add(j * q + idx % q, c);
            rhs.add(j * q + j, 1);
        }
        auto s = solve_columns(cols, rhs);
        if (!s.consistent)
            return "no solution";
        if (!s.kernel.empty())
            return "solution space has dimension " + std::to_string(s.kernel.size());
        Vec v = s.particular.to_dense(p);
        if (S.phi_B && *S.phi_B != v)
            return "supplied φ_B differs from the solution";
        phiB = v;
        return {};
    });
    detail::guarded(r, "sep.phi_C", "(ι⊗φ_C)((b⊗1)E) = b has exactly one solution", [&]() -> std::string {
        std::vector<SVec> cols(q);
        SVec rhs;
        for (std::size_t i = 0; i < p; ++i) {
            for (const auto& [idx, c] : out.b_1_E[i])
                cols[idx % q].add(i * p + idx / q, c);
            rhs.add(i * p + i, 1);
        }
        auto s = solve_columns(cols, rhs);
        if (!s.consistent)
            return "no solution";
        if (!s.kernel.empty())
            return "solution space has dimension " + std::to_string(s.kernel.size());
        Vec v = s.particular.to_dense(q);
        if (S.phi_C && *S.phi_C != v)
            return "supplied φ_C differs from the solution";
        phiC = v;
        return {};
    });
    if (SB && SC) {
        detail::guarded(r, "sep.antipodal_slices", "E₁S_C(E₂) = 1 and S_B(E₁)E₂ = 1 in slice form", [&]() -> std::string {
            for (std::size_t i = 0; i < p; ++i) {
                SVec s;
                for (const auto& [idx, c] : out.b_1_E[i])
                    s.axpy(c, (*SC)[idx % q].R[idx / q]);
                if (s != SVec::unit(i))
                    return "Σ bE₁S_C(E₂) differs from b at b=" + B.labels[i];
            }
            for (std::size_t j = 0; j < q; ++j) {
                SVec s;
                for (const auto& [idx, c] : out.E_1_c[j])
                    s.axpy(c, (*SB)[idx / q].L[idx % q]);
                if (s != SVec::unit(j))
                    return "Σ S_B(E₁)E₂c differs from c at c=" + C.labels[j];
            }
            return {};
        });
    }
    out.completed.S_B = SB;
    out.completed.S_C = SC;
    out.completed.phi_B = phiB;
    out.completed.phi_C = phiC;
    out.valid = r.all_pass();
    return out;
}

/// ζE over (C, B) with nothing supplied.
inline SeparabilityIdempotent flipped(const SeparabilityIdempotent& S)
{
    const std::size_t p = S.B.dim(), q = S.C.dim();
    SeparabilityIdempotent f;
    f.name = "flip of " + S.name;
    f.B = S.C;
    f.C = S.B;
    f.test_stock = S.test_stock;
    f.E = zero_multiplier(p * q);
    auto sw = [&](const SVec& x) {
        SVec y;
        for (const auto& [idx, c] : x)
            y.add((idx % q) * p + idx / q, c);
        return y;
    };
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            f.E.L[j * p + i] = sw(S.E.L[i * q + j]);
            f.E.R[j * p + i] = sw(S.E.R[i * q + j]);
        }
    return f;
}

/// Regular when ζE is again a separability idempotent over (C, B).
inline bool is_regular(const SeparabilityIdempotent& S, Report* detail_out = nullptr)
{
    auto v = verify_sep(flipped(S));
    if (detail_out)
        *detail_out = v.report;
    return v.valid;
}

// ---- generators ------------------------------------------------------------

/// B = C = K(X), E = Σ δ_x⊗δ_x.
inline SeparabilityIdempotent diagonal_on_set(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("diagonal_on_set: the set must be nonempty");
    SeparabilityIdempotent S;
    S.name = "diagonal on " + std::to_string(n) + " points";
    S.B = function_algebra(n);
    S.C = function_algebra(n);
    SVec e;
    for (std::size_t x = 0; x < n; ++x)
        e.add(x * n + x, 1);
    S.E = tensor_element_multiplier(S.B, S.C, e);
    std::vector<Multiplier> id;
    for (std::size_t x = 0; x < n; ++x)
        id.push_back(embed(S.C, SVec::unit(x)));
    S.S_B = id;
    S.S_C = id;
    S.phi_B = Vec(n, Q(1));
    S.phi_C = Vec(n, Q(1));
    return S;
}

/// E = Δ(h) = (1/|H|) Σ λ_g⊗λ_g in the group algebra of H, with its normalized integrals.
inline SeparabilityIdempotent from_dqg(const FiniteGroup& H)
{
    const std::size_t n = H.order();
    SeparabilityIdempotent S;
    S.name = "Δ(h) for " + H.name;
    S.B = group_algebra(H);
    S.C = S.B;
    SVec e;
    for (std::size_t g = 0; g < n; ++g)
        e.add(g * n + g, Q(1, n));
    S.E = tensor_element_multiplier(S.B, S.C, e);
    std::vector<Multiplier> inv;
    for (std::size_t g = 0; g < n; ++g)
        inv.push_back(embed(S.B, SVec::unit(H.inv[g])));
    S.S_B = inv;
    S.S_C = inv;
    Vec phi(n, Q(0));
    phi[0] = Q(static_cast<long>(n));
    S.phi_B = phi;
    S.phi_C = phi;
    return S;
}

/// E = (1/n) Σ e_ij⊗e_ji in M_n ⊗ M_n^op; extra test stock.
inline SeparabilityIdempotent matrix_units(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("matrix_units: size must be positive");
    SeparabilityIdempotent S;
    S.name = "matrix units " + std::to_string(n);
    S.test_stock = true;
    S.B = matrix_algebra(n);
    S.C = matrix_algebra(n, true);
    const std::size_t d = n * n;
    SVec e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            e.add((i * n + j) * d + j * n + i, Q(1, n));
    S.E = tensor_element_multiplier(S.B, S.C, e);
    std::vector<Multiplier> sb, sc;
    for (std::size_t a = 0; a < d; ++a) {
        sb.push_back(embed(S.C, SVec::unit(a)));
        sc.push_back(embed(S.B, SVec::unit(a)));
    }
    S.S_B = sb;
    S.S_C = sc;
    Vec tr(d, Q(0));
    for (std::size_t i = 0; i < n; ++i)
        tr[i * n + i] = Q(static_cast<long>(n));
    S.phi_B = tr;
    S.phi_C = tr;
    return S;
}

} // namespace wmha
