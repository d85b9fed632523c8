#pragma once

#include "wmha_core.hpp"

#include <string>

namespace wmha {

/// (c⊗1)x for c ∈ A and x ∈ A⊗A.
inline SVec leg1_left(const Algebra& A, const SVec& c, const SVec& x)
{
    const std::size_t n = A.dim();
    SVec r;
    for (const auto& [idx, v] : x)
        for (const auto& [k, w] : A.mul(c, SVec::unit(idx / n)))
            r.add(k * n + idx % n, v * w);
    return r;
}
/// x(1⊗b)
inline SVec leg2_right(const Algebra& A, const SVec& x, const SVec& b)
{
    const std::size_t n = A.dim();
    SVec r;
    for (const auto& [idx, v] : x)
        for (const auto& [k, w] : A.mul(SVec::unit(idx % n), b))
            r.add((idx / n) * n + k, v * w);
    return r;
}
/// (1⊗c)x
inline SVec leg2_left(const Algebra& A, const SVec& c, const SVec& x)
{
    const std::size_t n = A.dim();
    SVec r;
    for (const auto& [idx, v] : x)
        for (const auto& [k, w] : A.mul(c, SVec::unit(idx % n)))
            r.add((idx / n) * n + k, v * w);
    return r;
}
/// x(b⊗1)
inline SVec leg1_right(const Algebra& A, const SVec& x, const SVec& b)
{
    const std::size_t n = A.dim();
    SVec r;
    for (const auto& [idx, v] : x)
        for (const auto& [k, w] : A.mul(SVec::unit(idx / n), b))
            r.add(k * n + idx % n, v * w);
    return r;
}
/// ζ on A⊗A
inline SVec flip(const SVec& x, std::size_t n)
{
    SVec r;
    for (const auto& [idx, v] : x)
        r.add((idx % n) * n + idx / n, v);
    return r;
}

inline Report check_algebra_structure(Wmha& W)
{
    Report r;
    auto rep = check_algebra(W.A());
    r.add("algebra.associative", "the product is associative on all basis triples", rep.associative, rep.witness);
    r.add("algebra.nondegenerate", "left and right annihilators of A are zero", rep.nondegenerate, rep.witness);
    r.add("algebra.idempotent", "products of basis elements span A", rep.idempotent, rep.witness);
    r.record("dim A", std::to_string(W.n()));
    r.record("unital", rep.unital ? "yes" : "no");
    return r;
}

inline Report check_coproduct(Wmha& W)
{
    Report r;
    const auto& b = W.bundle();
    const std::size_t n = W.n();
    detail::guarded(r, "coproduct.multiplier", "each Δ(a) is a two-sided multiplier of A⊗A", [&]() -> std::string {
        for (std::size_t i = 0; i < n; ++i)
            if (auto d = W.multiplier_defect2(b.delta[i]); !d.empty())
                return "Δ(" + W.label(i) + "): " + d;
        return {};
    });
    detail::guarded(r, "coproduct.multiplicative", "Δ(ab) = Δ(a)Δ(b) as multipliers", [&]() -> std::string {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Multiplier lhs = zero_multiplier(W.N());
                for (const auto& [k, c] : W.A().table[i][j])
                    lhs = lhs + scaled(b.delta[k], c);
                if (lhs != b.delta[i] * b.delta[j])
                    return "a=" + W.label(i) + ", b=" + W.label(j);
            }
        return {};
    });
    for (int which : {1, 2}) {
        std::string nm = which == 1 ? "canonical_maps.T1" : "canonical_maps.T2";
        std::string st = which == 1 ? "Δ(a)(1⊗b) lies in A⊗A for all a,b" : "(c⊗1)Δ(a) lies in A⊗A for all a,c";
        detail::guarded(r, nm, st, [&]() -> std::string {
            const auto& t = W.T(which);
            for (std::size_t k = 0; k < t.size(); ++k)
                if (!t[k])
                    return "at " + W.label2(k);
            return {};
        });
    }
    return r;
}

inline Report check_coassociativity(Wmha& W)
{
    Report r;
    const std::string st = "(c⊗1⊗1)(Δ⊗ι)(Δ(a)(1⊗b)) = (ι⊗Δ)((c⊗1)Δ(a))(1⊗1⊗b) for all a,b,c";
    if (!W.T_complete(1) || !W.T_complete(2)) {
        detail::skipped(r, "coproduct.coassociative", st, "canonical maps leave A⊗A");
        return r;
    }
    detail::guarded(r, "coproduct.coassociative", st, [&]() -> std::string {
        const std::size_t n = W.n(), N = W.N();
        const auto& t1 = W.T(1);
        const auto& t2 = W.T(2);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    SVec lhs, rhs;
                    for (const auto& [pq, x] : *t1[a * n + b])
                        for (const auto& [k, y] : *t2[c * n + pq / n])
                            lhs.add(k * n + pq % n, x * y);
                    for (const auto& [rs, x] : *t2[c * n + a])
                        for (const auto& [k, y] : *t1[(rs % n) * n + b])
                            rhs.add((rs / n) * N + k, x * y);
                    if (lhs != rhs)
                        return "(a,b,c)=(" + W.label(a) + "," + W.label(b) + "," + W.label(c) + ")";
                }
        return {};
    });
    return r;
}

/// Leg spans of the ranges of T1 (first leg) and T2 (second leg).
inline Report check_fullness(Wmha& W)
{
    Report r;
    const std::string st = "the legs of Δ(A)(1⊗A) and (A⊗1)Δ(A) span A";
    if (!W.T_complete(1) || !W.T_complete(2)) {
        detail::skipped(r, "coproduct.full", st, "canonical maps leave A⊗A");
        return r;
    }
    detail::guarded(r, "coproduct.full", st, [&]() -> std::string {
        const std::size_t n = W.n();
        Subspace left(n), right(n);
        for (const auto& x : W.T(1)) {
            std::map<std::size_t, SVec> cols;
            for (const auto& [idx, c] : *x)
                cols[idx % n].add(idx / n, c);
            for (const auto& [j, v] : cols)
                left.add(v);
        }
        for (const auto& x : W.T(2)) {
            std::map<std::size_t, SVec> rows;
            for (const auto& [idx, c] : *x)
                rows[idx / n].add(idx % n, c);
            for (const auto& [i, v] : rows)
                right.add(v);
        }
        if (left.dim() != n)
            return "first-leg span has dimension " + std::to_string(left.dim());
        if (right.dim() != n)
            return "second-leg span has dimension " + std::to_string(right.dim());
        return {};
    });
    return r;
}

inline Report check_E(Wmha& W)
{
    Report r;
    const std::size_t N = W.N();
    const std::string st_unique = "there is exactly one E with E(A⊗A)=span T1, (A⊗A)E=span T2 acting as identity on each";
    if (!W.T_complete(1) || !W.T_complete(2)) {
        detail::skipped(r, "E.unique", st_unique, "canonical maps leave A⊗A");
        return r;
    }
    const auto& Er = W.E();
    r.record("dim span T1", std::to_string(Er.rank_T1));
    r.record("dim span T2", std::to_string(Er.rank_T2));
    r.add("E.unique", st_unique, Er.found && Er.unique, Er.failure);
    if (!Er.found)
        return r;
    const Multiplier& E = Er.E;
    detail::guarded(r, "E.multiplier", "the computed E is a two-sided multiplier of A⊗A", [&] { return W.multiplier_defect2(E); });
    detail::guarded(r, "E.identity_on_ranges", "E·x = x on span T1 and y·E = y on span T2", [&]() -> std::string {
        for (const auto& t : W.T1_elim().basis())
            if (apply_map(E.L, t) != t)
                return "E·x differs from x on span T1";
        for (const auto& z : W.T2_elim().basis())
            if (apply_map(E.R, z) != z)
                return "y·E differs from y on span T2";
        return {};
    });
    detail::guarded(r, "E.ranges", "E(A⊗A) = Δ(A)(1⊗A) and (A⊗A)E = (A⊗1)Δ(A)", [&]() -> std::string {
        Subspace el(N), er(N), t1(N), t2(N);
        for (std::size_t j = 0; j < N; ++j) {
            el.add(E.L[j]);
            er.add(E.R[j]);
        }
        for (const auto& t : W.T1_elim().basis())
            t1.add(t);
        for (const auto& z : W.T2_elim().basis())
            t2.add(z);
        if (el != t1)
            return "E(A⊗A) has dimension " + std::to_string(el.dim()) + " vs " + std::to_string(t1.dim());
        if (er != t2)
            return "(A⊗A)E has dimension " + std::to_string(er.dim()) + " vs " + std::to_string(t2.dim());
        return {};
    });
    detail::guarded(r, "E.defining_equations", "z·(E f) = z·f for z in span T2 and (f E)·t = f·t for t in span T1", [&]() -> std::string {
        for (const auto& z : W.T2_elim().basis())
            for (std::size_t j = 0; j < N; ++j)
                if (W.mul2(z, E.L[j]) != W.mul2(z, W.e(j)))
                    return "left equation fails at " + W.label2(j);
        for (const auto& t : W.T1_elim().basis())
            for (std::size_t j = 0; j < N; ++j)
                if (W.mul2(E.R[j], t) != W.mul2(W.e(j), t))
                    return "right equation fails at " + W.label2(j);
        return {};
    });
    detail::guarded(r, "E.idempotent", "E² = E", [&]() -> std::string { return E * E == E ? "" : "E² differs from E"; });
    detail::guarded(r, "E.absorbs_coproduct", "Δ(a)E = Δ(a) = EΔ(a) for all a", [&]() -> std::string {
        for (std::size_t i = 0; i < W.n(); ++i) {
            const auto& d = W.bundle().delta[i];
            if (d * E != d)
                return "Δ(" + W.label(i) + ")E differs from Δ(" + W.label(i) + ")";
            if (E * d != d)
                return "EΔ(" + W.label(i) + ") differs from Δ(" + W.label(i) + ")";
        }
        return {};
    });
    if (W.bundle().E) {
        detail::guarded(r, "E.matches_supplied", "the computed E equals the E supplied by the construction", [&]() -> std::string {
            const Multiplier& s = *W.bundle().E;
            for (std::size_t j = 0; j < N; ++j) {
                if (s.L[j] != E.L[j])
                    return "left actions differ at " + W.label2(j);
                if (s.R[j] != E.R[j])
                    return "right actions differ at " + W.label2(j);
            }
            return {};
        });
    }
    return r;
}

/// Legs of E commute and each leg multiplication is injective.
inline Report check_E_properties(Wmha& W)
{
    Report r;
    const std::string st_legs = "(Δ⊗ι)E = (ι⊗Δ)E = (E⊗1)(1⊗E) = (1⊗E)(E⊗1)";
    const std::string st_inj = "a ↦ E(1⊗a), (1⊗a)E, (a⊗1)E, E(a⊗1) are injective";
    if (!W.T_complete(1) || !W.T_complete(2) || !W.E().found) {
        detail::skipped(r, "E.leg_identities", st_legs, "E not available");
        detail::skipped(r, "E.injective_leg_maps", st_inj, "E not available");
        return r;
    }
    const Multiplier& E = W.E().E;
    const std::size_t n = W.n(), N = W.N();
    detail::guarded(r, "E.leg_identities", st_legs, [&]() -> std::string {
        if (!W.delta_tensor_well_defined(E, true) || !W.delta_tensor_well_defined(E, false))
            return "extension of Δ⊗ι or ι⊗Δ to E is not well defined";
        for (std::size_t y = 0; y < N * n; ++y) {
            SVec ey = SVec::unit(y);
            auto a = W.delta_tensor_left(E, true, ey);
            auto b = W.delta_tensor_left(E, false, ey);
            if (!a || !b)
                return "E·f is not in the span of the T1 generators";
            SVec c = tensor_map(tensor_map(ey, N, nullptr, &E.L, N), n, &E.L, nullptr, n);
            SVec d = tensor_map(tensor_map(ey, n, &E.L, nullptr, n), N, nullptr, &E.L, N);
            if (*a != *b)
                return "(Δ⊗ι)E and (ι⊗Δ)E differ on basis element " + std::to_string(y);
            if (*a != c)
                return "(Δ⊗ι)E and (E⊗1)(1⊗E) differ on basis element " + std::to_string(y);
            if (c != d)
                return "(E⊗1)(1⊗E) and (1⊗E)(E⊗1) differ on basis element " + std::to_string(y);
        }
        return {};
    });
    detail::guarded(r, "E.injective_leg_maps", st_inj, [&]() -> std::string {
        const char* names[4] = {"E(1⊗a)", "(1⊗a)E", "(a⊗1)E", "E(a⊗1)"};
        for (int form = 0; form < 4; ++form) {
            Subspace s(N * N);
            for (std::size_t a = 0; a < n; ++a) {
                LinMap La = W.A().left_mult(SVec::unit(a));
                SVec flat;
                for (std::size_t y = 0; y < N; ++y) {
                    SVec ey = SVec::unit(y), v;
                    switch (form) {
                    case 0: v = apply_map(E.L, tensor_map(ey, n, nullptr, &La, n)); break;
                    case 1: v = tensor_map(apply_map(E.L, ey), n, nullptr, &La, n); break;
                    case 2: v = tensor_map(apply_map(E.L, ey), n, &La, nullptr, n); break;
                    default: v = apply_map(E.L, tensor_map(ey, n, &La, nullptr, n)); break;
                    }
                    for (const auto& [k, c] : v)
                        flat.add(y * N + k, c);
                }
                s.add(flat);
            }
            if (s.dim() != n)
                return std::string(names[form]) + " has rank " + std::to_string(s.dim());
        }
        return {};
    });
    return r;
}

inline Report check_counit(Wmha& W)
{
    Report r;
    const std::string st = "exactly one ε with (ε⊗ι)(Δ(a)(1⊗b)) = ab and (ι⊗ε)((c⊗1)Δ(a)) = ca";
    if (!W.T_complete(1) || !W.T_complete(2)) {
        detail::skipped(r, "counit.unique", st, "canonical maps leave A⊗A");
        return r;
    }
    const auto& c = W.counit();
    std::string w;
    if (!c.consistent)
        w = "system inconsistent";
    else if (!c.unique)
        w = "solution space has dimension " + std::to_string(c.kernel_dim);
    r.add("counit.unique", st, c.consistent && c.unique, w);
    if (c.consistent) {
        std::string vals;
        for (std::size_t i = 0; i < c.eps.size(); ++i)
            vals += (i ? " " : "") + to_string(c.eps[i]);
        r.record("counit", vals);
    }
    if (W.bundle().counit && c.consistent) {
        const Vec& s = *W.bundle().counit;
        std::string wit;
        for (std::size_t i = 0; i < s.size() && wit.empty(); ++i)
            if (s[i] != c.eps[i])
                wit = "at " + W.label(i) + ": supplied " + to_string(s[i]) + ", solved " + to_string(c.eps[i]);
        r.add("counit.matches_supplied", "the solved counit equals the supplied one", wit.empty(), wit);
    }
    return r;
}

inline Report verify_antipode(Wmha& W)
{
    Report r;
    const std::size_t n = W.n(), N = W.N();
    const auto& S = W.bundle().antipode;
    const Algebra& A = W.A();
    detail::guarded(r, "antipode.multiplier", "each S(a) is a two-sided multiplier of A", [&]() -> std::string {
        for (std::size_t i = 0; i < n; ++i)
            if (auto f = compatibility_failure(A, S[i]))
                return "S(" + W.label(i) + ") at (" + W.label(f->first) + "," + W.label(f->second) + ")";
        return {};
    });
    detail::guarded(r, "antipode.anti_multiplicative", "S(ab) = S(b)S(a)", [&]() -> std::string {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Multiplier lhs = zero_multiplier(n);
                for (const auto& [k, c] : A.table[i][j])
                    lhs = lhs + scaled(S[k], c);
                if (lhs != S[j] * S[i])
                    return "a=" + W.label(i) + ", b=" + W.label(j);
            }
        return {};
    });
    const bool have_E = W.T_complete(1) && W.T_complete(2) && W.E().found;
    const std::string st_r1 = "Σ a₁⊗S(a₂)b lies in A⊗A", st_r2 = "Σ cS(a₁)⊗a₂ lies in A⊗A";
    if (!have_E) {
        for (auto nm : {"antipode.R1", "antipode.R2", "antipode.T1R1", "antipode.T2R2", "antipode.left_covering",
                 "antipode.right_covering", "antipode.mu_R1_T1", "antipode.S_sandwich",
                 "antipode.anti_coalgebra"})
            detail::skipped(r, nm, "antipode identity", "E not available");
        return r;
    }
    const Multiplier& E = W.E().E;
    auto complete = [](const std::vector<std::optional<SVec>>& v) {
        for (const auto& x : v)
            if (!x)
                return false;
        return true;
    };
    detail::guarded(r, "antipode.R1", st_r1, [&]() -> std::string {
        const auto& v = W.R1();
        for (std::size_t k = 0; k < N; ++k)
            if (!v[k])
                return "at " + W.label2(k);
        return {};
    });
    detail::guarded(r, "antipode.R2", st_r2, [&]() -> std::string {
        const auto& v = W.R2();
        for (std::size_t k = 0; k < N; ++k)
            if (!v[k])
                return "at " + W.label2(k);
        return {};
    });
    bool r1 = complete(W.R1()), r2 = complete(W.R2());
    auto need = [&](bool ok, const std::function<std::string()>& fn) {
        return [ok, fn]() -> std::string { return ok ? fn() : std::string("generalized inverse leaves A⊗A"); };
    };
    detail::guarded(r, "antipode.T1R1", "E(a⊗b) = Σ Δ(a₁)(1⊗S(a₂)b), i.e. T1∘R1 is left multiplication by E", need(r1, [&]() -> std::string {
        for (std::size_t k = 0; k < N; ++k)
            if (W.apply_T(1, *W.R1()[k]) != E.L[k])
                return "at " + W.label2(k);
        return {};
    }));
    detail::guarded(r, "antipode.T2R2", "(c⊗a)E = Σ (cS(a₁)⊗1)Δ(a₂), i.e. T2∘R2 is right multiplication by E", need(r2, [&]() -> std::string {
        for (std::size_t k = 0; k < N; ++k)
            if (W.apply_T(2, *W.R2()[k]) != E.R[k])
                return "at " + W.label2(k);
        return {};
    }));
    detail::guarded(r, "antipode.left_covering", "Δ(c)(a⊗b) = Σ Δ(ca₁)(1⊗S(a₂)b)", need(r1, [&]() -> std::string {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const SVec& x = *W.R1()[a * n + b];
                for (std::size_t c = 0; c < n; ++c)
                    if (W.delta_left(SVec::unit(c), SVec::unit(a * n + b)) != W.apply_T(1, leg1_left(A, SVec::unit(c), x)))
                        return "(a,b,c)=(" + W.label(a) + "," + W.label(b) + "," + W.label(c) + ")";
            }
        return {};
    }));
    detail::guarded(r, "antipode.right_covering", "(c⊗a)Δ(b) = Σ (cS(a₁)⊗1)Δ(a₂b)", need(r2, [&]() -> std::string {
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t a = 0; a < n; ++a) {
                const SVec& x = *W.R2()[c * n + a];
                for (std::size_t b = 0; b < n; ++b)
                    if (W.delta_right(SVec::unit(c * n + a), SVec::unit(b)) != W.apply_T(2, leg2_right(A, x, SVec::unit(b))))
                        return "(a,b,c)=(" + W.label(a) + "," + W.label(b) + "," + W.label(c) + ")";
            }
        return {};
    }));
    detail::guarded(r, "antipode.mu_R1_T1", "Σ a₁S(a₂)a₃b = ab and Σ ca₁S(a₂)a₃ = ca", need(r1 && r2, [&]() -> std::string {
        for (std::size_t k = 0; k < N; ++k) {
            SVec ab = A.table[k / n][k % n];
            SVec x;
            for (const auto& [idx, c] : *W.T(1)[k])
                x.axpy(c, *W.R1()[idx]);
            if (W.mu(x) != ab)
                return "μR1T1 at " + W.label2(k);
            SVec y;
            for (const auto& [idx, c] : *W.T(2)[k])
                y.axpy(c, *W.R2()[idx]);
            if (W.mu(y) != ab)
                return "μR2T2 at " + W.label2(k);
        }
        return {};
    }));
    detail::guarded(r, "antipode.S_sandwich", "Σ S(a₁)a₂S(a₃)b = S(a)b and Σ cS(a₁)a₂S(a₃) = cS(a)", need(r1 && r2, [&]() -> std::string {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                SVec x = W.apply_T(1, *W.R1()[a * n + b]);
                if (W.mu_S_first(x) != S[a].L[b])
                    return "S(a)b at (" + W.label(a) + "," + W.label(b) + ")";
                SVec y = W.apply_T(2, *W.R2()[b * n + a]);
                if (W.mu_S_second(y) != S[a].R[b])
                    return "cS(a) at (" + W.label(b) + "," + W.label(a) + ")";
            }
        return {};
    }));
    detail::guarded(r, "antipode.anti_coalgebra", "(S(b)⊗1)Δ(S(a)) = ζ(S⊗S)(Δ(a)(1⊗b))", [&]() -> std::string {
        for (std::size_t a = 0; a < n; ++a) {
            auto dS = W.delta_ext(S[a]);
            if (!dS)
                return "Δ(S(" + W.label(a) + ")) is not well defined";
            for (std::size_t b = 0; b < n; ++b) {
                const SVec& t = *W.T(1)[a * n + b];
                for (std::size_t y = 0; y < N; ++y) {
                    SVec lhs = tensor_map(dS->L[y], n, &S[b].L, nullptr, n);
                    SVec rhs;
                    SVec ey = SVec::unit(y);
                    for (const auto& [idx, c] : t)
                        rhs.axpy(c, tensor_map(ey, n, &S[idx % n].L, &S[idx / n].L, n));
                    if (lhs != rhs)
                        return "(a,b)=(" + W.label(a) + "," + W.label(b) + ") on " + W.label2(y);
                }
            }
        }
        return {};
    });
    return r;
}

/// Regularity: S bijective on A, T3/T4 land in A⊗A, (S⊗S)E = ζE and the S⁻¹ formulas.
inline Report check_regularity(Wmha& W, Tri* verdict = nullptr)
{
    Report r;
    const std::size_t n = W.n(), N = W.N();
    const Algebra& A = W.A();
    bool s_in_A = false, s_bij = false;
    detail::guarded(r, "regular.S_in_A", "S maps A into A", [&]() -> std::string {
        s_in_A = W.S_map().has_value();
        return s_in_A ? "" : "some S(a) is not an element of A";
    });
    detail::guarded(r, "regular.S_bijective", "S is a bijection of A", [&]() -> std::string {
        s_bij = s_in_A && W.S_inverse().has_value();
        return s_bij ? "" : "S is not invertible on A";
    });
    for (int which : {3, 4}) {
        std::string nm = which == 3 ? "regular.T3" : "regular.T4";
        std::string st = which == 3 ? "(1⊗b)Δ(a) lies in A⊗A" : "Δ(a)(c⊗1) lies in A⊗A";
        detail::guarded(r, nm, st, [&]() -> std::string {
            const auto& t = W.T(which);
            for (std::size_t k = 0; k < N; ++k)
                if (!t[k])
                    return "at " + W.label2(k);
            return {};
        });
    }
    bool have = s_bij && W.T_complete(3) && W.T_complete(4) && W.T_complete(1) && W.T_complete(2) && W.E().found;
    const std::vector<std::string> rest = {"regular.S_tensor_S_E", "regular.X", "regular.Y", "regular.E_1_a",
        "regular.a_1_E", "regular.delta_b_1_a", "regular.a_1_delta_c"};
    if (!have) {
        for (const auto& nm : rest)
            detail::skipped(r, nm, "regularity identity", "S not bijective or maps incomplete");
        if (verdict)
            *verdict = Tri::No;
        return r;
    }
    const Multiplier& E = W.E().E;
    const LinMap& Sm = *W.S_map();
    const LinMap& Si = *W.S_inverse();
    detail::guarded(r, "regular.S_tensor_S_E", "(S⊗S)E = ζE", [&]() -> std::string {
        for (std::size_t y = 0; y < N; ++y) {
            SVec ey = SVec::unit(y);
            SVec lhs = tensor_map(apply_map(E.R, tensor_map(ey, n, &Si, &Si, n)), n, &Sm, &Sm, n);
            SVec rhs = flip(apply_map(E.L, flip(ey, n)), n);
            if (lhs != rhs)
                return "on " + W.label2(y);
        }
        return {};
    });
    auto complete = [](const std::vector<std::optional<SVec>>& v) {
        for (const auto& x : v)
            if (!x)
                return false;
        return true;
    };
    detail::guarded(r, "regular.X", "Σ S⁻¹(a₁)b⊗a₂ lies in A⊗A", [&]() -> std::string {
        return complete(W.X()) ? "" : "some X(b,a) is not in A⊗A";
    });
    detail::guarded(r, "regular.Y", "Σ a₁⊗bS⁻¹(a₂) lies in A⊗A", [&]() -> std::string {
        return complete(W.Y()) ? "" : "some Y(a,b) is not in A⊗A";
    });
    bool xy = complete(W.X()) && complete(W.Y());
    auto T4_of = [&](const SVec& x) { return W.apply_T(4, x); };
    auto T3_of = [&](const SVec& x) { return W.apply_T(3, x); };
    detail::guarded(r, "regular.E_1_a", "E(b⊗a) = Σ Δ(a₂)(S⁻¹(a₁)b⊗1)", [&]() -> std::string {
        if (!xy)
            return "X or Y incomplete";
        for (std::size_t k = 0; k < N; ++k)
            if (T4_of(*W.X()[k]) != E.L[k])
                return "at " + W.label2(k);
        return {};
    });
    detail::guarded(r, "regular.a_1_E", "(a⊗b)E = Σ (1⊗bS⁻¹(a₂))Δ(a₁)", [&]() -> std::string {
        if (!xy)
            return "X or Y incomplete";
        for (std::size_t k = 0; k < N; ++k)
            if (T3_of(*W.Y()[k]) != E.R[k])
                return "at " + W.label2(k);
        return {};
    });
    detail::guarded(r, "regular.delta_b_1_a", "Δ(b)(c⊗a) = Σ Δ(ba₂)(S⁻¹(a₁)c⊗1)", [&]() -> std::string {
        if (!xy)
            return "X or Y incomplete";
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    SVec lhs = W.delta_left(SVec::unit(b), SVec::unit(c * n + a));
                    // (1⊗b)X(c,a)
                    SVec y;
                    for (const auto& [idx, v] : *W.X()[c * n + a])
                        for (const auto& [k, w] : A.mul(SVec::unit(b), SVec::unit(idx % n)))
                            y.add((idx / n) * n + k, v * w);
                    if (lhs != T4_of(y))
                        return "(a,b,c)=(" + W.label(a) + "," + W.label(b) + "," + W.label(c) + ")";
                }
        return {};
    });
    detail::guarded(r, "regular.a_1_delta_c", "(a⊗b)Δ(c) = Σ (1⊗bS⁻¹(a₂))Δ(a₁c)", [&]() -> std::string {
        if (!xy)
            return "X or Y incomplete";
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    SVec lhs = W.delta_right(SVec::unit(a * n + b), SVec::unit(c));
                    SVec y;
                    for (const auto& [idx, v] : *W.Y()[a * n + b])
                        for (const auto& [k, w] : A.mul(SVec::unit(idx / n), SVec::unit(c)))
                            y.add(k * n + idx % n, v * w);
                    if (lhs != T3_of(y))
                        return "(a,b,c)=(" + W.label(a) + "," + W.label(b) + "," + W.label(c) + ")";
                }
        return {};
    });
    if (verdict) {
        bool ok = true;
        for (const auto& c : r.checks)
            ok = ok && c.pass;
        *verdict = ok ? Tri::Yes : Tri::No;
    }
    return r;
}

/// All axiom checks of the bundle itself, in a fixed order.
inline Report verify_core(Wmha& W)
{
    Report r;
    r.title = W.bundle().name;
    r.append(check_algebra_structure(W));
    r.append(check_coproduct(W));
    r.append(check_coassociativity(W));
    r.append(check_fullness(W));
    r.append(check_E(W));
    r.append(check_E_properties(W));
    r.append(check_counit(W));
    r.append(verify_antipode(W));
    Tri reg = Tri::Unknown;
    r.append(check_regularity(W, &reg));
    r.record("regular", to_string(reg));
    return r;
}

} // namespace wmha
