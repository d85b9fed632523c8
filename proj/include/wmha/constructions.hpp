#pragma once

#include "groupoid.hpp"
#include "separability.hpp"
#include "source_target.hpp"
#include "wmha_core.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace wmha {

/// x ∈ A⊗B viewed as a multiplier of A⊗B.
inline Multiplier multiplier2(const Algebra& A, const Algebra& B, const SVec& x)
{
    const std::size_t N = A.dim() * B.dim();
    Multiplier m;
    for (std::size_t j = 0; j < N; ++j) {
        m.L.push_back(tensor_mul(A, B, x, SVec::unit(j)));
        m.R.push_back(tensor_mul(A, B, SVec::unit(j), x));
    }
    return m;
}

inline void require_valid(const FiniteGroupoid& G)
{
    auto bad = validate(G);
    if (!bad.empty())
        throw std::invalid_argument("invalid groupoid: " + bad.front());
}

/// K(G): functions with pointwise product, Δ(f)(p,q) = f(pq) when pq is defined.
inline WmhaBundle function_wmha(const FiniteGroupoid& G, const std::string& name = "K(G)")
{
    require_valid(G);
    const std::size_t n = G.size(), N = n * n;
    std::vector<std::string> labels;
    std::vector<std::vector<SVec>> t(n, std::vector<SVec>(n));
    for (std::size_t p = 0; p < n; ++p) {
        labels.push_back("δ" + G.name(p));
        t[p][p] = SVec::unit(p);
    }
    WmhaBundle b;
    b.name = name;
    b.A = Algebra(name, labels, t);
    for (std::size_t r = 0; r < n; ++r) {
        Multiplier d = zero_multiplier(N);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                if (auto pq = G.mul(p, q); pq && *pq == r) {
                    d.L[p * n + q] = SVec::unit(p * n + q);
                    d.R[p * n + q] = SVec::unit(p * n + q);
                }
        b.delta.push_back(std::move(d));
        b.antipode.push_back(embed(b.A, SVec::unit(G.inv(r))));
    }
    Vec eps(n);
    Multiplier E = zero_multiplier(N);
    for (std::size_t p = 0; p < n; ++p) {
        eps[p] = G.is_unit(p) ? 1 : 0;
        for (std::size_t q = 0; q < n; ++q)
            if (G.mul(p, q)) {
                E.L[p * n + q] = SVec::unit(p * n + q);
                E.R[p * n + q] = SVec::unit(p * n + q);
            }
    }
    b.counit = eps;
    b.E = E;
    return b;
}

/// ℂG: λ_pλ_q = λ_pq when defined, Δ(λ_p) = λ_p⊗λ_p, S(λ_p) = λ_{p⁻¹}, ε(λ_p) = 1.
inline WmhaBundle groupoid_algebra_wmha(const FiniteGroupoid& G, const std::string& name = "CG")
{
    require_valid(G);
    const std::size_t n = G.size();
    std::vector<std::string> labels;
    std::vector<std::vector<SVec>> t(n, std::vector<SVec>(n));
    for (std::size_t p = 0; p < n; ++p) {
        labels.push_back("λ" + G.name(p));
        for (std::size_t q = 0; q < n; ++q)
            if (auto pq = G.mul(p, q))
                t[p][q] = SVec::unit(*pq);
    }
    WmhaBundle b;
    b.name = name;
    b.A = Algebra(name, labels, t);
    for (std::size_t p = 0; p < n; ++p) {
        b.delta.push_back(multiplier2(b.A, b.A, SVec::unit(p * n + p)));
        b.antipode.push_back(embed(b.A, SVec::unit(G.inv(p))));
    }
    SVec e;
    for (auto u : G.units())
        e.add(u * n + u, 1);
    b.counit = Vec(n, Q(1));
    b.E = multiplier2(b.A, b.A, e);
    return b;
}

// ---- P = C⊗B from a separability idempotent --------------------------------

namespace detail {

inline std::optional<SVec> unit_of(const Algebra& A)
{
    std::vector<SVec> all;
    for (std::size_t i = 0; i < A.dim(); ++i)
        all.push_back(SVec::unit(i));
    return local_units_for(A, all);
}

inline Q pair(const Vec& f, const SVec& x)
{
    Q s = 0;
    for (const auto& [i, c] : x)
        s += c * f.at(i);
    return s;
}

inline std::string show(const Algebra& A, const SVec& v)
{
    std::string s;
    for (const auto& [i, c] : v)
        s += (s.empty() ? "" : " + ") + to_string(c) + "·" + A.labels[i];
    return s.empty() ? std::string("0") : s;
}

/// Runs verify_sep and returns the completed data, or throws naming the first failure.
inline SeparabilityIdempotent verified(const SeparabilityIdempotent& S)
{
    auto v = verify_sep(S);
    if (!v.valid) {
        const auto* f = v.report.first_failure();
        throw std::invalid_argument("separability idempotent " + S.name + " fails " + (f ? f->name + ": " + f->witness : std::string("?")));
    }
    return v.completed;
}

} // namespace detail

/*
 * P = C⊗B, basis c_j⊗b_i at j*dim B + i.  Δ_P(c⊗b) = c⊗E⊗b acts on
 * P⊗P = C⊗B⊗C⊗B through the middle legs, S_P(c⊗b) = S_B(b)⊗S_C(c),
 * ε_P(c⊗b) = φ_C(cS_B(b)) and E_P = 1⊗E⊗1.
 */
inline WmhaBundle cb_wmha(const SeparabilityIdempotent& input)
{
    SeparabilityIdempotent S = detail::verified(input);
    const Algebra& B = S.B;
    const Algebra& C = S.C;
    const std::size_t p = B.dim(), q = C.dim(), d = p * q;
    const auto& SB = *S.S_B;
    const auto& SC = *S.S_C;
    auto place = [&](const SVec& c, const SVec& bc, const SVec& b) {
        SVec out;
        for (const auto& [k, x] : c)
            for (const auto& [m, y] : bc)
                for (const auto& [l, z] : b)
                    out.add(((k * p + m / q) * q + m % q) * p + l, x * y * z);
        return out;
    };
    WmhaBundle w;
    w.name = "C⊗B over " + S.name;
    w.A = tensor_algebra(C, B);
    w.A.name = w.name;
    for (std::size_t x = 0; x < d; ++x) {
        SVec cx = SVec::unit(x / p), bx = SVec::unit(x % p);
        Multiplier D = zero_multiplier(d * d);
        for (std::size_t u = 0; u < d; ++u)
            for (std::size_t v = 0; v < d; ++v) {
                std::size_t c1 = u / p, b1 = u % p, c2 = v / p, b2 = v % p;
                D.L[u * d + v] = place(C.mul(cx, SVec::unit(c1)), S.E.L[b1 * q + c2], B.mul(bx, SVec::unit(b2)));
                D.R[u * d + v] = place(C.mul(SVec::unit(c1), cx), S.E.R[b1 * q + c2], B.mul(SVec::unit(b2), bx));
            }
        w.delta.push_back(std::move(D));
        w.antipode.push_back(tensor_multiplier(SB[x % p], SC[x / p]));
    }
    Vec eps(d);
    for (std::size_t x = 0; x < d; ++x)
        eps[x] = detail::pair(*S.phi_C, SB[x % p].right(SVec::unit(x / p)));
    w.counit = eps;
    Multiplier EP = zero_multiplier(d * d);
    for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) {
            std::size_t c1 = u / p, b1 = u % p, c2 = v / p, b2 = v % p;
            EP.L[u * d + v] = place(SVec::unit(c1), S.E.L[b1 * q + c2], SVec::unit(b2));
            EP.R[u * d + v] = place(SVec::unit(c1), S.E.R[b1 * q + c2], SVec::unit(b2));
        }
    w.E = EP;
    return w;
}

/*
 * Closed forms on P = C⊗B checked against the engine: both counit formulas,
 * E_P, ε_s^P(c⊗b) = 1⊗S_C(c)b, ε_t^P(c⊗b) = cS_B(b)⊗1 and, for a regular E,
 * regularity of P.
 */
inline Report check_cb(const SeparabilityIdempotent& input, Wmha& W)
{
    Report r;
    SeparabilityIdempotent S = detail::verified(input);
    const Algebra& B = S.B;
    const Algebra& C = S.C;
    const std::size_t p = B.dim(), q = C.dim(), d = p * q;
    const auto& SB = *S.S_B;
    const auto& SC = *S.S_C;
    r.record("dim P", std::to_string(d));
    detail::guarded(r, "cb.counit_formulas", "φ_C(cS_B(b)) = φ_B(S_C(c)b) = ε_P(c⊗b) on a basis of P", [&]() -> std::string {
        const auto& eps = W.counit();
        if (!eps.unique)
            return "the counit of P is not unique";
        for (std::size_t x = 0; x < d; ++x) {
            Q vc = detail::pair(*S.phi_C, SB[x % p].right(SVec::unit(x / p)));
            Q vb = detail::pair(*S.phi_B, SC[x / p].left(SVec::unit(x % p)));
            if (vc != vb || vc != eps.eps[x])
                return "at " + W.label(x) + ": φ_C(cS_B(b)) = " + to_string(vc) + ", φ_B(S_C(c)b) = " + to_string(vb) + ", ε_P = " + to_string(eps.eps[x]);
        }
        return {};
    });
    detail::guarded(r, "cb.E_P", "the canonical idempotent of P is 1⊗E⊗1", [&]() -> std::string {
        const auto& E = W.E();
        if (!E.found)
            return "E_P not found: " + E.failure;
        return E.E == *W.bundle().E ? "" : "solved E_P differs from 1⊗E⊗1";
    });
    SourceTarget st(W);
    st.maps();
    detail::guarded(r, "cb.source_target_closed_forms", "ε_s^P(c⊗b) = 1⊗S_C(c)b and ε_t^P(c⊗b) = cS_B(b)⊗1", [&]() -> std::string {
        if (st.data().eps_s.size() != d)
            return "source and target maps unavailable";
        for (std::size_t x = 0; x < d; ++x) {
            SVec cx = SVec::unit(x / p), bx = SVec::unit(x % p);
            Multiplier es = tensor_multiplier(identity_multiplier(q), embed(B, SC[x / p].left(bx)));
            Multiplier et = tensor_multiplier(embed(C, SB[x % p].right(cx)), identity_multiplier(p));
            if (st.data().eps_s[x] != es)
                return "ε_s^P differs from 1⊗S_C(c)b at " + W.label(x);
            if (st.data().eps_t[x] != et)
                return "ε_t^P differs from cS_B(b)⊗1 at " + W.label(x);
        }
        return {};
    });
    if (is_regular(S)) {
        Tri reg = Tri::Unknown;
        check_regularity(W, &reg);
        r.add("cb.regular", "P is regular when E is regular", reg == Tri::Yes, "regularity verdict " + to_string(reg));
    }
    return r;
}

/// The discrete quantum group H-hat built as C⊗B over E = Δ(h) in the group algebra.
inline WmhaBundle dqg_wmha(const FiniteGroup& H)
{
    WmhaBundle w = cb_wmha(from_dqg(H));
    w.name = "DQG(" + H.name + ")";
    w.A.name = w.name;
    return w;
}

/// ε_P(a⊗b) = φ(aS(b)) = ψ(S(a)b) and the source/target closed forms, plus E_P = 1⊗Δ(h)⊗1.
inline Report check_dqg(const FiniteGroup& H, Wmha& W)
{
    Report r = check_cb(from_dqg(H), W);
    for (auto& c : r.checks)
        c.name.replace(0, 2, "dqg");
    return r;
}

// ---- γ: P → M(A) ------------------------------------------------------------

struct GammaResult {
    Report report;
    std::size_t dim_P = 0;
    std::size_t rank = 0;
    std::size_t kernel_dim = 0;
};

/*
 * γ(x⊗y) = xy for x ∈ C, y ∈ B, with P = C⊗B built from the separability
 * certificate of W.  Expects a SourceTarget on which run() has completed.
 */
inline GammaResult gamma_map(Wmha& W, SourceTarget& st)
{
    GammaResult out;
    Report& r = out.report;
    const auto& D = st.data();
    if (!D.sep || !D.sep->S_B || !D.sep->S_C || !D.sep->phi_B || !D.sep->phi_C) {
        detail::skipped(r, "gamma.build", "P = C⊗B built from the separability certificate", "certificate unavailable");
        return out;
    }
    const SeparabilityIdempotent& S = *D.sep;
    const std::size_t p = S.B.dim(), q = S.C.dim(), d = p * q, n = W.n();
    WmhaBundle Pb;
    try {
        Pb = cb_wmha(S);
    } catch (const std::exception& ex) {
        r.add("gamma.build", "P = C⊗B built from the separability certificate", false, ex.what());
        return out;
    }
    r.add("gamma.build", "P = C⊗B built from the separability certificate", true);
    out.dim_P = d;
    r.record("dim P", std::to_string(d));
    const Algebra& P = Pb.A;
    std::vector<Multiplier> g(d);
    for (std::size_t x = 0; x < d; ++x)
        g[x] = D.C[x / p] * D.B[x % p];
    auto gamma = [&](const SVec& v) { return linear_combination(g, v, n); };
    detail::guarded(r, "gamma.multiplicative", "γ(xy) = γ(x)γ(y) on basis pairs of P", [&]() -> std::string {
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y)
                if (gamma(P.mul(SVec::unit(x), SVec::unit(y))) != g[x] * g[y])
                    return "at (" + P.labels[x] + ", " + P.labels[y] + ")";
        return {};
    });
    detail::guarded(r, "gamma.nondegenerate", "γ(P)A = A = Aγ(P)", [&]() -> std::string {
        Subspace left(n), right(n);
        for (const auto& m : g)
            for (std::size_t a = 0; a < n; ++a) {
                left.add(m.left(SVec::unit(a)));
                right.add(m.right(SVec::unit(a)));
            }
        if (left.dim() != n)
            return "γ(P)A has dimension " + std::to_string(left.dim());
        if (right.dim() != n)
            return "Aγ(P) has dimension " + std::to_string(right.dim());
        return {};
    });
    auto uP = detail::unit_of(P);
    const std::size_t n2 = n * n;
    detail::guarded(r, "gamma.coproduct", "Δ(γ(p)) = (γ⊗γ)(Δ_P(p)) on a basis of P", [&]() -> std::string {
        if (!uP)
            return "P has no unit to slice Δ_P";
        SVec u2 = tensor(*uP, *uP, d);
        for (std::size_t x = 0; x < d; ++x) {
            SVec dp = Pb.delta[x].left(u2);
            Multiplier rhs = zero_multiplier(n2);
            for (const auto& [idx, c] : dp)
                rhs = rhs + scaled(tensor_multiplier(g[idx / d], g[idx % d]), c);
            auto lhs = W.delta_ext(g[x]);
            if (!lhs)
                return "Δ does not extend to γ(" + P.labels[x] + ")";
            if (*lhs != rhs)
                return "at " + P.labels[x];
        }
        return {};
    });
    detail::guarded(r, "gamma.antipode", "S(γ(p)) = γ(S_P(p)) on a basis of P", [&]() -> std::string {
        if (!uP)
            return "P has no unit to read S_P";
        for (std::size_t x = 0; x < d; ++x) {
            auto lhs = W.S_ext(g[x]);
            if (!lhs)
                return "S does not extend to γ(" + P.labels[x] + ")";
            if (*lhs != gamma(Pb.antipode[x].left(*uP)))
                return "at " + P.labels[x];
        }
        return {};
    });
    Subspace img(2 * n2);
    for (const auto& m : g)
        img.add(flatten(m));
    out.rank = img.dim();
    out.kernel_dim = d - out.rank;
    r.record("rank of γ", std::to_string(out.rank));
    r.record("kernel dimension of γ", std::to_string(out.kernel_dim));
    r.record("γ injective", out.kernel_dim == 0 ? "yes" : "no");
    if (W.unit()) {
        Wmha WP(Pb);
        SourceTarget stP(WP);
        stP.maps();
        const SVec& uA = *W.unit();
        detail::guarded(r, "gamma.source_target", "γ∘ε_t^P = ε_t∘γ and γ∘ε_s^P = ε_s∘γ for unital A", [&]() -> std::string {
            if (!uP || stP.data().eps_s.size() != d || st.data().eps_s.size() != n)
                return "source and target maps unavailable";
            for (std::size_t x = 0; x < d; ++x) {
                SVec a = g[x].left(uA);
                if (gamma(stP.data().eps_t[x].left(*uP)) != st.eps_t(a))
                    return "ε_t at " + P.labels[x];
                if (gamma(stP.data().eps_s[x].left(*uP)) != st.eps_s(a))
                    return "ε_s at " + P.labels[x];
            }
            return {};
        });
    }
    return out;
}

inline GammaResult gamma_map(Wmha& W)
{
    SourceTarget st(W);
    st.run();
    return gamma_map(W, st);
}

} // namespace wmha
