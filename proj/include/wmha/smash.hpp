#pragma once

#include "constructions.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace wmha {

/// Finite-dimensional Hopf algebra with Δ into Q⊗Q (index i*dim+j).
struct HopfAlgebra {
    std::string name;
    Algebra alg;
    std::vector<SVec> delta;
    Vec counit;
    std::vector<SVec> antipode;
    SVec unit;

    std::size_t dim() const { return alg.dim(); }
};

inline HopfAlgebra group_hopf(const FiniteGroup& H)
{
    HopfAlgebra h;
    h.alg = group_algebra(H);
    h.name = h.alg.name;
    const std::size_t n = H.order();
    for (std::size_t g = 0; g < n; ++g) {
        h.delta.push_back(SVec::unit(g * n + g));
        h.antipode.push_back(SVec::unit(H.inv[g]));
    }
    h.counit = Vec(n, Q(1));
    h.unit = SVec::unit(0);
    return h;
}

/// right[b][q] = b◁q on B, left[q][c] = q▷c on C, over the bases.
struct QActions {
    std::vector<std::vector<SVec>> right;
    std::vector<std::vector<SVec>> left;
};

/// On B = C = K(X): (f◁h)(x) = f(h▷x) and (h▷f)(x) = f(h⁻¹▷x).
inline QActions permutation_actions(const FiniteGroup& H, const ActionTable& act)
{
    const std::size_t m = H.order(), n = act.empty() ? 0 : act[0].size();
    QActions a;
    a.right.assign(n, std::vector<SVec>(m));
    a.left.assign(m, std::vector<SVec>(n));
    for (std::size_t h = 0; h < m; ++h)
        for (std::size_t y = 0; y < n; ++y) {
            a.right[y][h] = SVec::unit(act[H.inv[h]][y]);
            a.left[h][y] = SVec::unit(act[h][y]);
        }
    return a;
}

/// Trivial actions b◁q = ε(q)b, q▷c = ε(q)c.
inline QActions trivial_actions(std::size_t dimB, std::size_t dimC, const HopfAlgebra& Q_)
{
    QActions a;
    a.right.assign(dimB, std::vector<SVec>(Q_.dim()));
    a.left.assign(Q_.dim(), std::vector<SVec>(dimC));
    for (std::size_t q = 0; q < Q_.dim(); ++q) {
        for (std::size_t b = 0; b < dimB; ++b)
            a.right[b][q] = SVec::unit(b).scaled(Q_.counit[q]);
        for (std::size_t c = 0; c < dimC; ++c)
            a.left[q][c] = SVec::unit(c).scaled(Q_.counit[q]);
    }
    return a;
}

/// B, C, Q with their actions, and the algebra P = C⊗Q⊗B, basis (c*dim Q + q)*dim B + b.
class Smash {
public:
    Smash(Algebra B, Algebra C, HopfAlgebra Qh, QActions acts)
        : B_(std::move(B)), C_(std::move(C)), Q_(std::move(Qh)), a_(std::move(acts))
    {
        p_ = B_.dim();
        k_ = Q_.dim();
        q_ = C_.dim();
        if (a_.right.size() != p_ || a_.left.size() != k_)
            throw std::invalid_argument("smash: action tables have the wrong shape");
        for (const auto& row : a_.right)
            if (row.size() != k_)
                throw std::invalid_argument("smash: right action row has the wrong length");
        for (const auto& row : a_.left)
            if (row.size() != q_)
                throw std::invalid_argument("smash: left action row has the wrong length");
        uB_ = detail::unit_of(B_);
        uC_ = detail::unit_of(C_);
        build();
    }

    const Algebra& B() const { return B_; }
    const Algebra& C() const { return C_; }
    const HopfAlgebra& Qh() const { return Q_; }
    const QActions& actions() const { return a_; }
    const Algebra& P() const { return P_; }
    bool unital() const { return uB_.has_value() && uC_.has_value(); }
    const SVec& unit_B() const { return *uB_; }
    const SVec& unit_C() const { return *uC_; }

    SVec act_right(const SVec& b, const SVec& q) const
    {
        SVec out;
        for (const auto& [i, x] : b)
            for (const auto& [j, y] : q)
                out.axpy(x * y, a_.right[i][j]);
        return out;
    }

    SVec act_left(const SVec& q, const SVec& c) const
    {
        SVec out;
        for (const auto& [i, x] : q)
            for (const auto& [j, y] : c)
                out.axpy(x * y, a_.left[i][j]);
        return out;
    }

    SVec cqb(const SVec& c, const SVec& q, const SVec& b) const { return tensor(tensor(c, q, k_), b, p_); }
    SVec of_C(const SVec& c) const { return cqb(c, Q_.unit, *uB_); }
    SVec of_Q(const SVec& q) const { return cqb(*uC_, q, *uB_); }
    SVec of_B(const SVec& b) const { return cqb(*uC_, Q_.unit, b); }
    SVec one() const { return cqb(*uC_, Q_.unit, *uB_); }

    /// Σ q₁⊗q₂ embedded in P⊗P.
    SVec delta_Q(const SVec& q) const
    {
        SVec out;
        for (const auto& [i, x] : q)
            for (const auto& [idx, y] : Q_.delta[i])
                out.axpy(x * y, tensor(of_Q(SVec::unit(idx / k_)), of_Q(SVec::unit(idx % k_)), P_.dim()));
        return out;
    }

    /// Module-algebra laws, Hopf axioms of Q, associativity and the commutation rules.
    Report check() const
    {
        Report r;
        r.record("dim P", std::to_string(P_.dim()));
        r.add("smash.unital", "B and C have units", unital(), !uB_ ? "B has no unit" : "C has no unit");
        hopf_checks(r);
        module_checks(r);
        detail::guarded(r, "smash.associative", "(xy)z = x(yz) for all basis triples of P", [&]() -> std::string {
            const std::size_t d = P_.dim();
            for (std::size_t x = 0; x < d; ++x)
                for (std::size_t y = 0; y < d; ++y) {
                    SVec xy = P_.mul(SVec::unit(x), SVec::unit(y));
                    for (std::size_t z = 0; z < d; ++z)
                        if (P_.mul(xy, SVec::unit(z)) != P_.mul(SVec::unit(x), P_.mul(SVec::unit(y), SVec::unit(z))))
                            return "at (" + P_.labels[x] + ", " + P_.labels[y] + ", " + P_.labels[z] + ")";
                }
            return {};
        });
        if (!unital())
            return r;
        detail::guarded(r, "smash.presentation", "c⊗q⊗b = c·q·b in P", [&]() -> std::string {
            for (std::size_t c = 0; c < q_; ++c)
                for (std::size_t g = 0; g < k_; ++g)
                    for (std::size_t b = 0; b < p_; ++b) {
                        SVec e = P_.mul(P_.mul(of_C(SVec::unit(c)), of_Q(SVec::unit(g))), of_B(SVec::unit(b)));
                        if (e != cqb(SVec::unit(c), SVec::unit(g), SVec::unit(b)))
                            return "at " + C_.labels[c] + "⊗" + Q_.alg.labels[g] + "⊗" + B_.labels[b];
                    }
            return {};
        });
        detail::guarded(r, "smash.B_C_commute", "bc = cb in P", [&]() -> std::string {
            for (std::size_t b = 0; b < p_; ++b)
                for (std::size_t c = 0; c < q_; ++c)
                    if (P_.mul(of_B(SVec::unit(b)), of_C(SVec::unit(c))) != P_.mul(of_C(SVec::unit(c)), of_B(SVec::unit(b))))
                        return "at (" + B_.labels[b] + ", " + C_.labels[c] + ")";
            return {};
        });
        detail::guarded(r, "smash.bq_rule", "bq = Σ q₁(b◁q₂) in P", [&]() -> std::string {
            for (std::size_t b = 0; b < p_; ++b)
                for (std::size_t g = 0; g < k_; ++g) {
                    SVec rhs;
                    for (const auto& [idx, x] : Q_.delta[g])
                        rhs.axpy(x, P_.mul(of_Q(SVec::unit(idx / k_)), of_B(act_right(SVec::unit(b), SVec::unit(idx % k_)))));
                    if (P_.mul(of_B(SVec::unit(b)), of_Q(SVec::unit(g))) != rhs)
                        return "at (" + B_.labels[b] + ", " + Q_.alg.labels[g] + ")";
                }
            return {};
        });
        detail::guarded(r, "smash.qc_rule", "qc = Σ (q₁▷c)q₂ in P", [&]() -> std::string {
            for (std::size_t g = 0; g < k_; ++g)
                for (std::size_t c = 0; c < q_; ++c) {
                    SVec rhs;
                    for (const auto& [idx, x] : Q_.delta[g])
                        rhs.axpy(x, P_.mul(of_C(act_left(SVec::unit(idx / k_), SVec::unit(c))), of_Q(SVec::unit(idx % k_))));
                    if (P_.mul(of_Q(SVec::unit(g)), of_C(SVec::unit(c))) != rhs)
                        return "at (" + Q_.alg.labels[g] + ", " + C_.labels[c] + ")";
                }
            return {};
        });
        return r;
    }

private:
    // (c⊗q⊗b)(c'⊗q'⊗b') = Σ c(q₁▷c') ⊗ q₂q'₁ ⊗ (b◁q'₂)b'
    void build()
    {
        const std::size_t d = q_ * k_ * p_;
        std::vector<std::string> labels;
        for (std::size_t c = 0; c < q_; ++c)
            for (std::size_t g = 0; g < k_; ++g)
                for (std::size_t b = 0; b < p_; ++b)
                    labels.push_back(C_.labels[c] + "⊗" + Q_.alg.labels[g] + "⊗" + B_.labels[b]);
        std::vector<std::vector<SVec>> t(d, std::vector<SVec>(d));
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) {
                std::size_t c = x / (k_ * p_), g = (x / p_) % k_, b = x % p_;
                std::size_t c2 = y / (k_ * p_), g2 = (y / p_) % k_, b2 = y % p_;
                SVec out;
                for (const auto& [i1, x1] : Q_.delta[g])
                    for (const auto& [i2, x2] : Q_.delta[g2]) {
                        SVec cc = C_.mul(SVec::unit(c), act_left(SVec::unit(i1 / k_), SVec::unit(c2)));
                        SVec qq = Q_.alg.mul(SVec::unit(i1 % k_), SVec::unit(i2 / k_));
                        SVec bb = B_.mul(act_right(SVec::unit(b), SVec::unit(i2 % k_)), SVec::unit(b2));
                        out.axpy(x1 * x2, cqb(cc, qq, bb));
                    }
                t[x][y] = out;
            }
        P_ = Algebra(C_.name + "#" + Q_.name + "#" + B_.name, labels, t);
    }

    void hopf_checks(Report& r) const
    {
        const Algebra& H = Q_.alg;
        detail::guarded(r, "smash.hopf", "Q is a Hopf algebra: Δ multiplicative and coassociative, counit, antipode", [&]() -> std::string {
            for (std::size_t i = 0; i < k_; ++i) {
                if (H.mul(Q_.unit, SVec::unit(i)) != SVec::unit(i) || H.mul(SVec::unit(i), Q_.unit) != SVec::unit(i))
                    return "unit fails at " + H.labels[i];
                for (std::size_t j = 0; j < k_; ++j) {
                    SVec lhs;
                    for (const auto& [m, c] : H.table[i][j])
                        lhs.axpy(c, Q_.delta[m]);
                    if (lhs != tensor_mul(H, H, Q_.delta[i], Q_.delta[j]))
                        return "Δ is not multiplicative at (" + H.labels[i] + ", " + H.labels[j] + ")";
                }
                SVec l, rr, cl, cr, sl, sr;
                for (const auto& [idx, c] : Q_.delta[i]) {
                    std::size_t a = idx / k_, b = idx % k_;
                    for (const auto& [m, x] : Q_.delta[a])
                        l.add((m / k_ * k_ + m % k_) * k_ + b, c * x);
                    for (const auto& [m, x] : Q_.delta[b])
                        rr.add((a * k_ + m / k_) * k_ + m % k_, c * x);
                    cl.axpy(c * Q_.counit[a], SVec::unit(b));
                    cr.axpy(c * Q_.counit[b], SVec::unit(a));
                    sl.axpy(c, H.mul(Q_.antipode[a], SVec::unit(b)));
                    sr.axpy(c, H.mul(SVec::unit(a), Q_.antipode[b]));
                }
                if (l != rr)
                    return "Δ is not coassociative at " + H.labels[i];
                if (cl != SVec::unit(i) || cr != SVec::unit(i))
                    return "counit fails at " + H.labels[i];
                SVec e = Q_.unit.scaled(Q_.counit[i]);
                if (sl != e || sr != e)
                    return "antipode fails at " + H.labels[i];
            }
            return {};
        });
    }

    void module_checks(Report& r) const
    {
        auto q = [](std::size_t i) { return SVec::unit(i); };
        const Algebra& H = Q_.alg;
        detail::guarded(r, "smash.module.B_action", "(b◁q)◁q′ = b◁(qq′) and b◁1 = b", [&]() -> std::string {
            for (std::size_t b = 0; b < p_; ++b) {
                if (act_right(q(b), Q_.unit) != q(b))
                    return "b◁1 ≠ b at " + B_.labels[b];
                for (std::size_t g = 0; g < k_; ++g)
                    for (std::size_t h = 0; h < k_; ++h)
                        if (act_right(act_right(q(b), q(g)), q(h)) != act_right(q(b), H.mul(q(g), q(h))))
                            return "at (" + B_.labels[b] + ", " + H.labels[g] + ", " + H.labels[h] + ")";
            }
            return {};
        });
        detail::guarded(r, "smash.module.B_product", "(bb′)◁q = Σ (b◁q₁)(b′◁q₂)", [&]() -> std::string {
            for (std::size_t g = 0; g < k_; ++g)
                for (std::size_t b = 0; b < p_; ++b)
                    for (std::size_t b2 = 0; b2 < p_; ++b2) {
                        SVec rhs;
                        for (const auto& [idx, x] : Q_.delta[g])
                            rhs.axpy(x, B_.mul(act_right(q(b), q(idx / k_)), act_right(q(b2), q(idx % k_))));
                        if (act_right(B_.mul(q(b), q(b2)), q(g)) != rhs)
                            return "at (" + B_.labels[b] + ", " + B_.labels[b2] + ", " + H.labels[g] + ")";
                    }
            return {};
        });
        detail::guarded(r, "smash.module.C_action", "q▷(q′▷c) = (qq′)▷c and 1▷c = c", [&]() -> std::string {
            for (std::size_t c = 0; c < q_; ++c) {
                if (act_left(Q_.unit, q(c)) != q(c))
                    return "1▷c ≠ c at " + C_.labels[c];
                for (std::size_t g = 0; g < k_; ++g)
                    for (std::size_t h = 0; h < k_; ++h)
                        if (act_left(q(g), act_left(q(h), q(c))) != act_left(H.mul(q(g), q(h)), q(c)))
                            return "at (" + H.labels[g] + ", " + H.labels[h] + ", " + C_.labels[c] + ")";
            }
            return {};
        });
        detail::guarded(r, "smash.module.C_product", "q▷(cc′) = Σ (q₁▷c)(q₂▷c′)", [&]() -> std::string {
            for (std::size_t g = 0; g < k_; ++g)
                for (std::size_t c = 0; c < q_; ++c)
                    for (std::size_t c2 = 0; c2 < q_; ++c2) {
                        SVec rhs;
                        for (const auto& [idx, x] : Q_.delta[g])
                            rhs.axpy(x, C_.mul(act_left(q(idx / k_), q(c)), act_left(q(idx % k_), q(c2))));
                        if (act_left(q(g), C_.mul(q(c), q(c2))) != rhs)
                            return "at (" + H.labels[g] + ", " + C_.labels[c] + ", " + C_.labels[c2] + ")";
                    }
            return {};
        });
        if (!unital())
            return;
        detail::guarded(r, "smash.module.units", "1◁q = ε(q)1 and q▷1 = ε(q)1", [&]() -> std::string {
            for (std::size_t g = 0; g < k_; ++g) {
                if (act_right(*uB_, q(g)) != uB_->scaled(Q_.counit[g]))
                    return "1◁" + H.labels[g];
                if (act_left(q(g), *uC_) != uC_->scaled(Q_.counit[g]))
                    return H.labels[g] + "▷1";
            }
            return {};
        });
    }

    Algebra B_, C_;
    HopfAlgebra Q_;
    QActions a_;
    std::size_t p_ = 0, k_ = 0, q_ = 0;
    std::optional<SVec> uB_, uC_;
    Algebra P_;
};

/// The two-sided smash product algebra with its law checks; throws naming the first failed law.
inline Smash smash_algebra(const Algebra& B, const Algebra& C, const HopfAlgebra& Qh, const QActions& acts, Report* out = nullptr)
{
    Smash s(B, C, Qh, acts);
    Report r = s.check();
    if (out)
        *out = r;
    if (const auto* f = r.first_failure())
        throw std::invalid_argument(f->name + " fails: " + f->witness);
    return s;
}

/// (E₁◁q)⊗E₂ = E₁⊗(q▷E₂) for every basis element q; the witness names the first q that breaks it.
inline CheckResult check_compatibility(const SeparabilityIdempotent& S, const Smash& sm)
{
    CheckResult c{"smash.compatibility", "(E₁◁q)⊗E₂ = E₁⊗(q▷E₂) for q in a basis of Q", true, {}};
    const std::size_t q = S.C.dim();
    SVec e = S.E.left(tensor(sm.unit_B(), sm.unit_C(), q));
    for (std::size_t g = 0; g < sm.Qh().dim(); ++g) {
        SVec lhs, rhs;
        for (const auto& [idx, x] : e) {
            lhs.axpy(x, tensor(sm.act_right(SVec::unit(idx / q), SVec::unit(g)), SVec::unit(idx % q), q));
            rhs.axpy(x, tensor(SVec::unit(idx / q), sm.act_left(SVec::unit(g), SVec::unit(idx % q)), q));
        }
        if (lhs != rhs) {
            c.pass = false;
            c.witness = "q = " + sm.Qh().alg.labels[g];
            return c;
        }
    }
    return c;
}

namespace detail {

struct SmashParts {
    SeparabilityIdempotent S; // completed
    Smash sm;
    SVec E;                   // E ∈ P⊗P
    std::vector<SVec> SB, SC; // S_B(b) ∈ C, S_C(c) ∈ B
};

inline SmashParts smash_parts(const SeparabilityIdempotent& input, const HopfAlgebra& Qh, const QActions& acts)
{
    SeparabilityIdempotent S = verified(input);
    Smash sm = smash_algebra(S.B, S.C, Qh, acts);
    CheckResult comp = check_compatibility(S, sm);
    if (!comp.pass)
        throw std::invalid_argument("compatibility of E with the actions fails at " + comp.witness);
    const std::size_t q = S.C.dim(), d = sm.P().dim();
    SVec e = S.E.left(tensor(sm.unit_B(), sm.unit_C(), q));
    SVec E;
    for (const auto& [idx, x] : e)
        E.axpy(x, tensor(sm.of_B(SVec::unit(idx / q)), sm.of_C(SVec::unit(idx % q)), d));
    std::vector<SVec> SB, SC;
    for (const auto& m : *S.S_B)
        SB.push_back(m.left(sm.unit_C()));
    for (const auto& m : *S.S_C)
        SC.push_back(m.left(sm.unit_B()));
    return {std::move(S), std::move(sm), std::move(E), std::move(SB), std::move(SC)};
}

} // namespace detail

/*
 * P = C#Q#B with Δ_P(cqb) = (c⊗1)Δ(q)E(1⊗b), S_P(cqb) = S_B(b)S(q)S_C(c),
 * E_P = E and ε_P determined by ε_P(qcb) = ε(q)φ_C(cS_B(b)).
 */
inline WmhaBundle smash_wmha(const SeparabilityIdempotent& input, const HopfAlgebra& Qh, const QActions& acts)
{
    auto parts = detail::smash_parts(input, Qh, acts);
    const Smash& sm = parts.sm;
    const Algebra& P = sm.P();
    const std::size_t p = sm.B().dim(), k = Qh.dim(), q = sm.C().dim(), d = P.dim();
    const Vec& phiC = *parts.S.phi_C;
    WmhaBundle w;
    w.name = "smash " + P.name;
    w.A = P;
    SVec one = sm.one();
    for (std::size_t x = 0; x < d; ++x) {
        SVec c = SVec::unit(x / (k * p)), g = SVec::unit((x / p) % k), b = SVec::unit(x % p);
        SVec D = tensor_mul(P, P, tensor(sm.of_C(c), one, d), sm.delta_Q(g));
        D = tensor_mul(P, P, D, parts.E);
        D = tensor_mul(P, P, D, tensor(one, sm.of_B(b), d));
        w.delta.push_back(multiplier2(P, P, D));
        SVec s = P.mul(P.mul(sm.of_C(parts.SB[x % p]), sm.of_Q(Qh.antipode[(x / p) % k])), sm.of_B(parts.SC[x / (k * p)]));
        w.antipode.push_back(embed(P, s));
    }
    std::vector<SVec> cols(d);
    SVec rhs;
    std::size_t row = 0;
    for (std::size_t g = 0; g < k; ++g)
        for (std::size_t c = 0; c < q; ++c)
            for (std::size_t b = 0; b < p; ++b, ++row) {
                SVec v = P.mul(P.mul(sm.of_Q(SVec::unit(g)), sm.of_C(SVec::unit(c))), sm.of_B(SVec::unit(b)));
                for (const auto& [i, x] : v)
                    cols[i].add(row, x);
                rhs.add(row, Qh.counit[g] * detail::pair(phiC, sm.C().mul(SVec::unit(c), parts.SB[b])));
            }
    auto sol = solve_columns(cols, rhs);
    if (!sol.consistent || !sol.kernel.empty())
        throw std::logic_error("smash_wmha: the counit is not determined by its values on qcb");
    w.counit = sol.particular.to_dense(d);
    w.E = multiplier2(P, P, parts.E);
    return w;
}

/*
 * Construction-specific identities on a smash bundle: EΔ(q) = Δ(q)E, the
 * second counit formula, E_P, the closed forms of ε_s^P and ε_t^P, invariance
 * of φ_B and φ_C and the mixed identity between them, and regularity.
 */
inline Report check_smash(const SeparabilityIdempotent& input, const HopfAlgebra& Qh, const QActions& acts, Wmha& W)
{
    Report r;
    auto parts = detail::smash_parts(input, Qh, acts);
    const Smash& sm = parts.sm;
    const Algebra& P = sm.P();
    const Algebra& B = sm.B();
    const Algebra& C = sm.C();
    const std::size_t p = B.dim(), k = Qh.dim(), q = C.dim(), d = P.dim();
    const Vec& phiB = *parts.S.phi_B;
    const Vec& phiC = *parts.S.phi_C;
    r.record("dim P", std::to_string(d));
    r.add("smash.compatibility", "(E₁◁q)⊗E₂ = E₁⊗(q▷E₂) for q in a basis of Q", true);
    detail::guarded(r, "smash.E_commutes_with_delta", "EΔ(q) = Δ(q)E in P⊗P", [&]() -> std::string {
        for (std::size_t g = 0; g < k; ++g) {
            SVec dq = sm.delta_Q(SVec::unit(g));
            if (tensor_mul(P, P, parts.E, dq) != tensor_mul(P, P, dq, parts.E))
                return "at q = " + Qh.alg.labels[g];
        }
        return {};
    });
    detail::guarded(r, "smash.counit_formulas", "ε_P(qcb) = ε(q)φ_C(cS_B(b)) and ε_P(cbq) = φ_B(S_C(c)b)ε(q)", [&]() -> std::string {
        const auto& eps = W.counit();
        if (!eps.unique)
            return "the counit of P is not unique";
        for (std::size_t g = 0; g < k; ++g)
            for (std::size_t c = 0; c < q; ++c)
                for (std::size_t b = 0; b < p; ++b) {
                    SVec qg = sm.of_Q(SVec::unit(g)), cc = sm.of_C(SVec::unit(c)), bb = sm.of_B(SVec::unit(b));
                    Q v1 = W.eps(P.mul(P.mul(qg, cc), bb));
                    Q e1 = Qh.counit[g] * detail::pair(phiC, C.mul(SVec::unit(c), parts.SB[b]));
                    Q v2 = W.eps(P.mul(P.mul(cc, bb), qg));
                    Q e2 = detail::pair(phiB, B.mul(parts.SC[c], SVec::unit(b))) * Qh.counit[g];
                    std::string at = "(" + Qh.alg.labels[g] + ", " + C.labels[c] + ", " + B.labels[b] + ")";
                    if (v1 != e1)
                        return "ε_P(qcb) = " + to_string(v1) + " but ε(q)φ_C(cS_B(b)) = " + to_string(e1) + " at " + at;
                    if (v2 != e2)
                        return "ε_P(cbq) = " + to_string(v2) + " but φ_B(S_C(c)b)ε(q) = " + to_string(e2) + " at " + at;
                }
        return {};
    });
    detail::guarded(r, "smash.E_P", "the canonical idempotent of P is E embedded in M(P⊗P)", [&]() -> std::string {
        const auto& E = W.E();
        if (!E.found)
            return "E_P not found: " + E.failure;
        return E.E == *W.bundle().E ? "" : "solved E_P differs from E";
    });
    SourceTarget st(W);
    st.maps();
    detail::guarded(r, "smash.source_target_closed_forms", "ε_s^P(cqb) = (S_C(c)◁q)b and ε_t^P(cqb) = c(q▷S_B(b))", [&]() -> std::string {
        if (st.data().eps_s.size() != d)
            return "source and target maps unavailable";
        for (std::size_t x = 0; x < d; ++x) {
            std::size_t c = x / (k * p), g = (x / p) % k, b = x % p;
            SVec es = B.mul(sm.act_right(parts.SC[c], SVec::unit(g)), SVec::unit(b));
            SVec et = C.mul(SVec::unit(c), sm.act_left(SVec::unit(g), parts.SB[b]));
            if (st.data().eps_s[x] != embed(P, sm.of_B(es)))
                return "ε_s^P differs from (S_C(c)◁q)b at " + P.labels[x];
            if (st.data().eps_t[x] != embed(P, sm.of_C(et)))
                return "ε_t^P differs from c(q▷S_B(b)) at " + P.labels[x];
        }
        return {};
    });
    detail::guarded(r, "smash.phi_invariance", "φ_B(b◁q) = ε(q)φ_B(b) and φ_C(q▷c) = ε(q)φ_C(c)", [&]() -> std::string {
        for (std::size_t g = 0; g < k; ++g) {
            for (std::size_t b = 0; b < p; ++b)
                if (detail::pair(phiB, sm.act_right(SVec::unit(b), SVec::unit(g))) != Qh.counit[g] * phiB[b])
                    return "φ_B at (" + B.labels[b] + ", " + Qh.alg.labels[g] + ")";
            for (std::size_t c = 0; c < q; ++c)
                if (detail::pair(phiC, sm.act_left(SVec::unit(g), SVec::unit(c))) != Qh.counit[g] * phiC[c])
                    return "φ_C at (" + Qh.alg.labels[g] + ", " + C.labels[c] + ")";
        }
        return {};
    });
    detail::guarded(r, "smash.phi_mixed", "φ_C(c(q▷S_B(b))) = φ_B((S_C(c)◁q)b)", [&]() -> std::string {
        for (std::size_t c = 0; c < q; ++c)
            for (std::size_t g = 0; g < k; ++g)
                for (std::size_t b = 0; b < p; ++b) {
                    Q l = detail::pair(phiC, C.mul(SVec::unit(c), sm.act_left(SVec::unit(g), parts.SB[b])));
                    Q rr = detail::pair(phiB, B.mul(sm.act_right(parts.SC[c], SVec::unit(g)), SVec::unit(b)));
                    if (l != rr)
                        return "at " + P.labels[(c * k + g) * p + b] + ": " + to_string(l) + " vs " + to_string(rr);
                }
        return {};
    });
    if (is_regular(parts.S)) {
        Tri reg = Tri::Unknown;
        check_regularity(W, &reg);
        r.add("smash.regular", "P is regular when E is regular and Q is a Hopf algebra", reg == Tri::Yes, "regularity verdict " + to_string(reg));
    }
    return r;
}

} // namespace wmha
