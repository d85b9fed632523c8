#pragma once

#include "separability.hpp"
#include "wmha_checks.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wmha {

/// B, C, A_s, A_t and the realizations of M(B), M(C), all inside M(A) as flattened multipliers.
struct SourceTargetData {
    std::vector<Multiplier> eps_s, eps_t, eps_s_prime, eps_t_prime; // images of basis elements
    std::vector<Multiplier> B, C;                                    // canonical bases
    Subspace Bspace, Cspace;
    std::vector<Multiplier> As, At;
    Subspace Asspace, Atspace;
    RelativeMultipliers MB, MC;
    std::optional<SeparabilityIdempotent> sep; // E as an idempotent over abstract copies of B and C
    std::optional<Vec> phi_B, phi_C;           // over the B and C bases
};

/// 1⊗m and m⊗1 as multipliers of A⊗A.
inline Multiplier one_tensor(const Multiplier& m) { return tensor_multiplier(identity_multiplier(m.L.size()), m); }
inline Multiplier tensor_one(const Multiplier& m) { return tensor_multiplier(m, identity_multiplier(m.L.size())); }

/// Coordinates λ with X = Σ λ_ij U_i⊗V_j (index i*|V|+j), if X lies in span U ⊗ span V.
inline std::optional<SVec> express_tensor(const Multiplier& X, const std::vector<Multiplier>& U, const std::vector<Multiplier>& V)
{
    std::vector<Multiplier> gens;
    std::vector<SVec> cols;
    for (const auto& u : U)
        for (const auto& v : V) {
            gens.push_back(tensor_multiplier(u, v));
            cols.push_back(flatten_left(gens.back()));
        }
    auto s = solve_columns(cols, flatten_left(X));
    if (!s.consistent)
        return std::nullopt;
    if (linear_combination(gens, s.particular, X.L.size()) != X)
        return std::nullopt;
    return s.particular;
}

/*
 * Source and target maps with everything built from them.  Each check group
 * adds to its own report; data computed by earlier groups is cached and reused
 * by later ones, so run() evaluates them in dependency order.
 */
class SourceTarget {
public:
    explicit SourceTarget(Wmha& W, Tri regular = Tri::Unknown) : W_(W), n_(W.n()), regular_(regular)
    {
        if (regular_ == Tri::Unknown)
            check_regularity(W_, &regular_);
    }

    const SourceTargetData& data() const { return d_; }
    Tri regular() const { return regular_; }

    Multiplier eps_s(const SVec& a) const { return linear_combination(d_.eps_s, a, n_); }
    Multiplier eps_t(const SVec& a) const { return linear_combination(d_.eps_t, a, n_); }

    /// ε_s, ε_t, ε′_s, ε′_t on the basis; both actions computed independently.
    Report maps()
    {
        Report r;
        const std::size_t n = n_;
        const std::string st_s = "ε_s(a)b = Σ S(a₁)a₂b and bε_s(a) = Σ bS(a₁)a₂ define a multiplier";
        const std::string st_t = "ε_t(a)b = Σ a₁S(a₂)b and cε_t(a) = Σ ca₁S(a₂) define a multiplier";
        if (!W_.T_complete(1) || !W_.T_complete(2)) {
            detail::skipped(r, "source_map.multiplier", st_s, "canonical maps leave A⊗A");
            detail::skipped(r, "target_map.multiplier", st_t, "canonical maps leave A⊗A");
            return r;
        }
        const auto& t1 = W_.T(1);
        const auto& t2 = W_.T(2);
        const auto& r1 = W_.R1();
        const auto& r2 = W_.R2();
        detail::guarded(r, "source_map.multiplier", st_s, [&]() -> std::string {
            d_.eps_s.clear();
            for (std::size_t a = 0; a < n; ++a) {
                Multiplier m = zero_multiplier(n);
                for (std::size_t b = 0; b < n; ++b) {
                    if (!r2[b * n + a])
                        return "Σ bS(a₁)⊗a₂ not in A⊗A at (" + W_.label(b) + "," + W_.label(a) + ")";
                    m.L[b] = W_.mu_S_first(*t1[a * n + b]);
                    m.R[b] = W_.mu(*r2[b * n + a]);
                }
                if (auto f = compatibility_failure(W_.A(), m))
                    return "ε_s(" + W_.label(a) + ") incompatible at (" + W_.label(f->first) + "," + W_.label(f->second) + ")";
                d_.eps_s.push_back(std::move(m));
            }
            return {};
        });
        detail::guarded(r, "target_map.multiplier", st_t, [&]() -> std::string {
            d_.eps_t.clear();
            for (std::size_t a = 0; a < n; ++a) {
                Multiplier m = zero_multiplier(n);
                for (std::size_t b = 0; b < n; ++b) {
                    if (!r1[a * n + b])
                        return "Σ a₁⊗S(a₂)b not in A⊗A at (" + W_.label(a) + "," + W_.label(b) + ")";
                    m.L[b] = W_.mu(*r1[a * n + b]);
                    m.R[b] = W_.mu_S_second(*t2[b * n + a]);
                }
                if (auto f = compatibility_failure(W_.A(), m))
                    return "ε_t(" + W_.label(a) + ") incompatible at (" + W_.label(f->first) + "," + W_.label(f->second) + ")";
                d_.eps_t.push_back(std::move(m));
            }
            return {};
        });
        if (d_.eps_s.size() != n || d_.eps_t.size() != n)
            return r;
        d_.Bspace = Subspace(2 * n * n);
        d_.Cspace = Subspace(2 * n * n);
        for (std::size_t a = 0; a < n; ++a) {
            d_.Bspace.add(flatten(d_.eps_s[a]));
            d_.Cspace.add(flatten(d_.eps_t[a]));
        }
        d_.B.clear();
        d_.C.clear();
        for (const auto& v : d_.Bspace.basis())
            d_.B.push_back(unflatten(v, n));
        for (const auto& v : d_.Cspace.basis())
            d_.C.push_back(unflatten(v, n));
        r.record("dim B", std::to_string(d_.B.size()));
        r.record("dim C", std::to_string(d_.C.size()));

        if (!W_.E().found || !W_.counit().unique)
            return r;
        const Multiplier& E = W_.E().E;
        // ε′_s(a)b = (ι⊗ε)(E(b⊗a)); ε′_t(a) through c ε′_t(a) = (ε⊗ι)((a⊗c)E)
        detail::guarded(r, "source_map.prime_in_B", "ε′_s(a)b = (ι⊗ε)(E(b⊗a)) is the left action of an element of B", [&]() -> std::string {
            d_.eps_s_prime.clear();
            std::vector<SVec> cols;
            for (const auto& b : d_.B)
                cols.push_back(flatten_left(b));
            for (std::size_t a = 0; a < n; ++a) {
                Multiplier m = zero_multiplier(n);
                for (std::size_t b = 0; b < n; ++b)
                    for (const auto& [idx, c] : E.L[b * n + a])
                        m.L[b].add(idx / n, c * W_.counit().eps[idx % n]);
                auto s = solve_columns(cols, flatten_left(m));
                if (!s.consistent)
                    return "ε′_s(" + W_.label(a) + ") is not in B";
                d_.eps_s_prime.push_back(linear_combination(d_.B, s.particular, n));
            }
            return {};
        });
        detail::guarded(r, "target_map.prime_in_C", "cε′_t(a) = (ε⊗ι)((a⊗c)E) is the right action of an element of C", [&]() -> std::string {
            d_.eps_t_prime.clear();
            std::vector<SVec> cols;
            for (const auto& c : d_.C)
                cols.push_back(flatten_right(c));
            for (std::size_t a = 0; a < n; ++a) {
                Multiplier m = zero_multiplier(n);
                for (std::size_t c = 0; c < n; ++c)
                    for (const auto& [idx, v] : E.R[a * n + c])
                        m.R[c].add(idx % n, v * W_.counit().eps[idx / n]);
                auto s = solve_columns(cols, flatten_right(m));
                if (!s.consistent)
                    return "ε′_t(" + W_.label(a) + ") is not in C";
                d_.eps_t_prime.push_back(linear_combination(d_.C, s.particular, n));
            }
            return {};
        });
        if (d_.eps_s_prime.size() == n && d_.eps_t_prime.size() == n) {
            detail::guarded(r, "source_map.prime_range", "ε′_s(A) = ε_s(A) = B and ε′_t(A) = ε_t(A) = C", [&]() -> std::string {
                Subspace s(2 * n * n), t(2 * n * n);
                for (std::size_t a = 0; a < n; ++a) {
                    s.add(flatten(d_.eps_s_prime[a]));
                    t.add(flatten(d_.eps_t_prime[a]));
                }
                if (s != d_.Bspace)
                    return "span ε′_s(A) has dimension " + std::to_string(s.dim()) + ", B has " + std::to_string(d_.Bspace.dim());
                if (t != d_.Cspace)
                    return "span ε′_t(A) has dimension " + std::to_string(t.dim()) + ", C has " + std::to_string(d_.Cspace.dim());
                return {};
            });
            if (regular_ == Tri::Yes) {
                detail::guarded(r, "source_map.prime_regular_form", "ε′_s(a) = Σ a₂S⁻¹(a₁) and ε′_t(a) = Σ S⁻¹(a₂)a₁", [&]() -> std::string {
                    const auto& X = W_.X();
                    const auto& Y = W_.Y();
                    for (std::size_t a = 0; a < n; ++a)
                        for (std::size_t b = 0; b < n; ++b) {
                            if (!X[b * n + a] || !Y[a * n + b])
                                return "X or Y incomplete";
                            if (d_.eps_s_prime[a].L[b] != W_.mu(flip(*X[b * n + a], n)))
                                return "ε′_s(" + W_.label(a) + ")" + W_.label(b);
                            if (d_.eps_t_prime[a].R[b] != W_.mu(flip(*Y[a * n + b], n)))
                                return W_.label(b) + "ε′_t(" + W_.label(a) + ")";
                        }
                    return {};
                });
                detail::guarded(r, "source_map.prime_antipode", "S(ε′_s(a)) = ε_t(a) and S(ε′_t(a)) = ε_s(a)", [&]() -> std::string {
                    for (std::size_t a = 0; a < n; ++a) {
                        auto s1 = W_.S_ext(d_.eps_s_prime[a]);
                        auto s2 = W_.S_ext(d_.eps_t_prime[a]);
                        if (!s1 || !s2)
                            return "S does not extend at " + W_.label(a);
                        if (*s1 != d_.eps_t[a])
                            return "S(ε′_s(" + W_.label(a) + ")) differs from ε_t";
                        if (*s2 != d_.eps_s[a])
                            return "S(ε′_t(" + W_.label(a) + ")) differs from ε_s";
                    }
                    return {};
                });
            }
        }
        return r;
    }

    /// B and C as the legs of E, their algebra structure and how they sit in M(A).
    Report legs()
    {
        Report r;
        const std::size_t n = n_;
        if (d_.B.empty() || !W_.E().found) {
            detail::skipped(r, "legs.B_is_left_leg", "B is the left leg of E", "source map or E unavailable");
            return r;
        }
        const Multiplier& E = W_.E().E;
        const Algebra& A = W_.A();
        // (ι⊗e_v*)((1⊗a)E(u⊗b)) and (ι⊗e_v*)((u⊗a)E(1⊗b))
        detail::guarded(r, "legs.B_is_left_leg", "B = span{(ι⊗ω(a·b))E} = span ε_s(A)", [&]() -> std::string {
            Subspace s(2 * n * n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    std::vector<Multiplier> ms(n, zero_multiplier(n));
                    for (std::size_t u = 0; u < n; ++u) {
                        for (const auto& [idx, c] : leg2_left(A, SVec::unit(a), E.L[u * n + b]))
                            ms[idx % n].L[u].add(idx / n, c);
                        for (const auto& [idx, c] : leg2_right(A, E.R[u * n + a], SVec::unit(b)))
                            ms[idx % n].R[u].add(idx / n, c);
                    }
                    for (const auto& m : ms)
                        s.add(flatten(m));
                }
            if (s != d_.Bspace)
                return "left leg has dimension " + std::to_string(s.dim()) + ", span ε_s(A) has " + std::to_string(d_.Bspace.dim());
            return {};
        });
        // (e_v*⊗ι)((c⊗1)E(a⊗u)) and (e_v*⊗ι)((c⊗u)E(a⊗1))
        detail::guarded(r, "legs.C_is_right_leg", "C = span{(ω(c·a)⊗ι)E} = span ε_t(A)", [&]() -> std::string {
            Subspace s(2 * n * n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t c = 0; c < n; ++c) {
                    std::vector<Multiplier> ms(n, zero_multiplier(n));
                    for (std::size_t u = 0; u < n; ++u) {
                        for (const auto& [idx, v] : leg1_left(A, SVec::unit(c), E.L[a * n + u]))
                            ms[idx / n].L[u].add(idx % n, v);
                        for (const auto& [idx, v] : leg1_right(A, E.R[c * n + u], SVec::unit(a)))
                            ms[idx / n].R[u].add(idx % n, v);
                    }
                    for (const auto& m : ms)
                        s.add(flatten(m));
                }
            if (s != d_.Cspace)
                return "right leg has dimension " + std::to_string(s.dim()) + ", span ε_t(A) has " + std::to_string(d_.Cspace.dim());
            return {};
        });
        auto closed_idempotent = [&](const std::vector<Multiplier>& X, const Subspace& sp, const char* nm) -> std::string {
            Subspace prods(2 * n * n);
            for (const auto& x : X)
                for (const auto& y : X) {
                    SVec f = flatten(x * y);
                    if (!sp.contains(f))
                        return std::string(nm) + " is not closed under products";
                    prods.add(f);
                }
            if (prods != sp)
                return std::string("products in ") + nm + " span dimension " + std::to_string(prods.dim()) + " of " + std::to_string(sp.dim());
            return {};
        };
        detail::guarded(r, "legs.subalgebras_idempotent", "B and C are subalgebras of M(A) with B² = B and C² = C",
            [&]() -> std::string {
                if (auto w = closed_idempotent(d_.B, d_.Bspace, "B"); !w.empty())
                    return w;
                return closed_idempotent(d_.C, d_.Cspace, "C");
            });
        detail::guarded(r, "legs.unital_modules", "A = AB = BA = CA = AC", [&]() -> std::string {
            const char* names[4] = {"BA", "AB", "CA", "AC"};
            Subspace s[4] = {module_span(A, d_.B, 0), module_span(A, d_.B, 1), module_span(A, d_.C, 0), module_span(A, d_.C, 1)};
            for (int k = 0; k < 4; ++k)
                if (s[k].dim() != n)
                    return std::string(names[k]) + " has dimension " + std::to_string(s[k].dim());
            return {};
        });
        detail::guarded(r, "legs.coproduct_relations", "Δ(x) = (x⊗1)E = E(x⊗1) for x ∈ C and Δ(y) = E(1⊗y) = (1⊗y)E for y ∈ B",
            [&]() -> std::string {
                for (std::size_t k = 0; k < d_.B.size(); ++k) {
                    auto dy = W_.delta_ext(d_.B[k]);
                    if (!dy)
                        return "Δ does not extend to basis element " + std::to_string(k) + " of B";
                    Multiplier oy = one_tensor(d_.B[k]);
                    if (*dy != E * oy)
                        return "Δ(y) differs from E(1⊗y) for basis element " + std::to_string(k) + " of B";
                    if (*dy != oy * E)
                        return "Δ(y) differs from (1⊗y)E for basis element " + std::to_string(k) + " of B";
                }
                for (std::size_t k = 0; k < d_.C.size(); ++k) {
                    auto dx = W_.delta_ext(d_.C[k]);
                    if (!dx)
                        return "Δ does not extend to basis element " + std::to_string(k) + " of C";
                    Multiplier xo = tensor_one(d_.C[k]);
                    if (*dx != xo * E)
                        return "Δ(x) differs from (x⊗1)E for basis element " + std::to_string(k) + " of C";
                    if (*dx != E * xo)
                        return "Δ(x) differs from E(x⊗1) for basis element " + std::to_string(k) + " of C";
                }
                return {};
            });
        detail::guarded(r, "legs.B_C_commute", "xy = yx for x ∈ C and y ∈ B", [&]() -> std::string {
            for (std::size_t i = 0; i < d_.B.size(); ++i)
                for (std::size_t j = 0; j < d_.C.size(); ++j)
                    if (d_.B[i] * d_.C[j] != d_.C[j] * d_.B[i])
                        return "basis elements " + std::to_string(i) + " of B and " + std::to_string(j) + " of C";
            return {};
        });
        return r;
    }

    /// A_s and A_t solved over M(A), with their relation to B, C, M(B), M(C) and S.
    Report algebras_As_At()
    {
        Report r;
        const std::size_t n = n_, flat2 = 2 * W_.N() * W_.N();
        if (d_.B.empty() || !W_.E().found) {
            detail::skipped(r, "A_s.lemma_equivalence", "A_s and A_t are well defined", "source map or E unavailable");
            return r;
        }
        const Multiplier& E = W_.E().E;
        if (!MA_)
            MA_ = multiplier_algebra(W_.A());
        const MultiplierAlgebra& MA = *MA_;
        r.record("dim M(A)", std::to_string(MA.dim()));
        std::vector<SVec> c_s1, c_s2, c_t1, c_t2;
        std::string ext_fail;
        for (std::size_t k = 0; k < MA.dim(); ++k) {
            auto dm = W_.delta_ext(MA.basis[k]);
            if (!dm) {
                ext_fail = "Δ does not extend to basis element " + std::to_string(k) + " of M(A)";
                break;
            }
            SVec fd = flatten(*dm);
            Multiplier om = one_tensor(MA.basis[k]), mo = tensor_one(MA.basis[k]);
            c_s1.push_back(fd - flatten(E * om));
            c_s2.push_back(fd - flatten(om * E));
            c_t1.push_back(fd - flatten(mo * E));
            c_t2.push_back(fd - flatten(E * mo));
        }
        if (!ext_fail.empty()) {
            r.add("A_s.lemma_equivalence", "A_s and A_t are well defined", false, ext_fail);
            return r;
        }
        auto kernel_space = [&](const std::vector<SVec>& cols) {
            Subspace s(2 * n * n);
            for (const auto& x : solve_columns(cols, SVec()).kernel)
                s.add(flatten(MA.element(x)));
            return s;
        };
        (void)flat2;
        d_.Asspace = kernel_space(c_s1);
        d_.Atspace = kernel_space(c_t1);
        Subspace As2 = kernel_space(c_s2), At2 = kernel_space(c_t2);
        d_.As.clear();
        d_.At.clear();
        for (const auto& v : d_.Asspace.basis())
            d_.As.push_back(unflatten(v, n));
        for (const auto& v : d_.Atspace.basis())
            d_.At.push_back(unflatten(v, n));
        r.record("dim A_s", std::to_string(d_.As.size()));
        r.record("dim A_t", std::to_string(d_.At.size()));
        r.add("A_s.lemma_equivalence", "Δ(y) = E(1⊗y) ⇔ Δ(y) = (1⊗y)E and Δ(x) = (x⊗1)E ⇔ Δ(x) = E(x⊗1) on M(A)",
            d_.Asspace == As2 && d_.Atspace == At2,
            d_.Asspace != As2 ? "the two conditions for A_s cut out different subspaces" : "the two conditions for A_t cut out different subspaces");
        detail::guarded(r, "A_s.subalgebras", "A_s and A_t are unital subalgebras of M(A)", [&]() -> std::string {
            SVec one = flatten(identity_multiplier(n));
            if (!d_.Asspace.contains(one) || !d_.Atspace.contains(one))
                return "1 is missing";
            for (const auto& x : d_.As)
                for (const auto& y : d_.As)
                    if (!d_.Asspace.contains(flatten(x * y)))
                        return "A_s not closed under products";
            for (const auto& x : d_.At)
                for (const auto& y : d_.At)
                    if (!d_.Atspace.contains(flatten(x * y)))
                        return "A_t not closed under products";
            return {};
        });
        detail::guarded(r, "A_s.commute_with_A_t", "xy = yx for x ∈ A_t and y ∈ A_s", [&]() -> std::string {
            for (std::size_t i = 0; i < d_.At.size(); ++i)
                for (std::size_t j = 0; j < d_.As.size(); ++j)
                    if (d_.At[i] * d_.As[j] != d_.As[j] * d_.At[i])
                        return "basis elements " + std::to_string(i) + " of A_t and " + std::to_string(j) + " of A_s";
            return {};
        });
        detail::guarded(r, "A_s.contains_B", "B ⊆ A_s and C ⊆ A_t", [&]() -> std::string {
            if (!d_.Asspace.contains(d_.Bspace))
                return "B is not inside A_s";
            if (!d_.Atspace.contains(d_.Cspace))
                return "C is not inside A_t";
            return {};
        });
        detail::guarded(r, "A_s.ideals", "B is a right ideal of A_s and C is a left ideal of A_t", [&]() -> std::string {
            for (const auto& b : d_.B)
                for (const auto& y : d_.As)
                    if (!d_.Bspace.contains(flatten(b * y)))
                        return "by leaves B";
            for (const auto& x : d_.At)
                for (const auto& c : d_.C)
                    if (!d_.Cspace.contains(flatten(x * c)))
                        return "xc leaves C";
            return {};
        });
        detail::guarded(r, "A_s.exchange_relations",
            "ε_t(xa) = xε_t(a), ε_s(ax) = S(x)ε_s(a) for x ∈ A_t; ε_s(ay) = ε_s(a)y, ε_t(ya) = ε_t(a)S(y) for y ∈ A_s",
            [&]() -> std::string {
                for (std::size_t k = 0; k < d_.At.size(); ++k) {
                    const Multiplier& x = d_.At[k];
                    auto Sx = W_.S_ext(x);
                    if (!Sx)
                        return "S does not extend to basis element " + std::to_string(k) + " of A_t";
                    for (std::size_t a = 0; a < n; ++a) {
                        if (eps_t(x.L[a]) != x * d_.eps_t[a])
                            return "ε_t(xa) at x=" + std::to_string(k) + ", a=" + W_.label(a);
                        if (eps_s(x.R[a]) != *Sx * d_.eps_s[a])
                            return "ε_s(ax) at x=" + std::to_string(k) + ", a=" + W_.label(a);
                    }
                }
                for (std::size_t k = 0; k < d_.As.size(); ++k) {
                    const Multiplier& y = d_.As[k];
                    auto Sy = W_.S_ext(y);
                    if (!Sy)
                        return "S does not extend to basis element " + std::to_string(k) + " of A_s";
                    for (std::size_t a = 0; a < n; ++a) {
                        if (eps_s(y.R[a]) != d_.eps_s[a] * y)
                            return "ε_s(ay) at y=" + std::to_string(k) + ", a=" + W_.label(a);
                        if (eps_t(y.L[a]) != d_.eps_t[a] * *Sy)
                            return "ε_t(ya) at y=" + std::to_string(k) + ", a=" + W_.label(a);
                    }
                }
                return {};
            });
        detail::guarded(r, "A_s.antipode_exchange", "S(A_t) ⊆ A_s with (1⊗x)E = (S(x)⊗1)E, and S(A_s) ⊆ A_t with E(y⊗1) = E(1⊗S(y))",
            [&]() -> std::string {
                for (std::size_t k = 0; k < d_.At.size(); ++k) {
                    auto Sx = W_.S_ext(d_.At[k]);
                    if (!Sx || !d_.Asspace.contains(flatten(*Sx)))
                        return "S(x) not in A_s for basis element " + std::to_string(k) + " of A_t";
                    if (one_tensor(d_.At[k]) * E != tensor_one(*Sx) * E)
                        return "(1⊗x)E differs from (S(x)⊗1)E for basis element " + std::to_string(k) + " of A_t";
                }
                for (std::size_t k = 0; k < d_.As.size(); ++k) {
                    auto Sy = W_.S_ext(d_.As[k]);
                    if (!Sy || !d_.Atspace.contains(flatten(*Sy)))
                        return "S(y) not in A_t for basis element " + std::to_string(k) + " of A_s";
                    if (E * tensor_one(d_.As[k]) != E * one_tensor(*Sy))
                        return "E(y⊗1) differs from E(1⊗S(y)) for basis element " + std::to_string(k) + " of A_s";
                }
                return {};
            });
        detail::guarded(r, "A_s.exchange_pairs", "(1⊗x)E = (y⊗1)E or E(1⊗x) = E(y⊗1) forces x ∈ A_t and y ∈ A_s",
            [&]() -> std::string {
                const std::size_t m = MA.dim();
                for (int form = 0; form < 2; ++form) {
                    std::vector<SVec> cols;
                    for (std::size_t k = 0; k < m; ++k) {
                        Multiplier om = one_tensor(MA.basis[k]);
                        cols.push_back(flatten(form == 0 ? om * E : E * om));
                    }
                    for (std::size_t k = 0; k < m; ++k) {
                        Multiplier mo = tensor_one(MA.basis[k]);
                        cols.push_back(flatten(form == 0 ? mo * E : E * mo).scaled(-1));
                    }
                    for (const auto& z : solve_columns(cols, SVec()).kernel) {
                        SVec xs, ys;
                        for (const auto& [i, c] : z)
                            (i < m ? xs : ys).add(i < m ? i : i - m, c);
                        if (!d_.Atspace.contains(flatten(MA.element(xs))))
                            return std::string(form == 0 ? "(1⊗x)E" : "E(1⊗x)") + ": x not in A_t";
                        if (!d_.Asspace.contains(flatten(MA.element(ys))))
                            return std::string(form == 0 ? "(1⊗x)E" : "E(1⊗x)") + ": y not in A_s";
                    }
                }
                return {};
            });
        d_.MB = relative_multipliers(W_.A(), MA, d_.B);
        d_.MC = relative_multipliers(W_.A(), MA, d_.C);
        detail::guarded(r, "A_s.multiplier_algebras", "M(B) = {x : xB ⊆ B, Bx ⊆ B} ⊆ A_s and M(C) ⊆ A_t", [&]() -> std::string {
            if (!d_.MB.hypotheses_hold)
                return "B: " + d_.MB.failure;
            if (!d_.MC.hypotheses_hold)
                return "C: " + d_.MC.failure;
            if (!d_.Asspace.contains(d_.MB.space))
                return "M(B) is not inside A_s";
            if (!d_.Atspace.contains(d_.MC.space))
                return "M(C) is not inside A_t";
            return {};
        });
        r.record("dim M(B)", std::to_string(d_.MB.space.dim()));
        r.record("dim M(C)", std::to_string(d_.MC.space.dim()));
        if (regular_ == Tri::Yes) {
            detail::guarded(r, "A_s.regular_equality", "M(B) = A_s and M(C) = A_t in the regular case", [&]() -> std::string {
                if (d_.MB.space != d_.Asspace)
                    return "dim M(B) = " + std::to_string(d_.MB.space.dim()) + ", dim A_s = " + std::to_string(d_.Asspace.dim());
                if (d_.MC.space != d_.Atspace)
                    return "dim M(C) = " + std::to_string(d_.MC.space.dim()) + ", dim A_t = " + std::to_string(d_.Atspace.dim());
                return {};
            });
        } else if (d_.MB.hypotheses_hold && d_.MC.hypotheses_hold) {
            r.record("M(B) = A_s", d_.MB.space == d_.Asspace ? "yes" : "no");
            r.record("M(C) = A_t", d_.MC.space == d_.Atspace ? "yes" : "no");
        }
        return r;
    }

    /// S restricted to B and C.
    Report antipodal_restrictions()
    {
        Report r;
        const std::size_t n = n_;
        if (d_.B.empty() || !W_.E().found || !d_.MC.hypotheses_hold || !d_.MB.hypotheses_hold) {
            detail::skipped(r, "antipode_BC.into_multipliers", "S_B maps B into M(C) and S_C maps C into M(B)", "legs or M(B), M(C) unavailable");
            return r;
        }
        const Multiplier& E = W_.E().E;
        SB_.clear();
        SC_.clear();
        detail::guarded(r, "antipode_BC.into_multipliers", "S_B maps B into M(C) and S_C maps C into M(B)", [&]() -> std::string {
            std::vector<Multiplier> sb, sc;
            for (std::size_t k = 0; k < d_.B.size(); ++k) {
                auto s = W_.S_ext(d_.B[k]);
                if (!s)
                    return "S does not extend to basis element " + std::to_string(k) + " of B";
                if (!d_.MC.space.contains(flatten(*s)))
                    return "S of basis element " + std::to_string(k) + " of B is not in M(C)";
                sb.push_back(*s);
            }
            for (std::size_t k = 0; k < d_.C.size(); ++k) {
                auto s = W_.S_ext(d_.C[k]);
                if (!s)
                    return "S does not extend to basis element " + std::to_string(k) + " of C";
                if (!d_.MB.space.contains(flatten(*s)))
                    return "S of basis element " + std::to_string(k) + " of C is not in M(B)";
                sc.push_back(*s);
            }
            SB_ = std::move(sb);
            SC_ = std::move(sc);
            return {};
        });
        if (SB_.size() != d_.B.size() || SC_.size() != d_.C.size())
            return r;
        auto anti = [&](const std::vector<Multiplier>& X, const std::vector<Multiplier>& SX, const char* nm) -> std::string {
            for (std::size_t i = 0; i < X.size(); ++i)
                for (std::size_t j = 0; j < X.size(); ++j) {
                    auto s = W_.S_ext(X[i] * X[j]);
                    if (!s || *s != SX[j] * SX[i])
                        return std::string("S(xy) differs from S(y)S(x) in ") + nm + " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            return {};
        };
        detail::guarded(r, "antipode_BC.anti_homomorphism", "S_B and S_C reverse products", [&]() -> std::string {
            if (auto w = anti(d_.B, SB_, "B"); !w.empty())
                return w;
            return anti(d_.C, SC_, "C");
        });
        auto nondeg = [&](const std::vector<Multiplier>& SX, const std::vector<Multiplier>& Y, const Subspace& Ysp, const char* nm) -> std::string {
            Subspace left(2 * n * n), right(2 * n * n), img(2 * n * n);
            for (const auto& s : SX) {
                img.add(flatten(s));
                for (const auto& y : Y) {
                    left.add(flatten(s * y));
                    right.add(flatten(y * s));
                }
            }
            if (left != Ysp)
                return std::string("S(") + nm + ") times its target is not the whole target";
            if (right != Ysp)
                return std::string("target times S(") + nm + ") is not the whole target";
            if (img.dim() != SX.size())
                return std::string("S is not injective on ") + nm;
            return {};
        };
        detail::guarded(r, "antipode_BC.nondegenerate_injective", "S(B)C = C = CS(B), S(C)B = B = BS(C), and S is injective on B and C",
            [&]() -> std::string {
                if (auto w = nondeg(SB_, d_.C, d_.Cspace, "B"); !w.empty())
                    return w;
                return nondeg(SC_, d_.B, d_.Bspace, "C");
            });
        detail::guarded(r, "antipode_BC.exchange", "(1⊗x)E = (S(x)⊗1)E for x ∈ C and E(y⊗1) = E(1⊗S(y)) for y ∈ B", [&]() -> std::string {
            for (std::size_t k = 0; k < d_.C.size(); ++k)
                if (one_tensor(d_.C[k]) * E != tensor_one(SC_[k]) * E)
                    return "basis element " + std::to_string(k) + " of C";
            for (std::size_t k = 0; k < d_.B.size(); ++k)
                if (E * tensor_one(d_.B[k]) != E * one_tensor(SB_[k]))
                    return "basis element " + std::to_string(k) + " of B";
            return {};
        });
        if (regular_ == Tri::Yes) {
            detail::guarded(r, "antipode_BC.regular_bijective", "S(B) = C and S(C) = B in the regular case", [&]() -> std::string {
                Subspace sb(2 * n * n), sc(2 * n * n);
                for (const auto& s : SB_)
                    sb.add(flatten(s));
                for (const auto& s : SC_)
                    sc.add(flatten(s));
                if (sb != d_.Cspace)
                    return "S(B) differs from C";
                if (sc != d_.Bspace)
                    return "S(C) differs from B";
                return {};
            });
        }
        return r;
    }

    /// E as a separability idempotent over (B, C).
    Report separability()
    {
        Report r;
        const std::size_t n = n_;
        if (d_.B.empty() || !W_.E().found) {
            detail::skipped(r, "separability.E_1_A", "E(1⊗a) ∈ B⊗A", "legs unavailable");
            return r;
        }
        const Multiplier& E = W_.E().E;
        std::vector<Multiplier> Abasis;
        for (std::size_t a = 0; a < n; ++a)
            Abasis.push_back(embed(W_.A(), SVec::unit(a)));
        detail::guarded(r, "separability.E_1_A", "E(1⊗a) ∈ B⊗A and (a⊗1)E ∈ A⊗C for all a", [&]() -> std::string {
            for (std::size_t a = 0; a < n; ++a) {
                if (!express_tensor(E * one_tensor(Abasis[a]), d_.B, Abasis))
                    return "E(1⊗" + W_.label(a) + ") is not in B⊗A";
                if (!express_tensor(tensor_one(Abasis[a]) * E, Abasis, d_.C))
                    return "(" + W_.label(a) + "⊗1)E is not in A⊗C";
            }
            return {};
        });
        const std::size_t p = d_.B.size(), q = d_.C.size();
        std::vector<SVec> F(q), G(p);
        bool ok = true;
        detail::guarded(r, "separability.E_1_C", "E(1⊗C) ⊆ B⊗C and (B⊗1)E ⊆ B⊗C", [&]() -> std::string {
            for (std::size_t j = 0; j < q; ++j) {
                auto x = express_tensor(E * one_tensor(d_.C[j]), d_.B, d_.C);
                if (!x) {
                    ok = false;
                    return "E(1⊗x) leaves B⊗C for basis element " + std::to_string(j) + " of C";
                }
                F[j] = *x;
            }
            for (std::size_t i = 0; i < p; ++i) {
                auto x = express_tensor(tensor_one(d_.B[i]) * E, d_.B, d_.C);
                if (!x) {
                    ok = false;
                    return "(y⊗1)E leaves B⊗C for basis element " + std::to_string(i) + " of B";
                }
                G[i] = *x;
            }
            return {};
        });
        if (!ok)
            return r;
        std::string build_fail;
        SeparabilityIdempotent S = abstract_copy(F, G, build_fail);
        if (!build_fail.empty()) {
            r.add("separability.certificate", "E is a separability idempotent in M(B⊗C)", false, build_fail);
            return r;
        }
        auto v = verify_sep(S);
        r.append(v.report, "certificate.");
        r.add("separability.certificate", "E is a separability idempotent in M(B⊗C)", v.valid,
            v.valid ? "" : "first failure: " + (v.report.first_failure() ? v.report.first_failure()->name : std::string("?")));
        d_.sep = v.completed;
        d_.phi_B = v.completed.phi_B;
        d_.phi_C = v.completed.phi_C;
        if (regular_ == Tri::Yes) {
            Report flipped_report;
            bool reg = is_regular(S, &flipped_report);
            r.add("separability.regular", "ζE is a separability idempotent in M(C⊗B) in the regular case", reg,
                reg ? "" : "first failure: " + (flipped_report.first_failure() ? flipped_report.first_failure()->name : std::string("?")));
        }
        return r;
    }

    /// φ_B∘ε_s = ε and φ_C∘ε_t = ε.
    Report functionals()
    {
        Report r;
        const std::string st = "φ_B(ε_s(a)) = ε(a) and φ_C(ε_t(a)) = ε(a)";
        if (!d_.phi_B || !d_.phi_C || !W_.counit().unique) {
            detail::skipped(r, "functionals.counit", st, "φ_B, φ_C or ε unavailable");
            return r;
        }
        detail::guarded(r, "functionals.counit", st, [&]() -> std::string {
            for (std::size_t a = 0; a < n_; ++a) {
                auto cb = d_.Bspace.coordinates(flatten(d_.eps_s[a]));
                auto cc = d_.Cspace.coordinates(flatten(d_.eps_t[a]));
                if (!cb || !cc)
                    return "ε_s or ε_t leaves its span at " + W_.label(a);
                Q vb = 0, vc = 0;
                for (const auto& [i, c] : *cb)
                    vb += c * (*d_.phi_B)[i];
                for (const auto& [i, c] : *cc)
                    vc += c * (*d_.phi_C)[i];
                Q e = W_.counit().eps[a];
                if (vb != e)
                    return "φ_B(ε_s(" + W_.label(a) + ")) = " + to_string(vb) + ", ε = " + to_string(e);
                if (vc != e)
                    return "φ_C(ε_t(" + W_.label(a) + ")) = " + to_string(vc) + ", ε = " + to_string(e);
            }
            return {};
        });
        std::string pb, pc;
        for (std::size_t i = 0; i < d_.phi_B->size(); ++i)
            pb += (i ? " " : "") + to_string((*d_.phi_B)[i]);
        for (std::size_t i = 0; i < d_.phi_C->size(); ++i)
            pc += (i ? " " : "") + to_string((*d_.phi_C)[i]);
        r.record("phi_B", pb);
        r.record("phi_C", pc);
        return r;
    }

    /// Right local units in B, left local units in C, two-sided local units in A.
    Report local_units()
    {
        Report r;
        if (!d_.sep) {
            detail::skipped(r, "local_units.B_right", "B has right local units", "certificate unavailable");
            return r;
        }
        const Algebra& B = d_.sep->B;
        const Algebra& C = d_.sep->C;
        auto one_sided = [](const Algebra& X, bool right) -> std::optional<SVec> {
            const std::size_t m = X.dim();
            std::vector<SVec> cols(m);
            SVec rhs;
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t k = 0; k < m; ++k)
                    for (const auto& [o, c] : right ? X.table[i][k] : X.table[k][i])
                        cols[k].add(i * m + o, c);
                rhs.add(i * m + i, 1);
            }
            auto s = solve_columns(cols, rhs);
            if (!s.consistent)
                return std::nullopt;
            return s.particular;
        };
        auto show = [](const Algebra& X, const SVec& v) {
            std::string s;
            for (const auto& [i, c] : v)
                s += (s.empty() ? "" : " + ") + to_string(c) + "·" + X.labels[i];
            return s.empty() ? std::string("0") : s;
        };
        auto eb = one_sided(B, true);
        r.add("local_units.B_right", "some e ∈ B satisfies be = b for every basis element b", eb.has_value(), "no solution");
        if (eb)
            r.record("right unit of B", show(B, *eb));
        auto ec = one_sided(C, false);
        r.add("local_units.C_left", "some e ∈ C satisfies ec = c for every basis element c", ec.has_value(), "no solution");
        if (ec)
            r.record("left unit of C", show(C, *ec));
        std::vector<SVec> all;
        for (std::size_t i = 0; i < n_; ++i)
            all.push_back(SVec::unit(i));
        auto ea = local_units_for(W_.A(), all);
        r.add("local_units.A", "some e ∈ A satisfies ea = a = ae for every basis element a", ea.has_value(), "no solution");
        if (ea)
            r.record("local unit of A", show(W_.A(), *ea));
        return r;
    }

    Report run()
    {
        Report r;
        r.title = W_.bundle().name;
        auto section = [&](const char* name, Report (SourceTarget::*fn)()) {
            try {
                r.append((this->*fn)());
            } catch (const std::exception& e) {
                r.add(std::string(name) + ".completed", "the section runs to completion", false, e.what());
            }
        };
        section("source_map", &SourceTarget::maps);
        section("legs", &SourceTarget::legs);
        section("A_s", &SourceTarget::algebras_As_At);
        section("antipode_BC", &SourceTarget::antipodal_restrictions);
        section("separability", &SourceTarget::separability);
        section("functionals", &SourceTarget::functionals);
        section("local_units", &SourceTarget::local_units);
        return r;
    }

private:
    /*
     * Abstract algebras B, C with structure constants in the canonical bases,
     * E acting by E(b⊗c) = E(1⊗c)(b⊗1) and (b⊗c)E = (1⊗c)(b⊗1)E, and S_B,
     * S_C read off from products inside M(A).
     */
    SeparabilityIdempotent abstract_copy(const std::vector<SVec>& F, const std::vector<SVec>& G, std::string& fail)
    {
        SeparabilityIdempotent S;
        S.name = "E of " + W_.bundle().name;
        auto make = [&](const std::vector<Multiplier>& X, const Subspace& sp, const std::string& nm, const std::string& pre) {
            std::vector<std::string> labels;
            std::vector<std::vector<SVec>> t(X.size(), std::vector<SVec>(X.size()));
            for (std::size_t i = 0; i < X.size(); ++i) {
                labels.push_back(pre + std::to_string(i + 1));
                for (std::size_t j = 0; j < X.size(); ++j) {
                    auto c = sp.coordinates(flatten(X[i] * X[j]));
                    if (!c) {
                        fail = nm + " is not closed under products";
                        return Algebra();
                    }
                    t[i][j] = *c;
                }
            }
            return Algebra(nm, labels, t);
        };
        S.B = make(d_.B, d_.Bspace, "B", "b");
        S.C = make(d_.C, d_.Cspace, "C", "c");
        if (!fail.empty())
            return S;
        const std::size_t p = S.B.dim(), q = S.C.dim();
        S.E = zero_multiplier(p * q);
        for (std::size_t i = 0; i < p; ++i) {
            LinMap rb = S.B.right_mult(SVec::unit(i));
            for (std::size_t j = 0; j < q; ++j) {
                LinMap lc = S.C.left_mult(SVec::unit(j));
                S.E.L[i * q + j] = tensor_map(F[j], q, &rb, nullptr, q);
                S.E.R[i * q + j] = tensor_map(G[i], q, nullptr, &lc, q);
            }
        }
        if (SB_.size() == p && SC_.size() == q) {
            auto realize = [&](const Multiplier& s, const std::vector<Multiplier>& Y, const Subspace& sp) -> std::optional<Multiplier> {
                Multiplier m = zero_multiplier(Y.size());
                for (std::size_t k = 0; k < Y.size(); ++k) {
                    auto l = sp.coordinates(flatten(s * Y[k]));
                    auto rr = sp.coordinates(flatten(Y[k] * s));
                    if (!l || !rr)
                        return std::nullopt;
                    m.L[k] = *l;
                    m.R[k] = *rr;
                }
                return m;
            };
            std::vector<Multiplier> sb, sc;
            for (const auto& s : SB_)
                if (auto m = realize(s, d_.C, d_.Cspace))
                    sb.push_back(*m);
            for (const auto& s : SC_)
                if (auto m = realize(s, d_.B, d_.Bspace))
                    sc.push_back(*m);
            if (sb.size() == p && sc.size() == q) {
                S.S_B = sb;
                S.S_C = sc;
            }
        }
        return S;
    }

    Wmha& W_;
    std::size_t n_;
    Tri regular_;
    SourceTargetData d_;
    std::optional<MultiplierAlgebra> MA_;
    std::vector<Multiplier> SB_, SC_;
};

inline Report source_target_suite(Wmha& W, Tri regular = Tri::Unknown)
{
    SourceTarget st(W, regular);
    return st.run();
}

/// Every axiom check followed by the source/target suite.
inline Report verify_all(Wmha& W)
{
    Report r = verify_core(W);
    Tri reg = r.value("regular") == "yes" ? Tri::Yes : r.value("regular") == "no" ? Tri::No : Tri::Unknown;
    r.append(source_target_suite(W, reg));
    return r;
}

} // namespace wmha
