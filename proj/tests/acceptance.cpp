// One line per acceptance criterion; exit status is nonzero if any line fails.
// Every identity is checked exactly, so there is no tolerance anywhere.

#include "instances.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace wmha;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why)
    {
        if (pass)
            detail.clear();
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
};

std::string first_failure(const Report& r)
{
    const auto* f = r.first_failure();
    return f ? f->name + " (" + f->witness + ")" : std::string();
}

Tri verdict(const Report& core)
{
    std::string v = core.value("regular");
    return v == "yes" ? Tri::Yes : v == "no" ? Tri::No : Tri::Unknown;
}

// ---- 1 and 2 -----------------------------------------------------------------

Outcome axiom_suite(std::vector<Report>& suites)
{
    Outcome o;
    std::size_t checks = 0;
    for (auto& [g, b] : fixtures::standard_bundles()) {
        Wmha W(b);
        Report core = verify_core(W);
        checks += core.checks.size();
        if (!core.all_pass())
            o.fail(b.name + ": " + first_failure(core));
        if (core.value("regular") != "yes")
            o.fail(b.name + " is not regular");
        suites.push_back(source_target_suite(W, verdict(core)));
        suites.back().title = b.name;
    }
    if (o.pass)
        o.detail = "12 bundles, " + std::to_string(checks) + " axiom checks, 0 failures";
    return o;
}

Outcome source_target_criterion(const std::vector<Report>& suites)
{
    const std::vector<std::string> required = {"source_map.multiplier", "target_map.multiplier", "legs.B_is_left_leg",
        "legs.C_is_right_leg", "legs.coproduct_relations", "A_s.commute_with_A_t", "A_s.exchange_relations",
        "legs.unital_modules", "legs.subalgebras_idempotent", "A_s.multiplier_algebras", "A_s.regular_equality",
        "antipode_BC.anti_homomorphism", "antipode_BC.nondegenerate_injective", "A_s.contains_B",
        "separability.certificate", "separability.regular", "functionals.counit", "local_units.B_right",
        "local_units.C_left", "local_units.A", "source_map.prime_range"};
    Outcome o;
    std::size_t checks = 0;
    for (const auto& r : suites) {
        checks += r.checks.size();
        if (!r.all_pass())
            o.fail(r.title + ": " + first_failure(r));
        for (const auto& nm : required) {
            const auto* c = r.find(nm);
            if (!c)
                o.fail(r.title + ": check " + nm + " missing");
        }
    }
    if (o.pass)
        o.detail = std::to_string(suites.size()) + " bundles, " + std::to_string(checks) + " checks, 0 failures";
    return o;
}

// ---- 3 -----------------------------------------------------------------------

Outcome cb_criterion()
{
    Outcome o;
    std::vector<SeparabilityIdempotent> inputs = {diagonal_on_set(3), from_dqg(cyclic_group(2)), from_dqg(cyclic_group(3))};
    std::string dims;
    for (const auto& S : inputs) {
        Wmha W(cb_wmha(S));
        Report r = verify_all(W);
        Report c = check_cb(S, W);
        if (!r.all_pass())
            o.fail(S.name + ": " + first_failure(r));
        if (!c.all_pass())
            o.fail(S.name + ": " + first_failure(c));
        if (r.value("regular") != "yes" || !c.find("cb.regular"))
            o.fail(S.name + ": regularity not established");
        if (!c.find("cb.counit_formulas") || !c.find("cb.counit_formulas")->pass)
            o.fail(S.name + ": counit formulas disagree");
        dims += (dims.empty() ? "" : ", ") + std::to_string(W.n());
    }
    if (o.pass)
        o.detail = "C⊗B over diagonal(3), Δ(h) of Z2 and Z3 (dims " + dims + "): verified, regular, both counit formulas agree on a basis";
    return o;
}

// ---- 4 -----------------------------------------------------------------------

Outcome gamma_criterion()
{
    Outcome o;
    auto groupoids = fixtures::standard_groupoids();
    std::ostringstream kernels;
    std::size_t bundles = 0;
    for (const auto& g : groupoids)
        for (bool functions : {true, false}) {
            Wmha W(functions ? function_wmha(g.G) : groupoid_algebra_wmha(g.G));
            auto res = gamma_map(W);
            ++bundles;
            std::string nm = (functions ? "K(" : "C(") + g.name + ")";
            if (!res.report.all_pass())
                o.fail(nm + ": " + first_failure(res.report));
            for (const char* need : {"gamma.multiplicative", "gamma.nondegenerate", "gamma.coproduct", "gamma.antipode", "gamma.source_target"})
                if (!res.report.find(need))
                    o.fail(nm + ": " + need + " missing");
            auto m = functions ? oracle::function_gamma_matrix(g.G) : oracle::convolution_gamma_matrix(g.G);
            std::size_t expect = oracle::kernel_dim(m);
            if (res.kernel_dim != expect)
                o.fail(nm + ": kernel " + std::to_string(res.kernel_dim) + ", oracle " + std::to_string(expect));
            if (g.name == "pair(2)")
                kernels << nm << " kernel " << res.kernel_dim << "; ";
        }
    // the non-injective example of the text: functions on a two-point set with diagonal coproduct
    Wmha X(function_wmha(discrete_groupoid(2)));
    auto rx = gamma_map(X);
    std::size_t expect = oracle::kernel_dim(oracle::function_gamma_matrix(discrete_groupoid(2)));
    if (!rx.report.all_pass())
        o.fail("K(X): " + first_failure(rx.report));
    if (rx.kernel_dim != expect || rx.kernel_dim == 0)
        o.fail("K(X), |X|=2: kernel " + std::to_string(rx.kernel_dim) + ", oracle " + std::to_string(expect));
    if (o.pass)
        o.detail = "intertwinings hold on " + std::to_string(bundles) + " bundles, kernel = oracle rank deficiency on each; " + kernels.str()
            + "K(X) with |X|=2 and diagonal coproduct: kernel " + std::to_string(rx.kernel_dim) + " (non-injective). "
            + "On K(pair X) γ is bijective, so the non-injectivity is confirmed on the set example only";
    return o;
}

// ---- 5 -----------------------------------------------------------------------

Outcome smash_criterion()
{
    Outcome o;
    auto H = cyclic_group(2);
    auto acts = permutation_actions(H, cyclic_action(H, {1, 0, 2}));
    auto S = diagonal_on_set(3);
    auto Qh = group_hopf(H);
    Report alg;
    Smash sm = smash_algebra(S.B, S.C, Qh, acts, &alg);
    if (sm.P().dim() != 18)
        o.fail("dim P = " + std::to_string(sm.P().dim()));
    if (!alg.find("smash.associative") || !alg.find("smash.associative")->pass)
        o.fail("associativity: " + first_failure(alg));
    if (!alg.all_pass())
        o.fail(first_failure(alg));
    auto comp = check_compatibility(S, sm);
    if (!comp.pass)
        o.fail("compatibility fails at " + comp.witness);
    Wmha W(smash_wmha(S, Qh, acts));
    Report r = verify_all(W);
    Report c = check_smash(S, Qh, acts, W);
    if (!r.all_pass())
        o.fail(first_failure(r));
    if (!c.all_pass())
        o.fail(first_failure(c));
    for (const char* need : {"smash.E_commutes_with_delta", "smash.source_target_closed_forms", "smash.phi_invariance", "smash.phi_mixed", "smash.regular"})
        if (!c.find(need))
            o.fail(std::string(need) + " missing");
    if (r.value("regular") != "yes")
        o.fail("not regular");
    if (o.pass)
        o.detail = "18-dim P: 5832 triples associative, compatibility for both q, EΔ(q)=Δ(q)E, " + std::to_string(r.checks.size() + c.checks.size())
            + " bundle checks pass, regular";
    return o;
}

// ---- 6 -----------------------------------------------------------------------

struct Mutation {
    std::string name;
    std::function<std::pair<bool, std::string>()> run; // caught, witness
};

std::pair<bool, std::string> caught_by(const Report& r, const std::string& prefix)
{
    for (const auto& c : r.checks)
        if (!c.pass && c.name.rfind(prefix, 0) == 0 && !c.witness.empty())
            return {true, c.name + ": " + c.witness};
    return {false, r.all_pass() ? "all checks pass" : "failed elsewhere: " + first_failure(r)};
}

Outcome mutation_criterion(std::string& lines)
{
    std::vector<Mutation> ms = {
        {"drop a unit from E", [] {
             auto b = groupoid_algebra_wmha(disjoint_union(group_groupoid(cyclic_group(2)), group_groupoid(cyclic_group(3))));
             b.E = multiplier2(b.A, b.A, SVec::unit(0));
             Wmha W(b);
             return caught_by(verify_core(W), "E.");
         }},
        {"S = id on the pair groupoid", [] {
             auto b = groupoid_algebra_wmha(pair_groupoid(2));
             for (std::size_t p = 0; p < b.A.dim(); ++p)
                 b.antipode[p] = embed(b.A, SVec::unit(p));
             Wmha W(b);
             return caught_by(verify_core(W), "antipode.");
         }},
        {"perturb a structure constant", [] {
             auto b = function_wmha(pair_groupoid(2));
             b.A.table[0][0] = SVec::unit(0, 2);
             Wmha W(b);
             return caught_by(verify_core(W), "");
         }},
        {"zero one coproduct entry", [] {
             auto b = function_wmha(pair_groupoid(2));
             b.delta[0].L[0] = SVec();
             Wmha W(b);
             return caught_by(verify_core(W), "coproduct.");
         }},
        {"non-equivariant action", [] {
             auto H = cyclic_group(2);
             auto acts = permutation_actions(H, cyclic_action(H, {1, 0, 2}));
             acts.left = permutation_actions(H, ActionTable(2, std::vector<std::size_t>{0, 1, 2})).left;
             auto S = diagonal_on_set(3);
             auto c = check_compatibility(S, smash_algebra(S.B, S.C, group_hopf(H), acts));
             return std::make_pair(!c.pass && !c.witness.empty(), c.name + ": " + c.witness);
         }},
    };
    Outcome o;
    std::size_t caught = 0;
    for (const auto& m : ms) {
        auto [ok, w] = m.run();
        lines += "    mutation \"" + m.name + "\": " + (ok ? "caught by " : "NOT caught, ") + w + "\n";
        if (ok)
            ++caught;
        else
            o.fail(m.name + " not caught");
    }
    if (o.pass)
        o.detail = std::to_string(caught) + "/5 mutations caught with witnesses";
    return o;
}

// ---- 7 -----------------------------------------------------------------------

Outcome table_criterion()
{
    Outcome o;
    Wmha P(cb_wmha(diagonal_on_set(2))), K(function_wmha(pair_groupoid(2)));
    std::size_t n = K.n(), entries = 0;
    auto cmp = [&](bool same, const std::string& what) {
        if (!same)
            o.fail(what + " differs");
    };
    if (P.n() != n) {
        o.fail("dimensions differ");
        return o;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cmp(P.A().table[i][j] == K.A().table[i][j], "product at (" + K.label(i) + ", " + K.label(j) + ")");
            ++entries;
        }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n * n; ++k) {
            cmp(P.bundle().delta[i].L[k] == K.bundle().delta[i].L[k] && P.bundle().delta[i].R[k] == K.bundle().delta[i].R[k],
                "Δ slice of " + K.label(i));
            entries += 2;
        }
        cmp(P.bundle().antipode[i] == K.bundle().antipode[i], "S on " + K.label(i));
        cmp(P.counit().eps[i] == K.counit().eps[i], "ε on " + K.label(i));
        entries += 2 * n + 1;
    }
    cmp(P.E().found && K.E().found && P.E().E == K.E().E, "E");
    entries += 2 * n * n;
    if (o.pass)
        o.detail = std::to_string(entries) + " table entries (product, Δ slices, ε, S, E) identical under δ_z⊗δ_y ↔ (z,y)";
    return o;
}

} // namespace

int main()
{
    bool all = true;
    auto line = [&](int k, const Outcome& o, double secs) {
        all = all && o.pass;
        std::printf("criterion %d: %s  %s  [%.2fs]\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
    };
    auto clock = [] { return std::chrono::steady_clock::now(); };
    auto secs = [](auto a, auto b) { return std::chrono::duration<double>(b - a).count(); };

    std::vector<Report> suites;
    // the source/target suites run alongside the axiom checks, so criterion 2 only inspects them
    auto t0 = clock();
    Outcome c1 = axiom_suite(suites);
    line(1, c1, secs(t0, clock()));
    t0 = clock();
    line(2, source_target_criterion(suites), secs(t0, clock()));
    t0 = clock();
    Outcome c3 = cb_criterion();
    line(3, c3, secs(t0, clock()));
    t0 = clock();
    Outcome c4 = gamma_criterion();
    line(4, c4, secs(t0, clock()));
    t0 = clock();
    Outcome c5 = smash_criterion();
    line(5, c5, secs(t0, clock()));
    t0 = clock();
    std::string mutations;
    Outcome c6 = mutation_criterion(mutations);
    line(6, c6, secs(t0, clock()));
    std::cout << mutations;
    t0 = clock();
    Outcome c7 = table_criterion();
    line(7, c7, secs(t0, clock()));
    return all ? 0 : 1;
}
