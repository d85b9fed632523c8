#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "instances.hpp"
#include "oracles.hpp"

using namespace wmha;

TEST_CASE("every standard bundle passes the axiom checks")
{
    for (auto& [g, b] : fixtures::standard_bundles()) {
        CAPTURE(b.name);
        Wmha W(b);
        Report r = verify_core(W);
        CHECK(fixtures::failures(r) == "");
        CHECK(r.value("regular") == "yes");
        // T1 ranges: Δ(a)(1⊗b) is spanned by composable pairs in both models
        CHECK(r.value("dim span T1") == std::to_string(fixtures::composable_pairs(g.G)));
        CHECK(r.value("dim span T2") == std::to_string(fixtures::composable_pairs(g.G)));
    }
}

TEST_CASE("solved E and counit agree with the supplied ones")
{
    for (auto& [g, b] : fixtures::standard_bundles()) {
        CAPTURE(b.name);
        Wmha W(b);
        REQUIRE(W.E().found);
        CHECK(W.E().unique);
        CHECK(W.E().E == *b.E);
        REQUIRE(W.counit().unique);
        CHECK(W.counit().eps == *b.counit);
    }
}

TEST_CASE("the unit shortcut does not change verdicts")
{
    auto Z2 = cyclic_group(2);
    std::vector<WmhaBundle> bs = {function_wmha(pair_groupoid(2)), groupoid_algebra_wmha(action_groupoid(3, Z2, cyclic_action(Z2, {1, 0, 2})))};
    for (auto& b : bs) {
        Wmha fast(b), slow(b, false);
        Report a = verify_core(fast), c = verify_core(slow);
        CHECK(fixtures::failures(c) == "");
        REQUIRE(a.checks.size() == c.checks.size());
        for (std::size_t i = 0; i < a.checks.size(); ++i)
            CHECK(a.checks[i].pass == c.checks[i].pass);
        CHECK(fast.E().E == slow.E().E);
    }
}

TEST_CASE("counit values: indicator of units on K(G), constant 1 on CG")
{
    auto G = pair_groupoid(3);
    Wmha K(function_wmha(G)), C(groupoid_algebra_wmha(G));
    for (std::size_t p = 0; p < G.size(); ++p) {
        CHECK(K.counit().eps[p] == (G.is_unit(p) ? 1 : 0));
        CHECK(C.counit().eps[p] == 1);
    }
}

TEST_CASE("duality pairing: <Δ(f), λ_p⊗λ_q> = <f, λ_pλ_q>")
{
    for (const auto& g : fixtures::standard_groupoids()) {
        auto K = function_wmha(g.G);
        auto C = groupoid_algebra_wmha(g.G);
        const std::size_t n = g.G.size();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    // Δ(δ_r) evaluated at (p,q) is its coefficient on δ_p⊗δ_q after multiplying by δ_p⊗δ_q
                    Q lhs = K.delta[r].left(SVec::unit(p * n + q)).get(p * n + q);
                    Q rhs = C.A.mul(SVec::unit(p), SVec::unit(q)).get(r);
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("mutations are caught")
{
    SUBCASE("zeroed coproduct entry")
    {
        auto b = function_wmha(pair_groupoid(2));
        b.delta[0].L[0] = SVec();
        Wmha W(b);
        Report r = verify_core(W);
        CHECK_FALSE(r.all_pass());
        REQUIRE(r.first_failure());
        CHECK_FALSE(r.first_failure()->witness.empty());
    }
    SUBCASE("identity antipode on a groupoid that is not a group")
    {
        auto b = groupoid_algebra_wmha(pair_groupoid(2));
        for (std::size_t p = 0; p < 4; ++p)
            b.antipode[p] = embed(b.A, SVec::unit(p));
        Wmha W(b);
        Report r = verify_core(W);
        CHECK_FALSE(r.all_pass());
        bool antipode_failed = false;
        for (const auto& c : r.checks)
            antipode_failed = antipode_failed || (!c.pass && c.name.rfind("antipode.", 0) == 0);
        CHECK(antipode_failed);
    }
    SUBCASE("perturbed structure constant")
    {
        auto b = function_wmha(pair_groupoid(2));
        b.A.table[0][0] = SVec::unit(0, 2);
        Wmha W(b);
        CHECK_FALSE(verify_core(W).all_pass());
    }
    SUBCASE("E missing a unit")
    {
        auto b = groupoid_algebra_wmha(disjoint_union(group_groupoid(cyclic_group(2)), group_groupoid(cyclic_group(3))));
        b.E = multiplier2(b.A, b.A, SVec::unit(0));
        Wmha W(b);
        Report r = verify_core(W);
        auto* c = r.find("E.matches_supplied");
        REQUIRE(c);
        CHECK_FALSE(c->pass);
        CHECK_FALSE(c->witness.empty());
    }
}

TEST_CASE("wrong-sized bundles are rejected")
{
    auto b = function_wmha(pair_groupoid(2));
    b.delta.pop_back();
    CHECK_THROWS_AS(Wmha{b}, std::invalid_argument);
}
