#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "instances.hpp"
#include "oracles.hpp"

using namespace wmha;

namespace {

void passes(const WmhaBundle& b, const Report& extra)
{
    Wmha W(b);
    Report r = verify_all(W);
    CHECK(fixtures::failures(r) == "");
    CHECK(fixtures::failures(extra) == "");
    CHECK(r.value("regular") == "yes");
}

} // namespace

TEST_CASE("C⊗B over the generators")
{
    std::vector<SeparabilityIdempotent> all = {diagonal_on_set(2), diagonal_on_set(3), from_dqg(cyclic_group(2)), from_dqg(cyclic_group(3)), matrix_units(2)};
    for (const auto& S : all) {
        CAPTURE(S.name);
        Wmha W(cb_wmha(S));
        Report r = verify_all(W);
        Report c = check_cb(S, W);
        CHECK(fixtures::failures(r) == "");
        CHECK(fixtures::failures(c) == "");
        CHECK(c.find("cb.regular"));
        CHECK(W.n() == S.B.dim() * S.C.dim());
    }
}

TEST_CASE("C⊗B rejects an unverified idempotent")
{
    auto S = diagonal_on_set(2);
    S.E = zero_multiplier(4);
    CHECK_THROWS_AS(cb_wmha(S), std::invalid_argument);
}

TEST_CASE("discrete quantum group of Z2")
{
    auto H = cyclic_group(2);
    Wmha W(dqg_wmha(H));
    CHECK(W.n() == 4);
    Report r = verify_all(W);
    CHECK(fixtures::failures(r) == "");
    Report d = check_dqg(H, W);
    CHECK(fixtures::failures(d) == "");
    CHECK(d.find("dqg.source_target_closed_forms"));
    // ε_t(λ_g⊗λ_g) = λ_g S(λ_g)⊗1 = λ_e⊗1
    SourceTarget st(W);
    st.maps();
    SVec gg = SVec::unit(1 * 2 + 1);
    CHECK(st.eps_t(gg) == tensor_multiplier(embed(group_algebra(H), SVec::unit(0)), identity_multiplier(2)));
    // E_P = 1⊗Δ(h)⊗1 with Δ(h) = (1/2)(λ_e⊗λ_e + λ_g⊗λ_g)
    REQUIRE(W.E().found);
    SVec one = SVec::unit(0);
    SVec onePP = tensor(tensor(one, one, 2), tensor(one, one, 2), 4);
    SVec e = W.E().E.left(onePP);
    CHECK(e.nnz() == 2);
    CHECK(e.get(((0 * 2 + 0) * 2 + 0) * 2 + 0) == Q(1, 2));
    CHECK(e.get(((0 * 2 + 1) * 2 + 1) * 2 + 0) == Q(1, 2));
}

TEST_CASE("C⊗B over the diagonal on two points reproduces K(pair 2) table for table")
{
    Wmha P(cb_wmha(diagonal_on_set(2))), K(function_wmha(pair_groupoid(2)));
    CHECK(P.A().table == K.A().table);
    CHECK(P.bundle().delta == K.bundle().delta);
    CHECK(P.bundle().antipode == K.bundle().antipode);
    CHECK(P.counit().eps == K.counit().eps);
    CHECK(P.E().E == K.E().E);
}

TEST_CASE("γ intertwines and its kernel matches the oracle")
{
    auto groupoids = fixtures::standard_groupoids();
    groupoids.push_back({"discrete(2)", discrete_groupoid(2)});
    for (const auto& g : groupoids) {
        for (bool functions : {true, false}) {
            CAPTURE(g.name);
            CAPTURE(functions);
            Wmha W(functions ? function_wmha(g.G) : groupoid_algebra_wmha(g.G));
            auto res = gamma_map(W);
            CHECK(fixtures::failures(res.report) == "");
            auto m = functions ? oracle::function_gamma_matrix(g.G) : oracle::convolution_gamma_matrix(g.G);
            CHECK(res.kernel_dim == oracle::kernel_dim(m));
            CHECK(res.report.find("gamma.source_target"));
        }
    }
}

TEST_CASE("γ on the set example is multiplication K(X×X) → K(X)")
{
    Wmha W(function_wmha(discrete_groupoid(2)));
    auto res = gamma_map(W);
    CHECK(res.dim_P == 4);
    CHECK(res.kernel_dim == 2);
    CHECK(res.report.value("γ injective") == "no");
    Wmha Kp(function_wmha(pair_groupoid(2)));
    CHECK(gamma_map(Kp).kernel_dim == 0);
}

TEST_CASE("smash product on three points with the swap of 1 and 2")
{
    auto H = cyclic_group(2);
    auto acts = permutation_actions(H, cyclic_action(H, {1, 0, 2}));
    auto S = diagonal_on_set(3);
    auto Qh = group_hopf(H);
    Report alg;
    auto sm = smash_algebra(S.B, S.C, Qh, acts, &alg);
    CHECK(sm.P().dim() == 18);
    CHECK(fixtures::failures(alg) == "");
    CHECK(check_compatibility(S, sm).pass);
    Wmha W(smash_wmha(S, Qh, acts));
    passes(W.bundle(), check_smash(S, Qh, acts, W));
}

TEST_CASE("smash closed form ε_s(δ_y⊗λ_h⊗δ_x) = δ_{h⁻¹▷y}δ_x")
{
    auto H = cyclic_group(2);
    auto act = cyclic_action(H, {1, 0, 2});
    auto acts = permutation_actions(H, act);
    auto S = diagonal_on_set(3);
    Wmha W(smash_wmha(S, group_hopf(H), acts));
    SourceTarget st(W);
    st.maps();
    for (std::size_t y = 0; y < 3; ++y)
        for (std::size_t h = 0; h < 2; ++h)
            for (std::size_t x = 0; x < 3; ++x) {
                std::size_t idx = (y * 2 + h) * 3 + x;
                bool hit = act[H.inv[h]][y] == x;
                SVec expect = hit ? tensor(tensor(SVec::unit(0) + SVec::unit(1) + SVec::unit(2), SVec::unit(0), 2), SVec::unit(x), 3) : SVec();
                CHECK(st.eps_s(SVec::unit(idx)) == embed(W.A(), expect));
            }
}

TEST_CASE("smash degenerations")
{
    SUBCASE("trivial group gives C⊗B")
    {
        auto H = cyclic_group(1);
        auto S = diagonal_on_set(3);
        auto acts = permutation_actions(H, ActionTable(1, std::vector<std::size_t>{0, 1, 2}));
        Wmha Sm(smash_wmha(S, group_hopf(H), acts)), P(cb_wmha(S));
        CHECK(Sm.A().table == P.A().table);
        CHECK(Sm.bundle().delta == P.bundle().delta);
        CHECK(Sm.bundle().antipode == P.bundle().antipode);
        CHECK(Sm.counit().eps == P.counit().eps);
        CHECK(fixtures::failures(verify_all(Sm)) == "");
    }
    SUBCASE("one point gives the group algebra with E = 1⊗1")
    {
        auto H = cyclic_group(3);
        auto acts = permutation_actions(H, ActionTable(3, std::vector<std::size_t>{0}));
        Wmha Sm(smash_wmha(diagonal_on_set(1), group_hopf(H), acts));
        auto CH = groupoid_algebra_wmha(group_groupoid(H));
        CHECK(Sm.A().table == CH.A.table);
        CHECK(Sm.bundle().delta == CH.delta);
        CHECK(Sm.bundle().antipode == CH.antipode);
        CHECK(Sm.E().E == multiplier2(Sm.A(), Sm.A(), SVec::unit(0)));
        CHECK(fixtures::failures(verify_all(Sm)) == "");
    }
    SUBCASE("trivial B gives the ordinary smash product C#Q")
    {
        auto H = cyclic_group(2);
        auto act = cyclic_action(H, {1, 0, 2});
        auto Qh = group_hopf(H);
        QActions acts{trivial_actions(1, 3, Qh).right, permutation_actions(H, act).left};
        auto sm = smash_algebra(function_algebra(1), function_algebra(3), Qh, acts);
        REQUIRE(sm.P().dim() == 6);
        // (δ_y⊗λ_h)(δ_y'⊗λ_h') = δ_y δ_{h▷y'} ⊗ λ_{hh'}
        for (std::size_t y = 0; y < 3; ++y)
            for (std::size_t h = 0; h < 2; ++h)
                for (std::size_t y2 = 0; y2 < 3; ++y2)
                    for (std::size_t h2 = 0; h2 < 2; ++h2) {
                        SVec expect = act[h][y2] == y ? SVec::unit(y * 2 + H(h, h2)) : SVec();
                        CHECK(sm.P().mul(SVec::unit(y * 2 + h), SVec::unit(y2 * 2 + h2)) == expect);
                    }
    }
}

TEST_CASE("smash rejects a non-equivariant action with the witness q")
{
    auto H = cyclic_group(2);
    auto acts = permutation_actions(H, cyclic_action(H, {1, 0, 2}));
    acts.left = permutation_actions(H, ActionTable(2, std::vector<std::size_t>{0, 1, 2})).left;
    auto S = diagonal_on_set(3);
    auto sm = smash_algebra(S.B, S.C, group_hopf(H), acts);
    auto c = check_compatibility(S, sm);
    CHECK_FALSE(c.pass);
    CHECK(c.witness == "q = λg");
    CHECK_THROWS_WITH(smash_wmha(S, group_hopf(H), acts), doctest::Contains("λg"));
}

TEST_CASE("smash rejects an action that is not a module algebra action")
{
    auto H = cyclic_group(2);
    auto acts = permutation_actions(H, cyclic_action(H, {1, 0, 2}));
    acts.right[0][1] = SVec::unit(0) + SVec::unit(1);
    Report r;
    CHECK_THROWS(smash_algebra(function_algebra(3), function_algebra(3), group_hopf(H), acts, &r));
    CHECK_FALSE(r.all_pass());
}
