#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "instances.hpp"

using namespace wmha;

TEST_CASE("generators are valid regular separability idempotents")
{
    std::vector<SeparabilityIdempotent> all = {diagonal_on_set(1), diagonal_on_set(3), from_dqg(cyclic_group(2)),
        from_dqg(cyclic_group(3)), from_dqg(symmetric_group3()), matrix_units(2), matrix_units(3)};
    for (const auto& S : all) {
        CAPTURE(S.name);
        auto v = verify_sep(S);
        CHECK(fixtures::failures(v.report) == "");
        CHECK(v.valid);
        CHECK(is_regular(S));
    }
}

TEST_CASE("solved data matches the supplied antipodal maps and functionals")
{
    auto S = from_dqg(cyclic_group(3));
    SeparabilityIdempotent bare = S;
    bare.S_B.reset();
    bare.S_C.reset();
    bare.phi_B.reset();
    bare.phi_C.reset();
    auto v = verify_sep(bare);
    REQUIRE(v.valid);
    REQUIRE(v.completed.S_B);
    CHECK(*v.completed.S_B == *S.S_B);
    CHECK(*v.completed.S_C == *S.S_C);
    CHECK(*v.completed.phi_B == *S.phi_B);
    CHECK(*v.completed.phi_C == *S.phi_C);
}

TEST_CASE("normalized integral of the group algebra is |H| at the identity")
{
    auto S = from_dqg(cyclic_group(2));
    SeparabilityIdempotent bare = S;
    bare.phi_B.reset();
    bare.phi_C.reset();
    auto v = verify_sep(bare);
    REQUIRE(v.valid);
    CHECK(*v.completed.phi_C == Vec{2, 0});
    CHECK(*v.completed.phi_B == Vec{2, 0});
}

TEST_CASE("matrix units use the opposite algebra on the right leg")
{
    auto S = matrix_units(2);
    CHECK(S.test_stock);
    CHECK(verify_sep(S).report.value("origin") != "");
    // with M2 on both legs E is not idempotent
    SeparabilityIdempotent same = S;
    same.C = matrix_algebra(2);
    same.E = tensor_element_multiplier(same.B, same.C, S.E.left(tensor(SVec::unit(0) + SVec::unit(3), SVec::unit(0) + SVec::unit(3), 4)));
    same.S_B.reset();
    same.S_C.reset();
    same.phi_B.reset();
    same.phi_C.reset();
    CHECK_FALSE(verify_sep(same).valid);
}

TEST_CASE("zero E fails fullness and everything built on it")
{
    auto S = diagonal_on_set(2);
    S.E = zero_multiplier(4);
    auto v = verify_sep(S);
    CHECK_FALSE(v.valid);
    for (const char* nm : {"sep.full", "sep.S_B", "sep.S_C", "sep.phi_B", "sep.phi_C"}) {
        auto* c = v.report.find(nm);
        REQUIRE(c);
        CHECK_FALSE(c->pass);
    }
}

TEST_CASE("a wrong supplied antipodal map is reported")
{
    auto S = from_dqg(cyclic_group(3));
    std::vector<Multiplier> id;
    for (std::size_t g = 0; g < 3; ++g)
        id.push_back(embed(S.C, SVec::unit(g)));
    S.S_B = id;
    auto v = verify_sep(S);
    CHECK_FALSE(v.valid);
    CHECK_FALSE(v.report.find("sep.S_B")->pass);
}

TEST_CASE("flip swaps the legs")
{
    auto S = matrix_units(2);
    auto F = flipped(S);
    CHECK(F.B.name == S.C.name);
    CHECK(F.C.name == S.B.name);
    CHECK(flipped(F).E == S.E);
}
