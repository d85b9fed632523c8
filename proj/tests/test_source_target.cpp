#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "instances.hpp"
#include "oracles.hpp"

using namespace wmha;

namespace {

SVec column(const oracle::Dense& m, std::size_t r)
{
    SVec v;
    for (std::size_t i = 0; i < m[r].size(); ++i)
        v.add(i, m[r][i]);
    return v;
}

} // namespace

TEST_CASE("full suite passes on every standard bundle")
{
    for (auto& [g, b] : fixtures::standard_bundles()) {
        CAPTURE(b.name);
        Wmha W(b);
        Report r = verify_all(W);
        CHECK(fixtures::failures(r) == "");
        // B and C are spanned by the units in both models
        CHECK(r.value("dim B") == std::to_string(g.G.units().size()));
        CHECK(r.value("dim C") == std::to_string(g.G.units().size()));
        CHECK(r.value("dim A_s") == std::to_string(g.G.units().size()));
        CHECK(r.value("dim M(A)") == std::to_string(g.G.size()));
    }
}

TEST_CASE("source and target maps match the groupoid formulas")
{
    for (auto& [g, b] : fixtures::standard_bundles()) {
        CAPTURE(b.name);
        Wmha W(b);
        SourceTarget st(W);
        st.maps();
        bool functions = b.name[0] == 'K';
        auto es = functions ? oracle::function_eps_s(g.G) : oracle::convolution_eps(g.G, true);
        auto et = functions ? oracle::function_eps_t(g.G) : oracle::convolution_eps(g.G, false);
        for (std::size_t r = 0; r < g.G.size(); ++r) {
            CHECK(st.eps_s(SVec::unit(r)) == embed(W.A(), column(es, r)));
            CHECK(st.eps_t(SVec::unit(r)) == embed(W.A(), column(et, r)));
        }
    }
}

TEST_CASE("distinguished functionals are 1 on the canonical bases")
{
    for (auto& [g, b] : fixtures::standard_bundles()) {
        CAPTURE(b.name);
        Wmha W(b);
        SourceTarget st(W);
        Report r = st.run();
        REQUIRE(st.data().phi_B);
        for (const auto& x : *st.data().phi_B)
            CHECK(x == 1);
        for (const auto& x : *st.data().phi_C)
            CHECK(x == 1);
        CHECK(r.find("separability.certificate")->pass);
    }
}

TEST_CASE("source algebra equals M(B) in the regular case")
{
    Wmha W(function_wmha(pair_groupoid(3)));
    SourceTarget st(W, Tri::Yes);
    st.run();
    const auto& d = st.data();
    CHECK(d.MB.space == d.Asspace);
    CHECK(d.MC.space == d.Atspace);
    CHECK(d.Bspace.dim() == 3);
}

TEST_CASE("the suite without the unit shortcut gives the same verdicts")
{
    Wmha a(function_wmha(pair_groupoid(2))), b(function_wmha(pair_groupoid(2)), false);
    Report ra = verify_all(a), rb = verify_all(b);
    CHECK(fixtures::failures(rb) == "");
    REQUIRE(ra.checks.size() == rb.checks.size());
    for (std::size_t i = 0; i < ra.checks.size(); ++i) {
        CAPTURE(ra.checks[i].name);
        CHECK(ra.checks[i].pass == rb.checks[i].pass);
    }
}

TEST_CASE("a broken antipode shows up in the source/target suite")
{
    auto b = function_wmha(pair_groupoid(2));
    for (std::size_t p = 0; p < 4; ++p)
        b.antipode[p] = embed(b.A, SVec::unit(p));
    Wmha W(b);
    CHECK_FALSE(source_target_suite(W).all_pass());
}
