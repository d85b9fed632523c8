#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wmha/groupoid.hpp"
#include "wmha/groupoid_json.hpp"

using namespace wmha;

TEST_CASE("groups by name")
{
    CHECK(group_by_name("Z3").order() == 3);
    CHECK(group_by_name("S3").order() == 6);
    CHECK_THROWS(group_by_name("Q8"));
    auto S3 = symmetric_group3();
    for (std::size_t g = 0; g < 6; ++g)
        CHECK(S3(g, S3.inv[g]) == 0);
    CHECK(S3(1, 2) != S3(2, 1));
}

TEST_CASE("standard groupoids are valid with the expected shape")
{
    auto Z2 = cyclic_group(2), Z3 = cyclic_group(3);
    CHECK(validate(pair_groupoid(3)).empty());
    CHECK(pair_groupoid(3).size() == 9);
    CHECK(pair_groupoid(3).units().size() == 3);
    CHECK(validate(discrete_groupoid(2)).empty());
    auto U = disjoint_union(group_groupoid(Z2), group_groupoid(Z3));
    CHECK(validate(U).empty());
    CHECK(U.size() == 5);
    CHECK(U.units().size() == 2);
    auto A = action_groupoid(3, Z2, cyclic_action(Z2, {1, 0, 2}));
    CHECK(validate(A).empty());
    CHECK(A.size() == 6);
    CHECK(oracle::unit_profile(A) == std::pair<std::size_t, std::size_t>{3, 5});
}

TEST_CASE("pair groupoid product (z,y)(y,x) = (z,x)")
{
    auto G = pair_groupoid(2);
    CHECK(G.mul(0 * 2 + 1, 1 * 2 + 0) == std::optional<std::size_t>(0));
    CHECK_FALSE(G.mul(0 * 2 + 1, 0 * 2 + 1));
    CHECK(G.target(1) == 0);
    CHECK(G.source(1) == 3);
}

TEST_CASE("validation names the broken axiom")
{
    FiniteGroupoid bad({"a", "b"}, {0}, {{0, 0, 0}, {1, 1, 1}}, {0, 1});
    auto v = validate(bad);
    REQUIRE_FALSE(v.empty());
    CHECK_THROWS(action_groupoid(3, cyclic_group(3), cyclic_action(cyclic_group(3), {1, 0, 2})));
}

TEST_CASE("groupoid JSON round trip and diagnostics")
{
    std::string z2 = R"({"elements":["e","g"],"units":["e"],
        "product":[["e","e","e"],["e","g","g"],["g","e","g"],["g","g","e"]],
        "inverse":{"e":"e","g":"g"}})";
    auto G = groupoid_from_json(z2);
    CHECK(G.size() == 2);
    CHECK(G.mul(1, 1) == std::optional<std::size_t>(0));
    CHECK_THROWS_WITH_AS(groupoid_from_json("{\"elements\": [\"e\"]"), doctest::Contains("malformed JSON"), GroupoidParseError);
    CHECK_THROWS_WITH_AS(groupoid_from_json(R"({"elements":["e"],"units":["x"],"product":[],"inverse":{"e":"e"}})"),
        doctest::Contains("units[0]"), GroupoidParseError);
    CHECK_THROWS_WITH_AS(groupoid_from_json(R"({"elements":["e"],"units":["e"],"product":[["e","e"]],"inverse":{"e":"e"}})"),
        doctest::Contains("product[0]"), GroupoidParseError);
    CHECK_THROWS_WITH_AS(groupoid_from_json(R"({"elements":["e","g"],"units":["e"],"product":[["e","e","e"]],"inverse":{"e":"e","g":"g"}})"),
        doctest::Contains("invalid groupoid"), GroupoidParseError);
    CHECK_THROWS_WITH_AS(groupoid_from_json(R"({"elements":["e"],"units":["e"],"product":[["e","e","e"]]})"),
        doctest::Contains("inverse"), GroupoidParseError);
}

TEST_CASE("property: random groupoids are valid")
{
    std::mt19937 rng(11);
    for (int t = 0; t < 40; ++t) {
        auto G = oracle::random_groupoid(rng);
        CHECK(validate(G).empty());
        for (std::size_t p = 0; p < G.size(); ++p) {
            CHECK(G.is_unit(G.source(p)));
            CHECK(G.is_unit(G.target(p)));
            CHECK(G.mul(G.target(p), p) == std::optional<std::size_t>(p));
        }
    }
}
