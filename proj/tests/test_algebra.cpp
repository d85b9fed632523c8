#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wmha/algebra.hpp"
#include "wmha/separability.hpp"

using namespace wmha;

namespace {

Algebra nilpotent_line()
{
    return Algebra("N", {"x"}, {{SVec()}});
}

Multiplier random_element_multiplier(std::mt19937& rng, const Algebra& A)
{
    SVec a;
    for (std::size_t i = 0; i < A.dim(); ++i)
        a.add(i, oracle::random_q(rng));
    return embed(A, a);
}

} // namespace

TEST_CASE("check_algebra on unital and degenerate algebras")
{
    auto M2 = matrix_algebra(2);
    auto r = check_algebra(M2);
    CHECK(r.associative);
    CHECK(r.nondegenerate);
    CHECK(r.unital);
    REQUIRE(r.unit);
    CHECK(*r.unit == SVec::unit(0) + SVec::unit(3));
    auto n = check_algebra(nilpotent_line());
    CHECK_FALSE(n.nondegenerate);
    CHECK_FALSE(n.idempotent);
    CHECK_FALSE(n.witness.empty());
}

TEST_CASE("a broken structure constant is caught with a witness")
{
    auto A = function_algebra(2);
    A.table[0][1] = SVec::unit(0);
    auto r = check_algebra(A);
    CHECK_FALSE(r.associative);
    CHECK_FALSE(r.witness.empty());
}

TEST_CASE("tensor algebra and legwise multipliers")
{
    auto A = function_algebra(2), B = matrix_algebra(2);
    auto T = tensor_algebra(A, B);
    CHECK(T.dim() == 8);
    CHECK(check_algebra(T).associative);
    SVec a = SVec::unit(1), b = SVec::unit(1);
    Multiplier m = tensor_multiplier(embed(A, a), embed(B, b));
    CHECK(m == embed(T, tensor(a, b, 4)));
}

TEST_CASE("multiplier algebra of a unital algebra is the algebra itself")
{
    for (auto A : {function_algebra(3), matrix_algebra(2), group_algebra(cyclic_group(3))}) {
        auto M = multiplier_algebra(A);
        CHECK(M.dim() == A.dim());
        CHECK(embedding_injective(M));
        CHECK(check_algebra(M.alg).associative);
    }
}

TEST_CASE("flatten and unflatten are inverse")
{
    auto A = matrix_algebra(2);
    Multiplier m = embed(A, SVec::unit(1) + SVec::unit(2, 3));
    CHECK(unflatten(flatten(m), 4) == m);
    CHECK_FALSE(compatibility_failure(A, m));
    Multiplier bad = m;
    bad.R[0] = SVec();
    CHECK(compatibility_failure(A, bad));
}

TEST_CASE("relative multipliers of the diagonal inside M2")
{
    auto A = matrix_algebra(2);
    auto M = multiplier_algebra(A);
    std::vector<Multiplier> R = {embed(A, SVec::unit(0)), embed(A, SVec::unit(3))};
    auto rel = relative_multipliers(A, M, R);
    REQUIRE(rel.hypotheses_hold);
    CHECK(rel.space.dim() == 2);
    std::vector<Multiplier> corner = {embed(A, SVec::unit(0))};
    CHECK_FALSE(relative_multipliers(A, M, corner).hypotheses_hold);
}

TEST_CASE("recover finds elements from their products")
{
    auto A = matrix_algebra(2);
    Recoverer rec(A);
    SVec x = SVec::unit(1, 2) + SVec::unit(3, -1);
    auto r = recover(rec, Side::Right, [&](std::size_t u) { return A.mul(x, SVec::unit(u)); });
    REQUIRE(r);
    CHECK(*r == x);
    auto l = recover(rec, Side::Left, [&](std::size_t u) { return A.mul(SVec::unit(u), x); });
    REQUIRE(l);
    CHECK(*l == x);
    SVec y = tensor(x, SVec::unit(2), 4);
    auto good = recover_tensor(rec, Side::Right, rec, Side::Left,
        [&](std::size_t u, std::size_t v) {
            SVec out;
            for (const auto& [idx, c] : y)
                out.axpy(c, tensor(A.mul(SVec::unit(idx / 4), SVec::unit(u)), A.mul(SVec::unit(v), SVec::unit(idx % 4)), 4));
            return out;
        });
    REQUIRE(good);
    CHECK(*good == y);
}

TEST_CASE("property: multiplier products compose like the elements")
{
    std::mt19937 rng(3);
    auto A = matrix_algebra(2);
    for (int t = 0; t < 25; ++t) {
        Multiplier a = random_element_multiplier(rng, A), b = random_element_multiplier(rng, A);
        SVec x = a.left(SVec::unit(0) + SVec::unit(3)), y = b.left(SVec::unit(0) + SVec::unit(3));
        CHECK(a * b == embed(A, A.mul(x, y)));
        CHECK(a + b == embed(A, x + y));
        CHECK_FALSE(compatibility_failure(A, a * b));
    }
}
