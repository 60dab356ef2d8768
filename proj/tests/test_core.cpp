#include <catch2/catch_amalgamated.hpp>

#include "buchsbaum/linalg.hpp"
#include "test_util.hpp"

using namespace buchsbaum;
using tu::X;

TEST_CASE("prime field arithmetic") {
    PrimeField F(32003);
    REQUIRE(F.add(32000, 5) == 2);
    REQUIRE(F.sub(3, 5) == 32001);
    REQUIRE(F.mul(F.inv(17), 17) == 1);
    REQUIRE(F.pow(2, 15) == 32768 % 32003);
    REQUIRE(F.neg(0) == 0);
    REQUIRE_THROWS_AS(PrimeField(32004), AlgebraError);
    PrimeField F5(5);
    for (uint32_t a = 1; a < 5; ++a) REQUIRE(F5.mul(a, F5.inv(a)) == 1);
}

TEST_CASE("grevlex order") {
    // degree dominates
    Exponent a = Exponent::var(3);
    Exponent b = Exponent::var(0) * Exponent::var(1);
    REQUIRE(grevlex_cmp(a, b) < 0);
    // x0^2 > x0 x1 > x1^2 > x0 x2 in four variables
    Exponent x0 = Exponent::var(0), x1 = Exponent::var(1), x2 = Exponent::var(2);
    REQUIRE(grevlex_cmp(x0 * x0, x0 * x1) > 0);
    REQUIRE(grevlex_cmp(x0 * x1, x1 * x1) > 0);
    REQUIRE(grevlex_cmp(x1 * x1, x0 * x2) > 0);
    REQUIRE(grevlex_cmp(x0, x0) == 0);
    // divisibility helpers
    REQUIRE((x0 * x1).divides(x0 * x0 * x1));
    REQUIRE_FALSE((x1 * x1).divides(x0 * x1));
    REQUIRE((x0 * x1).lcm(x1 * x2) == x0 * x1 * x2);
    REQUIRE((x0).coprime(x1 * x2));
    REQUIRE((x0 * x1).quotient_of(x0 * x0 * x1) == x0);
}

TEST_CASE("polynomial arithmetic") {
    PolyRing r = tu::ring(3);
    Polynomial x0 = X(r, 0), x1 = X(r, 1), x2 = X(r, 2);
    Polynomial f = x0 * x0 - x1 * x2;
    Polynomial g = x0 + x1;
    REQUIRE((f + f.negated()).is_zero());
    REQUIRE((f * g).degree() == 3);
    REQUIRE(((f + g * g) - g * g) == f);
    REQUIRE(f.lead().mono == Exponent::var(0) * Exponent::var(0));
    int d = 0;
    REQUIRE(f.is_homogeneous(&d));
    REQUIRE(d == 2);
    REQUIRE_FALSE((f + g).is_homogeneous());
    // distributivity on a messier product
    Polynomial h = x2 * x2 - x0 * x1;
    REQUIRE((f + h) * g == f * g + h * g);
    REQUIRE(f.coeff_of(Exponent::var(1) * Exponent::var(2)) == 32002);
    REQUIRE(f.coeff_of(Exponent::var(1)) == 0);
}

TEST_CASE("polynomial substitution and ring transfer") {
    PolyRing r = tu::ring(3);
    Polynomial x0 = X(r, 0), x1 = X(r, 1), x2 = X(r, 2);
    Polynomial f = x0 * x2 - x1 * x1;
    // substitute x2 := x0 + x1
    Polynomial s = f.substitute(2, x0 + x1);
    REQUIRE(s == x0 * x0 + x0 * x1 - x1 * x1);
    // transfer a polynomial free of x2 into a two variable ring
    PolyRing r2 = tu::ring(2);
    Polynomial t = s.into_ring(r2, {0, 1, -1});
    REQUIRE(t == X(r2, 0) * X(r2, 0) + X(r2, 0) * X(r2, 1) - X(r2, 1) * X(r2, 1));
    REQUIRE_THROWS_AS(f.into_ring(r2, {0, 1, -1}), AlgebraError);
}

TEST_CASE("free modules and graded maps") {
    PolyRing r = tu::ring(4);
    FreeModule F(r, {0, 1});
    FreeModule G(r, {0});
    REQUIRE(F.twisted(2).twists == std::vector<int>{-2, -1});
    REQUIRE(F.dual().twists == std::vector<int>{0, -1});
    // a valid graded map R(-1) (+) R(-2) -> R given by (x0, x1 x2)
    FreeModule S(r, {1, 2});
    GradedMap f(S, G, {VecPoly{X(r, 0)}, VecPoly{X(r, 1) * X(r, 2)}});
    REQUIRE(f.apply(VecPoly{X(r, 1), Polynomial::constant(r, 1)})[0] ==
            X(r, 0) * X(r, 1) + X(r, 1) * X(r, 2));
    // degree violation rejected
    REQUIRE_THROWS_AS(GradedMap(S, G, {VecPoly{X(r, 0) * X(r, 0)}, VecPoly{X(r, 1) * X(r, 2)}}),
                      AlgebraError);
    // dual of dual is the original
    GradedMap fd = f.dual();
    REQUIRE(fd.dual() == f);
}

TEST_CASE("koszul complex") {
    PolyRing r = tu::ring(4);
    REQUIRE(binom(4, 2) == 6);
    REQUIRE(binom(5, 0) == 1);
    REQUIRE(binom(3, 5) == 0);
    REQUIRE(subsets_of_size(4, 2).size() == 6);
    for (int i = 1; i < 4; ++i) {
        GradedMap d1 = koszul_map(r, i);
        GradedMap d2 = koszul_map(r, i + 1);
        GradedMap z = d1.compose(d2);
        for (size_t j = 0; j < z.source().rank(); ++j) REQUIRE(vec_is_zero(z.col(j)));
    }
    REQUIRE(koszul_module(r, 2).rank() == 6);
    REQUIRE(koszul_module(r, 2).twists == std::vector<int>(6, 2));
}

TEST_CASE("dense linear algebra") {
    PrimeField F(32003);
    DenseMatrix A(F, 3, 4);
    // rank two matrix with a dependent third row
    uint32_t vals[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 9}, {3, 6, 9, 13}};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 4; ++j) A.at(i, j) = vals[i][j];
    REQUIRE(A.rank() == 2);
    auto ns = A.nullspace();
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns) {
        for (size_t i = 0; i < 3; ++i) {
            uint32_t s = 0;
            for (size_t j = 0; j < 4; ++j) s = F.add(s, F.mul(A.at(i, j), v[j]));
            REQUIRE(s == 0);
        }
    }
    std::vector<uint32_t> x;
    REQUIRE(A.solve({1, 2, 3}, x));
    uint32_t s0 = 0;
    for (size_t j = 0; j < 4; ++j) s0 = F.add(s0, F.mul(A.at(0, j), x[j]));
    REQUIRE(s0 == 1);
    DenseMatrix B(F, 2, 2);
    B.at(0, 0) = 1;
    B.at(0, 1) = 1;
    B.at(1, 0) = 1;
    B.at(1, 1) = 2;
    REQUIRE(B.is_invertible());
}
