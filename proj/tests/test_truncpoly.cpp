#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cartan/sampling.hpp"
#include "cartan/truncpoly.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {
const Ambient w2{5, 2};
const Fp z5 = Fp(5, 0);
const Fp o5 = Fp(5, 1);
} // namespace

TEST_CASE("ambient validation and indexing") {
    CHECK_THROWS_AS(Ambient(6, 2), DomainError);
    CHECK_THROWS_AS(Ambient(5, 0), DomainError);
    CHECK(w2.ring_dim() == 25);
    CHECK(w2.max_total_degree() == 8);
    std::vector<std::uint8_t> e{3, 4};
    CHECK(w2.index_of(e) == 3 + 4 * 5);
    CHECK(w2.exponents(23) == std::vector<std::uint8_t>{3, 4});
    CHECK(w2.total_degree(23) == 7);
}

TEST_CASE("truncation kills high powers") {
    TruncPoly<Fp> x1 = TruncPoly<Fp>::variable(w2, 0, o5);
    CHECK((x1.pow(4) * x1).is_zero());
    // (1 + x1)^p = 1
    TruncPoly<Fp> f = TruncPoly<Fp>::constant(w2, o5) + x1;
    CHECK(f.pow(5) == TruncPoly<Fp>::constant(w2, o5));
}

TEST_CASE("product example against the schoolbook oracle") {
    TruncPoly<Fp> x1 = TruncPoly<Fp>::variable(w2, 0, o5);
    TruncPoly<Fp> x2 = TruncPoly<Fp>::variable(w2, 1, o5);
    TruncPoly<Fp> lhs = (x1 + x2) * (x1 - x2);
    CHECK(lhs == x1 * x1 - x2 * x2);
    CHECK(lhs == oracle::mul_sparse(x1 + x2, x1 - x2));
}

TEST_CASE("random products match the sparse oracle") {
    Rng rng(7);
    const Ambient w3{5, 3};
    for (int t = 0; t < 20; ++t) {
        TruncPoly<Fp> f = random_poly(rng, w3);
        TruncPoly<Fp> g = random_poly(rng, w3);
        CHECK(f * g == oracle::mul_sparse(f, g));
        CHECK(f * g == g * f);
    }
}

TEST_CASE("partial derivatives") {
    TruncPoly<Fp> x1 = TruncPoly<Fp>::variable(w2, 0, o5);
    TruncPoly<Fp> x2 = TruncPoly<Fp>::variable(w2, 1, o5);
    // d/dx1 (x1^2 x2) = 2 x1 x2
    CHECK((x1 * x1 * x2).partial_derivative(0) == (x1 * x2).scaled(Fp(5, 2)));
    CHECK(TruncPoly<Fp>::constant(w2, Fp(5, 3)).partial_derivative(0).is_zero());
    // d/dx1 x1^4 = 4 x1^3
    CHECK(x1.pow(4).partial_derivative(0) == x1.pow(3).scaled(Fp(5, 4)));
    CHECK_THROWS_AS(x1.partial_derivative(2), DomainError);
}

TEST_CASE("Leibniz and commuting partials on random inputs") {
    Rng rng(13);
    const Ambient w3{5, 3};
    for (int t = 0; t < 20; ++t) {
        TruncPoly<Fp> f = random_poly(rng, w3);
        TruncPoly<Fp> g = random_poly(rng, w3);
        for (std::uint32_t i = 0; i < 3; ++i) {
            CHECK((f * g).partial_derivative(i) ==
                  f * g.partial_derivative(i) + g * f.partial_derivative(i));
            CHECK(f.partial_derivative(i) == oracle::derivative_sparse(f, i));
            for (std::uint32_t j = 0; j < 3; ++j)
                CHECK(f.partial_derivative(i).partial_derivative(j) ==
                      f.partial_derivative(j).partial_derivative(i));
        }
    }
}

TEST_CASE("p-th powers vanish on the maximal ideal") {
    Rng rng(31);
    for (int t = 0; t < 15; ++t) {
        TruncPoly<Fp> f = random_poly(rng, w2, 1); // zero constant term
        CHECK(f.pow(5).is_zero());
    }
}

TEST_CASE("min_degree convention") {
    TruncPoly<Fp> x1 = TruncPoly<Fp>::variable(w2, 0, o5);
    TruncPoly<Fp> x2 = TruncPoly<Fp>::variable(w2, 1, o5);
    CHECK((x1 + x1 * x2).min_degree() == 1);
    CHECK(TruncPoly<Fp>(w2, z5).min_degree() == kDegInf);
    CHECK(kDegInf > w2.max_total_degree());
    CHECK((TruncPoly<Fp>::constant(w2, Fp(5, 3)) + x1 * x1).min_degree() == 0);
}

TEST_CASE("min_degree is superadditive, with equality generically") {
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        TruncPoly<Fp> f = random_poly(rng, w2);
        TruncPoly<Fp> g = random_poly(rng, w2);
        TruncPoly<Fp> fg = f * g;
        if (fg.is_zero()) continue;
        CHECK(fg.min_degree() >= f.min_degree() + g.min_degree());
    }
    // equality when the lowest homogeneous parts multiply to something nonzero
    TruncPoly<Fp> x1 = TruncPoly<Fp>::variable(w2, 0, o5);
    TruncPoly<Fp> x2 = TruncPoly<Fp>::variable(w2, 1, o5);
    CHECK(((x1 + x1 * x2) * (x2 + x1.pow(2))).min_degree() == 2);
}

TEST_CASE("filtration is multiplicative") {
    Rng rng(23);
    for (int t = 0; t < 30; ++t) {
        const std::uint32_t i = static_cast<std::uint32_t>(rng.below(3));
        const std::uint32_t j = static_cast<std::uint32_t>(rng.below(3));
        TruncPoly<Fp> f = random_poly(rng, w2, i);
        TruncPoly<Fp> g = random_poly(rng, w2, j);
        TruncPoly<Fp> fg = f * g;
        if (!fg.is_zero()) CHECK(fg.min_degree() >= i + j);
    }
}

TEST_CASE("substitution sanity") {
    Rng rng(29);
    std::vector<TruncPoly<Fp>> id;
    for (std::uint32_t i = 0; i < 2; ++i) id.push_back(TruncPoly<Fp>::variable(w2, i, o5));
    for (int t = 0; t < 10; ++t) {
        TruncPoly<Fp> f = random_poly(rng, w2);
        CHECK(substitute<Fp>(f, id) == f);
    }
    // f(x2, x1) swaps exponents
    TruncPoly<Fp> x1 = id[0], x2 = id[1];
    std::vector<TruncPoly<Fp>> swapped{x2, x1};
    CHECK(substitute<Fp>(x1 * x1, swapped) == x2 * x2);
}

TEST_CASE("ambient mismatch is rejected") {
    const Ambient w3{5, 3};
    TruncPoly<Fp> f(w2, z5), g(w3, z5);
    CHECK_THROWS_AS(f * g, MismatchError);
    CHECK_THROWS_AS(f + g, MismatchError);
    const Ambient w2p7{7, 2};
    TruncPoly<Fp> h(w2p7, Fp(7, 0));
    CHECK_THROWS_AS(f + h, MismatchError);
}

TEST_CASE("extension scalars drive the same ring") {
    auto ctx = FpExtCtx::get(5, 2);
    FpExt one = FpExt::from_int(ctx, 1);
    FpExt gen(ctx, {0, 1});
    const Ambient w1{5, 1};
    TruncPoly<FpExt> x(w1, one.zero());
    x.set_coeff(1, gen);
    // (g x)^2 = g^2 x^2 with g the adjoined generator
    TruncPoly<FpExt> sq = x * x;
    CHECK(sq.coeff(2) == gen * gen);
    CHECK(sq.coeff(1).is_zero());
}
