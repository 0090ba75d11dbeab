#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cartan/invariants.hpp"
#include "cartan/sampling.hpp"
#include "cartan/slices.hpp"

using namespace cartan;

namespace {
const Ambient w1{5, 1};
const Ambient w2{5, 2};
const Fp z5 = Fp(5, 0);
const Fp o5 = Fp(5, 1);

Derivation<Fp> one_plus_x_del() {
    Derivation<Fp> g(w1, z5);
    g.set_component(0, TruncPoly<Fp>::constant(w1, o5) + TruncPoly<Fp>::variable(w1, 0, o5));
    return g;
}

Derivation<Fp> euler(const Ambient& amb, std::uint32_t axis) {
    Derivation<Fp> d(amb, Fp(amb.p, 0));
    d.set_component(axis, TruncPoly<Fp>::variable(amb, axis, Fp(amb.p, 1)));
    return d;
}
} // namespace

TEST_CASE("invariant vector examples") {
    auto phis = phi_vector(Derivation<Fp>::partial(w2, 0, o5));
    CHECK(phis.size() == 2);
    CHECK(phis[0].is_zero());
    CHECK(phis[1].is_zero());
    // W_1: x d has charpoly t^5 - t, so phi_0 = 1
    CHECK(phi_vector(euler(w1, 0))[0].is_one());
    // W_1 example: (1+x) d also sits in the fiber over 1
    CHECK(phi_vector(one_plus_x_del())[0].is_one());
}

TEST_CASE("W_1 worked example: the fiber over 1") {
    // representatives (1+x)d and lambda x d, lambda != 0: all have phi_0 = 1
    // and minimal p-polynomial t^p - t
    auto check_rep = [&](const Derivation<Fp>& x) {
        CHECK(phi_vector(x)[0].is_one());
        auto mp = minimal_p_polynomial(x);
        CHECK(mp.degree_exp == 1);
        REQUIRE(mp.coeffs.size() == 1);
        CHECK(mp.coeffs[0].is_one());
    };
    check_rep(one_plus_x_del());
    for (std::uint32_t lam = 1; lam < 5; ++lam) {
        // phi_0(lambda x d) = lambda^(p-1) = 1
        check_rep(euler(w1, 0).scaled(Fp(5, lam)));
    }
}

TEST_CASE("charpoly shape on random elements") {
    Rng rng(83);
    for (int t = 0; t < 100; ++t) {
        Derivation<Fp> x = random_derivation(rng, w2);
        CHECK_NOTHROW(phi_vector(x)); // shape violation would throw
    }
}

TEST_CASE("restricted Cayley-Hamilton and the operator identity") {
    Rng rng(89);
    for (int t = 0; t < 10; ++t) {
        Derivation<Fp> x = random_derivation(rng, w2);
        auto phis = phi_vector(x);
        auto iters = p_power_iterates(x, 3);
        Derivation<Fp> acc(w2, z5);
        for (std::uint32_t i = 0; i < 2; ++i) acc += iters[i].scaled(phis[i]);
        CHECK(iters[2] == acc);
        Matrix<Fp> rho = rho_matrix(x);
        CHECK(mat_power(rho, 25) ==
              mat_power(rho, 1).scaled(phis[0]) + mat_power(rho, 5).scaled(phis[1]));
    }
}

TEST_CASE("homogeneity of the invariants") {
    Rng rng(97);
    for (int t = 0; t < 10; ++t) {
        Derivation<Fp> x = random_derivation(rng, w2);
        Fp c = rng.fp_nonzero(5);
        auto phis = phi_vector(x);
        auto scaled = phi_vector(x.scaled(c));
        // phi_i(cx) = c^(p^n - p^i) phi_i(x)
        CHECK(scaled[0] == phis[0] * c.pow(25 - 1));
        CHECK(scaled[1] == phis[1] * c.pow(25 - 5));
    }
}

TEST_CASE("directional derivatives: zero direction and Euler relation") {
    Rng rng(103);
    for (int t = 0; t < 8; ++t) {
        Derivation<Fp> x = random_derivation(rng, w2);
        auto dzero = phi_differential(x, Derivation<Fp>(w2, z5));
        CHECK(dzero[0].is_zero());
        CHECK(dzero[1].is_zero());
        // degree of phi_i is p^n - p^i, so (dphi_i)_x(x) = -p^i phi_i(x) mod p:
        // -phi_0(x) for i = 0 and 0 for i >= 1
        auto philist = phi_vector(x);
        auto dx = phi_differential(x, x);
        CHECK(dx[0] == -philist[0]);
        CHECK(dx[1].is_zero());
    }
}

TEST_CASE("reduced adjoint identity, dual-number route") {
    Rng rng(107);
    for (int t = 0; t < 25; ++t) {
        Derivation<Fp> x = random_derivation(rng, w2);
        Derivation<Fp> y = random_derivation(rng, w2);
        Derivation<Fp> lhs = adjoint_reduced_apply(x, y);
        auto d = phi_differential(x, y);
        auto iters = p_power_iterates(x, 2);
        Derivation<Fp> rhs = iters[0].scaled(d[0]) + iters[1].scaled(d[1]);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("reduced adjoint identity in W_3") {
    Rng rng(109);
    const Ambient w3{5, 3};
    Derivation<Fp> x = random_derivation(rng, w3);
    Derivation<Fp> y = random_derivation(rng, w3);
    Derivation<Fp> lhs = adjoint_reduced_apply(x, y);
    auto d = phi_differential(x, y);
    auto iters = p_power_iterates(x, 3);
    Derivation<Fp> rhs(w3, z5);
    for (std::uint32_t i = 0; i < 3; ++i) rhs += iters[i].scaled(d[i]);
    CHECK(lhs == rhs);
}

TEST_CASE("jacobian stacks the directional derivatives") {
    Rng rng(113);
    for (int t = 0; t < 6; ++t) {
        Derivation<Fp> x = random_derivation(rng, w2);
        Matrix<Fp> jac = phi_jacobian(x);
        Derivation<Fp> y = random_derivation(rng, w2);
        auto via_jac = jac.apply(to_coords(y));
        auto direct = phi_differential(x, y);
        REQUIRE(via_jac.size() == direct.size());
        for (std::size_t i = 0; i < direct.size(); ++i) CHECK(via_jac[i] == direct[i]);
    }
}

TEST_CASE("reduced adjoint image dimension") {
    CHECK(adjoint_reduced_image_dim(Derivation<Fp>(w2, z5)) == 0);
    std::vector<Fp> eps{Fp(5, 1), Fp(5, 2)};
    CHECK(adjoint_reduced_image_dim(delta_eps<Fp>(w2, eps)) == 2);
    CHECK(adjoint_reduced_image_dim(Derivation<Fp>::partial(w2, 0, o5)) != 2);
}

TEST_CASE("regularity flags") {
    std::vector<Fp> eps{Fp(5, 1), Fp(5, 2)};
    Regularity reg = regularity_classify(delta_eps<Fp>(w2, eps));
    CHECK(reg.trivial_constants);
    CHECK(reg.minimal_centralizer);
    CHECK(reg.independent_differentials);
    Regularity d1 = regularity_classify(Derivation<Fp>::partial(w2, 0, o5));
    CHECK_FALSE(d1.trivial_constants);
    CHECK_FALSE(d1.minimal_centralizer);
    CHECK_FALSE(d1.independent_differentials);
    Regularity zero = regularity_classify(Derivation<Fp>(w2, z5));
    CHECK_FALSE(zero.trivial_constants);
    CHECK_FALSE(zero.minimal_centralizer);
    CHECK_FALSE(zero.independent_differentials);
}

TEST_CASE("regularity agreement on a mixed sample") {
    Rng rng(127);
    for (std::uint64_t t = 0; t < 30; ++t) {
        Derivation<Fp> x = random_regularity_mix(rng, w2, t);
        CHECK_NOTHROW(regularity_classify(x)); // throws if U_1 != U_3
    }
}

TEST_CASE("nilpotency routes agree") {
    CHECK(is_nilpotent(Derivation<Fp>::partial(w2, 0, o5)));
    CHECK_FALSE(is_nilpotent(euler(w2, 0)));
    Rng rng(131);
    for (std::uint64_t t = 0; t < 20; ++t) {
        Derivation<Fp> x = t % 2 ? random_derivation(rng, w2)
                                 : random_in_filtration(rng, w2, 1);
        const bool nil = is_nilpotent(x);
        auto phis = phi_vector(x);
        CHECK(nil == (phis[0].is_zero() && phis[1].is_zero()));
        CHECK(nil == mat_power(rho_matrix(x), 25).is_zero());
    }
}

TEST_CASE("Jordan-Chevalley examples") {
    // nilpotent input: (0, x)
    Derivation<Fp> d1 = Derivation<Fp>::partial(w2, 0, o5);
    auto [s1, n1] = jordan_chevalley(d1);
    CHECK(s1.is_zero());
    CHECK(n1 == d1);
    // semisimple input: (x, 0)
    auto [s2, n2] = jordan_chevalley(euler(w2, 0));
    CHECK(s2 == euler(w2, 0));
    CHECK(n2.is_zero());
    // x1 D1 + D2 splits into the commuting pair (x1 D1, D2)
    Derivation<Fp> mixed = euler(w2, 0) + Derivation<Fp>::partial(w2, 1, o5);
    auto [s3, n3] = jordan_chevalley(mixed);
    CHECK(s3 == euler(w2, 0));
    CHECK(n3 == Derivation<Fp>::partial(w2, 1, o5));
}

TEST_CASE("Jordan-Chevalley on random elements validates all three properties") {
    Rng rng(137);
    for (int t = 0; t < 6; ++t) {
        Derivation<Fp> x = random_derivation(rng, w2);
        auto [xs, xn] = jordan_chevalley(x); // internal validation throws on failure
        CHECK(x == xs + xn);
        CHECK(bracket(xs, xn).is_zero());
        CHECK(is_nilpotent(xn));
        CHECK(is_semisimple(xs));
        // the semisimple part is a polynomial in rho(x): it commutes with x
        CHECK(bracket(x, xs).is_zero());
    }
}

TEST_CASE("minimal p-polynomial examples") {
    // D_1: t^p
    auto mp1 = minimal_p_polynomial(Derivation<Fp>::partial(w1, 0, o5));
    CHECK(mp1.degree_exp == 1);
    CHECK(mp1.coeffs[0].is_zero());
    // x d: t^p - t
    auto mp2 = minimal_p_polynomial(euler(w1, 0));
    CHECK(mp2.degree_exp == 1);
    CHECK(mp2.coeffs[0].is_one());
    // zero element: t
    auto mp0 = minimal_p_polynomial(Derivation<Fp>(w1, z5));
    CHECK(mp0.degree_exp == 0);
    CHECK(mp0.coeffs.empty());
    // slice element of W_2: degree p^2 with coefficients given by eps
    std::vector<Fp> eps{Fp(5, 3), Fp(5, 4)};
    auto mps = minimal_p_polynomial(delta_eps<Fp>(w2, eps));
    CHECK(mps.degree_exp == 2);
    REQUIRE(mps.coeffs.size() == 2);
    CHECK(mps.coeffs[0] == eps[0]);
    CHECK(mps.coeffs[1] == eps[1]);
}

TEST_CASE("minimal p-polynomial is the characteristic one when constants are trivial") {
    Rng rng(139);
    int nontrivial = 0;
    for (int t = 0; t < 12; ++t) {
        Derivation<Fp> x = random_derivation(rng, w2);
        if (constants_subring(x).size() != 1) continue;
        ++nontrivial;
        auto mp = minimal_p_polynomial(x);
        auto phis = phi_vector(x);
        CHECK(mp.degree_exp == 2);
        REQUIRE(mp.coeffs.size() == 2);
        CHECK(mp.coeffs[0] == phis[0]);
        CHECK(mp.coeffs[1] == phis[1]);
    }
    CHECK(nontrivial > 0); // generic elements are regular
}
