#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cartan/linalg.hpp"
#include "cartan/sampling.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

Matrix<Fp> random_matrix(Rng& rng, std::size_t d, std::uint32_t p) {
    Matrix<Fp> m(d, d, Fp(p, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m.at(i, j) = rng.fp(p);
    return m;
}

} // namespace

TEST_CASE("charpoly of the zero and diagonal matrices") {
    const Fp z(5, 0);
    Matrix<Fp> m(4, 4, z);
    auto cp = charpoly(m);
    for (std::size_t k = 0; k < 4; ++k) CHECK(cp[k].is_zero());
    CHECK(cp[4].is_one());

    Matrix<Fp> diag(5, 5, z);
    for (std::size_t i = 0; i < 5; ++i) diag.at(i, i) = Fp(5, static_cast<std::int64_t>(i));
    // prod (t - i) = t^5 - t over F_5
    auto cpd = charpoly(diag);
    CHECK(cpd[0].is_zero());
    CHECK(cpd[1] == Fp(5, -1));
    CHECK(cpd[2].is_zero());
    CHECK(cpd[3].is_zero());
    CHECK(cpd[4].is_zero());
    CHECK(cpd[5].is_one());
}

TEST_CASE("both charpoly routes match the cofactor oracle at small size") {
    Rng rng(101);
    for (int t = 0; t < 25; ++t) {
        const std::size_t d = 1 + rng.below(5);
        Matrix<Fp> m = random_matrix(rng, d, 5);
        auto expect = oracle::charpoly_cofactor(m);
        auto hess = charpoly_hessenberg(m);
        auto berk = charpoly_berkowitz(m);
        REQUIRE(hess.size() == expect.size());
        REQUIRE(berk.size() == expect.size());
        for (std::size_t k = 0; k <= d; ++k) {
            CHECK(hess[k] == expect[k]);
            CHECK(berk[k] == expect[k]);
        }
    }
}

TEST_CASE("division-free and division-based charpoly agree on random 6x6") {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        Matrix<Fp> m = random_matrix(rng, 6, 5);
        auto a = charpoly_hessenberg(m);
        auto b = charpoly_berkowitz(m);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("Cayley-Hamilton up to 30x30") {
    Rng rng(7);
    for (std::size_t d : {3u, 10u, 30u}) {
        Matrix<Fp> m = random_matrix(rng, d, 5);
        auto cp = charpoly(m);
        Matrix<Fp> acc = upoly::eval_matrix(cp, m);
        CHECK(acc.is_zero());
    }
}

TEST_CASE("berkowitz over dual numbers reduces to the field result") {
    Rng rng(9);
    const std::uint32_t p = 5;
    Matrix<Fp> m = random_matrix(rng, 7, p);
    Matrix<DualFp> dm(7, 7, DualFp(Fp(p, 0), Fp(p, 0)));
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) dm.at(i, j) = DualFp(m.at(i, j), Fp(p, 0));
    auto dual_cp = charpoly_berkowitz(dm);
    auto field_cp = charpoly_hessenberg(m);
    REQUIRE(dual_cp.size() == field_cp.size());
    for (std::size_t k = 0; k < dual_cp.size(); ++k) {
        CHECK(dual_cp[k].re == field_cp[k]);
        CHECK(dual_cp[k].ep.is_zero());
    }
    // dispatched charpoly() picks the division-free route for duals
    auto dispatched = charpoly(dm);
    CHECK(dispatched.size() == dual_cp.size());
}

TEST_CASE("rank and kernel") {
    const Fp z(5, 0), o(5, 1);
    Matrix<Fp> id = Matrix<Fp>::identity(4, o);
    auto rk = rank_kernel(id);
    CHECK(rk.rank == 4);
    CHECK(rk.kernel.empty());

    Matrix<Fp> zero(3, 3, z);
    auto rk0 = rank_kernel(zero);
    CHECK(rk0.rank == 0);
    CHECK(rk0.kernel.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(rk0.kernel[i][i].is_one());

    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        const std::size_t r = 2 + rng.below(5), c = 2 + rng.below(5);
        Matrix<Fp> m(r, c, z);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng.fp(5);
        auto out = rank_kernel(m);
        CHECK(out.rank + out.kernel.size() == c);
        for (const auto& v : out.kernel) {
            auto img = m.apply(v);
            for (const auto& x : img) CHECK(x.is_zero());
        }
    }
}

TEST_CASE("rank_kernel rejects dual coefficients") {
    Matrix<DualFp> m(2, 2, DualFp(Fp(5, 0), Fp(5, 0)));
    CHECK_THROWS_AS(rank_kernel(m), DomainError);
    CHECK_THROWS_AS(rank(m), DomainError);
}

TEST_CASE("mat_power") {
    const Fp z(5, 0), o(5, 1);
    Rng rng(3);
    Matrix<Fp> m = random_matrix(rng, 4, 5);
    CHECK(mat_power(m, 0) == Matrix<Fp>::identity(4, o));
    CHECK(mat_power(m, 1) == m);
    CHECK(mat_power(m, 5) == m * m * m * m * m);
    (void)z;
}

TEST_CASE("matrix inverse round trip and singular rejection") {
    Rng rng(33);
    const Fp o(5, 1);
    for (int t = 0; t < 10; ++t) {
        Matrix<Fp> m = random_matrix(rng, 5, 5);
        if (rank(m) < 5) continue;
        CHECK(m * matrix_inverse(m) == Matrix<Fp>::identity(5, o));
    }
    Matrix<Fp> sing(2, 2, Fp(5, 0));
    sing.at(0, 0) = Fp(5, 1);
    sing.at(1, 0) = Fp(5, 2);
    CHECK_THROWS_AS(matrix_inverse(sing), DomainError);
}

TEST_CASE("adjugate recurrence: (tI - M) Q(t) = P(t) I") {
    Rng rng(55);
    for (std::size_t d : {2u, 5u, 9u}) {
        Matrix<Fp> m = random_matrix(rng, d, 5);
        auto adj = charpoly_adjugate(m);
        // coefficient-wise product check: for each k,
        // Q_(k-1) - M Q_k = c_k I (with Q_d = 0, Q_(-1) missing -> c_0 I = -M Q_0)
        const Fp z(5, 0);
        for (std::size_t k = 0; k <= d; ++k) {
            Matrix<Fp> lhs(d, d, z);
            if (k >= 1) lhs += adj.adjugate[k - 1];
            if (k < d) lhs -= m * adj.adjugate[k];
            Matrix<Fp> rhs(d, d, z);
            for (std::size_t i = 0; i < d; ++i) rhs.at(i, i) = adj.charpoly[k];
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("span solver coordinates") {
    const Fp z(5, 0), o(5, 1);
    SpanSolver<Fp> span(3);
    std::vector<Fp> v1{o, z, o};          // (1,0,1)
    std::vector<Fp> v2{z, o, Fp(5, 2)};   // (0,1,2)
    CHECK(span.add(v1));
    CHECK(span.add(v2));
    CHECK_FALSE(span.add({Fp(5, 2), Fp(5, 3), Fp(5, 3)})); // 2v1 + 3v2 mod 5
    auto coords = span.coordinates({Fp(5, 2), Fp(5, 3), Fp(5, 3)});
    REQUIRE(coords.has_value());
    CHECK((*coords)[0] == Fp(5, 2));
    CHECK((*coords)[1] == Fp(5, 3));
    CHECK_FALSE(span.coordinates({o, o, o}).has_value());
    CHECK(span.rank() == 2);
}

TEST_CASE("univariate helpers: radical in characteristic p") {
    const Fp z(5, 0), o(5, 1);
    using P = std::vector<Fp>;
    // t^5 -> t
    P t5{z, z, z, z, z, o};
    P r = upoly::radical(t5, z);
    CHECK(r == P{z, o});
    // t^2 (t+1) -> t(t+1) = t^2 + t
    P f{z, z, o, o}; // t^2 + t^3
    P rf = upoly::radical(f, z);
    CHECK(rf == P{z, o, o});
    // separable stays itself: t^2 + 2 irreducible over F_5
    P sep{Fp(5, 2), z, o};
    CHECK(upoly::radical(sep, z) == sep);
    // gcd
    P a{z, o};      // t
    P b{z, z, o};   // t^2
    CHECK(upoly::gcd(a, b, z) == P{z, o});
}
