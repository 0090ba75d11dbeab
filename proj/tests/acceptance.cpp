// Acceptance suite: twelve exact (zero-tolerance) criteria at desk scale,
// one pass/fail line each.  Exit status 0 iff every criterion passes within
// its time budget.

#include <chrono>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "cartan/invariants.hpp"
#include "cartan/json_io.hpp"
#include "cartan/sampling.hpp"
#include "cartan/slices.hpp"
#include "cartan/suites.hpp"

using namespace cartan;

namespace {

struct Criterion {
    int id;
    const char* label;
    double budget_s;
    bool (*run)();
};

bool all_zero(const std::vector<Fp>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

bool veq(const std::vector<Fp>& a, const std::vector<Fp>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

// 1. basis counts for (5,2), (5,3), (7,2)
bool crit_dimensions() {
    struct Case {
        std::uint32_t p, n;
    };
    for (Case c : {Case{5, 2}, Case{5, 3}, Case{7, 2}}) {
        Ambient amb(c.p, c.n);
        if (witt_dim(amb) != static_cast<std::uint64_t>(c.n) * amb.ring_dim()) return false;
        SnContext<Fp> ctx(amb, Fp(c.p, 1));
        const std::uint64_t expect_s =
            static_cast<std::uint64_t>(c.n - 1) * (amb.ring_dim() - 1);
        const std::uint64_t expect_st =
            static_cast<std::uint64_t>(c.n - 1) * amb.ring_dim() + 1;
        if (ctx.dim() != expect_s) return false;
        if (ctx.stilde_dim() != expect_st) return false;
    }
    return true;
}

// 2. p-power-only charpoly support + restricted Cayley-Hamilton,
//    100 x in W_2 and 25 x in W_3
bool crit_charpoly_shape() {
    for (auto [n, trials, seed] : {std::tuple<std::uint32_t, int, std::uint64_t>{2, 100, 21},
                                   {3, 25, 22}}) {
        Ambient amb(5, n);
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
            Derivation<Fp> x = random_derivation(rng, amb);
            std::vector<Fp> phis;
            try {
                phis = phi_vector(x); // throws unless the support is p-power-only
            } catch (const InternalCheckError&) {
                return false;
            }
            auto iters = p_power_iterates(x, n + 1);
            Derivation<Fp> acc(amb, Fp(5, 0));
            for (std::uint32_t i = 0; i < n; ++i) acc += iters[i].scaled(phis[i]);
            if (!(iters[n] == acc)) return false;
        }
    }
    return true;
}

// 3. reduced-adjoint identity: 50 dual-number pairs in W_2, 10 span-route
//    pairs in W_3 with dual-number spot checks
bool crit_for_1() {
    {
        Ambient amb(5, 2);
        for (int t = 0; t < 50; ++t) {
            Rng rng = Rng::stream(31, static_cast<std::uint64_t>(t));
            Derivation<Fp> x = random_derivation(rng, amb);
            Derivation<Fp> y = random_derivation(rng, amb);
            Derivation<Fp> lhs = adjoint_reduced_apply(x, y);
            std::vector<Fp> d = phi_differential(x, y);
            auto iters = p_power_iterates(x, 2);
            Derivation<Fp> rhs = iters[0].scaled(d[0]) + iters[1].scaled(d[1]);
            if (!(lhs == rhs)) return false;
        }
    }
    {
        Ambient amb(5, 3);
        for (int t = 0; t < 10; ++t) {
            Rng rng = Rng::stream(32, static_cast<std::uint64_t>(t));
            Derivation<Fp> x = random_derivation(rng, amb);
            Derivation<Fp> y = random_derivation(rng, amb);
            Derivation<Fp> lhs = adjoint_reduced_apply(x, y);
            auto iters = p_power_iterates(x, 3);
            SpanSolver<Fp> span(static_cast<std::size_t>(witt_dim(amb)));
            bool independent = true;
            for (const auto& it : iters) independent = independent && span.add(to_coords(it));
            if (independent) {
                auto coords = span.coordinates(to_coords(lhs));
                if (!coords) return false;
                if (t < 2) { // dual-number spot check of the coefficients
                    std::vector<Fp> d = phi_differential(x, y);
                    if (!veq(*coords, d)) return false;
                }
            } else {
                std::vector<Fp> d = phi_differential(x, y);
                Derivation<Fp> rhs(amb, Fp(5, 0));
                for (std::uint32_t i = 0; i < 3; ++i) rhs += iters[i].scaled(d[i]);
                if (!(lhs == rhs)) return false;
            }
        }
    }
    return true;
}

// 4. U_1 = U_3 on 200 mixed samples in W_2; U_2 recorded, zero mismatches
bool crit_pro_1() {
    Ambient amb(5, 2);
    int u2_mismatches = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        Rng rng = Rng::stream(41, t);
        Derivation<Fp> x = random_regularity_mix(rng, amb, t);
        Regularity reg{};
        try {
            reg = regularity_classify(x); // throws iff U_1 != U_3
        } catch (const InternalCheckError&) {
            return false;
        }
        if (reg.trivial_constants != reg.minimal_centralizer) ++u2_mismatches;
    }
    return u2_mismatches == 0;
}

// 5. quotient invariance: 20 automorphisms x 20 elements in W_2
bool crit_invariance() {
    Ambient amb(5, 2);
    std::vector<Automorphism<Fp>> gs;
    std::vector<Derivation<Fp>> xs;
    for (int i = 0; i < 20; ++i) {
        Rng rng = Rng::stream(51, static_cast<std::uint64_t>(i));
        gs.push_back(random_automorphism(rng, amb, 2, i % 2 == 0));
        xs.push_back(random_derivation(rng, amb));
    }
    for (const auto& g : gs) {
        for (const auto& x : xs) {
            if (!veq(quotient_w(act(g, x)), quotient_w(x))) return false;
        }
    }
    return true;
}

// 6. all 25 slice points of W_2: quotient = eps and trivial constants
bool crit_slice_quotient() {
    Ambient amb(5, 2);
    for (std::uint32_t a = 0; a < 5; ++a)
        for (std::uint32_t b = 0; b < 5; ++b) {
            std::vector<Fp> eps{Fp(5, a), Fp(5, b)};
            Derivation<Fp> x = delta_eps<Fp>(amb, eps);
            if (!veq(quotient_w(x), eps)) return false;
            if (constants_subring(x).size() != 1) return false;
        }
    return true;
}

// 7. diagram: 100 y in W_2 with quotient_S(sigma(y)) = quotient_W(y) and
//    phi_0(sigma(y)) = 0; plus 100 S_3 combinations with phi_0 = 0
bool crit_diagram() {
    Ambient w2(5, 2), s3(5, 3);
    SnContext<Fp> ctx(s3, Fp(5, 1));
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng = Rng::stream(61, t);
        Derivation<Fp> y = random_derivation(rng, w2);
        Derivation<Fp> sy = sigma_embed(y, s3);
        if (ctx.classify(sy) != SnMembership::InSn) return false;
        if (!phi_vector(sy)[0].is_zero()) return false;
        if (!veq(quotient_s(ctx, sy), quotient_w(y))) return false;
    }
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng = Rng::stream(62, t);
        Derivation<Fp> x = random_sn_element(rng, ctx);
        if (!phi_vector(x)[0].is_zero()) return false;
    }
    return true;
}

// 8. fiber membership of the explicit family: 25 (eps, f) at (5,3), with
//    the eps = 0 instances nilpotent
bool crit_omega_fiber() {
    Ambient s3(5, 3);
    SnContext<Fp> ctx(s3, Fp(5, 1));
    TruncPoly<Fp> x3 = TruncPoly<Fp>::variable(s3, 2, Fp(5, 1));
    for (std::uint64_t t = 0; t < 25; ++t) {
        Rng rng = Rng::stream(71, t);
        std::vector<Fp> eps;
        for (int i = 0; i < 2; ++i)
            eps.push_back(t % 5 == 0 ? Fp(5, 0) : rng.fp(5));
        std::vector<TruncPoly<Fp>> f;
        for (int i = 0; i < 2; ++i) {
            TruncPoly<Fp> fi(s3, Fp(5, 0));
            for (std::uint32_t e = 2; e < 5; ++e) fi += x3.pow(e).scaled(rng.fp(5));
            f.push_back(std::move(fi));
        }
        Derivation<Fp> x = omega_element(ctx, eps, f);
        if (ctx.classify(x) != SnMembership::InSn) return false;
        if (!veq(quotient_s(ctx, x), eps)) return false;
        if (all_zero(eps) && !is_nilpotent(x)) return false;
    }
    return true;
}

// 9. tangent geometry at all 25 slice points of W_2
bool crit_tangent() {
    Ambient w2(5, 2);
    const auto w0 = filtration_basis_indices(w2, 0);
    for (std::uint32_t a = 0; a < 5; ++a)
        for (std::uint32_t b = 0; b < 5; ++b) {
            std::vector<Fp> eps{Fp(5, a), Fp(5, b)};
            Derivation<Fp> x = delta_eps<Fp>(w2, eps);
            TangentReport rep{};
            try {
                rep = tangent_decomposition(x); // throws if ker ad meets (W)_0
            } catch (const InternalCheckError&) {
                return false;
            }
            if (rep.orbit_dim != 48 || rep.slice_dim != 2 || rep.intersection_dim != 0 ||
                rep.sum_dim != 50)
                return false;
            Rng rng = Rng::stream(81, a * 5 + b);
            for (int t = 0; t < 10; ++t) {
                Derivation<Fp> y(w2, Fp(5, 0));
                for (int k = 0; k < 4; ++k)
                    y += witt_basis_element(w2, w0[rng.below(w0.size())], Fp(5, 1))
                             .scaled(rng.fp(5));
                if (!all_zero(phi_differential(x, bracket(y, x)))) return false;
            }
        }
    return true;
}

// 10. degeneration: 10 S_3 inputs with x_3 | f_3
bool crit_degeneration() {
    Ambient s3(5, 3);
    SnContext<Fp> ctx(s3, Fp(5, 1));
    for (std::uint64_t t = 0; t < 10; ++t) {
        Rng rng = Rng::stream(91, t);
        Derivation<Fp> x = random_degeneration_input(rng, ctx);
        if (ctx.classify(x) != SnMembership::InSn) return false;
        Degeneration<Fp> deg = degeneration_family(x, s3.n - 1);
        std::vector<Fp> q = quotient_s(ctx, x);
        for (std::uint32_t c = 1; c < 5; ++c) {
            Derivation<Fp> gc = deg.at(Fp(5, c));
            if (ctx.classify(gc) != SnMembership::InSn) return false;
            if (!veq(quotient_s(ctx, gc), q)) return false;
        }
        if (!(deg.limit == sigma_embed(deg.delta1, s3))) return false;
        if (ctx.classify(deg.limit) != SnMembership::InSn) return false;
    }
    return true;
}

// 11. W_1 example: phi_0((1+x)d) = phi_0(lambda x d) = 1 and minimal
//     p-polynomial t^p - t
bool crit_w1_example() {
    Ambient w1(5, 1);
    const Fp one(5, 1);
    std::vector<Derivation<Fp>> reps;
    {
        Derivation<Fp> g(w1, Fp(5, 0));
        g.set_component(0, TruncPoly<Fp>::constant(w1, one) + TruncPoly<Fp>::variable(w1, 0, one));
        reps.push_back(std::move(g));
    }
    for (std::uint32_t lam = 1; lam < 5; ++lam) {
        Derivation<Fp> e(w1, Fp(5, 0));
        e.set_component(0, TruncPoly<Fp>::variable(w1, 0, one).scaled(Fp(5, lam)));
        reps.push_back(std::move(e));
    }
    for (const auto& x : reps) {
        if (!phi_vector(x)[0].is_one()) return false;
        auto mp = minimal_p_polynomial(x);
        if (mp.degree_exp != 1 || mp.coeffs.size() != 1 || !mp.coeffs[0].is_one()) return false;
    }
    return true;
}

// 12. smoothness evidence: 20 conjugated slice points with phi_0 != 0 have
//     differential rank n; 20 constructed nilpotent non-regular points have
//     rank < n.  Sampled evidence only, not a proof of the criterion.
bool crit_pro_2_evidence() {
    Ambient w2(5, 2);
    for (std::uint64_t t = 0; t < 20; ++t) {
        Rng rng = Rng::stream(101, t);
        std::vector<Fp> eps{rng.fp_nonzero(5), rng.fp(5)};
        Derivation<Fp> x = act(random_automorphism(rng, w2, 2, false), delta_eps<Fp>(w2, eps));
        if (rank(phi_jacobian(x)) != 2) return false;
    }
    for (std::uint64_t t = 0; t < 20; ++t) {
        Rng rng = Rng::stream(102, t);
        Derivation<Fp> seed = t % 2 ? random_in_filtration(rng, w2, 1)
                                    : Derivation<Fp>::partial(w2, 0, Fp(5, 1));
        Derivation<Fp> x = act(random_automorphism(rng, w2, 2, false), seed);
        if (!is_nilpotent(x)) return false;
        if (rank(phi_jacobian(x)) >= 2) return false;
    }
    return true;
}

const Criterion kCriteria[] = {
    {1, "dimension formulas at (5,2), (5,3), (7,2)", 10.0, crit_dimensions},
    {2, "charpoly p-support and restricted Cayley-Hamilton (W_2 x100, W_3 x25)", 120.0,
     crit_charpoly_shape},
    {3, "reduced-adjoint differential identity (W_2 x50 dual, W_3 x10 span)", 300.0, crit_for_1},
    {4, "regularity criteria agree on 200 mixed W_2 samples", 120.0, crit_pro_1},
    {5, "quotient invariance under 20 x 20 automorphism pairs", 60.0, crit_invariance},
    {6, "slice quotient and regularity at all 25 parameters (W_2)", 30.0, crit_slice_quotient},
    {7, "quotient diagram through sigma and phi_0 vanishing (x100 each)", 300.0, crit_diagram},
    {8, "explicit fiber family membership at (5,3) (x25)", 300.0, crit_omega_fiber},
    {9, "tangent direct sum (48,2,0,50) at all 25 slice points", 120.0, crit_tangent},
    {10, "degeneration family: constant quotient and sigma limit (x10)", 60.0,
     crit_degeneration},
    {11, "W_1 fiber example: invariants and minimal p-polynomial", 5.0, crit_w1_example},
    {12, "sampled smoothness evidence: 20 regular + 20 degenerate points", 300.0,
     crit_pro_2_evidence},
};

} // namespace

int main() {
    int failures = 0;
    double total = 0.0;
    for (const Criterion& c : kCriteria) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string error;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total += secs;
        const bool in_budget = secs < c.budget_s;
        const bool pass = ok && in_budget;
        std::printf("%s criterion %2d: %s (%.2fs, budget %.0fs)%s%s\n", pass ? "PASS" : "FAIL",
                    c.id, c.label, secs, c.budget_s, error.empty() ? "" : " error: ",
                    error.c_str());
        if (!pass) ++failures;
    }
    std::printf("%d/%d criteria passed (%.2fs total)\n",
                static_cast<int>(std::size(kCriteria)) - failures,
                static_cast<int>(std::size(kCriteria)), total);
    return failures == 0 ? 0 : 1;
}
