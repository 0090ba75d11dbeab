#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartan/autgrp.hpp"
#include "cartan/slices.hpp"

namespace cartan {

/// Generator identity recorded in reports; bump on any change to the
/// sampling byte stream.
inline constexpr const char* kRngName = "splitmix64-v1";

/// SplitMix64.  Each (seed, stream) pair yields an independent deterministic
/// stream, so trials can run in parallel in any order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
        mix.next();
        return mix;
    }

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    Fp fp(std::uint32_t p) { return Fp(p, static_cast<std::int64_t>(below(p))); }

    Fp fp_nonzero(std::uint32_t p) { return Fp(p, static_cast<std::int64_t>(1 + below(p - 1))); }

private:
    std::uint64_t s_;
};

/// Uniform random polynomial with total degree of every retained monomial in
/// [min_deg, max_deg].
inline TruncPoly<Fp> random_poly(Rng& rng, const Ambient& amb, std::uint32_t min_deg = 0,
                                 std::uint32_t max_deg = kDegInf) {
    TruncPoly<Fp> f(amb, Fp(amb.p, 0));
    for (std::uint64_t idx = 0; idx < amb.ring_dim(); ++idx) {
        const std::uint32_t d = amb.total_degree(idx);
        if (d < min_deg || d > max_deg) continue;
        f.set_coeff(idx, rng.fp(amb.p));
    }
    return f;
}

inline Derivation<Fp> random_derivation(Rng& rng, const Ambient& amb, std::uint32_t min_deg = 0,
                                        std::uint32_t max_deg = kDegInf) {
    Derivation<Fp> x(amb, Fp(amb.p, 0));
    for (std::uint32_t i = 0; i < amb.n; ++i)
        x.set_component(i, random_poly(rng, amb, min_deg, max_deg));
    return x;
}

/// Nonzero element of the filtration piece (W_n)_level.
inline Derivation<Fp> random_in_filtration(Rng& rng, const Ambient& amb, std::int32_t level) {
    for (int tries = 0; tries < 64; ++tries) {
        Derivation<Fp> x =
            random_derivation(rng, amb, static_cast<std::uint32_t>(level + 1));
        if (!x.is_zero()) return x;
    }
    throw InternalCheckError("failed to sample a nonzero filtered derivation");
}

/// Random combination of the cached S_n basis.
inline Derivation<Fp> random_sn_element(Rng& rng, const SnContext<Fp>& ctx) {
    const Ambient& amb = ctx.ambient();
    Derivation<Fp> x(amb, Fp(amb.p, 0));
    for (const auto& b : ctx.basis()) {
        Fp c = rng.fp(amb.p);
        if (!c.is_zero()) x += b.scaled(c);
    }
    return x;
}

/// Random torus element sum lambda_i x_i D_i.
inline Derivation<Fp> random_torus_element(Rng& rng, const Ambient& amb) {
    const Fp one(amb.p, 1);
    Derivation<Fp> x(amb, Fp(amb.p, 0));
    for (std::uint32_t i = 0; i < amb.n; ++i)
        x.set_component(i, TruncPoly<Fp>::variable(amb, i, one).scaled(rng.fp(amb.p)));
    return x;
}

/// Random automorphism: random invertible linear part plus random terms of
/// total degree in [2, depth].  With special = true the result is assembled
/// from linear maps and single-variable shears, which keeps the Jacobian
/// determinant constant; the result is validated and resampled on failure.
inline Automorphism<Fp> random_automorphism(Rng& rng, const Ambient& amb, std::uint32_t depth,
                                            bool special) {
    const Fp zero(amb.p, 0), one(amb.p, 1);
    auto random_linear = [&]() {
        for (int tries = 0; tries < 256; ++tries) {
            Matrix<Fp> lin(amb.n, amb.n, zero);
            for (std::uint32_t i = 0; i < amb.n; ++i)
                for (std::uint32_t j = 0; j < amb.n; ++j) lin.at(i, j) = rng.fp(amb.p);
            if (rank(lin) == amb.n) return lin;
        }
        throw InternalCheckError("failed to sample an invertible linear part");
    };
    const int budget = 64;
    for (int attempt = 0; attempt < budget; ++attempt) {
        Matrix<Fp> lin = random_linear();
        std::vector<TruncPoly<Fp>> imgs;
        imgs.reserve(amb.n);
        for (std::uint32_t j = 0; j < amb.n; ++j) {
            TruncPoly<Fp> f(amb, zero);
            for (std::uint32_t i = 0; i < amb.n; ++i)
                if (!lin.at(i, j).is_zero())
                    f += TruncPoly<Fp>::variable(amb, i, one).scaled(lin.at(i, j));
            imgs.push_back(std::move(f));
        }
        if (!special) {
            if (depth >= 2)
                for (std::uint32_t j = 0; j < amb.n; ++j) {
                    TruncPoly<Fp> high = random_poly(rng, amb, 2, depth);
                    imgs[j] += high;
                }
            Automorphism<Fp> g(std::move(imgs));
            return g;
        }
        // special: compose the linear map with shears x_j += u(x_(l != j))
        Automorphism<Fp> g{std::move(imgs)};
        if (depth >= 2 && amb.n >= 2) {
            const std::uint32_t shears = 1 + static_cast<std::uint32_t>(rng.below(amb.n));
            for (std::uint32_t s = 0; s < shears; ++s) {
                const std::uint32_t axis = static_cast<std::uint32_t>(rng.below(amb.n));
                TruncPoly<Fp> u = random_poly(rng, amb, 2, depth);
                // remove every monomial involving x_axis
                std::uint64_t w = 1;
                for (std::uint32_t i = 0; i < axis; ++i) w *= amb.p;
                for (std::uint64_t idx = 0; idx < amb.ring_dim(); ++idx)
                    if ((idx / w) % amb.p != 0) u.set_coeff(idx, zero);
                std::vector<TruncPoly<Fp>> shear_imgs;
                for (std::uint32_t i = 0; i < amb.n; ++i) {
                    TruncPoly<Fp> v = TruncPoly<Fp>::variable(amb, i, one);
                    if (i == axis) v += u;
                    shear_imgs.push_back(std::move(v));
                }
                g = compose(g, Automorphism<Fp>(std::move(shear_imgs)));
            }
        }
        if (is_special(g)) return g;
    }
    throw DomainError("special automorphism sampling budget exhausted");
}

/// Mixed sampler for the regularity suites: rotates through generic,
/// nilpotent, partial-derivative, perturbed-torus and slice-conjugate
/// constructions.
inline Derivation<Fp> random_regularity_mix(Rng& rng, const Ambient& amb, std::uint64_t kind) {
    const Fp one(amb.p, 1);
    switch (kind % 5) {
    case 0:
        return random_derivation(rng, amb);
    case 1: { // nilpotent: positive filtration, optionally conjugated
        Derivation<Fp> x = random_in_filtration(rng, amb, 1);
        Automorphism<Fp> g = random_automorphism(rng, amb, 2, false);
        return act(g, x);
    }
    case 2: { // nilpotent with large constants subring
        Derivation<Fp> x = Derivation<Fp>::partial(amb, 0, one);
        if (rng.below(2)) {
            Automorphism<Fp> g = random_automorphism(rng, amb, 2, false);
            x = act(g, x);
        }
        return x;
    }
    case 3: { // torus perturbed by higher filtration noise
        Derivation<Fp> x = random_torus_element(rng, amb);
        return x + random_in_filtration(rng, amb, 1);
    }
    default: { // conjugated slice element
        std::vector<Fp> eps;
        for (std::uint32_t i = 0; i < amb.n; ++i) eps.push_back(rng.fp(amb.p));
        Derivation<Fp> x = delta_eps<Fp>(amb, eps);
        Automorphism<Fp> g = random_automorphism(rng, amb, 2, false);
        return act(g, x);
    }
    }
}

/// Random S_n element satisfying the degeneration hypothesis x_n | f_n:
/// sigma image of a random W_(n-1) element plus special generators
/// D_(i,n){v(x_1..x_(n-1)) x_n^k} with k >= 2.
inline Derivation<Fp> random_degeneration_input(Rng& rng, const SnContext<Fp>& ctx) {
    const Ambient& amb = ctx.ambient();
    const Fp one(amb.p, 1);
    const Ambient sub(amb.p, amb.n - 1);
    Derivation<Fp> x = sigma_embed(random_derivation(rng, sub), amb);
    TruncPoly<Fp> xn = TruncPoly<Fp>::variable(amb, amb.n - 1, one);
    const std::uint32_t terms = 1 + static_cast<std::uint32_t>(rng.below(amb.n - 1));
    for (std::uint32_t t = 0; t < terms; ++t) {
        const std::uint32_t i = static_cast<std::uint32_t>(rng.below(amb.n - 1));
        const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng.below(amb.p - 2));
        // random polynomial in the first n-1 variables, lifted into B_n
        TruncPoly<Fp> vs(amb, Fp(amb.p, 0));
        for (std::uint64_t idx = 0; idx < sub.ring_dim(); ++idx)
            vs.set_coeff(idx, rng.fp(amb.p));
        x += special_generator<Fp>(i, amb.n - 1, vs * xn.pow(k));
    }
    return x;
}

} // namespace cartan
