#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cartan/derlie.hpp"

namespace cartan {

/// Generator D_{i,j}{u} = D_j(u) D_i - D_i(u) D_j of the special algebra.
/// Axes are 0-based and must differ.  Always divergence-free.
template <ScalarRing K>
Derivation<K> special_generator(std::uint32_t i, std::uint32_t j, const TruncPoly<K>& u) {
    const Ambient& amb = u.ambient();
    if (i == j) throw DomainError("special generator needs two distinct axes");
    if (i >= amb.n || j >= amb.n) throw DomainError("axis out of range");
    Derivation<K> d(amb, u.scalar_zero());
    d.set_component(i, u.partial_derivative(j));
    d.set_component(j, -u.partial_derivative(i));
    return d;
}

enum class SnMembership {
    InSn,       // divergence-free and inside the derived algebra S_n
    StildeOnly, // divergence-free but outside S_n
    Outside,    // nonzero divergence
};

/// Cached data for one ambient: a canonical basis of S_n (extracted from the
/// spanning set {D_{i,j}{x^a}} by incremental elimination in axis-pair /
/// monomial order) plus the echelon solver used for membership tests.
template <ScalarField K>
class SnContext {
public:
    SnContext(Ambient amb, const K& one) : amb_(amb), one_(one.zero().one()) {
        const std::uint64_t wd = witt_dim(amb_);
        solver_ = std::make_unique<SpanSolver<K>>(static_cast<std::size_t>(wd));
        for (std::uint32_t i = 0; i < amb_.n; ++i)
            for (std::uint32_t j = i + 1; j < amb_.n; ++j)
                for (std::uint64_t idx = 0; idx < amb_.ring_dim(); ++idx) {
                    TruncPoly<K> mono(amb_, one_.zero());
                    mono.set_coeff(idx, one_);
                    Derivation<K> g = special_generator(i, j, mono);
                    if (g.is_zero()) continue;
                    if (solver_->add(to_coords(g))) basis_.push_back(std::move(g));
                }
        // kernel of the divergence map W_n -> B_n
        const std::uint64_t rd = amb_.ring_dim();
        Matrix<K> div_map(static_cast<std::size_t>(rd), static_cast<std::size_t>(wd),
                          one_.zero());
        for (std::uint64_t b = 0; b < wd; ++b) {
            TruncPoly<K> d = divergence(witt_basis_element(amb_, b, one_));
            for (std::uint64_t i = 0; i < rd; ++i)
                div_map.at(static_cast<std::size_t>(i), static_cast<std::size_t>(b)) =
                    d.coeff(i);
        }
        stilde_dim_ = static_cast<std::size_t>(wd) - rank(div_map);
    }

    const Ambient& ambient() const { return amb_; }

    /// Canonical basis of S_n; size (n-1)(p^n - 1).
    const std::vector<Derivation<K>>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

    /// dim of the divergence-zero subalgebra.
    std::size_t stilde_dim() const { return stilde_dim_; }

    SnMembership classify(const Derivation<K>& x) const {
        require_same(amb_, x.ambient());
        if (!divergence(x).is_zero()) return SnMembership::Outside;
        return solver_->contains(to_coords(x)) ? SnMembership::InSn : SnMembership::StildeOnly;
    }

    bool contains(const Derivation<K>& x) const { return classify(x) == SnMembership::InSn; }

    /// The torus generators x_i D_i - x_n D_n, i = 1..n-1.
    std::vector<Derivation<K>> torus() const {
        std::vector<Derivation<K>> out;
        for (std::uint32_t i = 0; i + 1 < amb_.n; ++i) {
            Derivation<K> t(amb_, one_.zero());
            t.set_component(i, TruncPoly<K>::variable(amb_, i, one_));
            t.set_component(amb_.n - 1, -TruncPoly<K>::variable(amb_, amb_.n - 1, one_));
            out.push_back(std::move(t));
        }
        return out;
    }

private:
    Ambient amb_;
    K one_;
    std::vector<Derivation<K>> basis_;
    std::unique_ptr<SpanSolver<K>> solver_;
    std::size_t stilde_dim_ = 0;
};

/// The divergence-corrected embedding of W_(n-1) into S_n:
/// x |-> x - div(x) x_n D_n.  Injective homomorphism of restricted Lie
/// algebras.  The source ambient must be (p, n-1).
template <ScalarRing K>
Derivation<K> sigma_embed(const Derivation<K>& x, const Ambient& target) {
    const Ambient& src = x.ambient();
    if (src.p != target.p || src.n + 1 != target.n)
        throw MismatchError("sigma embedding needs source ambient (p, n-1)");
    const K zero = x.scalar_zero();
    // B_(n-1) -> B_n keeps mixed-radix indices (the new variable is fastest
    // only from position n, so low indices coincide)
    auto lift = [&](const TruncPoly<K>& f) {
        TruncPoly<K> g(target, zero);
        for (std::uint64_t idx = 0; idx < src.ring_dim(); ++idx) g.set_coeff(idx, f.coeff(idx));
        return g;
    };
    Derivation<K> r(target, zero);
    for (std::uint32_t i = 0; i < src.n; ++i) r.set_component(i, lift(x.component(i)));
    TruncPoly<K> d = divergence(x);
    TruncPoly<K> xn = TruncPoly<K>::variable(target, target.n - 1, zero.one());
    r.set_component(target.n - 1, -(lift(d) * xn));
    return r;
}

} // namespace cartan
