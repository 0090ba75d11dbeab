#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cartan/derlie.hpp"
#include "cartan/invariants.hpp"

namespace cartan {

/// Algebra automorphism of B_n, stored as the images of the generators
/// (each in the maximal ideal, with invertible linear part) together with
/// the cached inverse images.
template <ScalarField K>
class Automorphism {
public:
    /// Validates and inverts.  The inverse is found by the graded
    /// fixed-point iteration u <- L^(-1)(x - h(u)), which terminates exactly
    /// because the higher-degree part h is nilpotent; at most n(p-1)+1
    /// rounds are ever needed.
    explicit Automorphism(std::vector<TruncPoly<K>> images)
        : amb_(images.at(0).ambient()), img_(std::move(images)) {
        const K zero = img_[0].scalar_zero();
        const K one = zero.one();
        if (img_.size() != amb_.n) throw DomainError("automorphism needs n generator images");
        for (const auto& f : img_) {
            require_same(amb_, f.ambient());
            if (!f.constant_term().is_zero())
                throw DomainError("generator image has a nonzero constant term");
        }
        // linear part
        Matrix<K> lin(amb_.n, amb_.n, zero);
        std::vector<std::uint64_t> weight(amb_.n);
        {
            std::uint64_t w = 1;
            for (std::uint32_t i = 0; i < amb_.n; ++i) {
                weight[i] = w;
                w *= amb_.p;
            }
        }
        for (std::uint32_t j = 0; j < amb_.n; ++j)
            for (std::uint32_t i = 0; i < amb_.n; ++i)
                lin.at(i, j) = img_[j].coeff(weight[i]);
        Matrix<K> lin_inv(0, 0, zero);
        try {
            lin_inv = matrix_inverse(lin);
        } catch (const DomainError&) {
            throw DomainError("linear part of the automorphism is singular");
        }
        // higher-degree parts h_j = img_j - linear part
        std::vector<TruncPoly<K>> h;
        h.reserve(amb_.n);
        for (std::uint32_t j = 0; j < amb_.n; ++j) {
            TruncPoly<K> hj = img_[j];
            for (std::uint32_t i = 0; i < amb_.n; ++i)
                hj.set_coeff(weight[i], zero);
            h.push_back(std::move(hj));
        }
        // solving L^T u = x - h(u): lin[i][j] is the x_i coefficient of the
        // j-th image, so the substitution condition contracts over the first
        // index and the inverse applies transposed
        auto apply_lin_inv = [&](const std::vector<TruncPoly<K>>& v) {
            std::vector<TruncPoly<K>> out;
            out.reserve(amb_.n);
            for (std::uint32_t i = 0; i < amb_.n; ++i) {
                TruncPoly<K> acc(amb_, zero);
                for (std::uint32_t j = 0; j < amb_.n; ++j)
                    if (!lin_inv.at(j, i).is_zero()) acc += v[j].scaled(lin_inv.at(j, i));
                out.push_back(std::move(acc));
            }
            return out;
        };
        // seed: u = L^(-1) x
        std::vector<TruncPoly<K>> xs;
        for (std::uint32_t i = 0; i < amb_.n; ++i)
            xs.push_back(TruncPoly<K>::variable(amb_, i, one));
        std::vector<TruncPoly<K>> u = apply_lin_inv(xs);
        const std::uint32_t max_rounds = amb_.max_total_degree() + 1;
        bool fixed = false;
        for (std::uint32_t round = 0; round < max_rounds && !fixed; ++round) {
            std::vector<TruncPoly<K>> rhs;
            rhs.reserve(amb_.n);
            for (std::uint32_t j = 0; j < amb_.n; ++j)
                rhs.push_back(xs[j] - substitute<K>(h[j], u));
            std::vector<TruncPoly<K>> next = apply_lin_inv(rhs);
            fixed = true;
            for (std::uint32_t j = 0; j < amb_.n; ++j)
                if (!(next[j] == u[j])) {
                    fixed = false;
                    break;
                }
            u = std::move(next);
        }
        inv_img_ = std::move(u);
        // full validation: both compositions fix the generators
        for (std::uint32_t j = 0; j < amb_.n; ++j) {
            if (!(substitute<K>(img_[j], inv_img_) == xs[j]) ||
                !(substitute<K>(inv_img_[j], img_) == xs[j]))
                throw InternalCheckError("automorphism inversion failed to validate");
        }
    }

    static Automorphism identity(Ambient amb, const K& one) {
        std::vector<TruncPoly<K>> imgs;
        for (std::uint32_t i = 0; i < amb.n; ++i)
            imgs.push_back(TruncPoly<K>::variable(amb, i, one));
        return Automorphism(std::move(imgs));
    }

    /// Diagonal scaling x_(axis+1) |-> c * x_(axis+1).
    static Automorphism scaling(Ambient amb, std::uint32_t axis, const K& c) {
        if (c.is_zero()) throw DomainError("scaling by zero is not invertible");
        std::vector<TruncPoly<K>> imgs;
        for (std::uint32_t i = 0; i < amb.n; ++i) {
            TruncPoly<K> v = TruncPoly<K>::variable(amb, i, c.one());
            imgs.push_back(i == axis ? v.scaled(c) : v);
        }
        return Automorphism(std::move(imgs));
    }

    /// Transposition x_a <-> x_b.
    static Automorphism swap_axes(Ambient amb, std::uint32_t a, std::uint32_t b, const K& one) {
        std::vector<TruncPoly<K>> imgs;
        for (std::uint32_t i = 0; i < amb.n; ++i) {
            std::uint32_t target = i == a ? b : (i == b ? a : i);
            imgs.push_back(TruncPoly<K>::variable(amb, target, one));
        }
        return Automorphism(std::move(imgs));
    }

    const Ambient& ambient() const { return amb_; }
    const std::vector<TruncPoly<K>>& images() const { return img_; }
    const std::vector<TruncPoly<K>>& inverse_images() const { return inv_img_; }

    Automorphism inverse() const {
        Automorphism g = *this;
        std::swap(g.img_, g.inv_img_);
        return g;
    }

    /// phi(f): substitute the generator images into f.
    TruncPoly<K> apply(const TruncPoly<K>& f) const { return substitute<K>(f, img_); }
    TruncPoly<K> apply_inverse(const TruncPoly<K>& f) const {
        return substitute<K>(f, inv_img_);
    }

    /// Composition (g o h)(f) = g(h(f)).
    friend Automorphism compose(const Automorphism& g, const Automorphism& h) {
        require_same(g.amb_, h.amb_);
        std::vector<TruncPoly<K>> imgs;
        imgs.reserve(g.amb_.n);
        for (std::uint32_t i = 0; i < g.amb_.n; ++i) imgs.push_back(g.apply(h.img_[i]));
        return Automorphism(std::move(imgs));
    }

    friend bool operator==(const Automorphism& g, const Automorphism& h) {
        require_same(g.amb_, h.amb_);
        for (std::uint32_t i = 0; i < g.amb_.n; ++i)
            if (!(g.img_[i] == h.img_[i])) return false;
        return true;
    }

private:
    Ambient amb_;
    std::vector<TruncPoly<K>> img_;
    std::vector<TruncPoly<K>> inv_img_;
};

/// Induced action on W_n: g(D) = phi o D o phi^(-1), computed through the
/// inverse coordinate images: g(D)(x_i) = phi(D(phi^(-1)(x_i))).
template <ScalarField K>
Derivation<K> act(const Automorphism<K>& g, const Derivation<K>& d) {
    require_same(g.ambient(), d.ambient());
    const Ambient& amb = g.ambient();
    Derivation<K> r(amb, d.scalar_zero());
    for (std::uint32_t i = 0; i < amb.n; ++i)
        r.set_component(i, g.apply(d.apply(g.inverse_images()[i])));
    return r;
}

/// Jacobian determinant det(d_i phi(x_j)) in B_n, by permutation expansion
/// (n is tiny at desk scale).
template <ScalarField K>
TruncPoly<K> jacobian_det(const Automorphism<K>& g) {
    const Ambient& amb = g.ambient();
    const K zero = g.images()[0].scalar_zero();
    std::vector<std::vector<TruncPoly<K>>> jac;
    jac.reserve(amb.n);
    for (std::uint32_t i = 0; i < amb.n; ++i) {
        std::vector<TruncPoly<K>> row;
        row.reserve(amb.n);
        for (std::uint32_t j = 0; j < amb.n; ++j)
            row.push_back(g.images()[j].partial_derivative(i));
        jac.push_back(std::move(row));
    }
    TruncPoly<K> det(amb, zero);
    std::vector<std::uint32_t> perm(amb.n);
    for (std::uint32_t i = 0; i < amb.n; ++i) perm[i] = i;
    // iterate permutations with parity tracking
    bool odd = false;
    while (true) {
        TruncPoly<K> term = jac[0][perm[0]];
        for (std::uint32_t i = 1; i < amb.n; ++i) term *= jac[i][perm[i]];
        det += odd ? -term : term;
        // next permutation + parity (std::next_permutation parity flips are
        // tracked by counting the reversal length)
        std::uint32_t i = amb.n;
        if (amb.n >= 2) {
            i = amb.n - 1;
            while (i > 0 && perm[i - 1] >= perm[i]) --i;
        } else {
            i = 0;
        }
        if (i == 0) break;
        std::uint32_t j = amb.n - 1;
        while (perm[j] <= perm[i - 1]) --j;
        std::swap(perm[i - 1], perm[j]);
        std::uint32_t len = amb.n - i;
        for (std::uint32_t a = i, b = amb.n - 1; a < b; ++a, --b) std::swap(perm[a], perm[b]);
        // one swap plus floor(len/2) reversal swaps
        if ((1 + len / 2) % 2 == 1) odd = !odd;
    }
    return det;
}

/// Special automorphisms are exactly those whose Jacobian determinant is a
/// nonzero constant; they are the ones stabilizing S_n.
template <ScalarField K>
bool is_special(const Automorphism<K>& g) {
    TruncPoly<K> det = jacobian_det(g);
    if (det.constant_term().is_zero()) return false;
    TruncPoly<K> c = TruncPoly<K>::constant(g.ambient(), det.constant_term());
    return det == c;
}

/// Result of the one-parameter degeneration of an S_n element whose
/// normalized last component is divisible by x_n.  The family follows the
/// substitution f_i(x_1..x_(n-1), c x_n) for i < n and
/// sum_j f_(n,j) c^(j-1) x_n^j for the last component; it coincides with
/// conjugation by the scaling x_n |-> c x_n for c != 0, and `limit` is the
/// formal c = 0 member.
template <ScalarField K>
struct Degeneration {
    std::uint32_t axis;        // the axis that carried the divisibility (0-based)
    Derivation<K> normalized;  // input after the axis <-> n swap
    Derivation<K> limit;       // c = 0 member, equals sigma(delta1)
    Derivation<K> delta1;      // truncation of the first n-1 components at x_n = 0

    Derivation<K> at(const K& c) const;
};

namespace detail {

/// Partial substitution x_n -> c * x_n.
template <ScalarField K>
TruncPoly<K> scale_last_variable(const TruncPoly<K>& f, const K& c) {
    const Ambient& amb = f.ambient();
    TruncPoly<K> r = f;
    const std::uint64_t block = amb.ring_dim() / amb.p;
    for (std::uint64_t idx = 0; idx < amb.ring_dim(); ++idx) {
        const std::uint32_t e = static_cast<std::uint32_t>(idx / block);
        if (e == 0) continue;
        r.set_coeff(idx, r.coeff(idx) * c.pow(e));
    }
    return r;
}

} // namespace detail

template <ScalarField K>
Derivation<K> Degeneration<K>::at(const K& c) const {
    const Ambient& amb = normalized.ambient();
    Derivation<K> r(amb, normalized.scalar_zero());
    for (std::uint32_t i = 0; i + 1 < amb.n; ++i)
        r.set_component(i, detail::scale_last_variable(normalized.component(i), c));
    // last component: x_n^j coefficient picks up c^(j-1)
    const std::uint64_t block = amb.ring_dim() / amb.p;
    TruncPoly<K> last = normalized.component(amb.n - 1);
    TruncPoly<K> out(amb, normalized.scalar_zero());
    for (std::uint64_t idx = 0; idx < amb.ring_dim(); ++idx) {
        const std::uint32_t e = static_cast<std::uint32_t>(idx / block);
        if (last.coeff(idx).is_zero()) continue;
        if (e == 0) throw InternalCheckError("normalized component not divisible by x_n");
        out.set_coeff(idx, last.coeff(idx) * c.pow(e - 1));
    }
    r.set_component(amb.n - 1, std::move(out));
    return r;
}

/// True iff every monomial of f has positive exponent at `axis`.
template <ScalarRing K>
bool variable_divides(const TruncPoly<K>& f, std::uint32_t axis) {
    const Ambient& amb = f.ambient();
    std::uint64_t w = 1;
    for (std::uint32_t i = 0; i < axis; ++i) w *= amb.p;
    for (std::uint64_t idx = 0; idx < amb.ring_dim(); ++idx)
        if (!f.coeff(idx).is_zero() && (idx / w) % amb.p == 0) return false;
    return true;
}

/// Degeneration of x = sum f_i D_i in S_n along an axis with x_axis | f_axis.
/// When no axis is given, the first admissible one is used; if none is
/// admissible a DomainError is raised.
template <ScalarField K>
Degeneration<K> degeneration_family(const Derivation<K>& x,
                                    std::optional<std::uint32_t> axis = std::nullopt) {
    const Ambient& amb = x.ambient();
    if (amb.n < 2) throw DomainError("degeneration needs at least two variables");
    const K zero = x.scalar_zero();
    const K one = zero.one();
    std::uint32_t i0 = amb.n;
    if (axis) {
        if (*axis >= amb.n) throw DomainError("axis out of range");
        if (!variable_divides(x.component(*axis), *axis))
            throw DomainError("divisibility hypothesis fails at the requested axis");
        i0 = *axis;
    } else {
        for (std::uint32_t i = 0; i < amb.n; ++i)
            if (variable_divides(x.component(i), i)) {
                i0 = i;
                break;
            }
        if (i0 == amb.n)
            throw DomainError("divisibility hypothesis fails at every axis");
    }
    Derivation<K> xn = x;
    if (i0 != amb.n - 1) xn = act(Automorphism<K>::swap_axes(amb, i0, amb.n - 1, one), x);
    Degeneration<K> out{i0, xn, Derivation<K>(amb, zero),
                        Derivation<K>(Ambient(amb.p, amb.n - 1), zero)};
    // delta1 = sum_(i<n) f_i(x_1..x_(n-1), 0) D_i in W_(n-1)
    const Ambient sub(amb.p, amb.n - 1);
    const std::uint64_t sub_dim = sub.ring_dim();
    for (std::uint32_t i = 0; i + 1 < amb.n; ++i) {
        TruncPoly<K> f(sub, zero);
        for (std::uint64_t idx = 0; idx < sub_dim; ++idx)
            f.set_coeff(idx, xn.component(i).coeff(idx));
        out.delta1.set_component(i, std::move(f));
    }
    // formal c = 0 member: f_i(.., 0) D_i + f_(n,1) x_n D_n
    out.limit = out.at(zero);
    return out;
}

} // namespace cartan
