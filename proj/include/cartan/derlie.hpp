#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartan/linalg.hpp"
#include "cartan/truncpoly.hpp"

namespace cartan {

/// Element of W_n = Der(B_n), stored as the component tuple (f_1, ..., f_n)
/// of sum f_i D_i.
template <ScalarRing K>
class Derivation {
public:
    Derivation(Ambient amb, const K& zero) : amb_(amb) {
        comps_.reserve(amb.n);
        for (std::uint32_t i = 0; i < amb.n; ++i) comps_.emplace_back(amb, zero);
    }

    explicit Derivation(std::vector<TruncPoly<K>> comps) : amb_(comps.at(0).ambient()) {
        for (const auto& c : comps) require_same(amb_, c.ambient());
        if (comps.size() != amb_.n) throw DomainError("derivation needs n components");
        comps_ = std::move(comps);
    }

    /// The coordinate derivation D_(axis+1).
    static Derivation partial(Ambient amb, std::uint32_t axis, const K& one) {
        if (axis >= amb.n) throw DomainError("axis out of range");
        Derivation d(amb, one.zero());
        d.comps_[axis] = TruncPoly<K>::constant(amb, one);
        return d;
    }

    const Ambient& ambient() const { return amb_; }
    K scalar_zero() const { return comps_[0].scalar_zero(); }

    const TruncPoly<K>& component(std::uint32_t i) const { return comps_.at(i); }
    void set_component(std::uint32_t i, TruncPoly<K> f) {
        require_same(amb_, f.ambient());
        comps_.at(i) = std::move(f);
    }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Derivation& x, const Derivation& y) {
        require_same(x.amb_, y.amb_);
        for (std::uint32_t i = 0; i < x.amb_.n; ++i)
            if (!(x.comps_[i] == y.comps_[i])) return false;
        return true;
    }

    friend Derivation operator+(const Derivation& x, const Derivation& y) {
        require_same(x.amb_, y.amb_);
        Derivation r = x;
        for (std::uint32_t i = 0; i < x.amb_.n; ++i) r.comps_[i] += y.comps_[i];
        return r;
    }
    friend Derivation operator-(const Derivation& x, const Derivation& y) {
        require_same(x.amb_, y.amb_);
        Derivation r = x;
        for (std::uint32_t i = 0; i < x.amb_.n; ++i) r.comps_[i] -= y.comps_[i];
        return r;
    }
    Derivation operator-() const {
        Derivation r = *this;
        for (auto& c : r.comps_) c = -c;
        return r;
    }
    Derivation scaled(const K& s) const {
        Derivation r = *this;
        for (auto& c : r.comps_) c = c.scaled(s);
        return r;
    }
    Derivation& operator+=(const Derivation& y) { return *this = *this + y; }
    Derivation& operator-=(const Derivation& y) { return *this = *this - y; }

    /// Tautological action on B_n: x(f) = sum f_i d_i(f).
    TruncPoly<K> apply(const TruncPoly<K>& f) const {
        require_same(amb_, f.ambient());
        TruncPoly<K> r(amb_, scalar_zero());
        for (std::uint32_t i = 0; i < amb_.n; ++i) {
            if (comps_[i].is_zero()) continue;
            r += comps_[i] * f.partial_derivative(i);
        }
        return r;
    }

    std::string str() const {
        std::string out;
        for (std::uint32_t i = 0; i < amb_.n; ++i) {
            if (comps_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + comps_[i].str() + ")*D" + std::to_string(i + 1);
        }
        return out.empty() ? "0" : out;
    }

private:
    Ambient amb_;
    std::vector<TruncPoly<K>> comps_;
};

/// dim W_n = n p^n.
inline std::uint64_t witt_dim(const Ambient& amb) { return amb.n * amb.ring_dim(); }

/// Canonical basis {x^a D_i}, ordered component-major: index
/// b = i * p^n + idx(a).  This order is fixed for every coordinate and
/// ad-matrix computation.
template <ScalarRing K>
Derivation<K> witt_basis_element(const Ambient& amb, std::uint64_t b, const K& one) {
    const std::uint64_t dim = amb.ring_dim();
    if (b >= witt_dim(amb)) throw DomainError("basis index out of range");
    const std::uint32_t axis = static_cast<std::uint32_t>(b / dim);
    const std::uint64_t idx = b % dim;
    Derivation<K> d(amb, one.zero());
    TruncPoly<K> f(amb, one.zero());
    f.set_coeff(idx, one);
    d.set_component(axis, std::move(f));
    return d;
}

template <ScalarRing K>
std::vector<K> to_coords(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    const std::uint64_t dim = amb.ring_dim();
    std::vector<K> v;
    v.reserve(static_cast<std::size_t>(witt_dim(amb)));
    for (std::uint32_t i = 0; i < amb.n; ++i)
        for (std::uint64_t j = 0; j < dim; ++j) v.push_back(x.component(i).coeff(j));
    return v;
}

template <ScalarRing K>
Derivation<K> from_coords(const Ambient& amb, std::span<const K> v) {
    if (v.size() != witt_dim(amb)) throw DomainError("coordinate vector has wrong length");
    const std::uint64_t dim = amb.ring_dim();
    Derivation<K> x(amb, v[0].zero());
    for (std::uint32_t i = 0; i < amb.n; ++i) {
        TruncPoly<K> f(amb, v[0].zero());
        for (std::uint64_t j = 0; j < dim; ++j) f.set_coeff(j, v[i * dim + j]);
        x.set_component(i, std::move(f));
    }
    return x;
}

/// Commutator [x, y], computed componentwise:
/// [x, y]_j = x(g_j) - y(f_j) for y = sum g_j D_j, x = sum f_j D_j.
template <ScalarRing K>
Derivation<K> bracket(const Derivation<K>& x, const Derivation<K>& y) {
    require_same(x.ambient(), y.ambient());
    const Ambient& amb = x.ambient();
    Derivation<K> r(amb, x.scalar_zero());
    for (std::uint32_t j = 0; j < amb.n; ++j)
        r.set_component(j, x.apply(y.component(j)) - y.apply(x.component(j)));
    return r;
}

/// div(sum f_i D_i) = sum d_i(f_i).
template <ScalarRing K>
TruncPoly<K> divergence(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    TruncPoly<K> r(amb, x.scalar_zero());
    for (std::uint32_t i = 0; i < amb.n; ++i) r += x.component(i).partial_derivative(i);
    return r;
}

/// x^[p]: the p-th power of x as an operator is again a derivation; its
/// components are the p-fold applications of x to the generators.
template <ScalarRing K>
Derivation<K> p_power(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    Derivation<K> r(amb, x.scalar_zero());
    const K one = x.scalar_zero().one();
    for (std::uint32_t i = 0; i < amb.n; ++i) {
        TruncPoly<K> f = TruncPoly<K>::variable(amb, i, one);
        for (std::uint32_t k = 0; k < amb.p; ++k) f = x.apply(f);
        r.set_component(i, std::move(f));
    }
    return r;
}

/// x, x^[p], x^[p]^2, ..., x^[p]^(count-1).
template <ScalarRing K>
std::vector<Derivation<K>> p_power_iterates(const Derivation<K>& x, std::uint32_t count) {
    std::vector<Derivation<K>> out;
    out.reserve(count);
    if (count == 0) return out;
    out.push_back(x);
    for (std::uint32_t i = 1; i < count; ++i) out.push_back(p_power(out.back()));
    return out;
}

/// Matrix of the tautological action on B_n in the monomial basis
/// (column j = coordinates of x(monomial_j)).
template <ScalarRing K>
Matrix<K> rho_matrix(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    const std::uint64_t dim = amb.ring_dim();
    const K zero = x.scalar_zero();
    Matrix<K> m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim), zero);
    TruncPoly<K> mono(amb, zero);
    const K one = zero.one();
    for (std::uint64_t j = 0; j < dim; ++j) {
        mono.set_coeff(j, one);
        TruncPoly<K> img = x.apply(mono);
        mono.set_coeff(j, zero);
        for (std::uint64_t i = 0; i < dim; ++i)
            m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = img.coeff(i);
    }
    return m;
}

/// Matrix of ad x = [x, .] on the canonical basis of W_n.
template <ScalarRing K>
Matrix<K> ad_matrix(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    const std::uint64_t n_basis = witt_dim(amb);
    const K zero = x.scalar_zero();
    const K one = zero.one();
    Matrix<K> m(static_cast<std::size_t>(n_basis), static_cast<std::size_t>(n_basis), zero);
    for (std::uint64_t b = 0; b < n_basis; ++b) {
        Derivation<K> img = bracket(x, witt_basis_element(amb, b, one));
        std::vector<K> v = to_coords(img);
        for (std::uint64_t i = 0; i < n_basis; ++i)
            m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(b)) = v[i];
    }
    return m;
}

/// Basis of the x-constants B_n^x = ker rho(x), as polynomials.
template <ScalarField K>
std::vector<TruncPoly<K>> constants_subring(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    auto rk = rank_kernel(rho_matrix(x));
    std::vector<TruncPoly<K>> out;
    out.reserve(rk.kernel.size());
    for (const auto& v : rk.kernel) {
        TruncPoly<K> f(amb, x.scalar_zero());
        for (std::uint64_t j = 0; j < amb.ring_dim(); ++j) f.set_coeff(j, v[j]);
        out.push_back(std::move(f));
    }
    return out;
}

/// dim ker(ad x) on W_n.
template <ScalarField K>
std::size_t centralizer_dim(const Derivation<K>& x) {
    const std::size_t n_basis = static_cast<std::size_t>(witt_dim(x.ambient()));
    return n_basis - rank(ad_matrix(x));
}

/// Largest i with x in (W_n)_i, i.e. min_j deg f_j >= i + 1.
/// Range [-1, n(p-1) - 1]; the zero derivation has no degree.
template <ScalarRing K>
std::int32_t filtration_degree(const Derivation<K>& x) {
    if (x.is_zero()) throw DomainError("the zero derivation has no filtration degree");
    std::uint32_t least = kDegInf;
    for (std::uint32_t i = 0; i < x.ambient().n; ++i)
        least = std::min(least, x.component(i).min_degree());
    return static_cast<std::int32_t>(least) - 1;
}

/// Basis of the filtration piece (W_n)_i as canonical basis indices.
inline std::vector<std::uint64_t> filtration_basis_indices(const Ambient& amb, std::int32_t i) {
    std::vector<std::uint64_t> out;
    const std::uint64_t dim = amb.ring_dim();
    for (std::uint32_t axis = 0; axis < amb.n; ++axis)
        for (std::uint64_t idx = 0; idx < dim; ++idx)
            if (static_cast<std::int32_t>(amb.total_degree(idx)) >= i + 1)
                out.push_back(axis * dim + idx);
    return out;
}

} // namespace cartan
