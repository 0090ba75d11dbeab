#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cartan/invariants.hpp"
#include "cartan/special.hpp"

namespace cartan {

/// The chain element Delta = D_1 + x_1^(p-1) D_2 + ... +
/// x_1^(p-1)..x_(m-1)^(p-1) D_m in W_m.
template <ScalarField K>
Derivation<K> delta_element(const Ambient& amb, const K& one) {
    Derivation<K> d(amb, one.zero());
    TruncPoly<K> prefix = TruncPoly<K>::constant(amb, one);
    for (std::uint32_t i = 0; i < amb.n; ++i) {
        d.set_component(i, prefix);
        if (i + 1 < amb.n)
            prefix *= TruncPoly<K>::variable(amb, i, one).pow(amb.p - 1);
    }
    return d;
}

/// The top monomial x_1^(p-1)...x_m^(p-1) of B_m.
template <ScalarField K>
TruncPoly<K> top_monomial(const Ambient& amb, const K& one) {
    TruncPoly<K> t = TruncPoly<K>::constant(amb, one);
    for (std::uint32_t i = 0; i < amb.n; ++i)
        t *= TruncPoly<K>::variable(amb, i, one).pow(amb.p - 1);
    return t;
}

/// The slice element Delta_eps = Delta + x_1^(p-1)..x_m^(p-1) *
/// sum_i (-1)^(m+1-i) eps_i D_i in W_m, for eps in k^m (m = amb.n).
/// Its adjoint quotient is exactly eps and its constants subring is k.
template <ScalarField K>
Derivation<K> delta_eps(const Ambient& amb, std::span<const K> eps) {
    if (eps.size() != amb.n) throw DomainError("delta_eps needs one parameter per variable");
    const K one = eps[0].one();
    Derivation<K> d = delta_element(amb, one);
    TruncPoly<K> top = top_monomial(amb, one);
    for (std::uint32_t i = 0; i < amb.n; ++i) {
        if (eps[i].is_zero()) continue;
        // sign (-1)^(m+1-(i+1)) = (-1)^(m-i) with 0-based i
        K c = eps[i];
        if ((amb.n - i) % 2 == 1) c = -c;
        d.set_component(i, d.component(i) + top.scaled(c));
    }
    return d;
}

/// Recognizes x = Delta_eps and recovers eps; nullopt when x is not on the
/// slice.
template <ScalarField K>
std::optional<std::vector<K>> slice_parameters(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    const std::uint64_t top_idx = amb.ring_dim() - 1;
    std::vector<K> eps;
    eps.reserve(amb.n);
    for (std::uint32_t i = 0; i < amb.n; ++i) {
        K c = x.component(i).coeff(top_idx);
        if ((amb.n - i) % 2 == 1) c = -c;
        eps.push_back(c);
    }
    if (delta_eps<K>(amb, eps) == x) return eps;
    return std::nullopt;
}

/// Basis of K = ker(Delta acting on B_n) = span{1, x_n, ..., x_n^(p-1)},
/// and the monomial complement spanning im(Delta), validated against the
/// actual kernel/image of the action.
template <ScalarField K>
struct DeltaKernelImage {
    std::vector<TruncPoly<K>> kernel;       // 1, x_n, ..., x_n^(p-1)
    std::vector<std::uint64_t> image_monos; // monomial indices spanning the image
};

template <ScalarField K>
DeltaKernelImage<K> delta_kernel_image(const Ambient& amb, const K& one) {
    if (amb.n < 2) throw DomainError("delta kernel description needs n >= 2");
    // Delta uses only the first n-1 variables but acts on all of B_n.
    const Ambient sub(amb.p, amb.n - 1);
    Derivation<K> delta = sigma_embed(delta_element(sub, one), amb); // div = 0, so just the lift
    DeltaKernelImage<K> out;
    TruncPoly<K> xn = TruncPoly<K>::variable(amb, amb.n - 1, one);
    TruncPoly<K> pw = TruncPoly<K>::constant(amb, one);
    for (std::uint32_t e = 0; e < amb.p; ++e) {
        out.kernel.push_back(pw);
        if (e + 1 < amb.p) pw *= xn;
    }
    // displayed image: all monomials whose first n-1 exponents are not all p-1
    const std::uint64_t sub_top = sub.ring_dim() - 1;
    for (std::uint64_t idx = 0; idx < amb.ring_dim(); ++idx)
        if (idx % sub.ring_dim() != sub_top) out.image_monos.push_back(idx);
    // validate both claims against rho(Delta)
    Matrix<K> rho = rho_matrix(delta);
    auto rk = rank_kernel(rho);
    if (rk.kernel.size() != amb.p)
        throw InternalCheckError("kernel of Delta has unexpected dimension");
    SpanSolver<K> ker_span(static_cast<std::size_t>(amb.ring_dim()));
    for (const auto& f : out.kernel) ker_span.add(std::vector<K>(f.coeffs()));
    for (const auto& v : rk.kernel)
        if (!ker_span.contains(std::vector<K>(v)))
            throw InternalCheckError("kernel of Delta is not spanned by powers of x_n");
    if (rk.rank != out.image_monos.size())
        throw InternalCheckError("image of Delta has unexpected dimension");
    // image columns must lie in the span of the displayed monomials and
    // conversely fill it: compare ranks of the stacked system
    SpanSolver<K> img_span(static_cast<std::size_t>(amb.ring_dim()));
    for (std::uint64_t j = 0; j < amb.ring_dim(); ++j) {
        std::vector<K> col(static_cast<std::size_t>(amb.ring_dim()), one.zero());
        for (std::uint64_t i = 0; i < amb.ring_dim(); ++i)
            col[static_cast<std::size_t>(i)] =
                rho.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        img_span.add(std::move(col));
    }
    for (std::uint64_t mono : out.image_monos) {
        std::vector<K> e(static_cast<std::size_t>(amb.ring_dim()), one.zero());
        e[static_cast<std::size_t>(mono)] = one;
        if (!img_span.contains(std::move(e)))
            throw InternalCheckError("displayed monomial missing from the image of Delta");
    }
    return out;
}

/// The fiber family element Omega^eps_(f_1..f_(n-1)) in S_n:
/// sigma(Delta_eps) + x_1^(p-1)..x_(n-1)^(p-1) sum_i D_n(f_i) D_i
///   + x_1^(p-2)..x_(n-1)^(p-2) (sum_i x_1..f_i..x_(n-1)) D_n,
/// where each f_i is a polynomial in x_n alone with min degree >= 2.
template <ScalarField K>
Derivation<K> omega_element(const Ambient& amb, const std::vector<K>& eps,
                            const std::vector<TruncPoly<K>>& f) {
    if (amb.n < 2) throw DomainError("omega element needs n >= 2");
    const std::uint32_t m = amb.n - 1;
    if (eps.size() != m || f.size() != m)
        throw DomainError("omega element needs n-1 parameters and n-1 polynomials");
    const K one = eps[0].one();
    const K zero = one.zero();
    // validate the f_i: supported on powers of x_n only, min degree >= 2
    const std::uint64_t block = amb.ring_dim() / amb.p;
    for (const auto& fi : f) {
        require_same(amb, fi.ambient());
        for (std::uint64_t idx = 0; idx < amb.ring_dim(); ++idx) {
            if (fi.coeff(idx).is_zero()) continue;
            if (idx % block != 0 || idx / block < 2)
                throw DomainError("omega parameter must be a polynomial in x_n of degree >= 2");
        }
    }
    const Ambient sub(amb.p, m);
    std::vector<K> ev(eps.begin(), eps.end());
    Derivation<K> r = sigma_embed(delta_eps<K>(sub, ev), amb);
    // first correction: x_1^(p-1)..x_(n-1)^(p-1) D_n(f_i) D_i
    TruncPoly<K> top = TruncPoly<K>::constant(amb, one);
    for (std::uint32_t i = 0; i < m; ++i)
        top *= TruncPoly<K>::variable(amb, i, one).pow(amb.p - 1);
    for (std::uint32_t i = 0; i < m; ++i) {
        TruncPoly<K> dn = f[i].partial_derivative(amb.n - 1);
        if (dn.is_zero()) continue;
        r.set_component(i, r.component(i) + top * dn);
    }
    // second correction: x_1^(p-2)..x_(n-1)^(p-2) (sum_i prod_(l != i) x_l f_i) D_n
    TruncPoly<K> subtop = TruncPoly<K>::constant(amb, one);
    for (std::uint32_t i = 0; i < m; ++i)
        subtop *= TruncPoly<K>::variable(amb, i, one).pow(amb.p - 2);
    TruncPoly<K> sum(amb, zero);
    for (std::uint32_t i = 0; i < m; ++i) {
        TruncPoly<K> prod = f[i];
        for (std::uint32_t l = 0; l < m; ++l)
            if (l != i) prod *= TruncPoly<K>::variable(amb, l, one);
        sum += prod;
    }
    if (!sum.is_zero())
        r.set_component(amb.n - 1, r.component(amb.n - 1) + subtop * sum);
    return r;
}

template <ScalarField K>
Derivation<K> omega_element(const SnContext<K>& ctx, const std::vector<K>& eps,
                            const std::vector<TruncPoly<K>>& f) {
    return omega_element(ctx.ambient(), eps, f);
}

/// Number of free parameters of the omega family: (n-1)(p-2).
inline std::uint64_t omega_parameter_dim(const Ambient& amb) {
    return static_cast<std::uint64_t>(amb.n - 1) * (amb.p - 2);
}

/// Tangent-space decomposition at a slice point x = Delta_eps of W_m:
/// orbit tangent [(W_m)_0, x], slice tangent = the eps-coordinate
/// directions, their intersection and sum.  The direct-sum identities and
/// the triviality of ker(ad x) on (W_m)_0 are enforced.
struct TangentReport {
    std::size_t orbit_dim;
    std::size_t slice_dim;
    std::size_t intersection_dim;
    std::size_t sum_dim;
};

template <ScalarField K>
TangentReport tangent_decomposition(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    auto eps = slice_parameters(x);
    if (!eps) throw DomainError("tangent decomposition requires a slice element Delta_eps");
    const K zero = x.scalar_zero();
    const K one = zero.one();
    const std::size_t wd = static_cast<std::size_t>(witt_dim(amb));
    // orbit tangent: brackets [e_b, x] over the basis of (W_m)_0
    const auto w0 = filtration_basis_indices(amb, 0);
    Matrix<K> orbit(wd, w0.size(), zero);
    Matrix<K> ad_restricted(wd, w0.size(), zero);
    for (std::size_t c = 0; c < w0.size(); ++c) {
        Derivation<K> e = witt_basis_element(amb, w0[c], one);
        std::vector<K> v = to_coords(bracket(e, x));
        for (std::size_t i = 0; i < wd; ++i) {
            orbit.at(i, c) = v[i];
            ad_restricted.at(i, c) = -v[i]; // [x, e] = -[e, x]
        }
    }
    const std::size_t orbit_rank = rank(orbit);
    if (rank_kernel(ad_restricted).rank != w0.size())
        throw InternalCheckError("ker(ad x) meets (W_m)_0 nontrivially on the slice");
    // slice tangent: the eps-gradient directions top * (+-D_i)
    TruncPoly<K> top = top_monomial(amb, one);
    Matrix<K> slice(wd, amb.n, zero);
    for (std::uint32_t i = 0; i < amb.n; ++i) {
        Derivation<K> dir(amb, zero);
        dir.set_component(i, top);
        std::vector<K> v = to_coords(dir);
        for (std::size_t r = 0; r < wd; ++r) slice.at(r, i) = v[r];
    }
    const std::size_t slice_rank = rank(slice);
    // combined rank gives intersection via rank(A) + rank(B) - rank([A|B])
    Matrix<K> joint(wd, w0.size() + amb.n, zero);
    for (std::size_t c = 0; c < w0.size(); ++c)
        for (std::size_t i = 0; i < wd; ++i) joint.at(i, c) = orbit.at(i, c);
    for (std::uint32_t c = 0; c < amb.n; ++c)
        for (std::size_t i = 0; i < wd; ++i) joint.at(i, w0.size() + c) = slice.at(i, c);
    const std::size_t sum_rank = rank(joint);
    TangentReport rep{orbit_rank, slice_rank, orbit_rank + slice_rank - sum_rank, sum_rank};
    if (rep.intersection_dim != 0)
        throw InternalCheckError("orbit and slice tangents intersect nontrivially");
    if (rep.sum_dim != wd)
        throw InternalCheckError("orbit and slice tangents do not fill W_m");
    return rep;
}

} // namespace cartan
