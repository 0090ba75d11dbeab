#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartan/derlie.hpp"
#include "cartan/special.hpp"

namespace cartan {

namespace detail {

/// Exponents p^0, ..., p^n.
inline std::vector<std::uint64_t> p_power_slots(const Ambient& amb) {
    std::vector<std::uint64_t> s(amb.n + 1);
    s[0] = 1;
    for (std::uint32_t i = 1; i <= amb.n; ++i) s[i] = s[i - 1] * amb.p;
    return s;
}

} // namespace detail

/// Extracts (phi_0, ..., phi_(n-1)) from an ascending monic charpoly of
/// rho(x), checking the p-polynomial support
/// P(t) = t^(p^n) - sum phi_i t^(p^i).  A nonzero coefficient anywhere else
/// signals an implementation bug and throws InternalCheckError.
template <ScalarRing K>
std::vector<K> extract_p_poly_coeffs(const Ambient& amb, const std::vector<K>& cp) {
    const auto slots = detail::p_power_slots(amb);
    if (cp.size() != slots[amb.n] + 1)
        throw InternalCheckError("characteristic polynomial has wrong degree");
    std::vector<K> phis;
    phis.reserve(amb.n);
    std::size_t next_slot = 0;
    for (std::uint64_t k = 0; k < slots[amb.n]; ++k) {
        const bool is_slot = next_slot <= amb.n && slots[next_slot] == k;
        if (is_slot) {
            phis.push_back(-cp[static_cast<std::size_t>(k)]);
            ++next_slot;
        } else if (!cp[static_cast<std::size_t>(k)].is_zero()) {
            throw InternalCheckError("characteristic polynomial is not a p-polynomial: t^" +
                                     std::to_string(k) + " has a nonzero coefficient");
        }
    }
    if (!cp.back().is_one())
        throw InternalCheckError("characteristic polynomial is not monic");
    return phis;
}

/// The invariants (phi_0(x), ..., phi_(n-1)(x)): coefficients of the
/// characteristic p-polynomial of the tautological action.
template <ScalarField K>
std::vector<K> phi_vector(const Derivation<K>& x) {
    return extract_p_poly_coeffs(x.ambient(), charpoly_hessenberg(rho_matrix(x)));
}

/// Adjoint quotient of W_n: x |-> (phi_0(x), ..., phi_(n-1)(x)).
template <ScalarField K>
std::vector<K> quotient_w(const Derivation<K>& x) {
    return phi_vector(x);
}

/// Adjoint quotient of S_n: x |-> (phi_1^(1/p)(x), ..., phi_(n-1)^(1/p)(x)).
/// Requires x to be in S_n; phi_0(x) != 0 would falsify the vanishing
/// theorem for S_n and throws InternalCheckError.
template <ScalarField K>
std::vector<K> quotient_s(const SnContext<K>& ctx, const Derivation<K>& x) {
    if (ctx.classify(x) != SnMembership::InSn)
        throw DomainError("quotient_s requires an element of S_n");
    std::vector<K> phis = phi_vector(x);
    if (!phis[0].is_zero())
        throw InternalCheckError("phi_0 does not vanish on an S_n element");
    std::vector<K> out;
    out.reserve(phis.size() - 1);
    for (std::size_t i = 1; i < phis.size(); ++i) out.push_back(frobenius_pth_root(phis[i]));
    return out;
}

/// Directional derivatives ((dphi_0)_x(y), ..., (dphi_(n-1))_x(y)), computed
/// exactly as the eps-parts of the division-free characteristic polynomial of
/// rho(x) + eps rho(y) over the dual numbers.  A nonzero eps-part at a
/// non-p-power slot throws InternalCheckError.
template <ScalarField K>
std::vector<K> phi_differential(const Derivation<K>& x, const Derivation<K>& y) {
    require_same(x.ambient(), y.ambient());
    const Ambient& amb = x.ambient();
    const K zero = x.scalar_zero();
    Matrix<K> ax = rho_matrix(x), ay = rho_matrix(y);
    const std::size_t d = ax.rows();
    Matrix<Dual<K>> m(d, d, Dual<K>(zero, zero));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m.at(i, j) = Dual<K>(ax.at(i, j), ay.at(i, j));
    std::vector<Dual<K>> cp = charpoly_berkowitz(m);
    // the real parts form charpoly(rho x); shape-check them together with the
    // eps parts by splitting the dual polynomial
    std::vector<K> re(cp.size(), zero), ep(cp.size(), zero);
    for (std::size_t k = 0; k < cp.size(); ++k) {
        re[k] = cp[k].re;
        ep[k] = cp[k].ep;
    }
    (void)extract_p_poly_coeffs(amb, re);
    const auto slots = detail::p_power_slots(amb);
    std::vector<K> out;
    out.reserve(amb.n);
    std::size_t next_slot = 0;
    for (std::uint64_t k = 0; k < slots[amb.n]; ++k) {
        if (next_slot <= amb.n && slots[next_slot] == k) {
            out.push_back(-ep[static_cast<std::size_t>(k)]);
            ++next_slot;
        } else if (!ep[static_cast<std::size_t>(k)].is_zero()) {
            throw InternalCheckError(
                "directional derivative of a structurally zero coefficient is nonzero at t^" +
                std::to_string(k));
        }
    }
    if (!ep.back().is_zero())
        throw InternalCheckError("leading coefficient acquired an eps part");
    return out;
}

/// The full n x (n p^n) matrix J[i][b] = (dphi_i)_x(e_b) over the canonical
/// basis of W_n.  Algebraically this stacks phi_differential over all basis
/// directions; it is computed in one pass from the adjugate of tI - rho(x):
/// (dphi_i)_x(B) = tr(Q_(p^i) rho(B)), and rho(e_b) is sparse.
template <ScalarField K>
Matrix<K> phi_jacobian(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    const K zero = x.scalar_zero();
    auto adj = charpoly_adjugate(rho_matrix(x));
    (void)extract_p_poly_coeffs(amb, adj.charpoly);
    const auto slots = detail::p_power_slots(amb);
    const std::uint64_t rd = amb.ring_dim(), wd = witt_dim(amb);
    Matrix<K> jac(amb.n, static_cast<std::size_t>(wd), zero);
    const std::vector<std::uint8_t> digits = amb.digit_table();
    std::vector<std::uint64_t> weight(amb.n);
    {
        std::uint64_t w = 1;
        for (std::uint32_t i = 0; i < amb.n; ++i) {
            weight[i] = w;
            w *= amb.p;
        }
    }
    for (std::uint32_t axis = 0; axis < amb.n; ++axis) {
        for (std::uint64_t aidx = 0; aidx < rd; ++aidx) {
            const std::uint64_t b = axis * rd + aidx;
            const std::uint8_t* da = digits.data() + static_cast<std::size_t>(aidx) * amb.n;
            // rho(x^a D_axis)[gamma][beta] = beta_axis at
            // gamma = idx(a + beta - e_axis) whenever the digits fit.
            for (std::uint32_t i = 0; i < amb.n; ++i) {
                const Matrix<K>& q = adj.adjugate[static_cast<std::size_t>(slots[i])];
                K acc = zero;
                for (std::uint64_t beta = 0; beta < rd; ++beta) {
                    const std::uint8_t* db =
                        digits.data() + static_cast<std::size_t>(beta) * amb.n;
                    const std::uint8_t be = db[axis];
                    if (be == 0) continue;
                    bool ok = true;
                    for (std::uint32_t l = 0; l < amb.n; ++l) {
                        const std::uint32_t sum = static_cast<std::uint32_t>(da[l]) + db[l] -
                                                  (l == axis ? 1u : 0u);
                        if (sum >= amb.p) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) continue;
                    const std::uint64_t gamma = aidx + beta - weight[axis];
                    K val = zero;
                    for (std::uint8_t t = 0; t < be; ++t) val += zero.one();
                    acc += q.at(static_cast<std::size_t>(beta), static_cast<std::size_t>(gamma)) *
                           val;
                }
                jac.at(i, static_cast<std::size_t>(b)) = acc;
            }
        }
    }
    return jac;
}

/// The reduced adjoint operator applied to y:
/// (ad x)^(p^n - 1)(y) - sum phi_i(x) (ad x)^(p^i - 1)(y),
/// evaluated by iterated brackets (no matrices).
template <ScalarField K>
Derivation<K> adjoint_reduced_apply(const Derivation<K>& x, const Derivation<K>& y) {
    require_same(x.ambient(), y.ambient());
    const Ambient& amb = x.ambient();
    const auto slots = detail::p_power_slots(amb);
    const std::vector<K> phis = phi_vector(x);
    Derivation<K> cur = y; // (ad x)^0 (y)
    Derivation<K> acc(amb, x.scalar_zero());
    std::size_t next = 0;
    for (std::uint64_t k = 0;; ++k) {
        if (next < amb.n && k == slots[next] - 1) {
            acc -= cur.scaled(phis[next]);
            ++next;
        }
        if (k == slots[amb.n] - 1) {
            acc += cur;
            break;
        }
        cur = bracket(x, cur);
    }
    return acc;
}

/// Same operator as a matrix on W_n, assembled from powers of the ad matrix.
template <ScalarField K>
Matrix<K> adjoint_reduced_matrix(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    const auto slots = detail::p_power_slots(amb);
    const std::vector<K> phis = phi_vector(x);
    Matrix<K> ad = ad_matrix(x);
    Matrix<K> acc = mat_power(ad, slots[amb.n] - 1);
    for (std::uint32_t i = 0; i < amb.n; ++i)
        acc -= mat_power(ad, slots[i] - 1).scaled(phis[i]);
    return acc;
}

/// dim of the image of the reduced adjoint operator; equals n exactly on the
/// regular locus.
template <ScalarField K>
std::size_t adjoint_reduced_image_dim(const Derivation<K>& x) {
    return rank(adjoint_reduced_matrix(x));
}

struct Regularity {
    bool trivial_constants;        // U_1: B_n^x = k
    bool minimal_centralizer;      // U_2: dim ker(ad x) = n
    bool independent_differentials; // U_3: rank of the invariant jacobian = n
};

/// Computes all three regularity flags independently and enforces the proven
/// equality U_1 = U_3 (violation = implementation bug -> InternalCheckError).
/// U_2 is returned for the caller to record; the U_1 = U_2 coincidence is
/// established externally and is reported, not enforced.
template <ScalarField K>
Regularity regularity_classify(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    const std::size_t d = static_cast<std::size_t>(amb.ring_dim());
    Regularity r{};
    r.trivial_constants = rank(rho_matrix(x)) == d - 1;
    r.minimal_centralizer = centralizer_dim(x) == amb.n;
    r.independent_differentials = rank(phi_jacobian(x)) == amb.n;
    if (r.trivial_constants != r.independent_differentials)
        throw InternalCheckError("regularity flags U_1 and U_3 disagree");
    return r;
}

/// x is p-nilpotent iff the n-fold p-power iterate vanishes.
template <ScalarRing K>
bool is_nilpotent(const Derivation<K>& x) {
    Derivation<K> y = x;
    for (std::uint32_t i = 0; i < x.ambient().n; ++i) {
        if (y.is_zero()) return true;
        y = p_power(y);
    }
    return y.is_zero();
}

/// Semisimplicity in the restricted sense: x lies in the span of its own
/// iterated p-powers starting at exponent 1.
template <ScalarField K>
bool is_semisimple(const Derivation<K>& x) {
    if (x.is_zero()) return true;
    const Ambient& amb = x.ambient();
    SpanSolver<K> span(static_cast<std::size_t>(witt_dim(amb)));
    Derivation<K> it = x;
    for (std::uint32_t j = 0; j + 1 <= amb.n + 1; ++j) {
        it = p_power(it);
        if (!span.add(to_coords(it))) break;
    }
    return span.contains(to_coords(x));
}

/// Jordan-Chevalley decomposition x = x_s + x_n.  The semisimple part of
/// rho(x) is obtained as a polynomial in rho(x) by Newton iteration against
/// the radical of the characteristic polynomial, pulled back to a derivation
/// by reading generator images, and fully validated.
template <ScalarField K>
std::pair<Derivation<K>, Derivation<K>> jordan_chevalley(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    const K zero = x.scalar_zero();
    Matrix<K> m = rho_matrix(x);
    const std::size_t d = m.rows();
    std::vector<K> chi = charpoly_hessenberg(m);
    std::vector<K> f = upoly::radical(chi, zero);
    std::vector<K> df = upoly::derivative(f, zero);
    Matrix<K> s = m;
    bool converged = false;
    for (std::size_t it = 0; it < 2 + 8 * sizeof(std::size_t) && !converged; ++it) {
        Matrix<K> fs = upoly::eval_matrix(f, s);
        if (fs.is_zero()) {
            converged = true;
            break;
        }
        Matrix<K> fds = upoly::eval_matrix(df, s);
        s = s - matrix_inverse(fds) * fs;
    }
    if (!converged) throw InternalCheckError("Jordan-Chevalley iteration did not converge");
    // pull back: components are the images of the generators under s
    Derivation<K> xs(amb, zero);
    for (std::uint32_t i = 0; i < amb.n; ++i) {
        std::uint64_t gen = 1;
        for (std::uint32_t t = 0; t < i; ++t) gen *= amb.p;
        TruncPoly<K> comp(amb, zero);
        for (std::size_t r = 0; r < d; ++r)
            comp.set_coeff(r, s.at(r, static_cast<std::size_t>(gen)));
        xs.set_component(i, std::move(comp));
    }
    Derivation<K> xn = x - xs;
    if (!(rho_matrix(xs) == s))
        throw InternalCheckError("semisimple part is not a derivation");
    if (!bracket(xs, xn).is_zero())
        throw InternalCheckError("Jordan-Chevalley parts do not commute");
    if (!is_nilpotent(xn)) throw InternalCheckError("nilpotent part is not nilpotent");
    if (!is_semisimple(xs)) throw InternalCheckError("semisimple part is not semisimple");
    return {std::move(xs), std::move(xn)};
}

/// Minimal p-polynomial of x: the least r with x^[p]^r in the span of the
/// earlier iterates, together with the dependency coefficients:
/// x^[p]^r = sum_(i<r) coeffs[i] x^[p]^i.
template <ScalarField K>
struct PPolynomial {
    std::uint32_t degree_exp; // r: the polynomial is t^(p^r) - sum c_i t^(p^i)
    std::vector<K> coeffs;    // c_0, ..., c_(r-1)
};

template <ScalarField K>
PPolynomial<K> minimal_p_polynomial(const Derivation<K>& x) {
    const Ambient& amb = x.ambient();
    SpanSolver<K> span(static_cast<std::size_t>(witt_dim(amb)));
    Derivation<K> it = x;
    for (std::uint32_t r = 0;; ++r) {
        std::vector<K> v = to_coords(it);
        if (auto coords = span.coordinates(v)) return {r, std::move(*coords)};
        span.add(std::move(v));
        it = p_power(it);
        if (r > amb.n + 2)
            throw InternalCheckError("minimal p-polynomial exceeds the ambient bound");
    }
}

} // namespace cartan
