#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cartan/error.hpp"
#include "cartan/ffield.hpp"

namespace cartan {

/// Degree of the zero polynomial; strictly larger than any attainable
/// total degree n(p-1).
inline constexpr std::uint32_t kDegInf = std::numeric_limits<std::uint32_t>::max();

/// Ambient parameters (p, n) of the truncated polynomial ring
/// B_n = k[x_1..x_n]/(x_1^p..x_n^p).  Monomials are indexed by the
/// mixed-radix value idx(a) = sum a_i p^(i-1), x_1 varying fastest.
struct Ambient {
    std::uint32_t p = 0;
    std::uint32_t n = 0;

    Ambient(std::uint32_t p_, std::uint32_t n_) : p(p_), n(n_) {
        require_valid_characteristic(p);
        if (n < 1) throw DomainError("ambient needs n >= 1");
        std::uint64_t d = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            d *= p;
            if (d > kMaxRingDim) throw DomainError("ambient too large: p^n exceeds desk scale");
        }
        dim_ = d;
    }

    static constexpr std::uint64_t kMaxRingDim = 1 << 20;

    std::uint64_t ring_dim() const { return dim_; }
    std::uint32_t max_total_degree() const { return n * (p - 1); }

    bool operator==(const Ambient& o) const { return p == o.p && n == o.n; }
    bool operator!=(const Ambient& o) const { return !(*this == o); }

    void exponents_into(std::uint64_t idx, std::uint8_t* out) const {
        for (std::uint32_t i = 0; i < n; ++i) {
            out[i] = static_cast<std::uint8_t>(idx % p);
            idx /= p;
        }
    }

    std::vector<std::uint8_t> exponents(std::uint64_t idx) const {
        std::vector<std::uint8_t> e(n);
        exponents_into(idx, e.data());
        return e;
    }

    std::uint64_t index_of(std::span<const std::uint8_t> exps) const {
        if (exps.size() != n) throw DomainError("exponent tuple has wrong length");
        std::uint64_t idx = 0, w = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (exps[i] >= p) throw DomainError("exponent out of range");
            idx += w * exps[i];
            w *= p;
        }
        return idx;
    }

    std::uint32_t total_degree(std::uint64_t idx) const {
        std::uint32_t d = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            d += static_cast<std::uint32_t>(idx % p);
            idx /= p;
        }
        return d;
    }

    /// Flat n*p^n table of all digit expansions, row idx = exponents(idx).
    std::vector<std::uint8_t> digit_table() const {
        std::vector<std::uint8_t> t(static_cast<std::size_t>(dim_) * n);
        for (std::uint64_t idx = 0; idx < dim_; ++idx)
            exponents_into(idx, t.data() + static_cast<std::size_t>(idx) * n);
        return t;
    }

    std::string str() const { return "(p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")"; }

private:
    std::uint64_t dim_ = 0;
};

inline void require_same(const Ambient& a, const Ambient& b) {
    if (a != b) throw MismatchError("ambient mismatch: " + a.str() + " vs " + b.str());
}

/// Dense element of B_n: full coefficient array of length p^n in mixed-radix
/// index order.
template <ScalarRing K>
class TruncPoly {
public:
    TruncPoly(Ambient amb, const K& zero)
        : amb_(amb), c_(static_cast<std::size_t>(amb.ring_dim()), zero) {}

    static TruncPoly constant(Ambient amb, const K& value) {
        TruncPoly f(amb, value.zero());
        f.c_[0] = value;
        return f;
    }

    static TruncPoly variable(Ambient amb, std::uint32_t axis, const K& one) {
        if (axis >= amb.n) throw DomainError("axis out of range");
        TruncPoly f(amb, one.zero());
        std::uint64_t w = 1;
        for (std::uint32_t i = 0; i < axis; ++i) w *= amb.p;
        f.c_[static_cast<std::size_t>(w)] = one;
        return f;
    }

    static TruncPoly monomial(Ambient amb, std::span<const std::uint8_t> exps, const K& value) {
        TruncPoly f(amb, value.zero());
        f.c_[static_cast<std::size_t>(amb.index_of(exps))] = value;
        return f;
    }

    const Ambient& ambient() const { return amb_; }
    K scalar_zero() const { return c_[0].zero(); }

    const K& coeff(std::uint64_t idx) const { return c_.at(static_cast<std::size_t>(idx)); }
    void set_coeff(std::uint64_t idx, const K& v) { c_.at(static_cast<std::size_t>(idx)) = v; }
    const std::vector<K>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!v.is_zero()) return false;
        return true;
    }

    const K& constant_term() const { return c_[0]; }

    /// Minimal total degree over monomials with nonzero coefficient;
    /// kDegInf for the zero polynomial.
    std::uint32_t min_degree() const {
        std::uint32_t best = kDegInf;
        for (std::uint64_t i = 0; i < amb_.ring_dim(); ++i)
            if (!c_[static_cast<std::size_t>(i)].is_zero()) {
                std::uint32_t d = amb_.total_degree(i);
                if (d < best) best = d;
                if (best == 0) return 0;
            }
        return best;
    }

    friend TruncPoly operator+(const TruncPoly& a, const TruncPoly& b) {
        require_same(a.amb_, b.amb_);
        TruncPoly r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend TruncPoly operator-(const TruncPoly& a, const TruncPoly& b) {
        require_same(a.amb_, b.amb_);
        TruncPoly r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    TruncPoly operator-() const {
        TruncPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    TruncPoly scaled(const K& s) const {
        TruncPoly r = *this;
        for (auto& v : r.c_) v = v * s;
        return r;
    }

    TruncPoly& operator+=(const TruncPoly& b) { return *this = *this + b; }
    TruncPoly& operator-=(const TruncPoly& b) { return *this = *this - b; }

    friend bool operator==(const TruncPoly& a, const TruncPoly& b) {
        require_same(a.amb_, b.amb_);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    /// Truncating product: any monomial with some exponent >= p vanishes.
    friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
        require_same(a.amb_, b.amb_);
        const Ambient& amb = a.amb_;
        const std::uint32_t n = amb.n, p = amb.p;
        const std::uint64_t dim = amb.ring_dim();
        TruncPoly r(amb, a.zc());
        const std::vector<std::uint8_t> digits = amb.digit_table();
        for (std::uint64_t ia = 0; ia < dim; ++ia) {
            const K& ca = a.c_[static_cast<std::size_t>(ia)];
            if (ca.is_zero()) continue;
            const std::uint8_t* da = digits.data() + static_cast<std::size_t>(ia) * n;
            for (std::uint64_t ib = 0; ib < dim; ++ib) {
                const K& cb = b.c_[static_cast<std::size_t>(ib)];
                if (cb.is_zero()) continue;
                const std::uint8_t* db = digits.data() + static_cast<std::size_t>(ib) * n;
                bool ok = true;
                for (std::uint32_t k = 0; k < n; ++k)
                    if (da[k] + db[k] >= p) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                // no digit overflow, so the target index is just the sum
                r.c_[static_cast<std::size_t>(ia + ib)] += ca * cb;
            }
        }
        return r;
    }

    TruncPoly& operator*=(const TruncPoly& b) { return *this = *this * b; }

    TruncPoly pow(std::uint32_t e) const {
        TruncPoly r = constant(amb_, zc().one());
        TruncPoly b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    /// Formal partial derivative with respect to x_(axis+1); axis in [0, n).
    TruncPoly partial_derivative(std::uint32_t axis) const {
        if (axis >= amb_.n) throw DomainError("axis out of range");
        std::uint64_t w = 1;
        for (std::uint32_t i = 0; i < axis; ++i) w *= amb_.p;
        TruncPoly r(amb_, zc());
        for (std::uint64_t idx = 0; idx < amb_.ring_dim(); ++idx) {
            const K& c = c_[static_cast<std::size_t>(idx)];
            if (c.is_zero()) continue;
            std::uint32_t e = static_cast<std::uint32_t>((idx / w) % amb_.p);
            if (e == 0) continue;
            K factor = K(c.zero());
            // e as a field scalar: e * 1
            for (std::uint32_t t = 0; t < e; ++t) factor += c.one();
            r.c_[static_cast<std::size_t>(idx - w)] += c * factor;
        }
        return r;
    }

    std::string str() const;

private:
    K zc() const { return c_[0].zero(); }

    Ambient amb_;
    std::vector<K> c_;
};

/// f(images[0], ..., images[n-1]): substitute one polynomial per variable.
/// Images must share an ambient with the same characteristic p.
template <ScalarRing K>
TruncPoly<K> substitute(const TruncPoly<K>& f, std::span<const TruncPoly<K>> images) {
    const Ambient& src = f.ambient();
    if (images.size() != src.n) throw DomainError("substitute: expected one image per variable");
    const Ambient& dst = images[0].ambient();
    for (const auto& g : images) require_same(dst, g.ambient());
    if (dst.p != src.p) throw MismatchError("substitute: characteristic mismatch");
    const K zero = f.scalar_zero();
    // power tables images[i]^e, e in [0, p)
    std::vector<std::vector<TruncPoly<K>>> pw(src.n);
    for (std::uint32_t i = 0; i < src.n; ++i) {
        pw[i].reserve(src.p);
        pw[i].push_back(TruncPoly<K>::constant(dst, zero.one()));
        for (std::uint32_t e = 1; e < src.p; ++e) pw[i].push_back(pw[i].back() * images[i]);
    }
    TruncPoly<K> r(dst, zero);
    std::vector<std::uint8_t> exps(src.n);
    for (std::uint64_t idx = 0; idx < src.ring_dim(); ++idx) {
        const K& c = f.coeff(idx);
        if (c.is_zero()) continue;
        src.exponents_into(idx, exps.data());
        TruncPoly<K> term = pw[0][exps[0]];
        for (std::uint32_t i = 1; i < src.n; ++i)
            if (exps[i]) term *= pw[i][exps[i]];
        r += term.scaled(c);
    }
    return r;
}

template <ScalarRing K>
std::string TruncPoly<K>::str() const {
    std::string out;
    std::vector<std::uint8_t> exps(amb_.n);
    for (std::uint64_t idx = 0; idx < amb_.ring_dim(); ++idx) {
        const K& c = c_[static_cast<std::size_t>(idx)];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        amb_.exponents_into(idx, exps.data());
        std::string mono;
        for (std::uint32_t i = 0; i < amb_.n; ++i) {
            if (!exps[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (exps[i] > 1) mono += "^" + std::to_string(exps[i]);
        }
        if (mono.empty()) {
            out += c.str();
        } else if (c.is_one()) {
            out += mono;
        } else {
            out += c.str() + "*" + mono;
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace cartan
