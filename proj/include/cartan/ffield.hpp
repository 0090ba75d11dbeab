#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cartan/error.hpp"

namespace cartan {

/// All algebras in this library live over fields of odd characteristic p > 3.
inline bool is_valid_characteristic(std::uint32_t p) {
    if (p <= 3) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_valid_characteristic(std::uint32_t p) {
    if (!is_valid_characteristic(p))
        throw DomainError("characteristic must be a prime > 3, got " + std::to_string(p));
}

// ---------------------------------------------------------------------------
// Fp — the prime field Z/p.
// ---------------------------------------------------------------------------

/// Element of the prime field F_p, stored as the canonical representative
/// in [0, p).  The modulus travels with the value; mixing modulis throws.
class Fp {
public:
    static constexpr bool is_field = true;

    Fp(std::uint32_t p, std::int64_t value) : p_(p) {
        std::int64_t r = value % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        v_ = static_cast<std::uint32_t>(r);
    }

    static Fp from_raw(std::uint32_t p, std::uint32_t canonical) {
        Fp x(p, 0);
        x.v_ = canonical;
        return x;
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t characteristic() const { return p_; }

    Fp zero() const { return Fp(p_, 0); }
    Fp one() const { return Fp(p_, 1); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_unit() const { return v_ != 0; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        a.check(b);
        std::uint32_t s = a.v_ + b.v_;
        if (s >= a.p_) s -= a.p_;
        return from_raw(a.p_, s);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        a.check(b);
        std::uint32_t s = a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_;
        return from_raw(a.p_, s);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        a.check(b);
        return from_raw(a.p_, static_cast<std::uint32_t>(
                                  (static_cast<std::uint64_t>(a.v_) * b.v_) % a.p_));
    }
    Fp operator-() const { return from_raw(p_, v_ == 0 ? 0 : p_ - v_); }

    Fp& operator+=(const Fp& b) { return *this = *this + b; }
    Fp& operator-=(const Fp& b) { return *this = *this - b; }
    Fp& operator*=(const Fp& b) { return *this = *this * b; }

    friend bool operator==(const Fp& a, const Fp& b) {
        a.check(b);
        return a.v_ == b.v_;
    }

    Fp pow(std::uint64_t e) const {
        Fp r = one(), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    Fp inv() const {
        if (v_ == 0) throw DomainError("division by zero in F_" + std::to_string(p_));
        return pow(p_ - 2);
    }

    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }

    /// The unique b with b^p = a.  On F_p the Frobenius is the identity.
    Fp frobenius_root() const { return *this; }

    std::string str() const { return std::to_string(v_); }

private:
    void check(const Fp& b) const {
        if (p_ != b.p_)
            throw MismatchError("field mismatch: F_" + std::to_string(p_) + " vs F_" +
                                std::to_string(b.p_));
    }

    std::uint32_t v_;
    std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// FpExt — small extension fields F_{p^m} as polynomial quotients.
// ---------------------------------------------------------------------------

/// Shared description of F_{p^m}: characteristic, degree and the stored
/// irreducible modulus (monic, ascending coefficients, length m+1).
/// The modulus is the first irreducible in the deterministic enumeration of
/// monic degree-m polynomials by ascending mixed-radix value of
/// (c_0, c_1, ..., c_{m-1}), so (p, m) pins the representation.
class FpExtCtx {
public:
    static std::shared_ptr<const FpExtCtx> get(std::uint32_t p, std::uint32_t m);

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FpExtCtx(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
        : p_(p), m_(m), modulus_(std::move(modulus)) {}

private:
    std::uint32_t p_, m_;
    std::vector<std::uint32_t> modulus_;
};

/// Element of F_{p^m}, coefficient vector of length m over F_p (ascending).
class FpExt {
public:
    static constexpr bool is_field = true;

    FpExt(std::shared_ptr<const FpExtCtx> ctx, std::vector<std::int64_t> coeffs)
        : ctx_(std::move(ctx)), c_(ctx_->m(), 0) {
        if (coeffs.size() > c_.size())
            throw DomainError("coefficient list longer than extension degree");
        const std::int64_t p = ctx_->p();
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            std::int64_t r = coeffs[i] % p;
            if (r < 0) r += p;
            c_[i] = static_cast<std::uint32_t>(r);
        }
    }

    static FpExt from_int(std::shared_ptr<const FpExtCtx> ctx, std::int64_t v) {
        return FpExt(std::move(ctx), {v});
    }

    const std::shared_ptr<const FpExtCtx>& context() const { return ctx_; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    std::uint32_t characteristic() const { return ctx_->p(); }
    std::uint32_t degree() const { return ctx_->m(); }

    FpExt zero() const { return FpExt(ctx_, {}); }
    FpExt one() const { return FpExt(ctx_, {1}); }

    bool is_zero() const {
        for (auto v : c_)
            if (v) return false;
        return true;
    }
    bool is_one() const {
        if (c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }
    bool is_unit() const { return !is_zero(); }

    friend FpExt operator+(const FpExt& a, const FpExt& b);
    friend FpExt operator-(const FpExt& a, const FpExt& b);
    friend FpExt operator*(const FpExt& a, const FpExt& b);
    FpExt operator-() const;
    friend bool operator==(const FpExt& a, const FpExt& b);

    FpExt& operator+=(const FpExt& b) { return *this = *this + b; }
    FpExt& operator-=(const FpExt& b) { return *this = *this - b; }
    FpExt& operator*=(const FpExt& b) { return *this = *this * b; }

    FpExt pow(std::uint64_t e) const;
    FpExt inv() const;
    friend FpExt operator/(const FpExt& a, const FpExt& b) { return a * b.inv(); }

    /// x -> x^p, a field automorphism.
    FpExt frobenius() const { return pow(ctx_->p()); }

    /// Inverse Frobenius: the unique b with b^p = *this, computed as
    /// frobenius^(m-1).
    FpExt frobenius_root() const {
        FpExt r = *this;
        for (std::uint32_t i = 1; i < ctx_->m(); ++i) r = r.frobenius();
        return r;
    }

    std::string str() const;

private:
    void check(const FpExt& b) const {
        if (ctx_->p() != b.ctx_->p() || ctx_->m() != b.ctx_->m() ||
            ctx_->modulus() != b.ctx_->modulus())
            throw MismatchError("extension field mismatch");
    }

    std::shared_ptr<const FpExtCtx> ctx_;
    std::vector<std::uint32_t> c_;
};

// ---------------------------------------------------------------------------
// Dual<K> — the ring K[eps]/(eps^2) of dual numbers, the exact carrier of
// first-order deformations in characteristic p.
// ---------------------------------------------------------------------------

template <class K>
struct Dual {
    static constexpr bool is_field = false;

    K re;
    K ep;

    Dual(K real, K eps) : re(std::move(real)), ep(std::move(eps)) {}
    explicit Dual(const K& real) : re(real), ep(real.zero()) {}

    std::uint32_t characteristic() const { return re.characteristic(); }

    Dual zero() const { return Dual(re.zero(), re.zero()); }
    Dual one() const { return Dual(re.one(), re.zero()); }

    bool is_zero() const { return re.is_zero() && ep.is_zero(); }
    bool is_one() const { return re.is_one() && ep.is_zero(); }
    bool is_unit() const { return !re.is_zero(); }

    friend Dual operator+(const Dual& a, const Dual& b) { return {a.re + b.re, a.ep + b.ep}; }
    friend Dual operator-(const Dual& a, const Dual& b) { return {a.re - b.re, a.ep - b.ep}; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return {a.re * b.re, a.re * b.ep + a.ep * b.re};
    }
    Dual operator-() const { return {-re, -ep}; }

    Dual& operator+=(const Dual& b) { return *this = *this + b; }
    Dual& operator-=(const Dual& b) { return *this = *this - b; }
    Dual& operator*=(const Dual& b) { return *this = *this * b; }

    friend bool operator==(const Dual& a, const Dual& b) { return a.re == b.re && a.ep == b.ep; }

    /// (a + eps b)^(-1) = a^(-1) - eps a^(-2) b; requires a to be a unit.
    Dual inv() const {
        K ri = re.inv();
        return {ri, -(ri * ri * ep)};
    }

    Dual pow(std::uint64_t e) const {
        Dual r = one(), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
};

using DualFp = Dual<Fp>;

// ---------------------------------------------------------------------------
// Ring concepts.
// ---------------------------------------------------------------------------

template <class K>
concept ScalarRing = std::copyable<K> && requires(const K& a, const K& b) {
    { a + b } -> std::same_as<K>;
    { a - b } -> std::same_as<K>;
    { a * b } -> std::same_as<K>;
    { -a } -> std::same_as<K>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.zero() } -> std::same_as<K>;
    { a.one() } -> std::same_as<K>;
    { a.characteristic() } -> std::convertible_to<std::uint32_t>;
};

template <class K>
concept ScalarField = ScalarRing<K> && K::is_field && requires(const K& a) {
    { a.inv() } -> std::same_as<K>;
    { a.frobenius_root() } -> std::same_as<K>;
};

/// b with b^p = a (unique: Frobenius is bijective on finite fields).
template <ScalarField K>
K frobenius_pth_root(const K& a) {
    return a.frobenius_root();
}

} // namespace cartan
