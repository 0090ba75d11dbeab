#include "cartan/ffield.hpp"

#include <map>
#include <mutex>

namespace cartan {

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Dense univariate arithmetic over F_p on raw coefficient vectors,
// just enough for modulus search and quotient-ring arithmetic.

Coeffs trim(Coeffs a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Coeffs mul_mod_p(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>(
                (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
    return trim(r);
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    std::uint32_t r = 1;
    std::uint64_t b = a, e = p - 2;
    while (e) {
        if (e & 1) r = static_cast<std::uint32_t>(r * b % p);
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Remainder of a modulo monic m.
Coeffs rem_mod(Coeffs a, const Coeffs& m, std::uint32_t p) {
    a = trim(std::move(a));
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - dm;
        if (lead) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::uint64_t sub = static_cast<std::uint64_t>(lead) * m[i] % p;
                std::uint32_t& t = a[shift + i];
                t = static_cast<std::uint32_t>((t + p - sub) % p);
            }
        }
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

bool has_root(const Coeffs& f, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
        if (acc == 0) return true;
    }
    return false;
}

// Trial division by every monic polynomial of degree in [2, deg(f)/2].
// Desk scale: only used once per (p, m) during modulus search.
bool divisible_by_low_degree(const Coeffs& f, std::uint32_t p) {
    const std::size_t half = (f.size() - 1) / 2;
    for (std::size_t d = 2; d <= half; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Coeffs g(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (trim(rem_mod(f, g, p)).empty()) return true;
        }
    }
    return false;
}

bool is_irreducible(const Coeffs& f, std::uint32_t p) {
    if (f.size() <= 2) return true; // degree 1
    if (has_root(f, p)) return false;
    return !divisible_by_low_degree(f, p);
}

Coeffs find_modulus(std::uint32_t p, std::uint32_t m) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
        Coeffs f(m + 1, 0);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < m; ++i) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        f[m] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw InternalCheckError("no irreducible polynomial found"); // unreachable
}

} // namespace

std::shared_ptr<const FpExtCtx> FpExtCtx::get(std::uint32_t p, std::uint32_t m) {
    require_valid_characteristic(p);
    if (m < 1) throw DomainError("extension degree must be >= 1");
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const FpExtCtx>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const FpExtCtx>(p, m, find_modulus(p, m));
    cache.emplace(key, ctx);
    return ctx;
}

FpExt operator+(const FpExt& a, const FpExt& b) {
    a.check(b);
    FpExt r = a;
    const std::uint32_t p = a.characteristic();
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] += b.c_[i];
        if (r.c_[i] >= p) r.c_[i] -= p;
    }
    return r;
}

FpExt operator-(const FpExt& a, const FpExt& b) {
    a.check(b);
    FpExt r = a;
    const std::uint32_t p = a.characteristic();
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = r.c_[i] >= b.c_[i] ? r.c_[i] - b.c_[i] : r.c_[i] + p - b.c_[i];
    return r;
}

FpExt FpExt::operator-() const {
    FpExt r = *this;
    const std::uint32_t p = characteristic();
    for (auto& v : r.c_)
        if (v) v = p - v;
    return r;
}

FpExt operator*(const FpExt& a, const FpExt& b) {
    a.check(b);
    const std::uint32_t p = a.characteristic();
    Coeffs prod = mul_mod_p(a.c_, b.c_, p);
    Coeffs red = rem_mod(std::move(prod), a.ctx_->modulus(), p);
    FpExt r = a.zero();
    for (std::size_t i = 0; i < red.size(); ++i) r.c_[i] = red[i];
    return r;
}

bool operator==(const FpExt& a, const FpExt& b) {
    a.check(b);
    return a.c_ == b.c_;
}

FpExt FpExt::pow(std::uint64_t e) const {
    FpExt r = one(), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

FpExt FpExt::inv() const {
    if (is_zero()) throw DomainError("division by zero in extension field");
    // Extended Euclid against the modulus.
    const std::uint32_t p = characteristic();
    Coeffs r0 = ctx_->modulus(), r1 = trim(c_);
    Coeffs t0{}, t1{1};
    auto sub_scaled = [&](const Coeffs& a, const Coeffs& b, const Coeffs& q) {
        Coeffs qb = mul_mod_p(q, b, p);
        Coeffs r = a;
        if (qb.size() > r.size()) r.resize(qb.size(), 0);
        for (std::size_t i = 0; i < qb.size(); ++i)
            r[i] = r[i] >= qb[i] ? r[i] - qb[i] : r[i] + p - qb[i];
        return trim(r);
    };
    while (!r1.empty()) {
        // quotient of r0 by r1
        Coeffs q(r0.size() > r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
        Coeffs rem = r0;
        const std::uint32_t li = inv_mod_p(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            std::uint32_t coef =
                static_cast<std::uint32_t>(static_cast<std::uint64_t>(rem.back()) * li % p);
            std::size_t shift = rem.size() - r1.size();
            q[shift] = coef;
            for (std::size_t i = 0; i < r1.size(); ++i) {
                std::uint64_t sub = static_cast<std::uint64_t>(coef) * r1[i] % p;
                std::uint32_t& t = rem[shift + i];
                t = static_cast<std::uint32_t>((t + p - sub) % p);
            }
            rem = trim(std::move(rem));
            if (rem.size() < r1.size()) break;
        }
        Coeffs t2 = sub_scaled(t0, t1, trim(q));
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    // r0 = gcd (a nonzero constant since the modulus is irreducible)
    if (r0.size() != 1) throw InternalCheckError("modulus is not irreducible");
    Coeffs res = mul_mod_p(t0, {inv_mod_p(r0[0], p)}, p);
    res = rem_mod(std::move(res), ctx_->modulus(), p);
    FpExt out = zero();
    for (std::size_t i = 0; i < res.size(); ++i) out.c_[i] = res[i];
    return out;
}

std::string FpExt::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c_[i]);
    }
    return s + "]";
}

} // namespace cartan
