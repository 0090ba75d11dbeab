#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cartan/error.hpp"
#include "cartan/ffield.hpp"

namespace cartan {

// ---------------------------------------------------------------------------
// Dense matrices over an exact coefficient ring.
// ---------------------------------------------------------------------------

template <ScalarRing K>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const K& zero)
        : rows_(rows), cols_(cols), zero_(zero.zero()), a_(rows * cols, zero_) {}

    static Matrix identity(std::size_t d, const K& one) {
        Matrix m(d, d, one.zero());
        for (std::size_t i = 0; i < d; ++i) m.at(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    K scalar_zero() const { return zero_; }

    K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::span<const K> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            if (!(x.a_[i] == y.a_[i])) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        x.shape_check(y);
        Matrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        x.shape_check(y);
        Matrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
        return r;
    }
    Matrix scaled(const K& s) const {
        Matrix r = *this;
        for (auto& v : r.a_) v = v * s;
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.a_) v = -v;
        return r;
    }
    Matrix& operator+=(const Matrix& y) { return *this = *this + y; }
    Matrix& operator-=(const Matrix& y) { return *this = *this - y; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw DomainError("matrix product shape mismatch");
        Matrix r(x.rows_, y.cols_, x.scalar_zero());
        if constexpr (std::same_as<K, Fp>) {
            // accumulate raw residues in uint64; safe for p < 2^16, dim < 2^20
            const std::uint32_t p = x.scalar_zero().characteristic();
            std::vector<std::uint64_t> acc(y.cols_);
            for (std::size_t i = 0; i < x.rows_; ++i) {
                std::fill(acc.begin(), acc.end(), 0);
                for (std::size_t k = 0; k < x.cols_; ++k) {
                    const std::uint64_t xv = x.at(i, k).value();
                    if (!xv) continue;
                    const K* yr = &y.a_[k * y.cols_];
                    for (std::size_t j = 0; j < y.cols_; ++j) acc[j] += xv * yr[j].value();
                }
                for (std::size_t j = 0; j < y.cols_; ++j)
                    r.at(i, j) = Fp::from_raw(p, static_cast<std::uint32_t>(acc[j] % p));
            }
        } else {
            for (std::size_t i = 0; i < x.rows_; ++i)
                for (std::size_t k = 0; k < x.cols_; ++k) {
                    const K& xv = x.at(i, k);
                    if (xv.is_zero()) continue;
                    for (std::size_t j = 0; j < y.cols_; ++j)
                        r.at(i, j) += xv * y.at(k, j);
                }
        }
        return r;
    }

    std::vector<K> apply(std::span<const K> v) const {
        if (v.size() != cols_) throw DomainError("matrix-vector shape mismatch");
        std::vector<K> r(rows_, scalar_zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_, scalar_zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    K trace() const {
        K t = scalar_zero();
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
        return t;
    }

private:
    void shape_check(const Matrix& y) const {
        if (rows_ != y.rows_ || cols_ != y.cols_) throw DomainError("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    K zero_;
    std::vector<K> a_;
};

/// M^e by repeated squaring; M^0 = identity.
template <ScalarRing K>
Matrix<K> mat_power(const Matrix<K>& m, std::uint64_t e) {
    if (m.rows() != m.cols()) throw DomainError("mat_power needs a square matrix");
    Matrix<K> r = Matrix<K>::identity(m.rows(), m.scalar_zero().one());
    Matrix<K> b = m;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Gaussian elimination (fields only).
// ---------------------------------------------------------------------------

template <ScalarRing K>
std::size_t rank(Matrix<K> m) {
    if constexpr (!K::is_field) {
        throw DomainError("rank requires field coefficients");
    } else {
        const std::size_t rows = m.rows(), cols = m.cols();
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t piv = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (!m.at(i, c).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv == rows) continue;
            if (piv != r)
                for (std::size_t j = c; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
            const K inv = m.at(r, c).inv();
            for (std::size_t j = c; j < cols; ++j) m.at(r, j) = m.at(r, j) * inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || m.at(i, c).is_zero()) continue;
                const K f = m.at(i, c);
                for (std::size_t j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
            }
            ++r;
        }
        return r;
    }
}

template <ScalarRing K>
struct RankKernel {
    std::size_t rank;
    std::vector<std::vector<K>> kernel; // basis of the right kernel
};

/// Exact rank and a deterministic kernel basis (first-nonzero pivoting,
/// free columns in ascending order, unit coordinate at the free column).
template <ScalarRing K>
RankKernel<K> rank_kernel(Matrix<K> m) {
    if constexpr (!K::is_field) {
        throw DomainError("rank_kernel requires field coefficients");
    } else {
        const std::size_t rows = m.rows(), cols = m.cols();
        const K zero = m.scalar_zero(), one = zero.one();
        std::vector<std::size_t> pivot_col;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t piv = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (!m.at(i, c).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv == rows) continue;
            if (piv != r)
                for (std::size_t j = c; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
            const K inv = m.at(r, c).inv();
            for (std::size_t j = c; j < cols; ++j) m.at(r, j) = m.at(r, j) * inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || m.at(i, c).is_zero()) continue;
                const K f = m.at(i, c);
                for (std::size_t j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
            }
            pivot_col.push_back(c);
            ++r;
        }
        RankKernel<K> out{r, {}};
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivot_col) is_pivot[c] = true;
        for (std::size_t f = 0; f < cols; ++f) {
            if (is_pivot[f]) continue;
            std::vector<K> v(cols, zero);
            v[f] = one;
            for (std::size_t i = 0; i < pivot_col.size(); ++i)
                v[pivot_col[i]] = -m.at(i, f);
            out.kernel.push_back(std::move(v));
        }
        return out;
    }
}

/// Gauss-Jordan inverse; throws DomainError on singular input.
template <ScalarField K>
Matrix<K> matrix_inverse(Matrix<K> m) {
    if (m.rows() != m.cols()) throw DomainError("matrix_inverse needs a square matrix");
    const std::size_t d = m.rows();
    Matrix<K> inv = Matrix<K>::identity(d, m.scalar_zero().one());
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t piv = d;
        for (std::size_t i = c; i < d; ++i)
            if (!m.at(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv == d) throw DomainError("matrix is singular");
        if (piv != c)
            for (std::size_t j = 0; j < d; ++j) {
                std::swap(m.at(piv, j), m.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        const K f = m.at(c, c).inv();
        for (std::size_t j = 0; j < d; ++j) {
            m.at(c, j) = m.at(c, j) * f;
            inv.at(c, j) = inv.at(c, j) * f;
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (i == c || m.at(i, c).is_zero()) continue;
            const K g = m.at(i, c);
            for (std::size_t j = 0; j < d; ++j) {
                m.at(i, j) -= g * m.at(c, j);
                inv.at(i, j) -= g * inv.at(c, j);
            }
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Characteristic polynomials.  Coefficients are returned ascending:
// result[k] is the coefficient of t^k, result[d] == 1 (monic, d = dim).
// ---------------------------------------------------------------------------

namespace detail {

template <ScalarRing K>
K dot(std::span<const K> a, std::span<const K> b, const K& zero) {
    if constexpr (std::same_as<K, Fp>) {
        const std::uint32_t p = zero.characteristic();
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            acc += static_cast<std::uint64_t>(a[i].value()) * b[i].value();
        return Fp::from_raw(p, static_cast<std::uint32_t>(acc % p));
    } else if constexpr (std::same_as<K, Dual<Fp>>) {
        const std::uint32_t p = zero.characteristic();
        std::uint64_t re = 0, ep = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::uint64_t ar = a[i].re.value(), ae = a[i].ep.value();
            const std::uint64_t br = b[i].re.value(), be = b[i].ep.value();
            re += ar * br;
            ep += ar * be + ae * br;
        }
        return Dual<Fp>(Fp::from_raw(p, static_cast<std::uint32_t>(re % p)),
                        Fp::from_raw(p, static_cast<std::uint32_t>(ep % p)));
    } else {
        K acc = zero;
        for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
        return acc;
    }
}

// y = (leading r x r block of M) * x
template <ScalarRing K>
void leading_block_apply(const Matrix<K>& m, std::size_t r, std::span<const K> x,
                         std::vector<K>& y, const K& zero) {
    for (std::size_t i = 0; i < r; ++i) y[i] = dot<K>(m.row(i).subspan(0, r), x, zero);
}

} // namespace detail

/// Division-free characteristic polynomial (Berkowitz); valid over any
/// commutative ring, in particular over dual numbers.
template <ScalarRing K>
std::vector<K> charpoly_berkowitz(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw DomainError("charpoly needs a square matrix");
    const std::size_t d = m.rows();
    const K zero = m.scalar_zero(), one = zero.one();
    // poly holds the charpoly of the leading r x r block, descending degree:
    // poly[j] = coefficient of t^(r-j).
    std::vector<K> poly{one};
    std::vector<K> s, snext;
    for (std::size_t r = 1; r <= d; ++r) {
        std::vector<K> q(r + 1, zero);
        q[0] = one;
        q[1] = -m.at(r - 1, r - 1);
        if (r > 1) {
            s.assign(r - 1, zero);
            for (std::size_t i = 0; i < r - 1; ++i) s[i] = m.at(i, r - 1);
            std::vector<K> rrow(r - 1, zero);
            for (std::size_t j = 0; j < r - 1; ++j) rrow[j] = m.at(r - 1, j);
            snext.assign(r - 1, zero);
            for (std::size_t k = 2; k <= r; ++k) {
                q[k] = -detail::dot<K>(rrow, s, zero);
                if (k < r) {
                    detail::leading_block_apply<K>(m, r - 1, s, snext, zero);
                    std::swap(s, snext);
                }
            }
        }
        std::vector<K> next(r + 1, zero);
        for (std::size_t i = 0; i <= r; ++i)
            for (std::size_t j = 0; j < poly.size() && j <= i; ++j)
                next[i] += q[i - j] * poly[j];
        poly = std::move(next);
    }
    // convert to ascending order
    std::vector<K> asc(d + 1, zero);
    for (std::size_t j = 0; j <= d; ++j) asc[d - j] = poly[j];
    return asc;
}

/// Characteristic polynomial over a field via similarity reduction to
/// Hessenberg form (divisions only by nonzero pivots) and the Hessenberg
/// recurrence.
template <ScalarField K>
std::vector<K> charpoly_hessenberg(Matrix<K> m) {
    if (m.rows() != m.cols()) throw DomainError("charpoly needs a square matrix");
    const std::size_t d = m.rows();
    const K zero = m.scalar_zero(), one = zero.one();
    // reduce to upper Hessenberg by similarity
    for (std::size_t c = 0; c + 2 < d; ++c) {
        std::size_t piv = d;
        for (std::size_t i = c + 1; i < d; ++i)
            if (!m.at(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv == d) continue;
        if (piv != c + 1) {
            for (std::size_t j = 0; j < d; ++j) std::swap(m.at(piv, j), m.at(c + 1, j));
            for (std::size_t i = 0; i < d; ++i) std::swap(m.at(i, piv), m.at(i, c + 1));
        }
        const K inv = m.at(c + 1, c).inv();
        for (std::size_t i = c + 2; i < d; ++i) {
            if (m.at(i, c).is_zero()) continue;
            const K f = m.at(i, c) * inv;
            // row_i -= f * row_(c+1);  col_(c+1) += f * col_i  (similarity)
            for (std::size_t j = 0; j < d; ++j) m.at(i, j) -= f * m.at(c + 1, j);
            for (std::size_t j = 0; j < d; ++j) m.at(j, c + 1) += f * m.at(j, i);
        }
    }
    // p_k = charpoly of leading k x k block, ascending coefficients
    std::vector<std::vector<K>> p(d + 1);
    p[0] = {one};
    for (std::size_t k = 1; k <= d; ++k) {
        // (t - h_kk) * p_(k-1)
        std::vector<K> cur(k + 1, zero);
        const K hkk = m.at(k - 1, k - 1);
        for (std::size_t j = 0; j < p[k - 1].size(); ++j) {
            cur[j + 1] += p[k - 1][j];
            cur[j] -= hkk * p[k - 1][j];
        }
        K sub = one; // running product of subdiagonal entries
        for (std::size_t i = k - 1; i-- > 0;) {
            sub = sub * m.at(i + 1, i);
            if (sub.is_zero()) break;
            const K f = m.at(i, k - 1) * sub;
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < p[i].size(); ++j) cur[j] -= f * p[i][j];
        }
        p[k] = std::move(cur);
    }
    return p[d];
}

/// Ring-dispatched characteristic polynomial: division-based over fields,
/// division-free otherwise.
template <ScalarRing K>
std::vector<K> charpoly(const Matrix<K>& m) {
    if constexpr (K::is_field)
        return charpoly_hessenberg(m);
    else
        return charpoly_berkowitz(m);
}

/// Characteristic polynomial together with the adjugate of tI - M as a
/// polynomial in t: Q(t) = sum_j Q_j t^j satisfies (tI - M) Q(t) = P(t) I.
/// Computed by the Horner-style recurrence Q_(d-1) = I,
/// Q_(j-1) = M Q_j + c_j I.  This yields every directional derivative of the
/// charpoly coefficients at M: d/de det(tI - M - eB) = -tr(Q(t) B).
template <ScalarField K>
struct CharpolyAdjugate {
    std::vector<K> charpoly;        // ascending, monic
    std::vector<Matrix<K>> adjugate; // adjugate[j] = Q_j, j in [0, d)
};

template <ScalarField K>
CharpolyAdjugate<K> charpoly_adjugate(const Matrix<K>& m) {
    const std::size_t d = m.rows();
    CharpolyAdjugate<K> out{charpoly_hessenberg(m), {}};
    out.adjugate.assign(d, Matrix<K>(0, 0, m.scalar_zero()));
    Matrix<K> q = Matrix<K>::identity(d, m.scalar_zero().one());
    out.adjugate[d - 1] = q;
    for (std::size_t j = d - 1; j > 0; --j) {
        q = m * q;
        const K& c = out.charpoly[j];
        for (std::size_t i = 0; i < d; ++i) q.at(i, i) += c;
        out.adjugate[j - 1] = q;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Incremental span membership with coordinate recovery.
// ---------------------------------------------------------------------------

/// Maintains a row echelon basis of the span of the vectors fed to add().
/// Dependent vectors are rejected (add returns false).  coordinates(v)
/// expresses v over the *accepted* vectors in insertion order.
template <ScalarField K>
class SpanSolver {
public:
    explicit SpanSolver(std::size_t dim) : dim_(dim) {
        if (dim_ == 0) throw DomainError("span solver needs positive dimension");
    }

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    bool add(std::vector<K> v) {
        if (v.size() != dim_) throw DomainError("span solver dimension mismatch");
        std::vector<K> combo; // coordinates of v over accepted originals
        if (!reduce(v, &combo)) return false; // dependent
        // v is now a new independent direction; normalize on its pivot
        std::size_t piv = pivot_of(v);
        const K inv = v[piv].inv();
        for (auto& x : v) x = x * inv;
        for (auto& x : combo) x = x * inv;
        // combo currently expresses the reduced v over originals *minus* the
        // new vector itself; fix up: reduced = inv*(orig_new - sum c_i row_i)
        combo.push_back(inv);
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        combos_.push_back(std::move(combo));
        ++accepted_;
        return true;
    }

    bool contains(std::vector<K> v) const {
        if (v.size() != dim_) throw DomainError("span solver dimension mismatch");
        return !reduce(v, nullptr);
    }

    /// Coordinates of v over the accepted vectors; nullopt if v is outside
    /// the span.
    std::optional<std::vector<K>> coordinates(std::vector<K> v) const {
        if (v.size() != dim_) throw DomainError("span solver dimension mismatch");
        if (rows_.empty()) {
            for (const auto& x : v)
                if (!x.is_zero()) return std::nullopt;
            return std::vector<K>{};
        }
        const K zero = rows_[0][0].zero();
        std::vector<K> coef(rows_.size(), zero);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const K c = v[pivots_[i]];
            if (c.is_zero()) continue;
            coef[i] = c;
            for (std::size_t j = 0; j < dim_; ++j) v[j] -= c * rows_[i][j];
        }
        for (const auto& x : v)
            if (!x.is_zero()) return std::nullopt;
        std::vector<K> out(accepted_, zero);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t k = 0; k < combos_[i].size(); ++k) out[k] += coef[i] * combos_[i][k];
        return out;
    }

private:
    // Reduce v against the stored rows.  Returns true if a nonzero remainder
    // is left in v; if combo is nonnull it receives, for each stored row, the
    // original-coordinates of the subtracted part (negated), so that
    //   v_reduced = v_orig - sum coef_i * rows_i  and
    //   combo = -sum coef_i * combos_i   over accepted originals.
    bool reduce(std::vector<K>& v, std::vector<K>* combo) const {
        if (combo) combo->assign(accepted_, v[0].zero());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const K c = v[pivots_[i]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) v[j] -= c * rows_[i][j];
            if (combo)
                for (std::size_t k = 0; k < combos_[i].size(); ++k)
                    (*combo)[k] -= c * combos_[i][k];
        }
        for (const auto& x : v)
            if (!x.is_zero()) return true;
        return false;
    }

    std::size_t pivot_of(const std::vector<K>& v) const {
        for (std::size_t j = 0; j < dim_; ++j)
            if (!v[j].is_zero()) return j;
        throw InternalCheckError("pivot search on zero vector");
    }

    std::size_t dim_;
    std::size_t accepted_ = 0;
    std::vector<std::vector<K>> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<K>> combos_;
};

// ---------------------------------------------------------------------------
// Univariate polynomial helpers over a field (ascending coefficients, no
// trailing zeros).  Used by the Jordan-Chevalley decomposition.
// ---------------------------------------------------------------------------

namespace upoly {

template <ScalarField K>
std::vector<K> trim(std::vector<K> f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

template <ScalarField K>
std::vector<K> mul(const std::vector<K>& a, const std::vector<K>& b, const K& zero) {
    if (a.empty() || b.empty()) return {};
    std::vector<K> r(a.size() + b.size() - 1, zero);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return trim(std::move(r));
}

template <ScalarField K>
std::pair<std::vector<K>, std::vector<K>> divmod(std::vector<K> a, const std::vector<K>& b,
                                                 const K& zero) {
    if (b.empty()) throw DomainError("polynomial division by zero");
    a = trim(std::move(a));
    if (a.size() < b.size()) return {{}, std::move(a)};
    std::vector<K> q(a.size() - b.size() + 1, zero);
    const K li = b.back().inv();
    for (std::size_t sh = a.size() - b.size() + 1; sh-- > 0;) {
        const std::size_t top = sh + b.size() - 1;
        if (a[top].is_zero()) continue;
        const K c = a[top] * li;
        q[sh] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] -= c * b[i];
    }
    return {trim(std::move(q)), trim(std::move(a))};
}

template <ScalarField K>
std::vector<K> monic(std::vector<K> f) {
    f = trim(std::move(f));
    if (f.empty()) return f;
    const K li = f.back().inv();
    for (auto& c : f) c = c * li;
    return f;
}

template <ScalarField K>
std::vector<K> gcd(std::vector<K> a, std::vector<K> b, const K& zero) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        auto [q, r] = divmod(std::move(a), b, zero);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a));
}

template <ScalarField K>
std::vector<K> derivative(const std::vector<K>& f, const K& zero) {
    if (f.size() <= 1) return {};
    std::vector<K> r(f.size() - 1, zero);
    K k = zero;
    for (std::size_t i = 1; i < f.size(); ++i) {
        k += zero.one();
        r[i - 1] = f[i] * k;
    }
    return trim(std::move(r));
}

/// g with g(t)^p = f(t); requires f to have support only on multiples of p.
template <ScalarField K>
std::vector<K> pth_root(const std::vector<K>& f, const K& zero) {
    const std::uint32_t p = zero.characteristic();
    std::vector<K> g((f.size() + p - 1) / p, zero);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        if (i % p != 0) throw DomainError("polynomial is not a p-th power");
        g[i / p] = frobenius_pth_root(f[i]);
    }
    return trim(std::move(g));
}

/// Product of the distinct irreducible factors of f (monic), valid over
/// perfect fields of characteristic p.
template <ScalarField K>
std::vector<K> radical(std::vector<K> f, const K& zero) {
    f = monic(std::move(f));
    if (f.size() <= 1) return {zero.one()};
    std::vector<K> df = derivative(f, zero);
    if (df.empty()) return radical(pth_root(f, zero), zero);
    std::vector<K> d = gcd(f, df, zero);
    auto [w, rem] = divmod(f, d, zero);
    if (!rem.empty()) throw InternalCheckError("gcd does not divide");
    if (d.size() <= 1) return monic(std::move(w));
    std::vector<K> r = radical(std::move(d), zero);
    std::vector<K> g = gcd(w, r, zero);
    auto [extra, rem2] = divmod(std::move(r), g, zero);
    if (!rem2.empty()) throw InternalCheckError("gcd does not divide");
    return monic(mul(w, extra, zero));
}

/// f(M) by Horner.
template <ScalarField K>
Matrix<K> eval_matrix(const std::vector<K>& f, const Matrix<K>& m) {
    const std::size_t d = m.rows();
    const K zero = m.scalar_zero();
    Matrix<K> r(d, d, zero);
    if (f.empty()) return r;
    for (std::size_t i = 0; i < d; ++i) r.at(i, i) = f.back();
    for (std::size_t k = f.size() - 1; k-- > 0;) {
        r = r * m;
        for (std::size_t i = 0; i < d; ++i) r.at(i, i) += f[k];
    }
    return r;
}

} // namespace upoly

} // namespace cartan
