#pragma once

// Finite fields GF(p^m) with table-backed arithmetic, and dense exact linear
// algebra over them.
//
// Elements are encoded as integers 0..q-1 whose base-p digits are the
// polynomial coefficients, lowest order first: in GF(4) with modulus
// x^2 + x + 1 the element x is 2 and x + 1 is 3.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mllrc/error.hpp"

namespace mllrc {

using Element = std::uint32_t;

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

namespace detail {

inline bool is_prime(std::uint32_t v) {
    if (v < 2) return false;
    for (std::uint32_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

inline std::vector<std::uint32_t> prime_factors(std::uint32_t v) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

// Polynomials over GF(p), coefficient vectors lowest order first.
using Poly = std::vector<std::uint32_t>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inverse_mod_prime(std::uint32_t a, std::uint32_t p) {
    // a^(p-2) mod p
    std::uint64_t result = 1, base = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

/// Remainder of a modulo b over GF(p); b must be nonzero.
inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    poly_trim(a);
    Poly divisor = b;
    poly_trim(divisor);
    const std::uint32_t lead_inv = inverse_mod_prime(divisor.back(), p);
    while (a.size() >= divisor.size() && !a.empty()) {
        const std::size_t shift = a.size() - divisor.size();
        const std::uint32_t factor = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(a.back()) * lead_inv % p);
        for (std::size_t i = 0; i < divisor.size(); ++i) {
            const std::uint64_t sub = static_cast<std::uint64_t>(factor) * divisor[i] % p;
            a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
        }
        poly_trim(a);
    }
    return a;
}

/// Monic polynomial of the given degree whose lower coefficients are the
/// base-p digits of `index`.
inline Poly monic_from_index(std::uint32_t index, unsigned degree, std::uint32_t p) {
    Poly f(degree + 1, 0);
    for (unsigned i = 0; i < degree; ++i) {
        f[i] = index % p;
        index /= p;
    }
    f[degree] = 1;
    return f;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const unsigned degree = static_cast<unsigned>(f.size() - 1);
    if (degree <= 1) return true;
    for (unsigned dd = 1; dd <= degree / 2; ++dd) {
        std::uint32_t count = 1;
        for (unsigned i = 0; i < dd; ++i) count *= p;
        for (std::uint32_t idx = 0; idx < count; ++idx) {
            if (poly_mod(f, monic_from_index(idx, dd, p), p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

/// GF(p^m), immutable after construction.
class FiniteField {
public:
    /// Builds GF(p^m). For m >= 2 without an explicit modulus, the first
    /// irreducible monic polynomial in order of its lower-coefficient integer
    /// encoding is used, so the choice is reproducible.
    FiniteField(std::uint32_t p, unsigned m, std::optional<std::vector<Element>> modulus = std::nullopt)
        : p_(p), m_(m) {
        if (!detail::is_prime(p)) throw PreconditionError("characteristic " + std::to_string(p) + " is not prime");
        if (m < 1) throw PreconditionError("extension degree must be at least 1");
        std::uint64_t q = 1;
        for (unsigned i = 0; i < m; ++i) {
            q *= p;
            if (q > kMaxFieldOrder)
                throw PreconditionError("field order " + std::to_string(p) + "^" + std::to_string(m) +
                                        " exceeds the 2^16 cap");
        }
        q_ = static_cast<std::uint32_t>(q);
        if (modulus) {
            if (modulus->size() != m + 1 || modulus->back() != 1)
                throw PreconditionError("modulus must be monic of degree " + std::to_string(m));
            for (auto c : *modulus)
                if (c >= p) throw PreconditionError("modulus coefficient out of range");
            if (!detail::is_irreducible(*modulus, p)) throw PreconditionError("modulus is reducible");
            modulus_ = *modulus;
        } else if (m == 1) {
            modulus_ = {0, 1};
        } else {
            std::uint32_t count = q_ / p;
            for (std::uint32_t idx = 0; idx < count * p; ++idx) {
                auto f = detail::monic_from_index(idx, m, p);
                if (detail::is_irreducible(f, p)) {
                    modulus_ = std::move(f);
                    break;
                }
            }
        }
        build_tables();
    }

    static FieldPtr make(std::uint32_t p, unsigned m = 1, std::optional<std::vector<Element>> modulus = std::nullopt) {
        return std::make_shared<const FiniteField>(p, m, std::move(modulus));
    }

    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return m_; }
    std::uint32_t order() const { return q_; }
    const std::vector<Element>& modulus() const { return modulus_; }
    bool is_prime_field() const { return m_ == 1; }
    Element primitive_element() const { return exp_[1]; }

    Element add(Element a, Element b) const {
        if (p_ == 2) return a ^ b;
        if (m_ == 1) {
            const Element s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
        return add_digits(a, b);
    }
    Element neg(Element a) const { return neg_[a]; }
    Element sub(Element a, Element b) const { return add(a, neg_[b]); }

    Element mul(Element a, Element b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Element inv(Element a) const {
        if (a == 0) throw PreconditionError("zero has no multiplicative inverse");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    Element div(Element a, Element b) const { return mul(a, inv(b)); }
    Element pow(Element a, std::uint64_t e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
    }
    /// Discrete logarithm to the base primitive_element().
    std::uint32_t log(Element a) const {
        if (a == 0) throw PreconditionError("log of zero");
        return log_[a];
    }
    Element exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

    /// Base-p digits of a (m entries, lowest order first).
    std::vector<std::uint32_t> coefficients(Element a) const {
        std::vector<std::uint32_t> out(m_);
        for (unsigned i = 0; i < m_; ++i) {
            out[i] = a % p_;
            a /= p_;
        }
        return out;
    }
    Element from_coefficients(std::span<const std::uint32_t> coeffs) const {
        Element v = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) v = v * p_ + coeffs[i];
        return v;
    }

    bool contains(Element a) const { return a < q_; }

    std::string name() const {
        std::ostringstream os;
        os << "GF(" << p_;
        if (m_ > 1) os << "^" << m_;
        os << ")";
        return os.str();
    }

    friend bool operator==(const FiniteField& a, const FiniteField& b) {
        return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
    }

private:
    Element add_digits(Element a, Element b) const {
        Element out = 0, scale = 1;
        for (unsigned i = 0; i < m_; ++i) {
            out += ((a % p_ + b % p_) % p_) * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return out;
    }

    // Product reduced modulo the modulus, without tables.
    Element mul_slow(Element a, Element b) const {
        if (m_ == 1) return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
        auto ca = coefficients(a), cb = coefficients(b);
        detail::Poly prod(2 * m_ - 1, 0);
        for (unsigned i = 0; i < m_; ++i)
            for (unsigned j = 0; j < m_; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
        auto rem = detail::poly_mod(std::move(prod), modulus_, p_);
        rem.resize(m_, 0);
        return from_coefficients(rem);
    }

    Element pow_slow(Element a, std::uint64_t e) const {
        Element result = 1, base = a;
        while (e) {
            if (e & 1) result = mul_slow(result, base);
            base = mul_slow(base, base);
            e >>= 1;
        }
        return result;
    }

    void build_tables() {
        const std::uint32_t group = q_ - 1;
        const auto factors = detail::prime_factors(group);
        Element generator = 0;
        for (Element g = 2 - (q_ == 2 ? 1 : 0); g < q_; ++g) {
            bool primitive = true;
            for (auto f : factors) {
                if (pow_slow(g, group / f) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                generator = g;
                break;
            }
        }
        exp_.assign(2 * static_cast<std::size_t>(group) + 1, 0);
        log_.assign(q_, 0);
        Element cur = 1;
        for (std::uint32_t i = 0; i < group; ++i) {
            exp_[i] = cur;
            log_[cur] = i;
            cur = mul_slow(cur, generator);
        }
        for (std::uint32_t i = group; i < exp_.size(); ++i) exp_[i] = exp_[i - group];

        neg_.resize(q_);
        for (Element a = 0; a < q_; ++a) {
            auto c = coefficients(a);
            for (auto& d : c) d = (p_ - d) % p_;
            neg_[a] = from_coefficients(c);
        }
        if (p_ != 2 && m_ > 1 && q_ <= 256) {
            add_table_.resize(static_cast<std::size_t>(q_) * q_);
            for (Element a = 0; a < q_; ++a)
                for (Element b = 0; b < q_; ++b) add_table_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b);
        }
    }

    std::uint32_t p_;
    unsigned m_;
    std::uint32_t q_ = 0;
    std::vector<Element> modulus_;
    std::vector<Element> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Element> neg_;
    std::vector<Element> add_table_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || *a == *b; }

/// Dense row-major matrix over a finite field. A matrix may have zero rows
/// (the parity-check matrix of the full space is empty).
class MatrixGF {
public:
    MatrixGF() = default;
    MatrixGF(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    MatrixGF(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw PreconditionError("matrix entry count does not match dimensions");
        for (auto v : data_)
            if (!field_->contains(v))
                throw PreconditionError("matrix entry " + std::to_string(v) + " outside " + field_->name());
    }

    static MatrixGF identity(FieldPtr field, std::size_t n) {
        MatrixGF m(std::move(field), n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static MatrixGF from_rows(FieldPtr field, const std::vector<std::vector<Element>>& rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        std::vector<Element> data;
        data.reserve(rows.size() * cols);
        for (const auto& r : rows) {
            if (r.size() != cols) throw PreconditionError("ragged rows");
            data.insert(data.end(), r.begin(), r.end());
        }
        return MatrixGF(std::move(field), rows.size(), cols, std::move(data));
    }

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Element v) { data_[r * cols_ + c] = v; }

    std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::vector<Element> column(std::size_t c) const {
        std::vector<Element> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }
    const std::vector<Element>& entries() const { return data_; }

    MatrixGF transpose() const {
        MatrixGF t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
        return t;
    }

    MatrixGF select_columns(std::span<const std::size_t> cols) const {
        MatrixGF out(field_, rows_, cols.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0; j < cols.size(); ++j) out.set(r, j, (*this)(r, cols[j]));
        return out;
    }
    MatrixGF select_rows(std::span<const std::size_t> rows) const {
        MatrixGF out(field_, rows.size(), cols_);
        for (std::size_t i = 0; i < rows.size(); ++i)
            std::copy(row(rows[i]).begin(), row(rows[i]).end(), out.row(i).begin());
        return out;
    }
    MatrixGF remove_row(std::size_t r) const {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r) keep.push_back(i);
        return select_rows(keep);
    }
    MatrixGF remove_column(std::size_t c) const {
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < cols_; ++j)
            if (j != c) keep.push_back(j);
        return select_columns(keep);
    }

    /// Row r <- row r + factor * row src.
    void add_scaled_row(std::size_t r, std::size_t src, Element factor) {
        if (factor == 0) return;
        const auto& F = *field_;
        for (std::size_t c = 0; c < cols_; ++c) {
            const Element s = (*this)(src, c);
            if (s) set(r, c, F.add((*this)(r, c), F.mul(factor, s)));
        }
    }
    void scale_row(std::size_t r, Element factor) {
        for (auto& v : row(r)) v = field_->mul(v, factor);
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
    }

    friend bool operator==(const MatrixGF& a, const MatrixGF& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
               (a.field_ == b.field_ || (a.field_ && b.field_ && *a.field_ == *b.field_));
    }

private:
    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Element> data_;
};

struct RrefResult {
    MatrixGF matrix;                  // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column of each remaining row
};

/// Gauss-Jordan elimination; pivots normalized to 1. The result is canonical
/// for the row space.
inline RrefResult rref(const MatrixGF& m) {
    MatrixGF a = m;
    const auto& F = *a.field();
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < a.rows() && a(pivot, c) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        a.swap_rows(rank, pivot);
        a.scale_row(rank, F.inv(a(rank, c)));
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (r != rank && a(r, c) != 0) a.add_scaled_row(r, rank, F.neg(a(r, c)));
        pivots.push_back(c);
        ++rank;
    }
    std::vector<std::size_t> keep(rank);
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    return {a.select_rows(keep), std::move(pivots)};
}

inline std::size_t rank(const MatrixGF& m) {
    // Forward elimination only; cheaper than a full rref.
    if (m.rows() == 0 || m.cols() == 0) return 0;
    MatrixGF a = m;
    const auto& F = *a.field();
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < a.rows() && a(pivot, c) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        a.swap_rows(r, pivot);
        const Element inv = F.inv(a(r, c));
        for (std::size_t i = r + 1; i < a.rows(); ++i)
            if (a(i, c) != 0) a.add_scaled_row(i, r, F.neg(F.mul(a(i, c), inv)));
        ++r;
    }
    return r;
}

/// Basis of the right null space {x : M x^T = 0}, one basis vector per row.
inline MatrixGF kernel(const MatrixGF& m) {
    const auto& F = *m.field();
    const auto reduced = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : reduced.pivots) is_pivot[c] = true;
    const std::size_t nullity = m.cols() - reduced.pivots.size();
    MatrixGF basis(m.field(), nullity, m.cols());
    std::size_t out = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        basis.set(out, f, 1);
        for (std::size_t i = 0; i < reduced.pivots.size(); ++i)
            basis.set(out, reduced.pivots[i], F.neg(reduced.matrix(i, f)));
        ++out;
    }
    return basis;
}

inline MatrixGF multiply(const MatrixGF& a, const MatrixGF& b) {
    if (!same_field(a.field(), b.field())) throw FieldMismatch("multiply over different fields");
    if (a.cols() != b.rows()) throw PreconditionError("inner dimensions differ in matrix product");
    const auto& F = *a.field();
    MatrixGF out(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const Element x = a(i, l);
            if (!x) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Element y = b(l, j);
                if (y) out.set(i, j, F.add(out(i, j), F.mul(x, y)));
            }
        }
    return out;
}

struct SystematicForm {
    MatrixGF matrix;                        // (I_k | A)
    std::vector<std::size_t> permutation;   // permutation[j] = original column now at position j
};

/// Brings a full-row-rank generator into (I_k | A) form, permuting columns
/// only where the leading k columns are not independent.
inline SystematicForm systematic(const MatrixGF& g) {
    auto reduced = rref(g);
    if (reduced.pivots.size() != g.rows())
        throw PreconditionError("generator matrix is rank deficient (rank " + std::to_string(reduced.pivots.size()) +
                                " < " + std::to_string(g.rows()) + ")");
    std::vector<std::size_t> perm = reduced.pivots;
    std::vector<bool> used(g.cols(), false);
    for (auto c : perm) used[c] = true;
    for (std::size_t c = 0; c < g.cols(); ++c)
        if (!used[c]) perm.push_back(c);
    return {reduced.matrix.select_columns(perm), std::move(perm)};
}

/// (a_ij B) block layout.
inline MatrixGF kronecker(const MatrixGF& a, const MatrixGF& b) {
    if (!same_field(a.field(), b.field())) throw FieldMismatch("Kronecker product over different fields");
    const auto& F = *a.field();
    MatrixGF out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Element x = a(i, j);
            if (!x) continue;
            for (std::size_t u = 0; u < b.rows(); ++u)
                for (std::size_t v = 0; v < b.cols(); ++v)
                    out.set(i * b.rows() + u, j * b.cols() + v, F.mul(x, b(u, v)));
        }
    return out;
}

/// Replaces every row u of M (over GF(p^m)) by the ell rows beta_b * M[u,:]
/// for the polynomial basis beta_b = x^b, b < ell. Row (u, b) lands at index
/// u * ell + b. Entries stay in the big field; coefficient extraction is the
/// caller's job (see prime_field_image).
inline MatrixGF subfield_expand(const MatrixGF& m, unsigned ell) {
    const auto& F = *m.field();
    if (ell == 0 || F.degree() % ell != 0)
        throw PreconditionError("expansion degree " + std::to_string(ell) + " does not divide the extension degree " +
                                std::to_string(F.degree()));
    MatrixGF out(m.field(), m.rows() * ell, m.cols());
    Element beta = 1;
    const Element x = F.degree() > 1 ? F.characteristic() : 1;
    for (unsigned b = 0; b < ell; ++b) {
        for (std::size_t u = 0; u < m.rows(); ++u)
            for (std::size_t j = 0; j < m.cols(); ++j) out.set(u * ell + b, j, F.mul(beta, m(u, j)));
        beta = F.mul(beta, x);
    }
    return out;
}

/// Image over the prime subfield: every entry becomes its m coefficient digits,
/// so an r x c matrix over GF(p^m) becomes r x (c*m) over GF(p).
inline MatrixGF prime_field_image(const MatrixGF& m) {
    const auto& F = *m.field();
    auto prime = FiniteField::make(F.characteristic());
    const unsigned deg = F.degree();
    MatrixGF out(prime, m.rows(), m.cols() * deg);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            auto digits = F.coefficients(m(r, c));
            for (unsigned t = 0; t < deg; ++t) out.set(r, c * deg + t, digits[t]);
        }
    return out;
}

}  // namespace mllrc
