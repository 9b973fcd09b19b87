#pragma once

// Code constructions: Tamo-Barg evaluation codes, column deletion inside repair
// groups (two-locality codes from one-locality ones), multiple-locality
// Pyramid codes, generalized concatenation and the binary two-level family.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mllrc/bounds.hpp"
#include "mllrc/error.hpp"
#include "mllrc/galois.hpp"
#include "mllrc/linear_code.hpp"

namespace mllrc {

/// Splits q into p^m; throws unless q is a prime power.
inline std::pair<std::uint32_t, unsigned> prime_power(std::uint32_t q) {
    if (q < 2) throw PreconditionError("field order must be at least 2");
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    unsigned m = 0;
    std::uint32_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1) throw PreconditionError(std::to_string(q) + " is not a prime power");
    return {p, m};
}

inline FieldPtr field_of_order(std::uint32_t q) {
    auto [p, m] = prime_power(q);
    return FiniteField::make(p, m);
}

/// Evaluation code with good polynomial x^(r+1) on the order-n subgroup of
/// GF(q)*. Coordinates 0..n-1 are grouped in consecutive runs of r+1 that
/// share a value of x^(r+1); each run is a repair group.
inline LinearCode tamo_barg(std::uint32_t q, int n, int k, int r) {
    auto F = field_of_order(q);
    if (n < 2 || k < 1 || r < 1) throw PreconditionError("need n >= 2, k >= 1, r >= 1");
    if (n % (r + 1) != 0) throw PreconditionError("(r+1) must divide n");
    if ((q - 1) % static_cast<std::uint32_t>(n) != 0) throw PreconditionError("n must divide q-1");
    if (k % r != 0) throw PreconditionError("r must divide k");
    if (k > n) throw PreconditionError("need k <= n");
    const int groups = n / (r + 1);
    if (k / r > groups) throw PreconditionError("k/r exceeds the number of repair groups");
    const Element omega = F->exp((q - 1) / static_cast<std::uint32_t>(n));
    std::vector<Element> points;
    for (int c = 0; c < groups; ++c)
        for (int e = 0; e <= r; ++e) points.push_back(F->pow(omega, static_cast<std::uint64_t>(c + e * groups)));
    MatrixGF g(F, static_cast<std::size_t>(k), static_cast<std::size_t>(n));
    std::size_t row = 0;
    for (int j = 0; j < k / r; ++j)
        for (int i = 0; i < r; ++i, ++row) {
            const int e = i + (r + 1) * j;
            for (int c = 0; c < n; ++c) g.set(row, c, F->pow(points[c], static_cast<std::uint64_t>(e)));
        }
    return LinearCode::from_generator(std::move(g));
}

/// Coordinates deleted when count groups each lose (group size - 1 - r1)
/// coordinates: the smallest ones of each group.
inline std::vector<std::size_t> group_deletions(const std::vector<std::vector<std::size_t>>& groups, std::size_t count,
                                                int r1) {
    if (count > groups.size())
        throw PreconditionError("need " + std::to_string(count) + " repair groups, have " +
                                std::to_string(groups.size()));
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < count; ++g) {
        auto grp = groups[g];
        std::sort(grp.begin(), grp.end());
        const int r2 = static_cast<int>(grp.size()) - 1;
        if (r1 < 1 || r1 > r2) throw PreconditionError("need 1 <= r1 <= r2");
        for (int i = 0; i < r2 - r1; ++i) out.push_back(grp[static_cast<std::size_t>(i)]);
    }
    return out;
}

inline void check_groups(const LinearCode& base, const std::vector<std::vector<std::size_t>>& groups) {
    std::vector<bool> seen(base.length(), false);
    for (const auto& g : groups) {
        if (g.size() != groups.front().size()) throw PreconditionError("repair groups differ in size");
        for (auto c : g) {
            if (c >= base.length()) throw PreconditionError("repair group coordinate out of range");
            if (seen[c]) throw PreconditionError("repair groups overlap");
            seen[c] = true;
        }
        if (!is_repair_group(base, g)) throw PreconditionError("set is not a repair group of the base code");
    }
}

/// Two-locality code from an r2-local base: in each of the first n1/(r1+1)
/// repair groups, r2-r1 coordinates are shortened away.
inline LinearCode algorithm1_ml_lrc(const LinearCode& base, std::vector<std::vector<std::size_t>> groups, int r1, int n1) {
    if (groups.empty()) throw PreconditionError("no repair groups given");
    if (r1 < 1 || n1 < 0 || n1 % (r1 + 1) != 0) throw PreconditionError("(r1+1) must divide n1");
    check_groups(base, groups);
    const int r2 = static_cast<int>(groups.front().size()) - 1;
    if (r1 > r2) throw PreconditionError("need r1 <= r2");
    const int count = n1 / (r1 + 1);
    if (static_cast<int>(base.length()) < (r2 + 1) * count)
        throw PreconditionError("base code too short for n1");
    return base.shorten_set(group_deletions(groups, static_cast<std::size_t>(count), r1));
}

/// Same deletion, parameterized by the number alpha of touched groups.
inline LinearCode algorithm3_ml_lrc(const LinearCode& base, std::vector<std::vector<std::size_t>> groups, int r1,
                                    int alpha) {
    if (alpha == 0) return base;
    if (groups.empty()) throw PreconditionError("no repair groups given");
    check_groups(base, groups);
    const int r2 = static_cast<int>(groups.front().size()) - 1;
    const int rho = ceil_div(static_cast<int>(base.length()), r2 + 1);
    if (alpha < 0 || alpha > rho) throw PreconditionError("alpha out of range [0, " + std::to_string(rho) + "]");
    return base.shorten_set(group_deletions(groups, static_cast<std::size_t>(alpha), r1));
}

/// Profile after shortening one coordinate of class alpha (0-based) of a
/// Singleton-optimal code.
inline ProfileShape predict_shortened_profile(const ProfileShape& shape, std::size_t alpha) {
    validate_shape(shape);
    if (alpha >= shape.size()) throw PreconditionError("class index out of range");
    auto [na, ra] = shape[alpha];
    if (ra < 2) throw PreconditionError("shortening a locality-1 class would create locality 0");
    if (na - ra - 1 < 0) throw PreconditionError("class " + std::to_string(alpha) + " would go negative");
    ProfileShape out = shape;
    out[alpha].first = na - ra - 1;
    if (alpha > 0 && shape[alpha - 1].second == ra - 1) {
        out[alpha - 1].first += ra;
    } else {
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(alpha), {ra, ra - 1});
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& c) { return c.first == 0; }), out.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

// ---------------------------------------------------------------------------
// Entropy sets

/// Builds I inside one class: anchors taken in increasing order, each with
/// its repair set, padded after every round to min((m+1)(r+1), n_i) with the
/// smallest unused class coordinates. `repair` maps a coordinate to its
/// helpers, which must lie inside the class.
inline std::vector<std::size_t> entropy_set(const std::vector<std::size_t>& cls, int r,
                                            const std::vector<std::optional<RepairSet>>& repair, int t) {
    const int ni = static_cast<int>(cls.size());
    if (r < 1) throw PreconditionError("locality must be at least 1");
    if (t < 1 || t > ceil_div(ni, r + 1)) throw PreconditionError("t out of range");
    std::vector<std::size_t> sorted = cls;
    std::sort(sorted.begin(), sorted.end());
    auto in_class = [&](std::size_t c) { return std::binary_search(sorted.begin(), sorted.end(), c); };
    std::vector<std::size_t> chosen;
    auto taken = [&](std::size_t c) { return std::find(chosen.begin(), chosen.end(), c) != chosen.end(); };
    for (int m = 0; m < t; ++m) {
        std::optional<std::size_t> anchor;
        for (auto c : sorted)
            if (!taken(c)) {
                anchor = c;
                break;
            }
        if (!anchor) break;
        if (*anchor >= repair.size() || !repair[*anchor])
            throw PreconditionError("coordinate " + std::to_string(*anchor) + " has no repair set");
        const auto& rs = *repair[*anchor];
        if (static_cast<int>(rs.size()) > r)
            throw PreconditionError("repair set of coordinate " + std::to_string(*anchor) + " exceeds the locality");
        chosen.push_back(*anchor);
        for (auto h : rs.helpers) {
            if (!in_class(h))
                throw PreconditionError("repair set of coordinate " + std::to_string(*anchor) + " leaves its class");
            if (!taken(h)) chosen.push_back(h);
        }
        const auto target = static_cast<std::size_t>(std::min((m + 1) * (r + 1), ni));
        for (auto c : sorted) {
            if (chosen.size() >= target) break;
            if (!taken(c)) chosen.push_back(c);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

// ---------------------------------------------------------------------------
// Pyramid codes

struct PyramidClass {
    int r = 0;
    std::vector<std::size_t> info;                 // information indices in [0, k)
    std::vector<std::vector<std::size_t>> blocks;  // empty: consecutive chunks of size r
};

struct PyramidSpec {
    std::uint32_t q = 0;
    int k = 0;
    int d = 0;
    std::vector<PyramidClass> classes;
};

struct PyramidLayout {
    // coordinate of each local parity, per class and block
    std::vector<std::vector<std::size_t>> local_parity;
    std::vector<std::size_t> global_parity;
};

inline std::vector<std::vector<std::size_t>> pyramid_blocks(const PyramidClass& cls) {
    if (!cls.blocks.empty()) return cls.blocks;
    std::vector<std::size_t> sorted = cls.info;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < sorted.size(); i += static_cast<std::size_t>(cls.r))
        out.emplace_back(sorted.begin() + static_cast<std::ptrdiff_t>(i),
                         sorted.begin() + static_cast<std::ptrdiff_t>(std::min(sorted.size(), i + cls.r)));
    return out;
}

inline void validate_pyramid(const PyramidSpec& spec) {
    if (spec.k < 1 || spec.d < 2) throw PreconditionError("pyramid code needs k >= 1 and d >= 2");
    if (spec.classes.empty()) throw PreconditionError("pyramid code needs at least one class");
    if (spec.q < static_cast<std::uint32_t>(spec.k + spec.d - 1))
        throw PreconditionError("field of order " + std::to_string(spec.q) + " too small for a [" +
                                std::to_string(spec.k + spec.d - 1) + "," + std::to_string(spec.k) +
                                "] Reed-Solomon base");
    std::vector<int> owner(static_cast<std::size_t>(spec.k), -1);
    int last_r = 0;
    for (std::size_t i = 0; i < spec.classes.size(); ++i) {
        const auto& cls = spec.classes[i];
        if (cls.r <= last_r) throw PreconditionError("class localities must be strictly increasing and positive");
        last_r = cls.r;
        if (cls.info.empty()) throw PreconditionError("empty pyramid class");
        for (auto x : cls.info) {
            if (x >= static_cast<std::size_t>(spec.k)) throw PreconditionError("information index out of range");
            if (owner[x] != -1) throw PreconditionError("information index in two classes");
            owner[x] = static_cast<int>(i);
        }
        auto blocks = pyramid_blocks(cls);
        std::vector<std::size_t> flat;
        for (const auto& b : blocks) {
            if (b.empty()) throw PreconditionError("empty pyramid block");
            if (static_cast<int>(b.size()) > cls.r) throw PreconditionError("pyramid block larger than its locality");
            flat.insert(flat.end(), b.begin(), b.end());
        }
        std::sort(flat.begin(), flat.end());
        auto info = cls.info;
        std::sort(info.begin(), info.end());
        if (flat != info) throw PreconditionError("pyramid blocks do not partition their class");
    }
    for (auto o : owner)
        if (o == -1) throw PreconditionError("information indices not covered by the classes");
}

/// Layout: k information symbols, one local parity per block (class order,
/// then block order), then global parities 2..d-1 of the Reed-Solomon base.
inline std::pair<LinearCode, PyramidLayout> ml_pyramid_with_layout(const PyramidSpec& spec) {
    validate_pyramid(spec);
    auto F = field_of_order(spec.q);
    const int k = spec.k, d = spec.d, nb = k + d - 1;
    MatrixGF vand(F, static_cast<std::size_t>(k), static_cast<std::size_t>(nb));
    for (int i = 0; i < k; ++i)
        for (int c = 0; c < nb; ++c) vand.set(i, c, F->pow(static_cast<Element>(c), static_cast<std::uint64_t>(i)));
    // any k columns of a Vandermonde matrix are independent, so no permutation
    const MatrixGF sys = rref(vand).matrix;

    std::size_t blocks_total = 0;
    std::vector<std::vector<std::vector<std::size_t>>> blocks;
    for (const auto& cls : spec.classes) {
        blocks.push_back(pyramid_blocks(cls));
        blocks_total += blocks.back().size();
    }
    const std::size_t n = static_cast<std::size_t>(k) + blocks_total + static_cast<std::size_t>(d - 2);
    MatrixGF g(F, static_cast<std::size_t>(k), n);
    for (int i = 0; i < k; ++i) g.set(i, i, 1);
    PyramidLayout layout;
    std::size_t col = static_cast<std::size_t>(k);
    for (const auto& cls_blocks : blocks) {
        layout.local_parity.emplace_back();
        for (const auto& b : cls_blocks) {
            for (auto x : b) g.set(x, col, sys(x, static_cast<std::size_t>(k)));
            layout.local_parity.back().push_back(col);
            ++col;
        }
    }
    for (int p = 1; p < d - 1; ++p, ++col) {
        for (int x = 0; x < k; ++x) g.set(x, col, sys(x, static_cast<std::size_t>(k + p)));
        layout.global_parity.push_back(col);
    }
    return {LinearCode::from_generator(std::move(g)), std::move(layout)};
}

inline LinearCode ml_pyramid(const PyramidSpec& spec) { return ml_pyramid_with_layout(spec).first; }

// ---------------------------------------------------------------------------
// Generalized concatenation

struct GccLevel {
    MatrixGF outer;       // k_i x N over GF(p^ell_i)
    unsigned lambda = 1;  // copies
    MatrixGF inner;       // (lambda * ell_i) x n_b over GF(p): generator of B_i \ B_{i+1}
};

struct GccSpec {
    std::vector<GccLevel> levels;
};

inline unsigned gcc_ell(const GccLevel& lv) { return lv.outer.field()->degree(); }

inline void validate_gcc(const GccSpec& spec) {
    if (spec.levels.empty()) throw PreconditionError("GCC needs at least one level");
    const auto& first = spec.levels.front();
    const auto p = first.inner.field()->characteristic();
    for (const auto& lv : spec.levels) {
        if (!lv.inner.field()->is_prime_field()) throw PreconditionError("inner codes must be over a prime field");
        if (lv.inner.field()->characteristic() != p || lv.outer.field()->characteristic() != p)
            throw FieldMismatch("GCC levels use different characteristics");
        if (lv.outer.cols() != first.outer.cols()) throw PreconditionError("outer codes differ in length");
        if (lv.inner.cols() != first.inner.cols()) throw PreconditionError("inner codes differ in length");
        if (lv.lambda < 1) throw PreconditionError("lambda must be at least 1");
        if (lv.outer.rows() == 0) throw PreconditionError("outer code dimension must be at least 1");
        if (lv.inner.rows() != lv.lambda * gcc_ell(lv))
            throw PreconditionError("inner difference code has " + std::to_string(lv.inner.rows()) +
                                    " rows, expected lambda*ell = " + std::to_string(lv.lambda * gcc_ell(lv)));
        if (rank(lv.outer) != lv.outer.rows()) throw PreconditionError("outer generator is rank deficient");
    }
    std::vector<std::vector<Element>> stacked;
    for (const auto& lv : spec.levels)
        for (std::size_t r = 0; r < lv.inner.rows(); ++r) stacked.emplace_back(lv.inner.row(r).begin(), lv.inner.row(r).end());
    const auto chain = MatrixGF::from_rows(first.inner.field(), stacked);
    if (rank(chain) != chain.rows()) throw PreconditionError("inner chain is not strictly nested (rows dependent)");
}

/// Generator of B_i: stacked difference generators of levels i..s.
inline MatrixGF gcc_inner_code(const GccSpec& spec, std::size_t level) {
    std::vector<std::vector<Element>> rows;
    for (std::size_t l = level; l < spec.levels.size(); ++l)
        for (std::size_t r = 0; r < spec.levels[l].inner.rows(); ++r)
            rows.emplace_back(spec.levels[l].inner.row(r).begin(), spec.levels[l].inner.row(r).end());
    return MatrixGF::from_rows(spec.levels.front().inner.field(), rows);
}

/// Rows indexed (level, copy t, outer row u, basis b); the block of outer
/// position j is sum_c coeff_c(x^b * A[u,j]) * inner row (t*ell + c). Blocks
/// are laid out j-major.
inline LinearCode gcc_generator(const GccSpec& spec) {
    validate_gcc(spec);
    const auto inner_field = spec.levels.front().inner.field();
    const std::size_t N = spec.levels.front().outer.cols();
    const std::size_t nb = spec.levels.front().inner.cols();
    const auto& Fq = *inner_field;
    std::vector<std::vector<Element>> rows;
    for (const auto& lv : spec.levels) {
        const unsigned ell = gcc_ell(lv);
        const MatrixGF expanded = subfield_expand(lv.outer, ell);  // row u*ell + b
        const auto& Fo = *lv.outer.field();
        for (unsigned t = 0; t < lv.lambda; ++t)
            for (std::size_t u = 0; u < lv.outer.rows(); ++u)
                for (unsigned b = 0; b < ell; ++b) {
                    std::vector<Element> row(N * nb, 0);
                    for (std::size_t j = 0; j < N; ++j) {
                        const auto coeffs = Fo.coefficients(expanded(u * ell + b, j));
                        for (unsigned c = 0; c < ell; ++c) {
                            if (!coeffs[c]) continue;
                            const auto inner_row = lv.inner.row(t * ell + c);
                            for (std::size_t v = 0; v < nb; ++v)
                                row[j * nb + v] = Fq.add(row[j * nb + v], Fq.mul(coeffs[c], inner_row[v]));
                        }
                    }
                    rows.push_back(std::move(row));
                }
    }
    return LinearCode::from_generator(MatrixGF::from_rows(inner_field, rows));
}

// ---------------------------------------------------------------------------
// Binary two-level family

/// Extended Reed-Solomon generator over F: columns are the field points in
/// integer order, then one column holding the top coefficient.
inline MatrixGF extended_rs_generator(const FieldPtr& F, std::size_t k) {
    const std::size_t q = F->order();
    if (k < 1 || k > q + 1) throw PreconditionError("extended Reed-Solomon dimension out of range");
    MatrixGF g(F, k, q + 1);
    for (std::size_t u = 0; u < k; ++u) {
        for (std::size_t c = 0; c < q; ++c) g.set(u, c, F->pow(static_cast<Element>(c), u));
        g.set(u, q, u + 1 == k ? 1 : 0);
    }
    return g;
}

/// The GCC spec of the binary two-level r-local family with shortening j.
inline GccSpec construction2_spec(int r, int j) {
    if (r < 2) throw PreconditionError("need r >= 2");
    if (r > 16) throw PreconditionError("r too large");
    const int half = 1 << (r - 1);
    if (j < 0 || j >= half - r + 1) throw PreconditionError("j out of range [0, " + std::to_string(half - r) + "]");
    const int outer_k = half - r + 1 - j;
    if (outer_k < 1) throw PreconditionError("outer code dimension would be " + std::to_string(outer_k));
    if (r % 2 == 0)
        throw PreconditionError("for even r the all-ones repetition code of length r+1 has odd weight and is not a "
                                "subcode of the single-parity-check code; the inner chain is not nested");
    auto F2 = FiniteField::make(2);
    auto Fo = FiniteField::make(2, static_cast<unsigned>(r - 1));
    const std::size_t N = static_cast<std::size_t>(half + 1 - j);

    // A_1: extended RS [2^(r-1)+1, outer_k + j], shortened at the extension
    // column and then the highest evaluation columns.
    LinearCode a1 = LinearCode::from_generator(extended_rs_generator(Fo, static_cast<std::size_t>(outer_k + j)));
    for (int s = 0; s < j; ++s) a1 = a1.shorten(a1.length() - 1);

    // A_2: binary single-parity-check code of length N.
    MatrixGF a2(F2, N - 1, N);
    for (std::size_t i = 0; i + 1 < N; ++i) {
        a2.set(i, i, 1);
        a2.set(i, N - 1, 1);
    }

    const std::size_t nb = static_cast<std::size_t>(r + 1);
    MatrixGF diff(F2, static_cast<std::size_t>(r - 1), nb);  // B_1 \ B_2: e_0 + e_c, c = 1..r-1
    for (int c = 1; c < r; ++c) {
        diff.set(static_cast<std::size_t>(c - 1), 0, 1);
        diff.set(static_cast<std::size_t>(c - 1), static_cast<std::size_t>(c), 1);
    }
    MatrixGF rep(F2, 1, nb);
    for (std::size_t c = 0; c < nb; ++c) rep.set(0, c, 1);

    GccSpec spec;
    spec.levels.push_back({a1.generator(), 1, diff});
    spec.levels.push_back({a2, 1, rep});
    return spec;
}

inline LinearCode construction2_binary_lrc(int r, int j) { return gcc_generator(construction2_spec(r, j)); }

/// Parameter triple of the binary two-level family.
inline std::tuple<int, int, int> construction2_parameters(int r, int j) {
    const int half = 1 << (r - 1);
    return {(r + 1) * (half + 1 - j), r * (half - r + 2 - j) - 1, 2 * (r + 1)};
}

}  // namespace mllrc
