#pragma once

// Linear codes over GF(q): generator/parity-check pairs, exhaustive distance,
// shortening, entropy of coordinate sets, and repair locality.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mllrc/error.hpp"
#include "mllrc/galois.hpp"

namespace mllrc {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Enumeration budget: MLLRC_BUDGET if set to a positive integer, else 10^8.
inline std::uint64_t default_budget() {
    if (const char* env = std::getenv("MLLRC_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return kDefaultBudget;
}

/// q^k, saturating at UINT64_MAX.
inline std::uint64_t saturating_power(std::uint64_t q, std::size_t k) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (v > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
        v *= q;
    }
    return v;
}

inline void check_budget(std::uint64_t q, std::size_t k, std::uint64_t budget, const std::string& what) {
    const auto cost = saturating_power(q, k);
    if (cost > budget)
        throw BudgetExceeded(what + " needs " + std::to_string(q) + "^" + std::to_string(k) +
                             " evaluations, budget is " + std::to_string(budget));
}

/// Visits every nonzero word of the row space of g exactly once up to scalar
/// multiples (the first nonzero message symbol is fixed to 1). The visitor
/// gets (support mask, weight, materialize) where materialize() returns the
/// word; the mask is only meaningful when cols <= 64. Returning false stops.
template <class Visit>
void enumerate_projective(const MatrixGF& g, std::uint64_t budget, const std::string& what, Visit&& visit) {
    const auto& F = *g.field();
    const std::size_t k = g.rows(), n = g.cols();
    if (k == 0) return;
    check_budget(F.order(), k, budget, what);
    const bool masks = n <= 64;

    if (F.order() == 2 && masks) {
        std::vector<std::uint64_t> rows(k, 0);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (g(r, c)) rows[r] |= std::uint64_t{1} << c;
        for (std::size_t lead = 0; lead < k; ++lead) {
            std::uint64_t word = rows[lead];
            auto emit = [&](std::uint64_t w) {
                auto materialize = [w, n]() {
                    std::vector<Element> out(n);
                    for (std::size_t c = 0; c < n; ++c) out[c] = (w >> c) & 1u;
                    return out;
                };
                return visit(w, std::popcount(w), materialize);
            };
            if (!emit(word)) return;
            const std::size_t rest = k - 1 - lead;
            const std::uint64_t count = std::uint64_t{1} << rest;
            for (std::uint64_t s = 1; s < count; ++s) {
                word ^= rows[lead + 1 + static_cast<std::size_t>(std::countr_zero(s))];
                if (!emit(word)) return;
            }
        }
        return;
    }

    // Digit v of the odometer stands for the field element order[v]:
    // 0, 1, then the remaining elements in increasing integer order.
    const std::uint32_t q = F.order();
    std::vector<Element> order(q);
    for (Element v = 0; v < q; ++v) order[v] = v;
    // diff[(r*q + v)*n + c] = (order[v+1] - order[v]) * g[r][c], wrap at v = q-1.
    std::vector<Element> diff(static_cast<std::size_t>(k) * q * n);
    for (std::size_t r = 0; r < k; ++r)
        for (std::uint32_t v = 0; v < q; ++v) {
            const Element next = v + 1 < q ? order[v + 1] : 0;
            const Element delta = F.sub(next, order[v]);
            for (std::size_t c = 0; c < n; ++c)
                diff[(r * q + v) * n + c] = F.mul(delta, g(r, c));
        }

    std::vector<Element> word(n);
    std::vector<std::uint32_t> digit(k);
    for (std::size_t lead = 0; lead < k; ++lead) {
        std::uint64_t mask = 0;
        int weight = 0;
        for (std::size_t c = 0; c < n; ++c) {
            word[c] = g(lead, c);
            if (word[c]) {
                ++weight;
                if (masks) mask |= std::uint64_t{1} << c;
            }
        }
        std::fill(digit.begin(), digit.end(), 0);
        auto materialize = [&word]() { return word; };
        if (!visit(mask, weight, materialize)) return;
        for (;;) {
            std::size_t j = lead + 1;
            for (; j < k; ++j) {
                const Element* d = &diff[(j * q + digit[j]) * n];
                for (std::size_t c = 0; c < n; ++c) {
                    if (!d[c]) continue;
                    const Element before = word[c];
                    const Element after = F.add(before, d[c]);
                    word[c] = after;
                    if (before && !after) {
                        --weight;
                        if (masks) mask &= ~(std::uint64_t{1} << c);
                    } else if (!before && after) {
                        ++weight;
                        if (masks) mask |= std::uint64_t{1} << c;
                    }
                }
                if (++digit[j] < q) break;
                digit[j] = 0;  // carry
            }
            if (j == k) break;
            if (!visit(mask, weight, materialize)) return;
        }
    }
}

class LinearCode {
public:
    /// Code spanned by the rows of g, which must have full row rank.
    static LinearCode from_generator(MatrixGF g) {
        if (g.cols() == 0) throw PreconditionError("code length must be at least 1");
        if (g.rows() == 0) throw PreconditionError("code dimension must be at least 1");
        const auto r = rank(g);
        if (r != g.rows())
            throw PreconditionError("generator matrix is rank deficient (rank " + std::to_string(r) + " < " +
                                    std::to_string(g.rows()) + " rows)");
        MatrixGF h = kernel(g);
        return LinearCode(std::move(g), std::move(h));
    }

    /// Code {x : H x^T = 0}; H must have full row rank and fewer rows than columns.
    static LinearCode from_parity_check(MatrixGF h) {
        if (h.cols() == 0) throw PreconditionError("code length must be at least 1");
        const auto r = rank(h);
        if (r != h.rows())
            throw PreconditionError("parity-check matrix is rank deficient (rank " + std::to_string(r) + " < " +
                                    std::to_string(h.rows()) + " rows)");
        if (h.rows() >= h.cols()) throw PreconditionError("parity-check matrix leaves dimension 0");
        MatrixGF g = kernel(h);
        return LinearCode(std::move(g), std::move(h));
    }

    const FieldPtr& field() const { return g_.field(); }
    std::size_t length() const { return g_.cols(); }
    std::size_t dimension() const { return g_.rows(); }
    std::uint32_t q() const { return field()->order(); }
    const MatrixGF& generator() const { return g_; }
    const MatrixGF& parity_check() const { return h_; }

    LinearCode dual() const {
        if (h_.rows() == 0) throw PreconditionError("dual of the full space has dimension 0");
        return LinearCode(h_, g_);
    }

    /// Exact minimum distance by enumeration of all codewords (up to scaling).
    int min_distance(std::uint64_t budget = default_budget()) const {
        const int cached = d_cache_->load(std::memory_order_relaxed);
        if (cached >= 0) return cached;
        int best = static_cast<int>(length()) + 1;
        enumerate_projective(g_, budget, "minimum distance of a [" + std::to_string(length()) + "," +
                                             std::to_string(dimension()) + "] code",
                             [&](std::uint64_t, int w, auto&&) {
                                 if (w < best) best = w;
                                 return best > 1;
                             });
        d_cache_->store(best, std::memory_order_relaxed);
        return best;
    }
    std::optional<int> cached_distance() const {
        const int v = d_cache_->load(std::memory_order_relaxed);
        return v >= 0 ? std::optional<int>(v) : std::nullopt;
    }

    /// Codewords with c_i = 0, coordinate i deleted. A zero column of G is an
    /// error unless allow_zero_column, in which case the coordinate is just
    /// dropped and k is kept.
    LinearCode shorten(std::size_t i, bool allow_zero_column = false) const {
        if (i >= length())
            throw PreconditionError("shorten position " + std::to_string(i) + " out of range for length " +
                                    std::to_string(length()));
        if (length() == 1) throw PreconditionError("cannot shorten a length-1 code");
        const auto& F = *field();
        std::size_t pivot = dimension();
        for (std::size_t r = 0; r < dimension(); ++r)
            if (g_(r, i) != 0) {
                pivot = r;
                break;
            }
        if (pivot == dimension()) {
            if (!allow_zero_column)
                throw PreconditionError("column " + std::to_string(i) +
                                        " of the generator is zero; shortening would not reduce the dimension");
            return from_generator(g_.remove_column(i));
        }
        if (dimension() == 1) throw PreconditionError("shortening a dimension-1 code leaves dimension 0");
        MatrixGF g = g_;
        const Element inv = F.inv(g(pivot, i));
        for (std::size_t r = 0; r < dimension(); ++r)
            if (r != pivot && g(r, i) != 0) g.add_scaled_row(r, pivot, F.neg(F.mul(g(r, i), inv)));
        return from_generator(g.remove_row(pivot).remove_column(i));
    }

    /// Shortens at every listed original position (duplicates rejected).
    LinearCode shorten_set(std::vector<std::size_t> positions, bool allow_zero_column = false) const {
        std::sort(positions.begin(), positions.end());
        if (std::adjacent_find(positions.begin(), positions.end()) != positions.end())
            throw PreconditionError("duplicate shorten position");
        LinearCode out = *this;
        for (auto it = positions.rbegin(); it != positions.rend(); ++it) out = out.shorten(*it, allow_zero_column);
        return out;
    }

    /// Same row space.
    bool same_code(const LinearCode& other) const {
        if (!same_field(field(), other.field()) || length() != other.length() || dimension() != other.dimension())
            return false;
        return rref(g_).matrix == rref(other.g_).matrix;
    }

private:
    LinearCode(MatrixGF g, MatrixGF h)
        : g_(std::move(g)), h_(std::move(h)), d_cache_(std::make_shared<std::atomic<int>>(-1)) {}

    MatrixGF g_;
    MatrixGF h_;
    std::shared_ptr<std::atomic<int>> d_cache_;
};

/// H(I) for a linear code: rank of the columns of G indexed by I.
inline std::size_t entropy(const LinearCode& code, const std::vector<std::size_t>& coords) {
    for (auto c : coords)
        if (c >= code.length()) throw PreconditionError("coordinate " + std::to_string(c) + " out of range");
    if (coords.empty()) return 0;
    return rank(code.generator().select_columns(coords));
}

/// c_target = sum coefficients[j] * c_{helpers[j]} for every codeword.
struct RepairSet {
    std::size_t target = 0;
    std::vector<std::size_t> helpers;
    std::vector<Element> coefficients;

    std::size_t size() const { return helpers.size(); }
};

inline bool repair_holds(const LinearCode& code, const RepairSet& rs) {
    const auto& F = *code.field();
    const auto& g = code.generator();
    for (std::size_t r = 0; r < g.rows(); ++r) {
        Element acc = 0;
        for (std::size_t j = 0; j < rs.helpers.size(); ++j) acc = F.add(acc, F.mul(rs.coefficients[j], g(r, rs.helpers[j])));
        if (acc != g(r, rs.target)) return false;
    }
    return true;
}

struct LocalityClass {
    std::vector<std::size_t> coords;  // sorted
    int r = 0;
    std::size_t size() const { return coords.size(); }
};

/// Classes sorted by strictly increasing r.
struct LocalityProfile {
    std::vector<LocalityClass> classes;

    std::size_t length() const {
        std::size_t n = 0;
        for (const auto& c : classes) n += c.size();
        return n;
    }
    std::vector<std::pair<int, int>> shape() const {
        std::vector<std::pair<int, int>> out;
        for (const auto& c : classes) out.emplace_back(static_cast<int>(c.size()), c.r);
        return out;
    }
};

enum class LocalityMode { loose, strict };

namespace detail {

inline void require_mask_length(const LinearCode& code) {
    if (code.length() > 64)
        throw PreconditionError("locality computation supports length <= 64, got " + std::to_string(code.length()));
}

/// Smallest repair set of each coordinate whose helpers lie inside allowed[i].
/// One pass over the dual. Equal sizes resolve to the lexicographically
/// smallest helper set.
inline std::vector<std::optional<RepairSet>> repair_sets(const LinearCode& code, const std::vector<std::uint64_t>& allowed,
                                                         std::uint64_t budget) {
    require_mask_length(code);
    const std::size_t n = code.length();
    const auto& F = *code.field();
    std::vector<std::optional<RepairSet>> out(n);
    if (code.parity_check().rows() == 0) return out;

    std::vector<int> best_weight(n, std::numeric_limits<int>::max());
    std::vector<std::uint64_t> best_mask(n, 0);
    std::vector<std::vector<Element>> best_word(n);

    enumerate_projective(code.parity_check(), budget, "dual enumeration of a [" + std::to_string(n) + "," +
                                                          std::to_string(code.dimension()) + "] code",
                         [&](std::uint64_t mask, int w, auto&& materialize) {
                             std::uint64_t rest = mask;
                             std::vector<Element> word;
                             while (rest) {
                                 const auto i = static_cast<std::size_t>(std::countr_zero(rest));
                                 rest &= rest - 1;
                                 const std::uint64_t self = std::uint64_t{1} << i;
                                 if ((mask & ~self & ~allowed[i]) != 0) continue;
                                 bool better = w < best_weight[i];
                                 if (!better && w == best_weight[i]) {
                                     const std::uint64_t diff = (mask ^ best_mask[i]);
                                     better = diff != 0 && (mask & (diff & (~diff + 1))) != 0;
                                 }
                                 if (!better) continue;
                                 if (word.empty()) word = materialize();
                                 best_weight[i] = w;
                                 best_mask[i] = mask;
                                 best_word[i] = word;
                             }
                             return true;
                         });

    for (std::size_t i = 0; i < n; ++i) {
        if (best_word[i].empty()) continue;
        const auto& h = best_word[i];
        RepairSet rs;
        rs.target = i;
        const Element scale = F.neg(F.inv(h[i]));
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || h[j] == 0) continue;
            rs.helpers.push_back(j);
            rs.coefficients.push_back(F.mul(scale, h[j]));
        }
        out[i] = std::move(rs);
    }
    return out;
}

inline std::uint64_t full_mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace detail

struct CoordinateLocality {
    int r = 0;
    RepairSet witness;
};

/// Locality of coordinate i: (smallest weight of a dual word covering i) - 1,
/// optionally with helpers restricted to restrict_to.
inline CoordinateLocality locality_of_coordinate(const LinearCode& code, std::size_t i,
                                                 const std::optional<std::vector<std::size_t>>& restrict_to = std::nullopt,
                                                 std::uint64_t budget = default_budget()) {
    detail::require_mask_length(code);
    if (i >= code.length()) throw PreconditionError("coordinate " + std::to_string(i) + " out of range");
    if (code.parity_check().rows() == 0) throw PreconditionError("code has k = n; no repair relation exists");
    std::vector<std::uint64_t> allowed(code.length(), detail::full_mask(code.length()));
    if (restrict_to) {
        std::uint64_t m = 0;
        for (auto c : *restrict_to) {
            if (c >= code.length()) throw PreconditionError("coordinate " + std::to_string(c) + " out of range");
            m |= std::uint64_t{1} << c;
        }
        allowed[i] = m;
    }
    auto sets = detail::repair_sets(code, allowed, budget);
    if (!sets[i]) throw PreconditionError("coordinate " + std::to_string(i) + " has no repair relation");
    return {static_cast<int>(sets[i]->size()), std::move(*sets[i])};
}

/// Exact locality of every coordinate (unrestricted).
inline std::vector<CoordinateLocality> all_localities(const LinearCode& code, std::uint64_t budget = default_budget()) {
    detail::require_mask_length(code);
    if (code.parity_check().rows() == 0) throw PreconditionError("code has k = n; no repair relation exists");
    std::vector<std::uint64_t> allowed(code.length(), detail::full_mask(code.length()));
    auto sets = detail::repair_sets(code, allowed, budget);
    std::vector<CoordinateLocality> out;
    out.reserve(code.length());
    for (std::size_t i = 0; i < code.length(); ++i) {
        if (!sets[i]) throw PreconditionError("coordinate " + std::to_string(i) + " has no repair relation");
        out.push_back({static_cast<int>(sets[i]->size()), std::move(*sets[i])});
    }
    return out;
}

/// Loose profile: coordinates grouped by their exact locality.
inline LocalityProfile profile_from_localities(const std::vector<CoordinateLocality>& loc) {
    std::vector<int> values;
    for (const auto& l : loc) values.push_back(l.r);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    LocalityProfile p;
    for (int r : values) {
        LocalityClass cls;
        cls.r = r;
        for (std::size_t i = 0; i < loc.size(); ++i)
            if (loc[i].r == r) cls.coords.push_back(i);
        p.classes.push_back(std::move(cls));
    }
    return p;
}

inline LocalityProfile locality_profile(const LinearCode& code, std::uint64_t budget = default_budget()) {
    return profile_from_localities(all_localities(code, budget));
}

struct ProfileCheck {
    bool ok = false;
    std::vector<std::optional<RepairSet>> witnesses;  // per coordinate; empty optional = no admissible repair set
};

inline void validate_profile(const LocalityProfile& p, std::size_t n) {
    std::vector<bool> seen(n, false);
    int last_r = -1;
    for (const auto& cls : p.classes) {
        if (cls.coords.empty()) throw PreconditionError("empty locality class");
        if (cls.r <= last_r) throw PreconditionError("localities must be strictly increasing");
        last_r = cls.r;
        for (auto c : cls.coords) {
            if (c >= n) throw PreconditionError("coordinate " + std::to_string(c) + " out of range");
            if (seen[c]) throw PreconditionError("coordinate " + std::to_string(c) + " in two classes");
            seen[c] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i]) throw PreconditionError("coordinate " + std::to_string(i) + " not covered by the profile");
}

/// Every coordinate of class i has a repair set of size <= r_i (inside the
/// class when strict).
inline ProfileCheck verify_profile(const LinearCode& code, const LocalityProfile& profile, LocalityMode mode,
                                   std::uint64_t budget = default_budget()) {
    detail::require_mask_length(code);
    validate_profile(profile, code.length());
    const std::size_t n = code.length();
    ProfileCheck out;
    out.witnesses.assign(n, std::nullopt);
    if (code.parity_check().rows() == 0) return out;
    std::vector<std::uint64_t> allowed(n, detail::full_mask(n));
    std::vector<int> bound(n, 0);
    for (const auto& cls : profile.classes) {
        std::uint64_t m = 0;
        for (auto c : cls.coords) m |= std::uint64_t{1} << c;
        for (auto c : cls.coords) {
            if (mode == LocalityMode::strict) allowed[c] = m;
            bound[c] = cls.r;
        }
    }
    auto sets = detail::repair_sets(code, allowed, budget);
    out.ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (sets[i] && static_cast<int>(sets[i]->size()) <= bound[i]) {
            out.witnesses[i] = std::move(sets[i]);
        } else {
            out.ok = false;
        }
    }
    return out;
}

/// Checks that a given coordinate set carries a dual word with exactly that support.
inline bool is_repair_group(const LinearCode& code, const std::vector<std::size_t>& group) {
    for (auto c : group)
        if (c >= code.length()) return false;
    const MatrixGF ker = kernel(code.generator().select_columns(group));
    if (ker.rows() == 0) return false;
    bool found = false;
    enumerate_projective(ker, default_budget(), "repair group test", [&](std::uint64_t, int w, auto&&) {
        if (static_cast<std::size_t>(w) == group.size()) found = true;
        return !found;
    });
    return found;
}

/// Disjoint coordinate sets of size group_size, each the support of a dual
/// word, chosen greedily in lexicographic subset order.
inline std::vector<std::vector<std::size_t>> detect_repair_groups(const LinearCode& code, std::size_t group_size) {
    const std::size_t n = code.length();
    if (group_size < 2 || group_size > n) throw PreconditionError("repair group size out of range");
    std::vector<std::vector<std::size_t>> groups;
    std::vector<bool> used(n, false);
    std::vector<std::size_t> idx(group_size);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (;;) {
        bool disjoint = true;
        for (auto c : idx)
            if (used[c]) {
                disjoint = false;
                break;
            }
        if (disjoint && is_repair_group(code, idx)) {
            groups.push_back(idx);
            for (auto c : idx) used[c] = true;
        }
        // next combination
        std::size_t pos = group_size;
        while (pos > 0 && idx[pos - 1] == n - group_size + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < group_size; ++j) idx[j] = idx[j - 1] + 1;
    }
    return groups;
}

}  // namespace mllrc
