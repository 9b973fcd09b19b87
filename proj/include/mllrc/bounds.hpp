#pragma once

// Upper bounds for (multiple-locality) locally repairable codes and the
// k_opt(q, n, d) oracle they consume.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mllrc/error.hpp"
#include "mllrc/linear_code.hpp"

namespace mllrc {

/// (n_i, r_i) per class, r strictly increasing.
using ProfileShape = std::vector<std::pair<int, int>>;

inline int ceil_div(int a, int b) {
    // b > 0; correct for negative a
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}
inline int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

inline void validate_shape(const ProfileShape& shape) {
    if (shape.empty()) throw PreconditionError("profile has no classes");
    int last = -1;
    for (auto [n, r] : shape) {
        if (n < 0) throw PreconditionError("class size must be non-negative");
        if (r < 1) throw PreconditionError("locality must be at least 1");
        if (r <= last) throw PreconditionError("localities must be strictly increasing");
        last = r;
    }
}

inline int shape_length(const ProfileShape& shape) {
    int n = 0;
    for (auto [ni, ri] : shape) n += ni;
    return n;
}

// ---------------------------------------------------------------------------
// k_opt oracle

struct KoptEntry {
    int k = 0;
    std::string provenance;
};

/// Largest k with sum_{i<k} ceil(d / q^i) <= n.
inline int griesmer_max_k(std::uint32_t q, int n, int d) {
    if (d <= 0) return std::max(n, 0);
    int k = 0;
    long long total = 0;
    for (;;) {
        long long qi = 1;
        for (int i = 0; i < k && qi <= d; ++i) qi *= q;
        total += (d + qi - 1) / qi;
        if (total > n) return k;
        ++k;
        if (k > n) return n;
    }
}

inline bool griesmer_feasible(std::uint32_t q, int n, int d, int k) { return k <= griesmer_max_k(q, n, d); }

class KoptTable {
public:
    using Key = std::tuple<std::uint32_t, int, int>;

    void add(std::uint32_t q, int n, int d, int k, std::string provenance) {
        if (n < 0 || d < 0 || k < 0) throw PreconditionError("k_opt table entry with negative field");
        if (k > std::max(0, n - d + 1))
            throw PreconditionError("k_opt table entry (" + std::to_string(q) + "," + std::to_string(n) + "," +
                                    std::to_string(d) + ")=" + std::to_string(k) + " violates the Singleton bound");
        if (k > 0 && !griesmer_feasible(q, n, d, k))
            throw PreconditionError("k_opt table entry (" + std::to_string(q) + "," + std::to_string(n) + "," +
                                    std::to_string(d) + ")=" + std::to_string(k) + " violates the Griesmer bound");
        entries_[{q, n, d}] = {k, std::move(provenance)};
    }

    const KoptEntry* find(std::uint32_t q, int n, int d) const {
        auto it = entries_.find({q, n, d});
        return it == entries_.end() ? nullptr : &it->second;
    }

    const std::map<Key, KoptEntry>& entries() const { return entries_; }

    /// Small binary values with d = 8, each pinned by the Plotkin bound from
    /// above and an explicit code from below.
    static KoptTable bundled() {
        KoptTable t;
        t.add(2, 6, 6, 1, "repetition code; Plotkin A(6,6)=2");
        t.add(2, 8, 8, 1, "repetition code; Plotkin A(8,8)=2");
        t.add(2, 12, 8, 2, "Plotkin A(12,8)<=4; [12,2,8] exists");
        t.add(2, 13, 8, 2, "Plotkin A(13,8)<=4; [13,2,8] exists");
        t.add(2, 14, 8, 3, "Plotkin A(14,8)<=8; shortened simplex [14,3,8]");
        t.add(2, 15, 8, 4, "Plotkin A(15,8)<=16; simplex [15,4,8]");
        t.add(2, 16, 8, 5, "Plotkin A(16,8)<=32; first-order Reed-Muller [16,5,8]");
        return t;
    }

private:
    std::map<Key, KoptEntry> entries_;
};

enum class KoptMode { chain, table, exhaustive, analytic, singleton };

inline std::string to_string(KoptMode m) {
    switch (m) {
        case KoptMode::chain: return "chain";
        case KoptMode::table: return "table";
        case KoptMode::exhaustive: return "exhaustive";
        case KoptMode::analytic: return "analytic";
        case KoptMode::singleton: return "singleton";
    }
    return "?";
}

inline KoptMode parse_kopt_mode(const std::string& s) {
    if (s == "chain") return KoptMode::chain;
    if (s == "table") return KoptMode::table;
    if (s == "exhaustive") return KoptMode::exhaustive;
    if (s == "analytic") return KoptMode::analytic;
    if (s == "singleton") return KoptMode::singleton;
    throw ParseError("unknown oracle mode '" + s + "'");
}

struct KoptValue {
    int k = 0;
    bool exact = false;
    std::string source;
};

namespace detail {

/// Plotkin bound on log2 A(n, d) for binary codes when 2d > n.
inline std::optional<int> plotkin_log2(int n, int d) {
    if (d % 2 == 1) {
        ++n;
        ++d;
    }
    if (2 * d <= n) return std::nullopt;
    const int a = 2 * (d / (2 * d - n));
    if (a <= 0) return 0;
    return std::bit_width(static_cast<unsigned>(a)) - 1;
}

/// Existence of a binary linear [n, k, >= d] code with d even, by search over
/// systematic generators (I_k | A) whose codewords all have even weight.
/// Returns nullopt when the node budget runs out.
class BinaryCodeSearch {
public:
    BinaryCodeSearch(int n, int k, int d, std::uint64_t node_budget)
        : n_(n), k_(k), d_(d), m_(n - k), budget_(node_budget) {}

    std::optional<bool> exists() {
        if (k_ <= 0) return true;
        if (m_ < 0) return false;
        // first row of A: w ones in the lowest columns, up to column symmetry
        for (int w = d_ - 1; w <= m_; w += 2) {
            const std::uint32_t row = w == 0 ? 0u : ((1u << w) - 1u);
            combos_.assign(1, {0u, 0});
            auto r = extend(row, 0);
            if (!r) return std::nullopt;
            if (*r) return true;
        }
        return false;
    }

private:
    struct Combo {
        std::uint32_t bits;
        int size;
    };

    // Adds `row`, then searches for the remaining rows in increasing order
    // starting at min_next.
    std::optional<bool> extend(std::uint32_t row, std::uint32_t min_next) {
        if (++nodes_ > budget_) return std::nullopt;
        const std::size_t old = combos_.size();
        for (std::size_t i = 0; i < old; ++i) {
            const auto& c = combos_[i];
            const int wt = c.size + 1 + std::popcount(c.bits ^ row);
            if (wt < d_) {
                combos_.resize(old);
                return false;
            }
        }
        for (std::size_t i = 0; i < old; ++i) combos_.push_back({combos_[i].bits ^ row, combos_[i].size + 1});
        const int placed = std::bit_width(old);
        std::optional<bool> result = false;
        if (placed == k_) {
            result = true;
        } else {
            const std::uint32_t limit = m_ >= 32 ? 0xffffffffu : (1u << m_);
            for (std::uint32_t next = min_next; next < limit; ++next) {
                if ((std::popcount(next) + 1) % 2 != 0) continue;  // keep codewords even
                if (std::popcount(next) + 1 < d_) continue;
                auto r = extend(next, next + 1);
                if (!r) {
                    result = std::nullopt;
                    break;
                }
                if (*r) {
                    result = true;
                    break;
                }
            }
        }
        combos_.resize(old);
        return result;
    }

    int n_, k_, d_, m_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<Combo> combos_;
};

}  // namespace detail

/// k_opt(q, n, d): largest dimension of a length-n code with distance d.
/// Lookups are flagged exact only when the value is provably the optimum.
class KoptOracle {
public:
    explicit KoptOracle(KoptMode mode = KoptMode::chain, KoptTable table = KoptTable::bundled())
        : mode_(mode), table_(std::move(table)), memo_(std::make_shared<Memo>()) {}

    KoptMode mode() const { return mode_; }
    const KoptTable& table() const { return table_; }
    void set_exhaustive_cap(int n) { exhaustive_cap_ = n; }
    void set_node_budget(std::uint64_t b) { node_budget_ = b; }

    KoptValue operator()(std::uint32_t q, int n, int d) const {
        if (mode_ == KoptMode::singleton) {
            if (n <= 0 || d > n) return {0, false, "singleton"};
            return {std::min(n, n - d + 1), false, "singleton"};
        }
        if (auto t = trivial(n, d)) return *t;
        if (mode_ == KoptMode::table || mode_ == KoptMode::chain) {
            if (const auto* e = table_.find(q, n, d)) return {e->k, true, "table: " + e->provenance};
        }
        if ((mode_ == KoptMode::exhaustive || mode_ == KoptMode::chain) && q == 2 && n <= exhaustive_cap_) {
            if (auto v = exhaustive(q, n, d)) return {*v, true, "exhaustive (linear codes)"};
        }
        return analytic(q, n, d);
    }

    /// Upper bound from Singleton, Griesmer and (binary) Plotkin. Exact only
    /// when it already collapses to 1, which a repetition code attains.
    static KoptValue analytic(std::uint32_t q, int n, int d) {
        if (auto t = trivial(n, d)) return *t;
        int k = std::min(n - d + 1, griesmer_max_k(q, n, d));
        if (q == 2)
            if (auto p = detail::plotkin_log2(n, d)) k = std::min(k, *p);
        k = std::max(k, 1);
        return {k, k == 1, "analytic"};
    }

private:
    static std::optional<KoptValue> trivial(int n, int d) {
        if (n <= 0 || d > n) return KoptValue{0, true, "trivial"};
        if (d <= 1) return KoptValue{n, true, "trivial"};
        if (d == 2) return KoptValue{n - 1, true, "trivial"};
        if (d == n) return KoptValue{1, true, "trivial"};
        return std::nullopt;
    }

    struct Memo {
        std::mutex mu;
        std::map<std::pair<int, int>, std::optional<int>> values;
    };

    std::optional<int> exhaustive(std::uint32_t q, int n, int d) const {
        if (q != 2) return std::nullopt;
        if (d % 2 == 1) return exhaustive(q, n + 1, d + 1);  // extend by overall parity
        {
            std::lock_guard<std::mutex> lock(memo_->mu);
            auto it = memo_->values.find({n, d});
            if (it != memo_->values.end()) return it->second;
        }
        std::optional<int> result;
        if (auto t = trivial(n, d)) {
            result = t->k;
        } else {
            const auto lower = exhaustive(q, n - 1, d);
            if (lower) {
                int upper = std::min({*lower + 1, n - d + 1, griesmer_max_k(q, n, d)});
                if (auto p = detail::plotkin_log2(n, d)) upper = std::min(upper, *p);
                if (upper <= *lower) {
                    result = *lower;
                } else {
                    detail::BinaryCodeSearch search(n, upper, d, node_budget_);
                    if (auto found = search.exists()) result = *found ? upper : *lower;
                }
            }
        }
        std::lock_guard<std::mutex> lock(memo_->mu);
        memo_->values[{n, d}] = result;
        return result;
    }

    KoptMode mode_;
    KoptTable table_;
    int exhaustive_cap_ = 14;
    std::uint64_t node_budget_ = 20'000'000;
    std::shared_ptr<Memo> memo_;
};

// ---------------------------------------------------------------------------
// Bound reports

struct BoundReport {
    std::string bound;
    int value = 0;
    std::vector<int> witness;  // t, (t_1..t_s), or kappa_i
    bool exact = true;         // every k_opt value used was exact
    bool collapse_applied = false;
    std::string oracle_mode;
};

/// d <= n - k + 2 - ceil(k / r).
inline int singleton_r_local(int n, int k, int r) {
    if (k < 1 || k > n) throw PreconditionError("need 1 <= k <= n");
    if (r < 1) throw PreconditionError("locality must be at least 1");
    return std::max(0, n - k + 2 - ceil_div(k, r));
}

/// Minimizes t*r + k_opt(n - t(r+1), d) over t in [1, t*]; the minimizer
/// reported is the largest t attaining the minimum.
inline BoundReport cm_bound(int n, int d, int r, std::uint32_t q, const KoptOracle& oracle,
                            std::optional<int> k_hint = std::nullopt) {
    if (n < 1 || r < 1 || d < 1) throw PreconditionError("cm bound needs n, r, d >= 1");
    int t_max = ceil_div(n, r + 1);
    if (k_hint) t_max = std::min(t_max, ceil_div(*k_hint, r));
    BoundReport rep;
    rep.bound = "cm";
    rep.oracle_mode = to_string(oracle.mode());
    if (t_max < 1) {
        const auto v = oracle(q, n, d);
        rep.value = v.k;
        rep.exact = v.exact;
        rep.witness = {0};
        return rep;
    }
    int best = std::numeric_limits<int>::max();
    for (int t = 1; t <= t_max; ++t) {
        const auto v = oracle(q, n - t * (r + 1), d);
        rep.exact = rep.exact && v.exact;
        const int kt = t * r + v.k;
        if (kt <= best) {
            best = kt;
            rep.witness = {t};
        }
    }
    rep.value = std::max(0, best);
    return rep;
}

namespace detail {

/// Singleton-type value with the last listed class as the remainder class.
inline int ml_singleton_formula(const ProfileShape& shape, std::size_t last, int n, int k) {
    int value = n - k + 2;
    int used = 0;
    for (std::size_t i = 0; i < last; ++i) {
        const int kappa = ceil_div(shape[i].first, shape[i].second + 1);
        value -= kappa;
        used += shape[i].second * kappa;
    }
    value -= ceil_div(k - used, shape[last].second);
    return value;
}

}  // namespace detail

/// Singleton-type bound for ML-LRCs. When the first j classes already account
/// for k-1 repair columns, the classes j..s are treated as one class of
/// locality r_j.
inline BoundReport ml_singleton(const ProfileShape& shape, int k, std::optional<int> n_override = std::nullopt) {
    validate_shape(shape);
    const int n = n_override ? *n_override : shape_length(shape);
    if (k < 1 || k > n) throw PreconditionError("need 1 <= k <= n");
    BoundReport rep;
    rep.bound = "ml-singleton";
    rep.oracle_mode = "none";
    std::size_t last = shape.size() - 1;
    int used = 0;
    for (std::size_t j = 0; j + 1 < shape.size(); ++j) {
        used += shape[j].second * ceil_div(shape[j].first, shape[j].second + 1);
        if (used >= k - 1) {
            last = j;
            rep.collapse_applied = true;
            break;
        }
    }
    for (std::size_t i = 0; i <= last; ++i) {
        if (i < last)
            rep.witness.push_back(ceil_div(shape[i].first, shape[i].second + 1));
        else {
            int u = 0;
            for (std::size_t l = 0; l < last; ++l) u += shape[l].second * ceil_div(shape[l].first, shape[l].second + 1);
            rep.witness.push_back(std::max(0, floor_div(k - 1 - u, shape[last].second)));
        }
    }
    rep.value = std::max(0, detail::ml_singleton_formula(shape, last, n, k));
    return rep;
}

inline int ml_singleton_two(int n1, int r1, int n2, int r2, int k) {
    if (r1 >= r2) throw PreconditionError("need r1 < r2");
    return ml_singleton({{n1, r1}, {n2, r2}}, k).value;
}

/// Alphabet-dependent bound for ML-LRCs: minimum over the t-grid of
/// sum t_i r_i + k_opt(n - sum min(n_i, t_i(r_i+1)), d). t_i = 0 is allowed per
/// class but the all-zero tuple only when nothing else is in range. Ties go to
/// the lexicographically largest tuple.
inline BoundReport ml_alphabet(const ProfileShape& shape, int d, std::uint32_t q, const KoptOracle& oracle,
                               std::optional<int> k_hint = std::nullopt,
                               std::uint64_t grid_budget = default_budget()) {
    validate_shape(shape);
    if (d < 1) throw PreconditionError("distance must be at least 1");
    const int n = shape_length(shape);
    const std::size_t s = shape.size();
    std::vector<int> hi(s);
    for (std::size_t i = 0; i < s; ++i) hi[i] = ceil_div(shape[i].first, shape[i].second + 1);
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < s; ++i) {
        cells *= static_cast<std::uint64_t>(hi[i] + 1);
        if (cells > grid_budget) throw BudgetExceeded("alphabet bound grid exceeds " + std::to_string(grid_budget));
    }

    BoundReport rep;
    rep.bound = "ml-alphabet";
    rep.oracle_mode = to_string(oracle.mode());
    int best = std::numeric_limits<int>::max();
    std::vector<int> t(s, 0);
    auto evaluate = [&]() {
        int sum = 0, removed = 0;
        for (std::size_t i = 0; i < s; ++i) {
            sum += t[i] * shape[i].second;
            removed += std::min(shape[i].first, t[i] * (shape[i].second + 1));
        }
        const auto v = oracle(q, n - removed, d);
        rep.exact = rep.exact && v.exact;
        const int kt = sum + v.k;
        if (kt < best || (kt == best && t > rep.witness)) {
            best = kt;
            rep.witness = t;
        }
    };
    for (;;) {
        int used = 0;
        for (std::size_t i = 0; i + 1 < s; ++i) used += t[i] * shape[i].second;
        int ts_max = hi[s - 1];
        if (k_hint) ts_max = std::clamp(floor_div(*k_hint - 1 - used, shape[s - 1].second), 0, hi[s - 1]);
        for (int ts = 0; ts <= ts_max; ++ts) {
            t[s - 1] = ts;
            if (std::all_of(t.begin(), t.end(), [](int v) { return v == 0; })) continue;
            evaluate();
        }
        t[s - 1] = 0;
        bool done = true;
        for (std::size_t i = s - 1; i-- > 0;) {
            if (++t[i] <= hi[i]) {
                done = false;
                break;
            }
            t[i] = 0;
        }
        if (done) break;
    }
    if (best == std::numeric_limits<int>::max()) {
        const auto v = oracle(q, n, d);
        rep.exact = v.exact;
        best = v.k;
        rep.witness.assign(s, 0);
    }
    rep.value = std::max(0, best);
    return rep;
}

inline BoundReport ml_alphabet_two(int n1, int r1, int n2, int r2, int d, std::uint32_t q, const KoptOracle& oracle,
                                   std::optional<int> k_hint = std::nullopt) {
    if (r1 >= r2) throw PreconditionError("need r1 < r2");
    return ml_alphabet({{n1, r1}, {n2, r2}}, d, q, oracle, k_hint);
}

}  // namespace mllrc
