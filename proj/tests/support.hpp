#pragma once

#include <numeric>
#include <random>

#include "mllrc/mllrc.hpp"
#include "oracles.hpp"

namespace support {

inline oracle::Field field_of(const mllrc::FiniteField& F) {
    return {F.characteristic(), F.degree(), F.modulus()};
}

inline oracle::Mat rows_of(const mllrc::MatrixGF& m) {
    oracle::Mat out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r].push_back(m(r, c));
    return out;
}

inline mllrc::MatrixGF random_matrix(const mllrc::FieldPtr& F, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    mllrc::MatrixGF m(F, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<mllrc::Element>(rng() % F->order()));
    return m;
}

/// Random full-rank k x n generator.
inline mllrc::LinearCode random_code(const mllrc::FieldPtr& F, std::size_t k, std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        auto g = random_matrix(F, k, n, rng);
        if (mllrc::rank(g) == k) return mllrc::LinearCode::from_generator(std::move(g));
    }
}

}  // namespace support

namespace support {

struct RandomGcc {
    mllrc::GccSpec spec;
    int designed = 0;  // min over levels of outer distance times inner distance
};

/// Two-level binary GCC with a random strictly nested inner chain and random
/// outer codes, at most 2^18 codewords.
inline RandomGcc random_gcc(std::mt19937_64& rng) {
    using namespace mllrc;
    auto F2 = FiniteField::make(2);
    for (;;) {
        const std::size_t nb = 3 + rng() % 4;
        const unsigned ell1 = 1 + static_cast<unsigned>(rng() % 2);
        const unsigned lambda1 = ell1 == 1 ? 1 + static_cast<unsigned>(rng() % 2) : 1;
        const std::size_t rows1 = ell1 * lambda1;
        if (rows1 + 1 > nb) continue;
        const std::size_t N = 2 + rng() % 4;
        auto chain = random_matrix(F2, rows1 + 1, nb, rng);
        if (rank(chain) != rows1 + 1) continue;
        auto Fo = FiniteField::make(2, ell1);
        const std::size_t k1 = 1 + rng() % N, k2 = 1 + rng() % N;
        auto a1 = random_matrix(Fo, k1, N, rng);
        auto a2 = random_matrix(F2, k2, N, rng);
        if (rank(a1) != k1 || rank(a2) != k2) continue;
        if (k1 * rows1 + k2 > 18) continue;
        std::vector<std::size_t> first(rows1), last{rows1};
        std::iota(first.begin(), first.end(), std::size_t{0});
        RandomGcc out;
        out.spec.levels.push_back({a1, lambda1, chain.select_rows(first)});
        out.spec.levels.push_back({a2, 1, chain.select_rows(last)});
        const int d1 = LinearCode::from_generator(chain).min_distance();
        const int d2 = LinearCode::from_generator(chain.select_rows(last)).min_distance();
        const int o1 = LinearCode::from_generator(a1).min_distance();
        const int o2 = LinearCode::from_generator(a2).min_distance();
        out.designed = std::min(o1 * d1, o2 * d2);
        return out;
    }
}

}  // namespace support
