#pragma once

#include <random>
#include <vector>

#include "mc/graph.hpp"
#include "mc/matrix.hpp"
#include "mc/params.hpp"

namespace mctest {

inline mc::IncompleteMatrix random_matrix(std::uint64_t p, std::size_t rows,
                                          std::size_t cols,
                                          std::size_t missing,
                                          std::mt19937_64& rng) {
    mc::IncompleteMatrix m(mc::PrimeField(p), rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m.set(i, j, rng() % p);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) cells.emplace_back(i, j);
    }
    std::shuffle(cells.begin(), cells.end(), rng);
    for (std::size_t idx = 0; idx < missing && idx < cells.size(); ++idx) {
        m.clear(cells[idx].first, cells[idx].second);
    }
    return m;
}

inline mc::CompleteMatrix random_complete(std::uint64_t p, std::size_t rows,
                                          std::size_t cols,
                                          std::mt19937_64& rng) {
    mc::CompleteMatrix m(mc::PrimeField(p), rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m.set(i, j, rng() % p);
        }
    }
    return m;
}

inline mc::SimpleGraph random_graph(std::size_t n, double edge_prob,
                                    std::mt19937_64& rng) {
    mc::SimpleGraph g(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (coin(rng) < edge_prob) g.add_edge(u, v);
        }
    }
    return g;
}

// Exhaustive minimum mixed cover over the missing-touched rows and columns.
inline std::size_t brute_force_min_cover(const mc::IncompleteMatrix& m) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m.row_has_missing(i)) rows.push_back(i);
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.col_has_missing(j)) cols.push_back(j);
    }
    const std::size_t lines = rows.size() + cols.size();
    std::size_t best = lines;
    const auto holes = m.missing_positions();
    for (std::uint64_t mask = 0; mask < (1ull << lines); ++mask) {
        std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (size >= best) continue;
        bool covered = true;
        for (auto [i, j] : holes) {
            bool hit = false;
            for (std::size_t a = 0; a < rows.size() && !hit; ++a) {
                if (((mask >> a) & 1ull) && rows[a] == i) hit = true;
            }
            for (std::size_t b = 0; b < cols.size() && !hit; ++b) {
                if (((mask >> (rows.size() + b)) & 1ull) && cols[b] == j) {
                    hit = true;
                }
            }
            if (!hit) {
                covered = false;
                break;
            }
        }
        if (covered) best = size;
    }
    return best;
}

} // namespace mctest
