#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mc/gf.hpp"

namespace mc {

class CompleteMatrix;

// An m x n grid over GF(p) whose cells either hold a canonical residue or
// are missing. The missing state is a distinct cell state, not an in-band
// field value, so GF(2) matrices can hold {0, 1, missing} unambiguously.
// Internally a missing cell is a negative int32, which keeps full rows
// directly consumable by the compatibility kernel.
class IncompleteMatrix {
public:
    // All cells missing.
    IncompleteMatrix(const PrimeField& field, std::size_t rows,
                     std::size_t cols);

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool is_missing(std::size_t i, std::size_t j) const {
        return cell(i, j) < 0;
    }
    // Value of a determined cell; throws contract_error when missing.
    std::uint32_t at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, std::uint64_t value);
    void clear(std::size_t i, std::size_t j);

    std::size_t missing_count() const;
    std::vector<std::pair<std::size_t, std::size_t>> missing_positions() const;
    bool is_complete() const { return missing_count() == 0; }
    bool row_has_missing(std::size_t i) const;
    bool col_has_missing(std::size_t j) const;

    IncompleteMatrix transpose() const;

    // The block designated by explicit index lists; entries copied by value.
    // Out-of-range indices throw contract_error.
    IncompleteMatrix submatrix(const std::vector<std::size_t>& row_idx,
                               const std::vector<std::size_t>& col_idx) const;
    // Contiguous block rows [r0, r1) x cols [c0, c1).
    IncompleteMatrix block(std::size_t r0, std::size_t r1, std::size_t c0,
                           std::size_t c1) const;

    // Reorders rows/columns; perm[new_index] = old_index.
    IncompleteMatrix permuted(const std::vector<std::size_t>& row_perm,
                              const std::vector<std::size_t>& col_perm) const;

    // Raw row storage (missing < 0), for the compatibility kernel.
    const std::int32_t* row_data(std::size_t i) const {
        return cells_.data() + i * cols_;
    }

    bool operator==(const IncompleteMatrix& other) const;

private:
    std::int32_t cell(std::size_t i, std::size_t j) const;
    void check_bounds(std::size_t i, std::size_t j) const;

    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::int32_t> cells_;
};

// A fully determined matrix over GF(p).
class CompleteMatrix {
public:
    CompleteMatrix(const PrimeField& field, std::size_t rows, std::size_t cols);

    // Throws contract_error if any cell of m is missing.
    explicit CompleteMatrix(const IncompleteMatrix& m);

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t at(std::size_t i, std::size_t j) const {
        return cells_[i * cols_ + j];
    }
    void set(std::size_t i, std::size_t j, std::uint64_t value);

    IncompleteMatrix to_incomplete() const;
    CompleteMatrix transpose() const;
    CompleteMatrix permuted(const std::vector<std::size_t>& row_perm,
                            const std::vector<std::size_t>& col_perm) const;

    std::vector<std::uint32_t> row(std::size_t i) const;

    bool operator==(const CompleteMatrix& other) const;

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint32_t> cells_;
};

// Dimension of the row space over GF(p), by Gaussian elimination with
// pivoting on the first nonzero entry of each column.
std::size_t rank(const CompleteMatrix& m);

// Number of pairwise-distinct row vectors.
std::size_t distinct_rows(const CompleteMatrix& m);

// True iff candidate agrees with m on every determined entry of m.
// Dimension or modulus mismatch throws contract_error.
bool is_consistent(const CompleteMatrix& candidate, const IncompleteMatrix& m);

} // namespace mc
