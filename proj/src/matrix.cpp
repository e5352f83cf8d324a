#include "mc/matrix.hpp"

#include <algorithm>
#include <string>

#include "mc/kernels.hpp"

namespace mc {

namespace {

constexpr std::int32_t kMissingCell = -1;

void require(bool ok, const char* what) {
    if (!ok) throw contract_error(what);
}

} // namespace

IncompleteMatrix::IncompleteMatrix(const PrimeField& field, std::size_t rows,
                                   std::size_t cols)
    : field_(field),
      rows_(rows),
      cols_(cols),
      cells_(rows * cols, kMissingCell) {
    require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
}

std::int32_t IncompleteMatrix::cell(std::size_t i, std::size_t j) const {
    check_bounds(i, j);
    return cells_[i * cols_ + j];
}

void IncompleteMatrix::check_bounds(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
        throw contract_error("matrix index (" + std::to_string(i) + "," +
                             std::to_string(j) + ") out of range");
    }
}

std::uint32_t IncompleteMatrix::at(std::size_t i, std::size_t j) const {
    std::int32_t v = cell(i, j);
    require(v >= 0, "reading a missing matrix entry");
    return static_cast<std::uint32_t>(v);
}

void IncompleteMatrix::set(std::size_t i, std::size_t j, std::uint64_t value) {
    check_bounds(i, j);
    require(value < field_.modulus(), "matrix entry not a canonical residue");
    cells_[i * cols_ + j] = static_cast<std::int32_t>(value);
}

void IncompleteMatrix::clear(std::size_t i, std::size_t j) {
    check_bounds(i, j);
    cells_[i * cols_ + j] = kMissingCell;
}

std::size_t IncompleteMatrix::missing_count() const {
    return static_cast<std::size_t>(
        std::count_if(cells_.begin(), cells_.end(),
                      [](std::int32_t v) { return v < 0; }));
}

std::vector<std::pair<std::size_t, std::size_t>>
IncompleteMatrix::missing_positions() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (cells_[i * cols_ + j] < 0) out.emplace_back(i, j);
        }
    }
    return out;
}

bool IncompleteMatrix::row_has_missing(std::size_t i) const {
    check_bounds(i, 0);
    for (std::size_t j = 0; j < cols_; ++j) {
        if (cells_[i * cols_ + j] < 0) return true;
    }
    return false;
}

bool IncompleteMatrix::col_has_missing(std::size_t j) const {
    check_bounds(0, j);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (cells_[i * cols_ + j] < 0) return true;
    }
    return false;
}

IncompleteMatrix IncompleteMatrix::transpose() const {
    IncompleteMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t.cells_[j * rows_ + i] = cells_[i * cols_ + j];
        }
    }
    return t;
}

IncompleteMatrix IncompleteMatrix::submatrix(
    const std::vector<std::size_t>& row_idx,
    const std::vector<std::size_t>& col_idx) const {
    require(!row_idx.empty() && !col_idx.empty(),
            "submatrix index lists must be nonempty");
    for (std::size_t i : row_idx) require(i < rows_, "submatrix row out of range");
    for (std::size_t j : col_idx) require(j < cols_, "submatrix column out of range");
    IncompleteMatrix s(field_, row_idx.size(), col_idx.size());
    for (std::size_t a = 0; a < row_idx.size(); ++a) {
        for (std::size_t b = 0; b < col_idx.size(); ++b) {
            s.cells_[a * col_idx.size() + b] =
                cells_[row_idx[a] * cols_ + col_idx[b]];
        }
    }
    return s;
}

IncompleteMatrix IncompleteMatrix::block(std::size_t r0, std::size_t r1,
                                         std::size_t c0, std::size_t c1) const {
    require(r0 < r1 && r1 <= rows_ && c0 < c1 && c1 <= cols_,
            "block range out of bounds");
    std::vector<std::size_t> ri(r1 - r0), ci(c1 - c0);
    for (std::size_t i = 0; i < ri.size(); ++i) ri[i] = r0 + i;
    for (std::size_t j = 0; j < ci.size(); ++j) ci[j] = c0 + j;
    return submatrix(ri, ci);
}

IncompleteMatrix IncompleteMatrix::permuted(
    const std::vector<std::size_t>& row_perm,
    const std::vector<std::size_t>& col_perm) const {
    require(row_perm.size() == rows_ && col_perm.size() == cols_,
            "permutation size mismatch");
    return submatrix(row_perm, col_perm);
}

bool IncompleteMatrix::operator==(const IncompleteMatrix& other) const {
    return field_ == other.field_ && rows_ == other.rows_ &&
           cols_ == other.cols_ && cells_ == other.cells_;
}

CompleteMatrix::CompleteMatrix(const PrimeField& field, std::size_t rows,
                               std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), cells_(rows * cols, 0) {
    require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
}

CompleteMatrix::CompleteMatrix(const IncompleteMatrix& m)
    : field_(m.field()), rows_(m.rows()), cols_(m.cols()),
      cells_(m.rows() * m.cols(), 0) {
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            require(!m.is_missing(i, j),
                    "complete matrix constructed from a matrix with missing entries");
            cells_[i * cols_ + j] = m.at(i, j);
        }
    }
}

void CompleteMatrix::set(std::size_t i, std::size_t j, std::uint64_t value) {
    require(i < rows_ && j < cols_, "matrix index out of range");
    require(value < field_.modulus(), "matrix entry not a canonical residue");
    cells_[i * cols_ + j] = static_cast<std::uint32_t>(value);
}

IncompleteMatrix CompleteMatrix::to_incomplete() const {
    IncompleteMatrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, at(i, j));
    }
    return m;
}

CompleteMatrix CompleteMatrix::transpose() const {
    CompleteMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    }
    return t;
}

CompleteMatrix CompleteMatrix::permuted(
    const std::vector<std::size_t>& row_perm,
    const std::vector<std::size_t>& col_perm) const {
    require(row_perm.size() == rows_ && col_perm.size() == cols_,
            "permutation size mismatch");
    CompleteMatrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out.set(i, j, at(row_perm[i], col_perm[j]));
        }
    }
    return out;
}

std::vector<std::uint32_t> CompleteMatrix::row(std::size_t i) const {
    require(i < rows_, "row index out of range");
    return {cells_.begin() + i * cols_, cells_.begin() + (i + 1) * cols_};
}

bool CompleteMatrix::operator==(const CompleteMatrix& other) const {
    return field_ == other.field_ && rows_ == other.rows_ &&
           cols_ == other.cols_ && cells_ == other.cells_;
}

std::size_t rank(const CompleteMatrix& m) {
    const auto& k = kernels::active();
    const std::uint32_t p = static_cast<std::uint32_t>(m.field().modulus());
    const std::size_t rows = m.rows(), cols = m.cols();

    std::vector<std::vector<std::uint32_t>> work(rows);
    for (std::size_t i = 0; i < rows; ++i) work[i] = m.row(i);

    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && work[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(work[pivot], work[r]);
        std::uint32_t inv = static_cast<std::uint32_t>(
            m.field().inv(work[r][col]));
        k.scale_mod(work[r].data(), inv, p, cols);
        for (std::size_t i = r + 1; i < rows; ++i) {
            std::uint32_t v = work[i][col];
            if (v == 0) continue;
            k.axpy_mod(work[i].data(), work[r].data(), p - v, p, cols);
        }
        ++r;
    }
    return r;
}

std::size_t distinct_rows(const CompleteMatrix& m) {
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    std::sort(rows.begin(), rows.end());
    return static_cast<std::size_t>(
        std::unique(rows.begin(), rows.end()) - rows.begin());
}

bool is_consistent(const CompleteMatrix& candidate, const IncompleteMatrix& m) {
    if (candidate.field() != m.field()) {
        throw contract_error("consistency check across different fields");
    }
    if (candidate.rows() != m.rows() || candidate.cols() != m.cols()) {
        throw contract_error("consistency check across different shapes");
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m.is_missing(i, j) && candidate.at(i, j) != m.at(i, j)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace mc
