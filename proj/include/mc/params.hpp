#pragma once

#include <cstddef>
#include <vector>

#include "mc/matrix.hpp"

namespace mc {

// A set of rows and columns covering every missing entry of some matrix.
// Indices are 0-based and sorted, in the matrix's original index space.
struct CoverWitness {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;

    std::size_t value() const { return rows.size() + cols.size(); }
};

bool covers_all_missing(const IncompleteMatrix& m, const CoverWitness& w);

// Every row containing a missing entry; this is the minimum row-only cover.
CoverWitness covering_rows(const IncompleteMatrix& m);

// Every column containing a missing entry.
CoverWitness covering_cols(const IncompleteMatrix& m);

// A minimum-cardinality mixed cover, via maximum matching in the bipartite
// graph (rows with missing entries) x (columns with missing entries) and
// Koenig's vertex-cover construction. Ties resolve deterministically,
// preferring rows, then smaller indices.
CoverWitness comb_cover(const IncompleteMatrix& m);

// Maximum-matching size of the auxiliary bipartite graph; equals the comb
// witness cardinality by Koenig's theorem.
std::size_t comb_matching_size(const IncompleteMatrix& m);

} // namespace mc
