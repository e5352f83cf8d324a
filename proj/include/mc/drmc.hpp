#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mc/graph.hpp"
#include "mc/matrix.hpp"

namespace mc {

// One vertex per row; an edge joins two rows that can be completed to be
// identical (whenever the rows differ at an entry, one side is missing).
SimpleGraph compatibility_graph(const IncompleteMatrix& m, unsigned jobs = 1);

using VertexPartition = std::vector<std::vector<std::size_t>>;

// The completion determined by a partition of the rows into compatible
// cliques: within each part and column all determined values agree by
// cliqueness, so missing cells take that value (or 0 in an all-missing
// block). A non-clique part throws contract_error. Rows of the same part
// come out identical, so the result has at most |partition| distinct rows.
CompleteMatrix completion_from_cover(const IncompleteMatrix& m,
                                     const VertexPartition& partition);

// Rooted nice tree decomposition: leaf bags of size one, introduce/forget
// steps of one vertex, join nodes duplicating their bag, empty root bag.
class NiceTreeDecomposition {
public:
    enum class Kind { leaf, introduce, forget, join };

    struct Node {
        Kind kind = Kind::leaf;
        std::vector<std::size_t> bag; // sorted
        int child1 = -1;
        int child2 = -1;
        std::size_t vertex = 0; // the introduced/forgotten vertex
    };

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t root() const { return root_; }
    std::size_t width() const;

    // Checks (TD1), (TD2), the per-kind bag constraints, leaf size, and
    // the empty root bag; throws contract_error on any violation.
    void validate(const SimpleGraph& g) const;

    static NiceTreeDecomposition build(std::vector<Node> nodes,
                                       std::size_t root);

private:
    std::vector<Node> nodes_; // children precede parents
    std::size_t root_ = 0;
};

// Normalizes a tree decomposition given as bags + tree edges into nice
// form. Bags need not be distinct; the caller guarantees (TD1)/(TD2) and
// the result is validated.
NiceTreeDecomposition normalize_decomposition(
    const SimpleGraph& g, const std::vector<std::vector<std::size_t>>& bags,
    const std::vector<std::pair<std::size_t, std::size_t>>& tree_edges);

// With hint bags: the bags are laid out as a path in the given order and
// normalized. Without: min-fill elimination ordering, then normalization.
// The output is validated against the graph either way.
NiceTreeDecomposition nice_decomposition(
    const SimpleGraph& g,
    const std::vector<std::vector<std::size_t>>* hint_bags = nullptr);

// Bottom-up dynamic programming over the decomposition: per node, records
// map a partition of the bag into cliques (with a per-part flag telling
// whether the part already extends below the bag) to the minimum clique
// count realizing it on the processed subgraph. Returns a partition of
// V(G) into at most k cliques, or nullopt.
std::optional<VertexPartition> clique_cover_tw(const SimpleGraph& g,
                                               const NiceTreeDecomposition& d,
                                               std::size_t k);

// Exact minimum clique cover by branch-and-bound over canonical set
// partitions. Limited to |V| <= 12; beyond that throws resource_error.
VertexPartition brute_force_clique_cover(const SimpleGraph& g);

// Exact decision "does G have a clique cover of size <= k", by
// branch-and-bound with a max-clique-based capacity prune. No hard size
// limit; intended for structured instances (gadget graphs).
std::optional<VertexPartition> find_clique_cover(const SimpleGraph& g,
                                                 std::size_t k);
bool has_clique_cover(const SimpleGraph& g, std::size_t k);

// Exhaustive check for a partition of V(G) into vertex-disjoint triangles.
bool has_triangle_partition(const SimpleGraph& g);

std::size_t max_clique_size(const SimpleGraph& g);

enum class DrmcStrategy { auto_select, row_hint, comb_hint, heuristic };

struct DrmcResult {
    bool sat = false;
    std::optional<CompleteMatrix> completion;
    VertexPartition partition; // rows grouped into identical blocks
    std::size_t decomposition_width = 0;
};

// Path-decomposition bags for the compatibility graph, following the
// structured constructions: covering rows plus one class of remaining rows
// per bag. Classes group rows that agree on every column outside the
// covering columns (for the comb hint) or identical complete rows (for the
// row hint; singleton classes when rows are pairwise distinct).
std::vector<std::vector<std::size_t>> row_hint_bags(const IncompleteMatrix& m);
std::vector<std::vector<std::size_t>> comb_hint_bags(const IncompleteMatrix& m);

// Reduction to Clique Cover on the compatibility graph, solved by the
// treewidth DP over the best available decomposition.
DrmcResult solve_drmc(const IncompleteMatrix& m, std::size_t t,
                      DrmcStrategy strategy = DrmcStrategy::auto_select,
                      unsigned jobs = 1);

// Exhaustive oracle minimizing the number of distinct rows over all
// completions. Throws resource_error beyond the budget.
DrmcResult brute_force_drmc(const IncompleteMatrix& m, std::size_t t,
                            std::uint64_t budget = 1ull << 24);

// Minimum distinct-row count over all completions (oracle helper).
std::size_t brute_force_min_distinct_rows(const IncompleteMatrix& m,
                                          std::uint64_t budget = 1ull << 24);

} // namespace mc
