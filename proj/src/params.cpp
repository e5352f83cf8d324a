#include "mc/params.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace mc {

namespace {

constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

// Hopcroft-Karp on an explicit bipartite adjacency list. Left vertices are
// scanned in index order so the matching (and the derived cover) is
// deterministic.
struct BipartiteMatching {
    const std::vector<std::vector<std::size_t>>& adj;
    std::size_t n_left, n_right;
    std::vector<std::size_t> match_left, match_right;
    std::vector<std::size_t> dist;

    BipartiteMatching(const std::vector<std::vector<std::size_t>>& adj,
                      std::size_t n_right)
        : adj(adj),
          n_left(adj.size()),
          n_right(n_right),
          match_left(n_left, kUnmatched),
          match_right(n_right, kUnmatched),
          dist(n_left, 0) {}

    bool bfs() {
        std::queue<std::size_t> q;
        bool reachable_free_right = false;
        for (std::size_t u = 0; u < n_left; ++u) {
            if (match_left[u] == kUnmatched) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = kUnmatched;
            }
        }
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (std::size_t v : adj[u]) {
                std::size_t w = match_right[v];
                if (w == kUnmatched) {
                    reachable_free_right = true;
                } else if (dist[w] == kUnmatched) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return reachable_free_right;
    }

    bool dfs(std::size_t u) {
        for (std::size_t v : adj[u]) {
            std::size_t w = match_right[v];
            if (w == kUnmatched || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_left[u] = v;
                match_right[v] = u;
                return true;
            }
        }
        dist[u] = kUnmatched;
        return false;
    }

    std::size_t run() {
        std::size_t size = 0;
        while (bfs()) {
            for (std::size_t u = 0; u < n_left; ++u) {
                if (match_left[u] == kUnmatched && dfs(u)) ++size;
            }
        }
        return size;
    }
};

struct AuxiliaryGraph {
    std::vector<std::size_t> left_rows;  // rows containing a missing entry
    std::vector<std::size_t> right_cols; // columns containing one
    std::vector<std::vector<std::size_t>> adj; // left index -> right indices
};

AuxiliaryGraph build_auxiliary(const IncompleteMatrix& m) {
    AuxiliaryGraph g;
    std::vector<std::size_t> row_id(m.rows(), kUnmatched);
    std::vector<std::size_t> col_id(m.cols(), kUnmatched);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m.row_has_missing(i)) {
            row_id[i] = g.left_rows.size();
            g.left_rows.push_back(i);
        }
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.col_has_missing(j)) {
            col_id[j] = g.right_cols.size();
            g.right_cols.push_back(j);
        }
    }
    g.adj.resize(g.left_rows.size());
    for (auto [i, j] : m.missing_positions()) {
        g.adj[row_id[i]].push_back(col_id[j]);
    }
    return g;
}

} // namespace

bool covers_all_missing(const IncompleteMatrix& m, const CoverWitness& w) {
    for (auto [i, j] : m.missing_positions()) {
        bool row_covered = std::binary_search(w.rows.begin(), w.rows.end(), i);
        bool col_covered = std::binary_search(w.cols.begin(), w.cols.end(), j);
        if (!row_covered && !col_covered) return false;
    }
    return true;
}

CoverWitness covering_rows(const IncompleteMatrix& m) {
    CoverWitness w;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m.row_has_missing(i)) w.rows.push_back(i);
    }
    return w;
}

CoverWitness covering_cols(const IncompleteMatrix& m) {
    CoverWitness w;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.col_has_missing(j)) w.cols.push_back(j);
    }
    return w;
}

std::size_t comb_matching_size(const IncompleteMatrix& m) {
    AuxiliaryGraph g = build_auxiliary(m);
    BipartiteMatching matching(g.adj, g.right_cols.size());
    return matching.run();
}

CoverWitness comb_cover(const IncompleteMatrix& m) {
    AuxiliaryGraph g = build_auxiliary(m);
    BipartiteMatching matching(g.adj, g.right_cols.size());
    matching.run();

    // Koenig's construction: alternating reachability from the unmatched
    // left vertices; cover = (left \ Z) + (right cap Z). Starting from the
    // left side keeps rows preferred for singleton covers.
    std::vector<char> z_left(g.left_rows.size(), 0);
    std::vector<char> z_right(g.right_cols.size(), 0);
    std::queue<std::size_t> q;
    for (std::size_t u = 0; u < g.left_rows.size(); ++u) {
        if (matching.match_left[u] == kUnmatched) {
            z_left[u] = 1;
            q.push(u);
        }
    }
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop();
        for (std::size_t v : g.adj[u]) {
            if (matching.match_left[u] == v || z_right[v]) continue;
            z_right[v] = 1;
            std::size_t w = matching.match_right[v];
            if (w != kUnmatched && !z_left[w]) {
                z_left[w] = 1;
                q.push(w);
            }
        }
    }

    CoverWitness witness;
    for (std::size_t u = 0; u < g.left_rows.size(); ++u) {
        if (!z_left[u]) witness.rows.push_back(g.left_rows[u]);
    }
    for (std::size_t v = 0; v < g.right_cols.size(); ++v) {
        if (z_right[v]) witness.cols.push_back(g.right_cols[v]);
    }
    return witness;
}

} // namespace mc
