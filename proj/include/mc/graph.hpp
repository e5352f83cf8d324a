#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mc {

// Simple undirected graph over vertices 0..n-1, dense adjacency.
class SimpleGraph {
public:
    explicit SimpleGraph(std::size_t n = 0) : n_(n), adj_(n * n, 0) {}

    std::size_t size() const { return n_; }

    void add_edge(std::size_t u, std::size_t v);
    bool adjacent(std::size_t u, std::size_t v) const {
        return adj_[u * n_ + v] != 0;
    }

    std::size_t degree(std::size_t v) const;
    std::vector<std::size_t> neighbors(std::size_t v) const;
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;
    std::size_t edge_count() const { return edges().size(); }

    bool operator==(const SimpleGraph& other) const {
        return n_ == other.n_ && adj_ == other.adj_;
    }

private:
    std::size_t n_;
    std::vector<char> adj_;
};

// Whitespace edge-list format: first token n, then "u v" pairs, 1-based.
// Lines starting with '#' are comments.
SimpleGraph parse_graph(std::istream& in);
SimpleGraph parse_graph_string(const std::string& text);
SimpleGraph load_graph(const std::string& path);
void write_graph(std::ostream& out, const SimpleGraph& g);

} // namespace mc
