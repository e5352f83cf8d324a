#include "mc/graph.hpp"

#include <fstream>
#include <sstream>

#include "mc/errors.hpp"

namespace mc {

void SimpleGraph::add_edge(std::size_t u, std::size_t v) {
    if (u >= n_ || v >= n_) throw contract_error("edge endpoint out of range");
    if (u == v) throw contract_error("self-loops not allowed");
    adj_[u * n_ + v] = 1;
    adj_[v * n_ + u] = 1;
}

std::size_t SimpleGraph::degree(std::size_t v) const {
    std::size_t d = 0;
    for (std::size_t u = 0; u < n_; ++u) d += adj_[v * n_ + u] != 0;
    return d;
}

std::vector<std::size_t> SimpleGraph::neighbors(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < n_; ++u) {
        if (adj_[v * n_ + u]) out.push_back(u);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> SimpleGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u) {
        for (std::size_t v = u + 1; v < n_; ++v) {
            if (adj_[u * n_ + v]) out.emplace_back(u, v);
        }
    }
    return out;
}

SimpleGraph parse_graph(std::istream& in) {
    std::string line;
    std::vector<std::string> tokens;
    std::size_t lineno = 0;
    std::vector<std::pair<std::size_t, std::size_t>> token_pos;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        std::size_t col = 1;
        while (ls >> tok) {
            if (tok[0] == '#') break;
            tokens.push_back(tok);
            token_pos.emplace_back(lineno, col);
            ++col;
        }
    }
    auto number = [&](std::size_t idx, const char* what) -> std::size_t {
        if (idx >= tokens.size()) {
            throw parse_error(lineno == 0 ? 1 : lineno, 1,
                              std::string("missing ") + what);
        }
        std::size_t value = 0;
        for (char c : tokens[idx]) {
            if (c < '0' || c > '9') {
                throw parse_error(token_pos[idx].first, token_pos[idx].second,
                                  std::string("expected ") + what);
            }
            value = value * 10 + static_cast<std::size_t>(c - '0');
        }
        return value;
    };
    std::size_t n = number(0, "vertex count");
    if ((tokens.size() - 1) % 2 != 0) {
        throw parse_error(token_pos.back().first, token_pos.back().second,
                          "dangling edge endpoint");
    }
    SimpleGraph g(n);
    for (std::size_t i = 1; i + 1 < tokens.size() + 1 && i < tokens.size();
         i += 2) {
        std::size_t u = number(i, "edge endpoint");
        std::size_t v = number(i + 1, "edge endpoint");
        if (u < 1 || v < 1 || u > n || v > n || u == v) {
            throw parse_error(token_pos[i].first, token_pos[i].second,
                              "bad edge " + tokens[i] + " " + tokens[i + 1]);
        }
        g.add_edge(u - 1, v - 1);
    }
    return g;
}

SimpleGraph parse_graph_string(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

SimpleGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return parse_graph(in);
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
    out << g.size() << '\n';
    for (auto [u, v] : g.edges()) {
        out << (u + 1) << ' ' << (v + 1) << '\n';
    }
}

} // namespace mc
