#include "mc/matrix_io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace mc {

namespace {

struct Token {
    std::string text;
    std::size_t line;   // 1-based
    std::size_t column; // 1-based
};

// Whitespace-separated tokens with positions; '#' starts a comment that
// runs to end of line.
std::vector<Token> tokenize(std::istream& in) {
    std::vector<Token> tokens;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = 0;
        while (i < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            if (line[i] == '#') break;
            std::size_t start = i;
            while (i < line.size() &&
                   !std::isspace(static_cast<unsigned char>(line[i])) &&
                   line[i] != '#') {
                ++i;
            }
            tokens.push_back(
                {line.substr(start, i - start), lineno, start + 1});
        }
    }
    return tokens;
}

std::uint64_t parse_number(const Token& t, const char* what,
                           std::uint64_t limit) {
    std::uint64_t value = 0;
    if (t.text.empty()) throw parse_error(t.line, t.column, "empty token");
    for (char c : t.text) {
        if (c < '0' || c > '9') {
            throw parse_error(t.line, t.column,
                              std::string("expected ") + what + ", got '" +
                                  t.text + "'");
        }
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
        if (value > limit) {
            throw parse_error(t.line, t.column,
                              std::string(what) + " '" + t.text +
                                  "' out of range");
        }
    }
    return value;
}

} // namespace

IncompleteMatrix parse_matrix(std::istream& in) {
    std::vector<Token> tokens = tokenize(in);
    std::size_t pos = 0;
    auto next = [&](const char* what) -> const Token& {
        if (pos >= tokens.size()) {
            std::size_t line = tokens.empty() ? 1 : tokens.back().line;
            throw parse_error(line, 1,
                              std::string("unexpected end of input, expected ") +
                                  what);
        }
        return tokens[pos++];
    };

    std::uint64_t p = parse_number(next("modulus p"), "modulus p", 1ull << 31);
    const Token& mt = next("row count m");
    std::uint64_t m = parse_number(mt, "row count m", 1u << 20);
    const Token& nt = next("column count n");
    std::uint64_t n = parse_number(nt, "column count n", 1u << 20);
    if (m == 0) throw parse_error(mt.line, mt.column, "row count must be positive");
    if (n == 0) throw parse_error(nt.line, nt.column, "column count must be positive");

    PrimeField field = [&] {
        try {
            return PrimeField(p);
        } catch (const contract_error& e) {
            throw parse_error(tokens[0].line, tokens[0].column, e.what());
        }
    }();

    IncompleteMatrix matrix(field, m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Token& t = next("matrix entry");
            if (t.text == "*") continue;
            std::uint64_t v = parse_number(t, "matrix entry", p);
            if (v >= p) {
                throw parse_error(t.line, t.column,
                                  "entry '" + t.text + "' not below modulus " +
                                      std::to_string(p));
            }
            matrix.set(i, j, v);
        }
    }
    if (pos != tokens.size()) {
        const Token& t = tokens[pos];
        throw parse_error(t.line, t.column, "trailing token '" + t.text + "'");
    }
    return matrix;
}

IncompleteMatrix parse_matrix_string(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

IncompleteMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    return parse_matrix(in);
}

void write_matrix(std::ostream& out, const IncompleteMatrix& m) {
    out << m.field().modulus() << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ' ';
            if (m.is_missing(i, j)) {
                out << '*';
            } else {
                out << m.at(i, j);
            }
        }
        out << '\n';
    }
}

void write_matrix(std::ostream& out, const CompleteMatrix& m) {
    write_matrix(out, m.to_incomplete());
}

std::string matrix_to_string(const IncompleteMatrix& m) {
    std::ostringstream out;
    write_matrix(out, m);
    return out.str();
}

std::string matrix_to_string(const CompleteMatrix& m) {
    std::ostringstream out;
    write_matrix(out, m);
    return out.str();
}

void save_matrix(const std::string& path, const IncompleteMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write matrix file: " + path);
    write_matrix(out, m);
}

} // namespace mc
