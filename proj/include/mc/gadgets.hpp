#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mc/graph.hpp"
#include "mc/matrix.hpp"

namespace mc {

struct Literal {
    std::size_t var = 0; // 0-based
    bool positive = true;

    friend bool operator==(const Literal& a, const Literal& b) {
        return a.var == b.var && a.positive == b.positive;
    }
};

// CNF formula where every clause has exactly three distinct literals and
// every literal occurs in exactly two clauses (so 3m = 4n).
struct Cnf3Sat2 {
    std::size_t num_vars = 0;
    std::vector<std::array<Literal, 3>> clauses;

    // Throws contract_error when either defining invariant fails.
    void validate() const;
};

// DIMACS-like format: "p cnf n m" header, clause lines terminated by 0,
// 'c' comment lines. Parsed formulas are validated.
Cnf3Sat2 parse_dimacs(std::istream& in);
Cnf3Sat2 parse_dimacs_string(const std::string& text);
Cnf3Sat2 load_dimacs(const std::string& path);
void write_dimacs(std::ostream& out, const Cnf3Sat2& phi);

// Uniform legal formula from randomly matching the 4n literal-occurrence
// slots into m = 4n/3 clauses; assemblies with a repeated literal in a
// clause are rejected and retried with a derived sub-seed. Deterministic
// per seed. Requires n divisible by 3.
Cnf3Sat2 random_3sat2(std::size_t n, std::uint64_t seed);

// Exhaustive DPLL with unit propagation (test oracle scale).
bool dpll_satisfiable(const Cnf3Sat2& phi);

// Partition-Into-Triangles instance equivalent to a 3-SAT-2 formula:
// per-variable gadgets (two triangles through the variable hub),
// per-clause gadgets (three literal pairs fully joined to two heads),
// occurrence triangles through the bijection f, and filler pairs joined
// to all heads. The graph contains no 4-clique.
struct PitGraph {
    SimpleGraph graph;
    std::vector<std::string> labels; // per vertex, for diagnostics
    // occurrence[j][r] = the vertex f(j, r).
    std::vector<std::array<std::size_t, 3>> occurrence;

    // Canonical vertex ids.
    std::size_t var_hub(std::size_t i) const { return 5 * i; }
    std::size_t pos_occ(std::size_t i, std::size_t o) const {
        return 5 * i + o; // o in {1, 2}
    }
    std::size_t neg_occ(std::size_t i, std::size_t o) const {
        return 5 * i + 2 + o;
    }
    std::size_t lit_vertex(std::size_t j, std::size_t r, std::size_t o) const {
        return 5 * num_vars + 8 * j + 2 * r + (o - 1);
    }
    std::size_t head(std::size_t j, std::size_t o) const {
        return 5 * num_vars + 8 * j + 6 + (o - 1);
    }
    std::size_t filler(std::size_t i, std::size_t o) const {
        return 5 * num_vars + 8 * num_clauses + 2 * i + (o - 1);
    }

    std::size_t num_vars = 0;
    std::size_t num_clauses = 0;
};

PitGraph gen_pit_from_3sat2(const Cnf3Sat2& phi);

// The seven-column DRMC instance whose compatibility graph is isomorphic
// to the PIT graph under the canonical row-per-vertex labeling; the target
// is |V|/3. The field modulus is the smallest prime large enough to keep
// all index values distinct residues.
struct SevenColumnInstance {
    IncompleteMatrix matrix;
    std::size_t t = 0;
    PitGraph pit;
};

SevenColumnInstance gen_seven_column_drmc(const Cnf3Sat2& phi);

// Coloring-style 2-DRMC pattern over GF(2): diagonal ones, zeros on
// edges, missing elsewhere; target r. For graphs of minimum degree n-4
// every row and column carries exactly three missing entries.
std::pair<IncompleteMatrix, std::size_t> gen_2drmc_from_coloring(
    const SimpleGraph& g, std::size_t r);

bool is_k4_free(const SimpleGraph& g);

// All labeled cubic graphs on n vertices (n small and even).
std::vector<SimpleGraph> all_cubic_graphs(std::size_t n);

SimpleGraph complement_graph(const SimpleGraph& g);

} // namespace mc
