#include "mc/gadgets.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "mc/errors.hpp"
#include "mc/gf.hpp"

namespace mc {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw contract_error(what);
}

} // namespace

void Cnf3Sat2::validate() const {
    require(num_vars >= 1, "formula needs at least one variable");
    std::map<std::pair<std::size_t, bool>, std::size_t> occurrences;
    for (const auto& clause : clauses) {
        for (std::size_t a = 0; a < 3; ++a) {
            require(clause[a].var < num_vars, "literal variable out of range");
            for (std::size_t b = a + 1; b < 3; ++b) {
                require(!(clause[a] == clause[b]),
                        "clause with a repeated literal");
            }
            ++occurrences[{clause[a].var, clause[a].positive}];
        }
    }
    for (std::size_t v = 0; v < num_vars; ++v) {
        for (bool sign : {false, true}) {
            auto it = occurrences.find({v, sign});
            std::size_t count = it == occurrences.end() ? 0 : it->second;
            require(count == 2, "literal must occur in exactly two clauses");
        }
    }
    require(3 * clauses.size() == 4 * num_vars,
            "clause/variable count mismatch (3m = 4n)");
}

Cnf3Sat2 parse_dimacs(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> n, m;
    std::vector<long long> pending;
    Cnf3Sat2 phi;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "p") {
            std::string kind;
            long long nn = 0, mm = 0;
            if (!(ls >> kind >> nn >> mm) || kind != "cnf" || nn < 1 ||
                mm < 1) {
                throw parse_error(lineno, 1, "bad DIMACS header");
            }
            n = static_cast<std::size_t>(nn);
            m = static_cast<std::size_t>(mm);
            continue;
        }
        if (!n) throw parse_error(lineno, 1, "clause before header");
        std::istringstream rest(line);
        long long lit;
        while (rest >> lit) {
            if (lit == 0) {
                if (pending.size() != 3) {
                    throw parse_error(lineno, 1,
                                      "clause must have exactly 3 literals");
                }
                std::array<Literal, 3> clause;
                for (std::size_t i = 0; i < 3; ++i) {
                    long long v = pending[i];
                    std::size_t var = static_cast<std::size_t>(
                        v < 0 ? -v : v);
                    if (var < 1 || var > *n) {
                        throw parse_error(lineno, 1, "literal out of range");
                    }
                    clause[i] = {var - 1, v > 0};
                }
                phi.clauses.push_back(clause);
                pending.clear();
            } else {
                pending.push_back(lit);
            }
        }
    }
    if (!n) throw parse_error(lineno == 0 ? 1 : lineno, 1, "missing header");
    if (!pending.empty()) {
        throw parse_error(lineno, 1, "unterminated clause");
    }
    if (phi.clauses.size() != *m) {
        throw parse_error(lineno, 1, "clause count differs from header");
    }
    phi.num_vars = *n;
    phi.validate();
    return phi;
}

Cnf3Sat2 parse_dimacs_string(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

Cnf3Sat2 load_dimacs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CNF file: " + path);
    return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const Cnf3Sat2& phi) {
    out << "p cnf " << phi.num_vars << ' ' << phi.clauses.size() << '\n';
    for (const auto& clause : phi.clauses) {
        for (const Literal& lit : clause) {
            long long v = static_cast<long long>(lit.var) + 1;
            out << (lit.positive ? v : -v) << ' ';
        }
        out << "0\n";
    }
}

Cnf3Sat2 random_3sat2(std::size_t n, std::uint64_t seed) {
    require(n >= 3 && n % 3 == 0,
            "variable count must be a positive multiple of 3");
    const std::size_t m = 4 * n / 3;
    std::vector<Literal> slots;
    slots.reserve(4 * n);
    for (std::size_t v = 0; v < n; ++v) {
        for (bool sign : {true, false}) {
            slots.push_back({v, sign});
            slots.push_back({v, sign});
        }
    }
    const std::size_t max_attempts = 100000;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (attempt + 1));
        std::vector<Literal> deal = slots;
        std::shuffle(deal.begin(), deal.end(), rng);
        Cnf3Sat2 phi;
        phi.num_vars = n;
        bool ok = true;
        for (std::size_t j = 0; j < m && ok; ++j) {
            std::array<Literal, 3> clause{deal[3 * j], deal[3 * j + 1],
                                          deal[3 * j + 2]};
            for (std::size_t a = 0; a < 3 && ok; ++a) {
                for (std::size_t b = a + 1; b < 3; ++b) {
                    if (clause[a] == clause[b]) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) phi.clauses.push_back(clause);
        }
        if (ok) {
            phi.validate();
            return phi;
        }
    }
    throw resource_error("no legal 3-SAT-2 assembly found within retry budget");
}

namespace {

struct DpllState {
    const Cnf3Sat2& phi;
    std::vector<int> value; // -1 unassigned, 0/1 assigned

    bool solve() {
        // Unit propagation.
        std::vector<std::size_t> trail;
        for (;;) {
            bool changed = false;
            for (const auto& clause : phi.clauses) {
                std::size_t unassigned = 0;
                std::size_t unit_index = 3;
                bool satisfied = false;
                for (std::size_t i = 0; i < 3; ++i) {
                    int v = value[clause[i].var];
                    if (v == -1) {
                        ++unassigned;
                        unit_index = i;
                    } else if ((v == 1) == clause[i].positive) {
                        satisfied = true;
                        break;
                    }
                }
                if (satisfied) continue;
                if (unassigned == 0) {
                    for (std::size_t t : trail) value[t] = -1;
                    return false;
                }
                if (unassigned == 1) {
                    const Literal& lit = clause[unit_index];
                    value[lit.var] = lit.positive ? 1 : 0;
                    trail.push_back(lit.var);
                    changed = true;
                }
            }
            if (!changed) break;
        }
        std::size_t branch = phi.num_vars;
        for (std::size_t v = 0; v < phi.num_vars; ++v) {
            if (value[v] == -1) {
                branch = v;
                break;
            }
        }
        if (branch == phi.num_vars) return true; // all clauses checked above
        for (int b : {0, 1}) {
            value[branch] = b;
            if (solve()) return true;
        }
        value[branch] = -1;
        for (std::size_t t : trail) value[t] = -1;
        return false;
    }
};

} // namespace

bool dpll_satisfiable(const Cnf3Sat2& phi) {
    phi.validate();
    DpllState state{phi, std::vector<int>(phi.num_vars, -1)};
    return state.solve();
}

PitGraph gen_pit_from_3sat2(const Cnf3Sat2& phi) {
    phi.validate();
    const std::size_t n = phi.num_vars;
    const std::size_t m = phi.clauses.size();
    const std::size_t fillers = 2 * n - m;
    PitGraph pit;
    pit.num_vars = n;
    pit.num_clauses = m;
    pit.graph = SimpleGraph(5 * n + 8 * m + 2 * fillers);
    pit.labels.assign(pit.graph.size(), "");

    auto label = [&](std::size_t v, const std::string& text) {
        pit.labels[v] = text;
    };

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t hub = pit.var_hub(i);
        label(hub, "x" + std::to_string(i + 1));
        for (std::size_t o : {1u, 2u}) {
            label(pit.pos_occ(i, o),
                  "x" + std::to_string(i + 1) + "^" + std::to_string(o));
            label(pit.neg_occ(i, o),
                  "~x" + std::to_string(i + 1) + "^" + std::to_string(o));
        }
        pit.graph.add_edge(hub, pit.pos_occ(i, 1));
        pit.graph.add_edge(hub, pit.pos_occ(i, 2));
        pit.graph.add_edge(pit.pos_occ(i, 1), pit.pos_occ(i, 2));
        pit.graph.add_edge(hub, pit.neg_occ(i, 1));
        pit.graph.add_edge(hub, pit.neg_occ(i, 2));
        pit.graph.add_edge(pit.neg_occ(i, 1), pit.neg_occ(i, 2));
    }

    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t o : {1u, 2u}) {
                label(pit.lit_vertex(j, r, o),
                      "l" + std::to_string(j + 1) + "," + std::to_string(r + 1) +
                          "^" + std::to_string(o));
            }
            pit.graph.add_edge(pit.lit_vertex(j, r, 1), pit.lit_vertex(j, r, 2));
        }
        for (std::size_t o : {1u, 2u}) {
            label(pit.head(j, o),
                  "h" + std::to_string(j + 1) + "^" + std::to_string(o));
            for (std::size_t r = 0; r < 3; ++r) {
                pit.graph.add_edge(pit.head(j, o), pit.lit_vertex(j, r, 1));
                pit.graph.add_edge(pit.head(j, o), pit.lit_vertex(j, r, 2));
            }
        }
    }

    // Occurrence bijection: per literal, superscripts are used in clause
    // order; the triangle edges tie both copies of a literal pair to it.
    std::map<std::pair<std::size_t, bool>, std::size_t> used;
    pit.occurrence.assign(m, {0, 0, 0});
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t r = 0; r < 3; ++r) {
            const Literal& lit = phi.clauses[j][r];
            std::size_t o = ++used[{lit.var, lit.positive}];
            std::size_t occ = lit.positive ? pit.pos_occ(lit.var, o)
                                           : pit.neg_occ(lit.var, o);
            pit.occurrence[j][r] = occ;
            pit.graph.add_edge(pit.lit_vertex(j, r, 1), occ);
            pit.graph.add_edge(pit.lit_vertex(j, r, 2), occ);
        }
    }

    for (std::size_t i = 0; i < fillers; ++i) {
        for (std::size_t o : {1u, 2u}) {
            label(pit.filler(i, o),
                  "g" + std::to_string(i + 1) + "^" + std::to_string(o));
        }
        pit.graph.add_edge(pit.filler(i, 1), pit.filler(i, 2));
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t o : {1u, 2u}) {
                pit.graph.add_edge(pit.filler(i, 1), pit.head(j, o));
                pit.graph.add_edge(pit.filler(i, 2), pit.head(j, o));
            }
        }
    }
    return pit;
}

SevenColumnInstance gen_seven_column_drmc(const Cnf3Sat2& phi) {
    PitGraph pit = gen_pit_from_3sat2(phi);
    const std::size_t n = phi.num_vars;
    const std::size_t m = phi.clauses.size();
    const std::size_t fillers = 2 * n - m;

    // All indices written into cells (variable, clause and filler numbers,
    // 1-based) plus the constants up to 6 must be distinct residues.
    std::uint64_t need = std::max({n, m, fillers, std::size_t{6}});
    std::uint64_t p = need + 1;
    while (!is_prime(p)) ++p;

    IncompleteMatrix matrix(PrimeField(p), pit.graph.size(), 7);
    auto row7 = [&](std::size_t row, std::initializer_list<long long> cells) {
        std::size_t j = 0;
        for (long long v : cells) {
            if (v >= 0) matrix.set(row, j, static_cast<std::uint64_t>(v));
            ++j;
        }
    };
    const long long B = -1; // missing

    for (std::size_t i = 0; i < n; ++i) {
        const long long iv = static_cast<long long>(i) + 1;
        row7(pit.var_hub(i), {iv, B, 0, 0, 0, 0, 0});
        row7(pit.pos_occ(i, 1), {iv, 1, B, B, 0, 0, 0});
        row7(pit.pos_occ(i, 2), {iv, 1, B, 0, B, 0, 0});
        row7(pit.neg_occ(i, 1), {iv, 0, B, B, 0, 0, 0});
        row7(pit.neg_occ(i, 2), {iv, 0, B, 0, B, 0, 0});
    }
    for (std::size_t j = 0; j < m; ++j) {
        const long long jv = static_cast<long long>(j) + 1;
        for (std::size_t r = 0; r < 3; ++r) {
            const Literal& lit = phi.clauses[j][r];
            const long long iv = static_cast<long long>(lit.var) + 1;
            const long long sign = lit.positive ? 1 : 0;
            // Both rows of the pair share the vector; the fourth/fifth
            // column depends on the superscript of f(j, r).
            bool first_occ =
                pit.occurrence[j][r] == (lit.positive
                                             ? pit.pos_occ(lit.var, 1)
                                             : pit.neg_occ(lit.var, 1));
            for (std::size_t o : {1u, 2u}) {
                if (first_occ) {
                    row7(pit.lit_vertex(j, r, o), {iv, sign, jv, 1, B, B, 0});
                } else {
                    row7(pit.lit_vertex(j, r, o), {iv, sign, jv, B, 1, B, 0});
                }
            }
        }
        row7(pit.head(j, 1), {B, B, jv, 1, 1, 1, B});
        row7(pit.head(j, 2), {B, B, jv, 1, 1, 2, B});
    }
    for (std::size_t i = 0; i < fillers; ++i) {
        const long long iv = static_cast<long long>(i) + 1;
        row7(pit.filler(i, 1), {B, B, B, B, B, B, iv});
        row7(pit.filler(i, 2), {B, B, B, B, B, B, iv});
    }

    SevenColumnInstance inst{std::move(matrix), pit.graph.size() / 3,
                             std::move(pit)};
    return inst;
}

std::pair<IncompleteMatrix, std::size_t> gen_2drmc_from_coloring(
    const SimpleGraph& g, std::size_t r) {
    const std::size_t n = g.size();
    require(n >= 1, "coloring instance needs at least one vertex");
    IncompleteMatrix matrix(PrimeField(2), n, n);
    for (std::size_t i = 0; i < n; ++i) {
        matrix.set(i, i, 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (g.adjacent(i, j)) matrix.set(i, j, 0);
        }
    }
    return {std::move(matrix), r};
}

bool is_k4_free(const SimpleGraph& g) {
    // No vertex neighborhood may contain a triangle.
    for (std::size_t v = 0; v < g.size(); ++v) {
        auto nb = g.neighbors(v);
        for (std::size_t a = 0; a < nb.size(); ++a) {
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                if (!g.adjacent(nb[a], nb[b])) continue;
                for (std::size_t c = b + 1; c < nb.size(); ++c) {
                    if (g.adjacent(nb[a], nb[c]) && g.adjacent(nb[b], nb[c])) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

std::vector<SimpleGraph> all_cubic_graphs(std::size_t n) {
    std::vector<SimpleGraph> out;
    if (n < 4 || n % 2 != 0) return out;
    // Backtracking over edges in lexicographic order, keeping degrees <= 3.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    }
    std::vector<std::size_t> degree(n, 0);
    std::vector<char> chosen(slots.size(), 0);
    auto rec = [&](auto&& self, std::size_t idx, std::size_t edges) -> void {
        if (edges == 3 * n / 2) {
            if (std::all_of(degree.begin(), degree.end(),
                            [](std::size_t d) { return d == 3; })) {
                SimpleGraph g(n);
                for (std::size_t i = 0; i < slots.size(); ++i) {
                    if (chosen[i]) g.add_edge(slots[i].first, slots[i].second);
                }
                out.push_back(std::move(g));
            }
            return;
        }
        if (idx == slots.size()) return;
        if (slots.size() - idx < 3 * n / 2 - edges) return;
        auto [u, v] = slots[idx];
        if (degree[u] < 3 && degree[v] < 3) {
            ++degree[u];
            ++degree[v];
            chosen[idx] = 1;
            self(self, idx + 1, edges + 1);
            chosen[idx] = 0;
            --degree[u];
            --degree[v];
        }
        // Skipping this edge must still allow u to reach degree 3 with the
        // remaining higher-endpoint slots.
        std::size_t remaining_u = 0;
        for (std::size_t i = idx + 1; i < slots.size(); ++i) {
            if (slots[i].first == u || slots[i].second == u) ++remaining_u;
        }
        if (degree[u] + remaining_u >= 3) self(self, idx + 1, edges);
    };
    rec(rec, 0, 0);
    return out;
}

SimpleGraph complement_graph(const SimpleGraph& g) {
    SimpleGraph c(g.size());
    for (std::size_t u = 0; u < g.size(); ++u) {
        for (std::size_t v = u + 1; v < g.size(); ++v) {
            if (!g.adjacent(u, v)) c.add_edge(u, v);
        }
    }
    return c;
}

} // namespace mc
