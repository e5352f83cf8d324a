// Command-line front end: parameter computation, exact solvers, oracles,
// and hardness-gadget instance generators for matrix completion over GF(p).
//
// Exit codes: 0 solution found, 1 no solution, 2 input/usage error,
// 3 undecided (randomized budget exhausted).

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mc/drmc.hpp"
#include "mc/errors.hpp"
#include "mc/gadgets.hpp"
#include "mc/gf.hpp"
#include "mc/graph.hpp"
#include "mc/matrix.hpp"
#include "mc/matrix_io.hpp"
#include "mc/params.hpp"
#include "mc/rmc.hpp"

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitError = 2;
constexpr int kExitUnknown = 3;

std::string one_based(const std::vector<std::size_t>& idx) {
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(idx[i] + 1);
    }
    return out;
}

int cmd_params(const std::string& path) {
    mc::IncompleteMatrix m = mc::load_matrix(path);
    mc::CoverWitness row = mc::covering_rows(m);
    mc::CoverWitness col = mc::covering_cols(m);
    mc::CoverWitness comb = mc::comb_cover(m);
    std::cout << "row=" << row.value() << " col=" << col.value()
              << " comb=" << comb.value() << '\n';
    std::cout << "row_rows=" << one_based(row.rows) << '\n';
    std::cout << "col_cols=" << one_based(col.cols) << '\n';
    std::cout << "comb_rows=" << one_based(comb.rows) << '\n';
    std::cout << "comb_cols=" << one_based(comb.cols) << '\n';
    return kExitSat;
}

// Re-parse what we are about to hand out and re-check it; a solver bug
// must not slip through the CLI boundary.
void verify_emitted_completion(const std::string& text,
                               const mc::IncompleteMatrix& input,
                               bool rank_objective, std::size_t t) {
    mc::IncompleteMatrix reparsed = mc::parse_matrix_string(text);
    mc::CompleteMatrix completed(reparsed);
    if (!mc::is_consistent(completed, input)) {
        throw mc::contract_error("emitted completion is not consistent");
    }
    std::size_t objective = rank_objective ? mc::rank(completed)
                                           : mc::distinct_rows(completed);
    if (objective > t) {
        throw mc::contract_error("emitted completion misses the objective");
    }
}

int emit_solution(const mc::IncompleteMatrix& input, bool rank_objective,
                  std::size_t t,
                  const std::optional<mc::CompleteMatrix>& completion,
                  const std::string& output, bool unknown) {
    if (!completion) {
        std::cout << (unknown ? "UNKNOWN" : "UNSAT") << '\n';
        return unknown ? kExitUnknown : kExitUnsat;
    }
    std::string text = mc::matrix_to_string(*completion);
    verify_emitted_completion(text, input, rank_objective, t);
    std::cout << "SAT" << '\n' << text;
    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) throw std::runtime_error("cannot write: " + output);
        out << text;
    }
    return kExitSat;
}

struct SolveArgs {
    std::string problem;
    std::string path;
    std::size_t t = 0;
    std::string param = "auto";
    std::uint64_t seed = 0;
    std::uint64_t budget = 1ull << 24;
    unsigned jobs = 1;
    std::string output;
    bool verbose = false;
};

int cmd_solve(const SolveArgs& args) {
    mc::IncompleteMatrix m = mc::load_matrix(args.path);
    if (args.problem == "rmc") {
        mc::RmcOptions opts;
        opts.seed = args.seed;
        opts.budget = args.budget;
        opts.jobs = args.jobs;
        std::string param = args.param;
        if (param == "auto") {
            std::size_t row = mc::covering_rows(m).value();
            std::size_t col = mc::covering_cols(m).value();
            std::size_t comb = mc::comb_cover(m).value();
            if (comb < std::min(row, col)) {
                param = "comb";
            } else {
                param = row <= col ? "row" : "col";
            }
        }
        mc::RmcResult result;
        if (param == "row") {
            result = mc::solve_rmc_row(m, args.t, opts);
        } else if (param == "col") {
            result = mc::solve_rmc_col(m, args.t, opts);
        } else if (param == "comb") {
            result = mc::solve_rmc_comb(m, args.t, opts);
        } else {
            throw mc::contract_error("unknown rmc parameter: " + param);
        }
        if (args.verbose) {
            std::cerr << "param=" << param
                      << " signatures=" << result.stats.signatures_visited
                      << '\n';
        }
        return emit_solution(m, true, args.t, result.completion, args.output,
                             result.status == mc::SolveOutcome::unknown);
    }
    if (args.problem == "drmc") {
        mc::DrmcStrategy strategy = mc::DrmcStrategy::auto_select;
        if (args.param == "row") {
            strategy = mc::DrmcStrategy::row_hint;
        } else if (args.param == "comb") {
            strategy = mc::DrmcStrategy::comb_hint;
        } else if (args.param == "heuristic") {
            strategy = mc::DrmcStrategy::heuristic;
        } else if (args.param != "auto") {
            throw mc::contract_error("unknown drmc parameter: " + args.param);
        }
        mc::DrmcResult result = mc::solve_drmc(m, args.t, strategy, args.jobs);
        if (args.verbose) {
            std::cerr << "width=" << result.decomposition_width << '\n';
        }
        return emit_solution(m, false, args.t, result.completion, args.output,
                             false);
    }
    throw mc::contract_error("unknown problem: " + args.problem);
}

int cmd_oracle(const SolveArgs& args) {
    mc::IncompleteMatrix m = mc::load_matrix(args.path);
    if (args.problem == "rmc") {
        mc::RmcResult result = mc::brute_force_rmc(m, args.t, args.budget);
        return emit_solution(m, true, args.t, result.completion, args.output,
                             false);
    }
    if (args.problem == "drmc") {
        mc::DrmcResult result = mc::brute_force_drmc(m, args.t, args.budget);
        return emit_solution(m, false, args.t, result.completion, args.output,
                             false);
    }
    throw mc::contract_error("unknown problem: " + args.problem);
}

void write_text(const std::string& output, const std::string& text) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write: " + output);
    out << text;
}

struct GenArgs {
    std::string kind;
    std::string cnf_path;
    std::string graph_path;
    std::size_t n = 3;
    std::uint64_t seed = 0;
    std::string output;
    std::uint64_t p = 2;
    std::size_t m_rows = 4;
    std::size_t n_cols = 4;
    std::size_t missing = 4;
    long long t_flag = -1;
};

mc::Cnf3Sat2 gen_formula(const GenArgs& args) {
    if (!args.cnf_path.empty()) return mc::load_dimacs(args.cnf_path);
    return mc::random_3sat2(args.n, args.seed);
}

int cmd_gen(const GenArgs& args) {
    if (args.kind == "sat2") {
        mc::Cnf3Sat2 phi = gen_formula(args);
        std::ostringstream out;
        mc::write_dimacs(out, phi);
        write_text(args.output, out.str());
        return kExitSat;
    }
    if (args.kind == "pit") {
        mc::PitGraph pit = mc::gen_pit_from_3sat2(gen_formula(args));
        std::ostringstream out;
        for (std::size_t v = 0; v < pit.graph.size(); ++v) {
            out << "# " << (v + 1) << ": " << pit.labels[v] << '\n';
        }
        mc::write_graph(out, pit.graph);
        write_text(args.output, out.str());
        return kExitSat;
    }
    if (args.kind == "sat7col") {
        mc::SevenColumnInstance inst =
            mc::gen_seven_column_drmc(gen_formula(args));
        std::ostringstream out;
        out << "# t=" << inst.t << '\n';
        mc::write_matrix(out, inst.matrix);
        write_text(args.output, out.str());
        if (!args.output.empty()) std::cout << "t=" << inst.t << '\n';
        return kExitSat;
    }
    if (args.kind == "coloring2drmc") {
        if (args.graph_path.empty()) {
            throw mc::contract_error("coloring2drmc needs --graph");
        }
        mc::SimpleGraph g = mc::load_graph(args.graph_path);
        std::size_t r;
        if (args.t_flag >= 0) {
            r = static_cast<std::size_t>(args.t_flag);
        } else {
            if (g.size() % 3 != 0) {
                throw mc::contract_error(
                    "vertex count not divisible by 3; pass --t explicitly");
            }
            r = g.size() / 3;
        }
        auto [matrix, t] = mc::gen_2drmc_from_coloring(g, r);
        std::ostringstream out;
        out << "# t=" << t << '\n';
        mc::write_matrix(out, matrix);
        write_text(args.output, out.str());
        if (!args.output.empty()) std::cout << "t=" << t << '\n';
        return kExitSat;
    }
    if (args.kind == "random-matrix") {
        mc::PrimeField field(args.p);
        mc::IncompleteMatrix m(field, args.m_rows, args.n_cols);
        if (args.missing > args.m_rows * args.n_cols) {
            throw mc::contract_error("more missing entries than cells");
        }
        std::mt19937_64 rng(args.seed);
        for (std::size_t i = 0; i < args.m_rows; ++i) {
            for (std::size_t j = 0; j < args.n_cols; ++j) {
                m.set(i, j, rng() % args.p);
            }
        }
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t i = 0; i < args.m_rows; ++i) {
            for (std::size_t j = 0; j < args.n_cols; ++j) {
                cells.emplace_back(i, j);
            }
        }
        std::shuffle(cells.begin(), cells.end(), rng);
        for (std::size_t idx = 0; idx < args.missing; ++idx) {
            m.clear(cells[idx].first, cells[idx].second);
        }
        std::ostringstream out;
        mc::write_matrix(out, m);
        write_text(args.output, out.str());
        return kExitSat;
    }
    throw mc::contract_error("unknown generator kind: " + args.kind);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact matrix completion solvers over GF(p)"};
    app.require_subcommand(1);

    std::string params_path;
    CLI::App* params = app.add_subcommand(
        "params", "Covering-parameter values and witnesses");
    params->add_option("matrix", params_path, "matrix file")->required();

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Run a parameterized solver");
    solve->add_option("problem", solve_args.problem, "rmc or drmc")
        ->required()
        ->check(CLI::IsMember({"rmc", "drmc"}));
    solve->add_option("matrix", solve_args.path, "matrix file")->required();
    solve->add_option("--t", solve_args.t, "objective bound")->required();
    solve->add_option("--param", solve_args.param,
                      "row|col|comb|heuristic|auto");
    solve->add_option("--seed", solve_args.seed, "randomized-search seed");
    solve->add_option("--budget", solve_args.budget, "enumeration budget")
        ->check(CLI::PositiveNumber);
    solve->add_option("--jobs", solve_args.jobs, "worker threads")
        ->check(CLI::PositiveNumber);
    solve->add_option("--output", solve_args.output,
                      "also write the completion here");
    solve->add_flag("-v,--verbose", solve_args.verbose, "diagnostics");

    SolveArgs oracle_args;
    CLI::App* oracle =
        app.add_subcommand("oracle", "Exhaustive brute-force reference");
    oracle->add_option("problem", oracle_args.problem, "rmc or drmc")
        ->required()
        ->check(CLI::IsMember({"rmc", "drmc"}));
    oracle->add_option("matrix", oracle_args.path, "matrix file")->required();
    oracle->add_option("--t", oracle_args.t, "objective bound")->required();
    oracle->add_option("--budget", oracle_args.budget, "enumeration budget")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--output", oracle_args.output,
                       "also write the completion here");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Instance generators");
    gen->add_option("kind", gen_args.kind,
                    "sat2|pit|sat7col|coloring2drmc|random-matrix")
        ->required();
    gen->add_option("--cnf", gen_args.cnf_path, "input DIMACS formula");
    gen->add_option("--graph", gen_args.graph_path, "input edge-list graph");
    gen->add_option("--n", gen_args.n, "variable count for random formulas");
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("--output", gen_args.output, "output file (default stdout)");
    gen->add_option("--p", gen_args.p, "field modulus (random-matrix)");
    gen->add_option("--m", gen_args.m_rows, "rows (random-matrix)");
    gen->add_option("--cols", gen_args.n_cols, "columns (random-matrix)");
    gen->add_option("--missing", gen_args.missing,
                    "missing entries (random-matrix)");
    gen->add_option("--t", gen_args.t_flag, "target override (coloring2drmc)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (params->parsed()) return cmd_params(params_path);
        if (solve->parsed()) return cmd_solve(solve_args);
        if (oracle->parsed()) return cmd_oracle(oracle_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        std::cerr << "no subcommand\n";
        return kExitError;
    } catch (const mc::parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitError;
    } catch (const mc::resource_error& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
