#include "mc/equations.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace mc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw contract_error(what);
}

} // namespace

Var missing_var(std::size_t row, std::size_t col) {
    return {Var::Kind::missing, static_cast<std::uint32_t>(row),
            static_cast<std::uint32_t>(col)};
}

Var row_coef_var(std::size_t dependent_row, std::size_t base_row) {
    return {Var::Kind::row_coef, static_cast<std::uint32_t>(dependent_row),
            static_cast<std::uint32_t>(base_row)};
}

Var col_coef_var(std::size_t dependent_col, std::size_t base_col) {
    return {Var::Kind::col_coef, static_cast<std::uint32_t>(dependent_col),
            static_cast<std::uint32_t>(base_col)};
}

Equation Equation::from_terms(std::vector<Term> terms, const PrimeField& f) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.mono < b.mono; });
    Equation eq;
    for (const Term& t : terms) {
        if (!eq.terms_.empty() && eq.terms_.back().mono == t.mono) {
            eq.terms_.back().coef = static_cast<std::uint32_t>(
                f.add(eq.terms_.back().coef, t.coef));
        } else {
            eq.terms_.push_back(t);
        }
    }
    std::erase_if(eq.terms_, [](const Term& t) { return t.coef == 0; });
    return eq;
}

int Equation::degree() const {
    int d = 0;
    for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree));
    return d;
}

bool Equation::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].mono.degree == 0);
}

std::uint32_t Equation::constant_term() const {
    for (const Term& t : terms_) {
        if (t.mono.degree == 0) return t.coef;
    }
    return 0;
}

bool Equation::mentions(const Var& v) const {
    for (const Term& t : terms_) {
        if (t.mono.contains(v)) return true;
    }
    return false;
}

std::uint32_t Equation::linear_coef(const Var& v) const {
    for (const Term& t : terms_) {
        if (t.mono.degree == 1 && t.mono.v0 == v) return t.coef;
    }
    return 0;
}

std::vector<Var> Equation::variables() const {
    std::vector<Var> vars;
    for (const Term& t : terms_) {
        if (t.mono.degree >= 1) vars.push_back(t.mono.v0);
        if (t.mono.degree == 2) vars.push_back(t.mono.v1);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

Equation Equation::substituted(const Var& v, const Equation& gamma,
                               const PrimeField& f) const {
    require(gamma.degree() <= 1, "substituted expression must be linear");
    std::vector<Term> out;
    out.reserve(terms_.size() + 4);
    for (const Term& t : terms_) {
        if (!t.mono.contains(v)) {
            out.push_back(t);
            continue;
        }
        if (t.mono.degree == 1) {
            // c*v -> c*gamma
            for (const Term& g : gamma.terms_) {
                out.push_back({static_cast<std::uint32_t>(f.mul(t.coef, g.coef)),
                               g.mono});
            }
        } else if (t.mono.v0 == v && t.mono.v1 == v) {
            // c*v^2 -> c*gamma^2
            for (const Term& g1 : gamma.terms_) {
                for (const Term& g2 : gamma.terms_) {
                    std::uint32_t c = static_cast<std::uint32_t>(
                        f.mul(t.coef, f.mul(g1.coef, g2.coef)));
                    Monomial m;
                    if (g1.mono.degree == 0 && g2.mono.degree == 0) {
                        m = Monomial::one();
                    } else if (g1.mono.degree == 0) {
                        m = g2.mono;
                    } else if (g2.mono.degree == 0) {
                        m = g1.mono;
                    } else {
                        m = Monomial::product(g1.mono.v0, g2.mono.v0);
                    }
                    out.push_back({c, m});
                }
            }
        } else {
            // c*v*w -> c*w*gamma
            Var w = t.mono.v0 == v ? t.mono.v1 : t.mono.v0;
            for (const Term& g : gamma.terms_) {
                std::uint32_t c =
                    static_cast<std::uint32_t>(f.mul(t.coef, g.coef));
                Monomial m = g.mono.degree == 0
                                 ? Monomial::var(w)
                                 : Monomial::product(w, g.mono.v0);
                out.push_back({c, m});
            }
        }
    }
    return from_terms(std::move(out), f);
}

bool operator==(const Equation& a, const Equation& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].coef != b.terms_[i].coef ||
            !(a.terms_[i].mono == b.terms_[i].mono)) {
            return false;
        }
    }
    return true;
}

Equation constant_equation(std::uint64_t c, const PrimeField& f) {
    std::vector<Term> one{
        {static_cast<std::uint32_t>(c % f.modulus()), Monomial::one()}};
    return Equation::from_terms(std::move(one), f);
}

void EquationSystem::add_equation(Equation eq) {
    if (eq.empty()) return;
    equations_.push_back(std::move(eq));
}

std::vector<Var> EquationSystem::live_variables() const {
    std::vector<Var> vars;
    for (const Equation& eq : equations_) {
        auto v = eq.variables();
        vars.insert(vars.end(), v.begin(), v.end());
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

bool EquationSystem::has_contradiction() const {
    for (const Equation& eq : equations_) {
        if (eq.is_constant() && !eq.empty()) return true;
    }
    return false;
}

std::uint32_t evaluate(const Equation& eq, const Assignment& a,
                       const PrimeField& f) {
    auto value_of = [&](const Var& v) -> std::uint64_t {
        auto it = a.find(v);
        return it == a.end() ? 0 : it->second;
    };
    std::uint64_t sum = 0;
    for (const Term& t : eq.terms()) {
        std::uint64_t v = t.coef;
        if (t.mono.degree >= 1) v = f.mul(v, value_of(t.mono.v0));
        if (t.mono.degree == 2) v = f.mul(v, value_of(t.mono.v1));
        sum = f.add(sum, v);
    }
    return static_cast<std::uint32_t>(sum);
}

bool satisfies(const EquationSystem& s, const Assignment& a) {
    for (const Equation& eq : s.equations()) {
        if (evaluate(eq, a, s.field()) != 0) return false;
    }
    return true;
}

EquationSystem substitute(const EquationSystem& s, std::size_t eq_index,
                          const Var& x) {
    const PrimeField& f = s.field();
    require(eq_index < s.equations().size(), "substitute: bad equation index");
    const Equation& picked = s.equations()[eq_index];
    require(picked.is_linear(), "substitute: equation is not linear");
    std::uint32_t kappa = picked.linear_coef(x);
    require(kappa != 0, "substitute: variable absent from equation");

    // Isolate x: kappa*x + rest = 0, so x = -kappa^{-1} * rest.
    std::uint64_t scale = f.neg(f.inv(kappa));
    std::vector<Term> gamma_terms;
    for (const Term& t : picked.terms()) {
        if (t.mono.degree == 1 && t.mono.v0 == x) continue;
        gamma_terms.push_back(
            {static_cast<std::uint32_t>(f.mul(scale, t.coef)), t.mono});
    }
    Equation gamma = Equation::from_terms(std::move(gamma_terms), f);

    EquationSystem out(f);
    for (std::size_t i = 0; i < s.equations().size(); ++i) {
        if (i == eq_index) continue;
        out.add_equation(s.equations()[i].substituted(x, gamma, f));
    }
    for (const Elimination& e : s.elimination_log()) out.append_log(e);
    out.append_log({x, std::move(gamma)});
    return out;
}

EliminationResult eliminate_all_linear(const EquationSystem& s) {
    EquationSystem current = s;
    for (;;) {
        if (current.has_contradiction()) return {true, std::move(current)};

        std::optional<std::size_t> pick_eq;
        Var pick_var;
        for (std::size_t i = 0; i < current.equations().size(); ++i) {
            const Equation& eq = current.equations()[i];
            if (!eq.is_linear() || eq.is_constant()) continue;
            pick_eq = i;
            pick_var = eq.variables().front();
            break;
        }
        if (!pick_eq) return {false, std::move(current)};
        current = substitute(current, *pick_eq, pick_var);
    }
}

std::optional<Assignment> solve_linear(const EquationSystem& s) {
    const PrimeField& f = s.field();
    const std::uint32_t p = static_cast<std::uint32_t>(f.modulus());
    for (const Equation& eq : s.equations()) {
        require(eq.degree() <= 1, "solve_linear: nonlinear term present");
    }

    std::vector<Var> vars = s.live_variables();
    const std::size_t n = vars.size();
    auto index_of = [&](const Var& v) {
        return static_cast<std::size_t>(
            std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
    };

    // Augmented rows: coefficients then the right-hand side -constant.
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(s.equations().size());
    for (const Equation& eq : s.equations()) {
        std::vector<std::uint32_t> row(n + 1, 0);
        for (const Term& t : eq.terms()) {
            if (t.mono.degree == 0) {
                row[n] = static_cast<std::uint32_t>(f.neg(t.coef));
            } else {
                row[index_of(t.mono.v0)] = t.coef;
            }
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[r]);
        std::uint64_t inv = f.inv(rows[r][col]);
        for (std::size_t j = col; j <= n; ++j) {
            rows[r][j] = static_cast<std::uint32_t>(f.mul(rows[r][j], inv));
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            std::uint64_t factor = rows[i][col];
            for (std::size_t j = col; j <= n; ++j) {
                rows[i][j] = static_cast<std::uint32_t>(
                    f.sub(rows[i][j], f.mul(factor, rows[r][j])));
            }
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][n] != 0) return std::nullopt;
    }

    Assignment a;
    for (const Var& v : vars) a[v] = 0;
    for (std::size_t i = 0; i < r; ++i) {
        // Non-pivot (free) variables stay 0, so the pivot value is just the
        // right-hand side.
        a[vars[pivot_col[i]]] = rows[i][n] % p;
    }
    return a;
}

namespace {

// Equations flattened to indices into a value vector, for tight inner
// loops during enumeration and local search.
struct CompiledSystem {
    struct CTerm {
        std::uint32_t coef;
        int i, j; // variable indices; -1 for absent factor
    };
    std::vector<std::vector<CTerm>> eqs;
    std::vector<std::vector<std::size_t>> eq_vars; // variable indices per eq

    std::uint32_t eval(const std::vector<std::uint32_t>& x, std::size_t e,
                       const PrimeField& f) const {
        std::uint64_t sum = 0;
        for (const CTerm& t : eqs[e]) {
            std::uint64_t v = t.coef;
            if (t.i >= 0) v = f.mul(v, x[static_cast<std::size_t>(t.i)]);
            if (t.j >= 0) v = f.mul(v, x[static_cast<std::size_t>(t.j)]);
            sum = f.add(sum, v);
        }
        return static_cast<std::uint32_t>(sum);
    }
};

CompiledSystem compile(const EquationSystem& s, const std::vector<Var>& vars) {
    CompiledSystem cs;
    auto index_of = [&](const Var& v) {
        return static_cast<int>(std::lower_bound(vars.begin(), vars.end(), v) -
                                vars.begin());
    };
    for (const Equation& eq : s.equations()) {
        std::vector<CompiledSystem::CTerm> terms;
        for (const Term& t : eq.terms()) {
            CompiledSystem::CTerm ct{t.coef, -1, -1};
            if (t.mono.degree >= 1) ct.i = index_of(t.mono.v0);
            if (t.mono.degree == 2) ct.j = index_of(t.mono.v1);
            terms.push_back(ct);
        }
        cs.eqs.push_back(std::move(terms));
        std::vector<std::size_t> ev;
        for (const Var& v : eq.variables()) {
            ev.push_back(static_cast<std::size_t>(index_of(v)));
        }
        cs.eq_vars.push_back(std::move(ev));
    }
    return cs;
}

// p^n if it fits below 2^63, otherwise nullopt.
std::optional<std::uint64_t> checked_pow(std::uint64_t p, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (r > (1ull << 62) / p) return std::nullopt;
        r *= p;
    }
    return r;
}

} // namespace

QuadraticResult solve_quadratic(const EquationSystem& s,
                                const QuadraticOptions& opts) {
    const PrimeField& f = s.field();
    const std::uint32_t p = static_cast<std::uint32_t>(f.modulus());

    if (s.has_contradiction()) return {QuadStatus::unsat, {}};
    if (s.equations().empty()) return {QuadStatus::sat, {}};

    std::vector<Var> vars = s.live_variables();
    const std::size_t n = vars.size();
    CompiledSystem cs = compile(s, vars);
    const std::size_t eq_count = cs.eqs.size();

    auto to_assignment = [&](const std::vector<std::uint32_t>& x) {
        Assignment a;
        for (std::size_t i = 0; i < n; ++i) a[vars[i]] = x[i];
        return a;
    };
    auto all_satisfied = [&](const std::vector<std::uint32_t>& x) {
        for (std::size_t e = 0; e < eq_count; ++e) {
            if (cs.eval(x, e, f) != 0) return false;
        }
        return true;
    };

    std::optional<std::uint64_t> space = checked_pow(p, n);
    if (space && *space <= opts.budget) {
        // Exhaustive branch: lexicographic enumeration over live variables.
        std::vector<std::uint32_t> x(n, 0);
        for (;;) {
            if (all_satisfied(x)) {
                Assignment a = to_assignment(x);
                require(satisfies(s, a), "unverified quadratic solution");
                return {QuadStatus::sat, std::move(a)};
            }
            std::size_t i = n;
            while (i > 0) {
                --i;
                if (++x[i] < p) break;
                x[i] = 0;
                if (i == 0) return {QuadStatus::unsat, {}};
            }
        }
    }

    // One-sided randomized search: random restarts plus greedy single
    // variable flips. Any hit is verified by evaluation; a miss is unknown.
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint32_t> random_value(0, p - 1);
    const std::uint64_t total_flips = std::min<std::uint64_t>(
        opts.budget, 200000);
    std::uint64_t flips = 0;
    std::vector<std::uint32_t> x(n, 0);
    while (flips < total_flips) {
        for (std::size_t i = 0; i < n; ++i) x[i] = random_value(rng);
        for (std::uint64_t step = 0; step < 40 * n + 200 && flips < total_flips;
             ++step, ++flips) {
            std::vector<std::size_t> unsat;
            for (std::size_t e = 0; e < eq_count; ++e) {
                if (cs.eval(x, e, f) != 0) unsat.push_back(e);
            }
            if (unsat.empty()) {
                Assignment a = to_assignment(x);
                require(satisfies(s, a), "unverified quadratic solution");
                return {QuadStatus::sat, std::move(a)};
            }
            std::size_t e = unsat[rng() % unsat.size()];
            if (cs.eq_vars[e].empty()) break; // constant contradiction
            std::size_t vi = cs.eq_vars[e][rng() % cs.eq_vars[e].size()];
            std::uint32_t best_value = x[vi];
            std::size_t best_unsat = unsat.size();
            for (std::uint32_t candidate = 0; candidate < p; ++candidate) {
                x[vi] = candidate;
                std::size_t count = 0;
                for (std::size_t e2 = 0; e2 < eq_count; ++e2) {
                    if (cs.eval(x, e2, f) != 0) ++count;
                }
                if (count < best_unsat) {
                    best_unsat = count;
                    best_value = candidate;
                }
            }
            x[vi] = best_value;
        }
    }
    return {QuadStatus::unknown, {}};
}

Assignment back_substitute(const std::vector<Elimination>& log, Assignment a,
                           const PrimeField& f) {
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        a[it->var] = evaluate(it->expr, a, f);
    }
    return a;
}

} // namespace mc
