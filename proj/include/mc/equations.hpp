#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mc/gf.hpp"

namespace mc {

// Variable identity with provenance. The payload fields name the cell or
// coefficient the variable stands for: (z, y) for a missing matrix entry,
// (d, i) for the coefficient of base row i in the combination giving row d,
// (h, j) likewise for columns, and (d, i) for a dependency coefficient.
struct Var {
    enum class Kind : std::uint8_t {
        missing = 0,
        row_coef = 1,
        col_coef = 2,
        dep_coef = 3,
    };

    Kind kind = Kind::missing;
    std::uint32_t a = 0;
    std::uint32_t b = 0;

    // Total order used everywhere (canonical term layout, deterministic
    // variable selection). Payloads must stay below 2^29.
    std::uint64_t key() const {
        return (static_cast<std::uint64_t>(kind) << 58) |
               (static_cast<std::uint64_t>(a) << 29) |
               static_cast<std::uint64_t>(b);
    }

    friend bool operator==(const Var& x, const Var& y) {
        return x.key() == y.key();
    }
    friend bool operator!=(const Var& x, const Var& y) { return !(x == y); }
    friend bool operator<(const Var& x, const Var& y) {
        return x.key() < y.key();
    }
};

Var missing_var(std::size_t row, std::size_t col);
Var row_coef_var(std::size_t dependent_row, std::size_t base_row);
Var col_coef_var(std::size_t dependent_col, std::size_t base_col);

// Product of at most two variables; a multiset, so squares are allowed.
// With degree 2 the invariant v0 <= v1 holds.
struct Monomial {
    std::uint8_t degree = 0;
    Var v0;
    Var v1;

    static Monomial one() { return {}; }
    static Monomial var(const Var& v) { return {1, v, Var{}}; }
    static Monomial product(const Var& x, const Var& y) {
        return x < y ? Monomial{2, x, y} : Monomial{2, y, x};
    }

    bool contains(const Var& v) const {
        return (degree >= 1 && v0 == v) || (degree == 2 && v1 == v);
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        if (a.degree != b.degree) return false;
        if (a.degree >= 1 && !(a.v0 == b.v0)) return false;
        if (a.degree == 2 && !(a.v1 == b.v1)) return false;
        return true;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.degree >= 1 && a.v0 != b.v0) return a.v0 < b.v0;
        if (a.degree == 2 && a.v1 != b.v1) return a.v1 < b.v1;
        return false;
    }
};

struct Term {
    std::uint32_t coef = 0;
    Monomial mono;
};

// A fully simplified polynomial over GF(p), read as (sum of terms) = 0.
// Canonical form: at most one term per monomial, no zero coefficients,
// terms ordered by total degree then variable ids. The representation
// cannot hold degree above two.
class Equation {
public:
    Equation() = default;

    // Sums duplicate monomials and drops zero coefficients.
    static Equation from_terms(std::vector<Term> terms, const PrimeField& f);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int degree() const;
    bool is_linear() const { return degree() <= 1; }
    // True when no term has a variable; the empty equation is constant 0.
    bool is_constant() const;
    std::uint32_t constant_term() const;
    bool mentions(const Var& v) const;
    // Coefficient of the degree-1 term in v (0 if absent).
    std::uint32_t linear_coef(const Var& v) const;

    std::vector<Var> variables() const;

    // this with v replaced by the degree-<=1 polynomial gamma.
    Equation substituted(const Var& v, const Equation& gamma,
                         const PrimeField& f) const;

    friend bool operator==(const Equation& a, const Equation& b);

private:
    std::vector<Term> terms_;
};

Equation constant_equation(std::uint64_t c, const PrimeField& f);

// One substitution step: var was eliminated and equals expr (degree <= 1)
// over the variables still live at that point.
struct Elimination {
    Var var;
    Equation expr;
};

// A multiset of equations plus the ordered elimination log that rebuilds
// solutions of the original system from solutions of this one. No
// eliminated variable occurs in any remaining equation.
class EquationSystem {
public:
    explicit EquationSystem(const PrimeField& field) : field_(field) {}

    const PrimeField& field() const { return field_; }
    const std::vector<Equation>& equations() const { return equations_; }
    const std::vector<Elimination>& elimination_log() const { return log_; }

    // Vacuous (empty) equations are not stored.
    void add_equation(Equation eq);
    void append_log(Elimination e) { log_.push_back(std::move(e)); }

    // Distinct variables of the remaining equations, sorted.
    std::vector<Var> live_variables() const;

    bool has_contradiction() const;

private:
    PrimeField field_;
    std::vector<Equation> equations_;
    std::vector<Elimination> log_;
};

using Assignment = std::map<Var, std::uint32_t>;

// Missing variables evaluate as 0.
std::uint32_t evaluate(const Equation& eq, const Assignment& a,
                       const PrimeField& f);
bool satisfies(const EquationSystem& s, const Assignment& a);

// The system with equation eq_index removed and x replaced everywhere by
// the expression gamma obtained by isolating x in that equation; (x, gamma)
// is appended to the elimination log. Preconditions: the equation is linear
// and x occurs in it with nonzero coefficient; otherwise contract_error.
EquationSystem substitute(const EquationSystem& s, std::size_t eq_index,
                          const Var& x);

struct EliminationResult {
    bool infeasible = false;
    EquationSystem system;
};

// Repeatedly substitutes away linear equations (lowest equation index
// first, then lowest variable id) until every remaining equation carries a
// degree-2 term, or a contradictory constant equation is exposed.
// Infeasibility is a value, not an error.
EliminationResult eliminate_all_linear(const EquationSystem& s);

// Gaussian elimination for all-linear systems; free variables are set to 0.
// A nonlinear term throws contract_error. The assignment covers every
// variable of the system.
std::optional<Assignment> solve_linear(const EquationSystem& s);

enum class QuadStatus { sat, unsat, unknown };

struct QuadraticResult {
    QuadStatus status = QuadStatus::unknown;
    Assignment assignment; // populated when status == sat, always verified
};

struct QuadraticOptions {
    std::uint64_t seed = 0;
    // Exhaustive enumeration applies whenever p^(live vars) fits the
    // budget; beyond it a seeded one-sided local search runs and a miss is
    // reported as unknown, never as unsat.
    std::uint64_t budget = 1ull << 24;
};

QuadraticResult solve_quadratic(const EquationSystem& s,
                                const QuadraticOptions& opts = {});

// Replays an elimination log in reverse over a solution of the residual
// system, assigning every eliminated variable. Unseen variables read as 0.
Assignment back_substitute(const std::vector<Elimination>& log, Assignment a,
                           const PrimeField& f);

} // namespace mc
