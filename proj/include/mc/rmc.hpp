#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mc/matrix.hpp"
#include "mc/params.hpp"

namespace mc {

// Branching certificate for the row-parameter solver: I picks the covering
// rows expected to stay independent, D prescribes how each remaining
// covering row depends on them. Indices are in the original row space.
struct RowSignature {
    std::vector<std::size_t> independent;
    std::map<std::size_t, std::map<std::size_t, std::uint32_t>> dependency;
};

// Certificate for the mixed parameter: a row half and a column half.
struct CombSignature {
    RowSignature rows;
    RowSignature cols;

    std::size_t independent_count() const {
        return rows.independent.size() + cols.independent.size();
    }
};

enum class SolveOutcome { sat, unsat, unknown };

struct RmcStats {
    std::uint64_t signatures_visited = 0;
    std::uint64_t signatures_valid = 0;
    std::uint64_t quadratic_unknowns = 0;
};

struct RmcResult {
    SolveOutcome status = SolveOutcome::unsat;
    std::optional<CompleteMatrix> completion; // present iff sat
    std::size_t achieved_rank = 0;            // rank of the completion

    // min |I| over valid signatures plus the residual rank; equals the
    // minimum rank over all completions. Absent when a shortcut skipped the
    // enumeration or an undecided branch could hide a better signature.
    std::optional<std::size_t> min_achievable_rank;

    std::optional<RowSignature> signature;       // row/col solvers
    std::optional<CombSignature> comb_signature; // comb solver
    RmcStats stats;
};

struct RmcOptions {
    std::uint64_t seed = 0;
    std::uint64_t budget = 1ull << 24; // enumeration budget (completions or
                                       // quadratic assignments)
    unsigned jobs = 1;                 // parallel signature evaluation
};

// Signature-space enumeration helpers, shared by the row and comb solvers.
// One half-signature over an abstract cover 0..k-1: the independent subset
// (ascending), its complement, and one coefficient per (dependent,
// independent) pair. Enumeration order: |I| ascending, subsets
// lexicographic, then the coefficient odometer.
struct HalfSignature {
    std::vector<std::size_t> independent;
    std::vector<std::size_t> dependent;
    std::vector<std::vector<std::uint32_t>> coefs; // [dependent][independent]
};

class HalfSignatureEnumerator {
public:
    HalfSignatureEnumerator(std::size_t k, std::uint64_t p);
    // False once exhausted.
    bool next(HalfSignature& out);

private:
    bool advance_subset();

    std::size_t k_;
    std::uint64_t p_;
    std::size_t size_ = 0;
    bool fresh_subset_ = true;
    bool done_ = false;
    std::vector<std::size_t> subset_;
    std::vector<std::uint32_t> odometer_;
};

// Sum over I of p^(|I| * (k - |I|)); saturates at 2^63.
std::uint64_t half_signature_count(std::size_t k, std::uint64_t p);

// Theorem-3.1-style solver, fixed-parameter in the number of covering rows.
RmcResult solve_rmc_row(const IncompleteMatrix& m, std::size_t t,
                        const RmcOptions& opts = {});

// Column variant via the transpose reduction.
RmcResult solve_rmc_col(const IncompleteMatrix& m, std::size_t t,
                        const RmcOptions& opts = {});

// Mixed-cover solver: quadratic equation systems per signature, linear
// equations substituted away, residual solved within the enumeration
// budget (or by verified randomized search beyond it).
RmcResult solve_rmc_comb(const IncompleteMatrix& m, std::size_t t,
                         const RmcOptions& opts = {});

// Exhaustive oracle over all p^(#missing) completions; returns a
// minimum-rank completion. Throws resource_error when the completion count
// exceeds the budget.
RmcResult brute_force_rmc(const IncompleteMatrix& m, std::size_t t,
                          std::uint64_t budget = 1ull << 24);

} // namespace mc
