#include "mc/rmc.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <numeric>

#include "mc/equations.hpp"

namespace mc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw contract_error(what);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::vector<std::size_t> identity_perm(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// Permutation placing the (sorted) cover indices first, everything else
// after in ascending order; perm[new_index] = old_index.
std::vector<std::size_t> cover_first_perm(std::size_t n,
                                          const std::vector<std::size_t>& cover) {
    std::vector<char> in_cover(n, 0);
    for (std::size_t i : cover) in_cover[i] = 1;
    std::vector<std::size_t> perm = cover;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_cover[i]) perm.push_back(i);
    }
    return perm;
}

std::vector<std::size_t> inverse_perm(const std::vector<std::size_t>& perm) {
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    return inv;
}

// Missing entries replaced by their assignment values; unconstrained ones
// default to 0.
CompleteMatrix fill_from_assignment(const IncompleteMatrix& m,
                                    const Assignment& a) {
    CompleteMatrix out(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m.is_missing(i, j)) {
                out.set(i, j, m.at(i, j));
            } else {
                auto it = a.find(missing_var(i, j));
                out.set(i, j, it == a.end() ? 0 : it->second);
            }
        }
    }
    return out;
}

// Always-on soundness gate: every SAT payload must be consistent and meet
// the rank bound.
void verify_rmc_completion(const IncompleteMatrix& m, const CompleteMatrix& mc,
                           std::size_t t) {
    require(is_consistent(mc, m), "rmc solver produced inconsistent completion");
    require(rank(mc) <= t, "rmc solver exceeded the rank bound");
}

std::size_t residual_block_rank(const IncompleteMatrix& mp, std::size_t r,
                                std::size_t c) {
    if (r >= mp.rows() || c >= mp.cols()) return 0;
    return rank(CompleteMatrix(mp.block(r, mp.rows(), c, mp.cols())));
}

RmcResult trivial_sat(const IncompleteMatrix& m, std::size_t t) {
    // rank never exceeds min(m, n), so any completion works; use zeros.
    CompleteMatrix mc = fill_from_assignment(m, {});
    verify_rmc_completion(m, mc, t);
    RmcResult result;
    result.status = SolveOutcome::sat;
    result.achieved_rank = rank(mc);
    result.completion = std::move(mc);
    return result;
}

// Linear (or quadratic, for the comb solver) system stating that each
// dependent cover row equals its prescribed combination of the rows below
// the cover and the independent cover rows, coordinate by coordinate.
EquationSystem build_row_system(const IncompleteMatrix& mp, std::size_t k,
                                const HalfSignature& sig) {
    const PrimeField& f = mp.field();
    EquationSystem sys(f);
    const std::size_t rows = mp.rows(), cols = mp.cols();
    std::vector<Term> terms;
    for (std::size_t dpos = 0; dpos < sig.dependent.size(); ++dpos) {
        const std::size_t d = sig.dependent[dpos];
        for (std::size_t j = 0; j < cols; ++j) {
            terms.clear();
            if (mp.is_missing(d, j)) {
                terms.push_back({1, Monomial::var(missing_var(d, j))});
            } else if (std::uint32_t v = mp.at(d, j)) {
                terms.push_back({v, Monomial::one()});
            }
            for (std::size_t i = k; i < rows; ++i) {
                std::uint32_t v = mp.at(i, j);
                if (v == 0) continue;
                terms.push_back({static_cast<std::uint32_t>(f.neg(v)),
                                 Monomial::var(row_coef_var(d, i))});
            }
            for (std::size_t ipos = 0; ipos < sig.independent.size(); ++ipos) {
                const std::size_t i = sig.independent[ipos];
                std::uint32_t dc = sig.coefs[dpos][ipos];
                if (dc == 0) continue;
                if (mp.is_missing(i, j)) {
                    terms.push_back({static_cast<std::uint32_t>(f.neg(dc)),
                                     Monomial::var(missing_var(i, j))});
                } else if (std::uint32_t v = mp.at(i, j)) {
                    terms.push_back(
                        {static_cast<std::uint32_t>(f.neg(f.mul(dc, v))),
                         Monomial::one()});
                }
            }
            sys.add_equation(Equation::from_terms(terms, f));
        }
    }
    return sys;
}

// Row-combination equations over all n coordinates plus column-combination
// equations restricted to the rows below the cover. Products of a row
// coefficient with a missing entry in the covering columns are the only
// quadratic terms.
EquationSystem build_comb_system(const IncompleteMatrix& mp, std::size_t r,
                                 std::size_t c, const HalfSignature& row_sig,
                                 const HalfSignature& col_sig) {
    const PrimeField& f = mp.field();
    EquationSystem sys(f);
    const std::size_t rows = mp.rows(), cols = mp.cols();
    std::vector<Term> terms;

    for (std::size_t dpos = 0; dpos < row_sig.dependent.size(); ++dpos) {
        const std::size_t d = row_sig.dependent[dpos];
        for (std::size_t j = 0; j < cols; ++j) {
            terms.clear();
            if (mp.is_missing(d, j)) {
                terms.push_back({1, Monomial::var(missing_var(d, j))});
            } else if (std::uint32_t v = mp.at(d, j)) {
                terms.push_back({v, Monomial::one()});
            }
            for (std::size_t i = r; i < rows; ++i) {
                if (mp.is_missing(i, j)) {
                    terms.push_back(
                        {static_cast<std::uint32_t>(f.neg(1)),
                         Monomial::product(row_coef_var(d, i),
                                           missing_var(i, j))});
                } else if (std::uint32_t v = mp.at(i, j)) {
                    terms.push_back({static_cast<std::uint32_t>(f.neg(v)),
                                     Monomial::var(row_coef_var(d, i))});
                }
            }
            for (std::size_t ipos = 0; ipos < row_sig.independent.size();
                 ++ipos) {
                const std::size_t i = row_sig.independent[ipos];
                std::uint32_t dc = row_sig.coefs[dpos][ipos];
                if (dc == 0) continue;
                if (mp.is_missing(i, j)) {
                    terms.push_back({static_cast<std::uint32_t>(f.neg(dc)),
                                     Monomial::var(missing_var(i, j))});
                } else if (std::uint32_t v = mp.at(i, j)) {
                    terms.push_back(
                        {static_cast<std::uint32_t>(f.neg(f.mul(dc, v))),
                         Monomial::one()});
                }
            }
            sys.add_equation(Equation::from_terms(terms, f));
        }
    }

    for (std::size_t hpos = 0; hpos < col_sig.dependent.size(); ++hpos) {
        const std::size_t h = col_sig.dependent[hpos];
        for (std::size_t z = r; z < rows; ++z) {
            terms.clear();
            if (mp.is_missing(z, h)) {
                terms.push_back({1, Monomial::var(missing_var(z, h))});
            } else if (std::uint32_t v = mp.at(z, h)) {
                terms.push_back({v, Monomial::one()});
            }
            for (std::size_t j = c; j < cols; ++j) {
                // The block below the cover rows and right of the cover
                // columns is complete.
                std::uint32_t v = mp.at(z, j);
                if (v == 0) continue;
                terms.push_back({static_cast<std::uint32_t>(f.neg(v)),
                                 Monomial::var(col_coef_var(h, j))});
            }
            for (std::size_t jpos = 0; jpos < col_sig.independent.size();
                 ++jpos) {
                const std::size_t jj = col_sig.independent[jpos];
                std::uint32_t dc = col_sig.coefs[hpos][jpos];
                if (dc == 0) continue;
                if (mp.is_missing(z, jj)) {
                    terms.push_back({static_cast<std::uint32_t>(f.neg(dc)),
                                     Monomial::var(missing_var(z, jj))});
                } else if (std::uint32_t v = mp.at(z, jj)) {
                    terms.push_back(
                        {static_cast<std::uint32_t>(f.neg(f.mul(dc, v))),
                         Monomial::one()});
                }
            }
            sys.add_equation(Equation::from_terms(terms, f));
        }
    }
    return sys;
}

// Fixed-|I| half-signature stream: subsets lexicographic, coefficients an
// odometer with the last slot fastest.
class FixedHalfEnumerator {
public:
    FixedHalfEnumerator(std::size_t k, std::uint64_t p, std::size_t size)
        : k_(k), p_(p), size_(size) {
        reset();
    }

    void reset() {
        subset_.resize(size_);
        std::iota(subset_.begin(), subset_.end(), 0);
        odometer_.assign(size_ * (k_ - size_), 0);
        state_ = size_ <= k_ ? State::emit : State::done;
    }

    bool next(HalfSignature& out) {
        switch (state_) {
        case State::done:
            return false;
        case State::emit:
            state_ = State::advance;
            emit(out);
            return true;
        case State::advance:
            if (advance_odometer()) {
                emit(out);
                return true;
            }
            if (advance_subset()) {
                std::fill(odometer_.begin(), odometer_.end(), 0);
                emit(out);
                return true;
            }
            state_ = State::done;
            return false;
        }
        return false;
    }

private:
    enum class State { emit, advance, done };

    bool advance_odometer() {
        std::size_t i = odometer_.size();
        while (i > 0) {
            --i;
            if (++odometer_[i] < p_) return true;
            odometer_[i] = 0;
        }
        return false;
    }

    bool advance_subset() {
        if (size_ == 0) return false;
        std::size_t i = size_;
        while (i > 0) {
            --i;
            if (subset_[i] < k_ - size_ + i) {
                ++subset_[i];
                for (std::size_t j = i + 1; j < size_; ++j) {
                    subset_[j] = subset_[j - 1] + 1;
                }
                return true;
            }
        }
        return false;
    }

    void emit(HalfSignature& out) const {
        out.independent = subset_;
        out.dependent.clear();
        std::size_t next_in = 0;
        for (std::size_t v = 0; v < k_; ++v) {
            if (next_in < size_ && subset_[next_in] == v) {
                ++next_in;
            } else {
                out.dependent.push_back(v);
            }
        }
        out.coefs.assign(out.dependent.size(),
                         std::vector<std::uint32_t>(size_, 0));
        for (std::size_t dpos = 0; dpos < out.dependent.size(); ++dpos) {
            for (std::size_t ipos = 0; ipos < size_; ++ipos) {
                out.coefs[dpos][ipos] = odometer_[dpos * size_ + ipos];
            }
        }
    }

    std::size_t k_;
    std::uint64_t p_;
    std::size_t size_;
    State state_ = State::done;
    std::vector<std::size_t> subset_;
    std::vector<std::uint32_t> odometer_;
};

enum class EvalKind { invalid, valid, undecided };

struct EvalOutcome {
    EvalKind kind = EvalKind::invalid;
    Assignment solution;
};

// Pulls signatures from next(), evaluates them (in parallel when jobs > 1,
// in fixed batches so the selected winner does not depend on scheduling),
// and returns the first valid one in stream order. on_scan is called in
// order for every scanned signature before the winner.
template <typename Sig, typename Next, typename Eval, typename OnScan>
std::optional<std::pair<Sig, Assignment>> search_signatures(Next&& next,
                                                            Eval&& eval,
                                                            unsigned jobs,
                                                            OnScan&& on_scan) {
    if (jobs <= 1) {
        Sig sig;
        while (next(sig)) {
            EvalOutcome out = eval(sig);
            on_scan(sig, out.kind);
            if (out.kind == EvalKind::valid) {
                return std::make_pair(sig, std::move(out.solution));
            }
        }
        return std::nullopt;
    }

    const std::size_t batch_target = static_cast<std::size_t>(jobs) * 64;
    for (;;) {
        std::vector<Sig> batch;
        batch.reserve(batch_target);
        {
            Sig sig;
            while (batch.size() < batch_target && next(sig)) {
                batch.push_back(sig);
            }
        }
        if (batch.empty()) return std::nullopt;
        std::vector<EvalOutcome> outcomes(batch.size());
        std::atomic<std::size_t> cursor{0};
        std::vector<std::future<void>> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            workers.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i;
                     (i = cursor.fetch_add(1)) < batch.size();) {
                    outcomes[i] = eval(batch[i]);
                }
            }));
        }
        for (auto& w : workers) w.get();
        for (std::size_t i = 0; i < batch.size(); ++i) {
            on_scan(batch[i], outcomes[i].kind);
            if (outcomes[i].kind == EvalKind::valid) {
                return std::make_pair(batch[i],
                                      std::move(outcomes[i].solution));
            }
        }
    }
}

RowSignature to_original_rows(const HalfSignature& sig,
                              const std::vector<std::size_t>& cover) {
    RowSignature out;
    for (std::size_t pos : sig.independent) out.independent.push_back(cover[pos]);
    for (std::size_t dpos = 0; dpos < sig.dependent.size(); ++dpos) {
        std::map<std::size_t, std::uint32_t> deps;
        for (std::size_t ipos = 0; ipos < sig.independent.size(); ++ipos) {
            deps[cover[sig.independent[ipos]]] = sig.coefs[dpos][ipos];
        }
        out.dependency[cover[sig.dependent[dpos]]] = std::move(deps);
    }
    return out;
}

} // namespace

HalfSignatureEnumerator::HalfSignatureEnumerator(std::size_t k, std::uint64_t p)
    : k_(k), p_(p) {
    subset_.clear();
    odometer_.clear();
}

bool HalfSignatureEnumerator::advance_subset() {
    if (size_ == 0) return false;
    std::size_t i = subset_.size();
    while (i > 0) {
        --i;
        if (subset_[i] < k_ - size_ + i) {
            ++subset_[i];
            for (std::size_t j = i + 1; j < subset_.size(); ++j) {
                subset_[j] = subset_[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

bool HalfSignatureEnumerator::next(HalfSignature& out) {
    auto emit = [&] {
        out.independent = subset_;
        out.dependent.clear();
        std::size_t next_in = 0;
        for (std::size_t v = 0; v < k_; ++v) {
            if (next_in < subset_.size() && subset_[next_in] == v) {
                ++next_in;
            } else {
                out.dependent.push_back(v);
            }
        }
        out.coefs.assign(out.dependent.size(),
                         std::vector<std::uint32_t>(subset_.size(), 0));
        for (std::size_t dpos = 0; dpos < out.dependent.size(); ++dpos) {
            for (std::size_t ipos = 0; ipos < subset_.size(); ++ipos) {
                out.coefs[dpos][ipos] = odometer_[dpos * subset_.size() + ipos];
            }
        }
    };

    if (done_) return false;
    if (fresh_subset_) {
        subset_.resize(size_);
        std::iota(subset_.begin(), subset_.end(), 0);
        odometer_.assign(size_ * (k_ - size_), 0);
        fresh_subset_ = false;
        emit();
        return true;
    }
    // Advance the coefficient odometer, last slot fastest.
    std::size_t i = odometer_.size();
    while (i > 0) {
        --i;
        if (++odometer_[i] < p_) {
            emit();
            return true;
        }
        odometer_[i] = 0;
    }
    if (advance_subset()) {
        odometer_.assign(odometer_.size(), 0);
        emit();
        return true;
    }
    if (size_ == k_) {
        done_ = true;
        return false;
    }
    ++size_;
    fresh_subset_ = true;
    return next(out);
}

std::uint64_t half_signature_count(std::size_t k, std::uint64_t p) {
    const unsigned __int128 cap = static_cast<unsigned __int128>(1) << 63;
    unsigned __int128 total = 0;
    // Walk subset sizes; binomial(k, s) * p^(s*(k-s)).
    for (std::size_t s = 0; s <= k; ++s) {
        unsigned __int128 binom = 1;
        for (std::size_t i = 0; i < s; ++i) {
            binom = binom * (k - i) / (i + 1);
        }
        unsigned __int128 power = 1;
        for (std::size_t i = 0; i < s * (k - s); ++i) {
            power *= p;
            if (power >= cap) return static_cast<std::uint64_t>(cap);
        }
        total += binom * power;
        if (total >= cap) return static_cast<std::uint64_t>(cap);
    }
    return static_cast<std::uint64_t>(total);
}

RmcResult solve_rmc_row(const IncompleteMatrix& m, std::size_t t,
                        const RmcOptions& opts) {
    if (t >= std::min(m.rows(), m.cols())) return trivial_sat(m, t);

    const CoverWitness cover = covering_rows(m);
    const std::size_t k = cover.rows.size();
    const auto row_perm = cover_first_perm(m.rows(), cover.rows);
    const auto col_perm = identity_perm(m.cols());
    const IncompleteMatrix mp = m.permuted(row_perm, col_perm);
    const std::size_t rk_lower = residual_block_rank(mp, k, 0);

    RmcResult result;
    HalfSignatureEnumerator en(k, m.field().modulus());
    auto eval = [&](const HalfSignature& sig) {
        EvalOutcome out;
        auto sol = solve_linear(build_row_system(mp, k, sig));
        if (sol) {
            out.kind = EvalKind::valid;
            out.solution = std::move(*sol);
        }
        return out;
    };
    auto winner = search_signatures<HalfSignature>(
        [&](HalfSignature& sig) { return en.next(sig); }, eval, opts.jobs,
        [&](const HalfSignature&, EvalKind kind) {
            ++result.stats.signatures_visited;
            if (kind == EvalKind::valid) ++result.stats.signatures_valid;
        });

    // The all-independent signature carries no equations, so a winner
    // always exists.
    require(winner.has_value(), "row signature search found no valid branch");
    const std::size_t best = winner->first.independent.size();
    result.min_achievable_rank = best + rk_lower;

    if (best + rk_lower > t) {
        result.status = SolveOutcome::unsat;
        return result;
    }
    CompleteMatrix filled = fill_from_assignment(mp, winner->second);
    CompleteMatrix completion =
        filled.permuted(inverse_perm(row_perm), col_perm);
    verify_rmc_completion(m, completion, t);
    result.status = SolveOutcome::sat;
    result.achieved_rank = rank(completion);
    result.completion = std::move(completion);
    result.signature = to_original_rows(winner->first, cover.rows);
    return result;
}

RmcResult solve_rmc_col(const IncompleteMatrix& m, std::size_t t,
                        const RmcOptions& opts) {
    RmcResult result = solve_rmc_row(m.transpose(), t, opts);
    if (result.completion) {
        CompleteMatrix back = result.completion->transpose();
        verify_rmc_completion(m, back, t);
        result.completion = std::move(back);
    }
    // The signature's indices name columns of the original matrix.
    return result;
}

namespace {

// One comb branch plus its position in the stream (used to derive the
// per-branch randomized-search seed deterministically).
struct CombParts {
    HalfSignature rows;
    HalfSignature cols;
    std::uint64_t ordinal = 0;

    std::size_t independent_count() const {
        return rows.independent.size() + cols.independent.size();
    }
};

// Streams (row half, column half) pairs ordered by |I_R| + |I_C|
// ascending; within one total size the row subset/odometer is outer and
// the column one innermost.
class CombStream {
public:
    CombStream(std::size_t r, std::size_t c, std::uint64_t p)
        : r_(r), c_(c), k_(r + c), p_(p) {}

    bool next(CombParts& out) {
        for (;;) {
            if (done_) return false;
            if (!row_en_) {
                if (!open_next_cell()) {
                    done_ = true;
                    return false;
                }
            }
            if (!have_rows_) {
                if (!row_en_->next(current_rows_)) {
                    row_en_.reset();
                    col_en_.reset();
                    continue;
                }
                have_rows_ = true;
                col_en_.emplace(c_, p_, s_ - current_rows_.independent.size());
            }
            HalfSignature cols;
            if (col_en_->next(cols)) {
                out.rows = current_rows_;
                out.cols = std::move(cols);
                out.ordinal = ordinal_++;
                return true;
            }
            have_rows_ = false;
        }
    }

private:
    bool open_next_cell() {
        while (s_ <= k_) {
            std::size_t rmin = s_ > c_ ? s_ - c_ : 0;
            if (rsize_cursor_ < rmin) rsize_cursor_ = rmin;
            if (rsize_cursor_ <= std::min(s_, r_)) {
                row_en_.emplace(r_, p_, rsize_cursor_);
                have_rows_ = false;
                ++rsize_cursor_;
                return true;
            }
            ++s_;
            rsize_cursor_ = 0;
        }
        return false;
    }

    std::size_t r_, c_, k_;
    std::uint64_t p_;
    std::size_t s_ = 0;
    std::size_t rsize_cursor_ = 0;
    bool have_rows_ = false;
    bool done_ = false;
    std::uint64_t ordinal_ = 0;
    HalfSignature current_rows_;
    std::optional<FixedHalfEnumerator> row_en_;
    std::optional<FixedHalfEnumerator> col_en_;
};

} // namespace

RmcResult solve_rmc_comb(const IncompleteMatrix& m, std::size_t t,
                         const RmcOptions& opts) {
    if (t >= std::min(m.rows(), m.cols())) return trivial_sat(m, t);

    const CoverWitness cover = comb_cover(m);
    const std::size_t r = cover.rows.size();
    const std::size_t c = cover.cols.size();
    const auto row_perm = cover_first_perm(m.rows(), cover.rows);
    const auto col_perm = cover_first_perm(m.cols(), cover.cols);
    const IncompleteMatrix mp = m.permuted(row_perm, col_perm);
    const std::size_t rk_lower = residual_block_rank(mp, r, c);

    RmcResult result;
    std::vector<std::size_t> undecided_sizes;
    CombStream stream(r, c, m.field().modulus());

    auto eval = [&](const CombParts& parts) {
        EvalOutcome out;
        EquationSystem sys = build_comb_system(mp, r, c, parts.rows, parts.cols);
        EliminationResult elim = eliminate_all_linear(sys);
        if (elim.infeasible) return out;
        if (elim.system.equations().empty()) {
            out.kind = EvalKind::valid;
            out.solution = back_substitute(elim.system.elimination_log(), {},
                                           m.field());
            return out;
        }
        QuadraticOptions qopts;
        qopts.budget = opts.budget;
        qopts.seed = splitmix64(opts.seed ^ splitmix64(parts.ordinal));
        QuadraticResult qr = solve_quadratic(elim.system, qopts);
        if (qr.status == QuadStatus::sat) {
            out.kind = EvalKind::valid;
            out.solution = back_substitute(elim.system.elimination_log(),
                                           std::move(qr.assignment), m.field());
        } else if (qr.status == QuadStatus::unknown) {
            out.kind = EvalKind::undecided;
        }
        return out;
    };

    auto winner = search_signatures<CombParts>(
        [&](CombParts& parts) { return stream.next(parts); }, eval, opts.jobs,
        [&](const CombParts& parts, EvalKind kind) {
            ++result.stats.signatures_visited;
            if (kind == EvalKind::valid) ++result.stats.signatures_valid;
            if (kind == EvalKind::undecided) {
                ++result.stats.quadratic_unknowns;
                undecided_sizes.push_back(parts.independent_count());
            }
        });

    std::optional<std::size_t> best;
    if (winner) best = winner->first.independent_count();

    bool unknown_matters = false;
    for (std::size_t su : undecided_sizes) {
        if (su + rk_lower <= t) unknown_matters = true;
    }

    if (best && *best + rk_lower <= t) {
        Assignment full = winner->second;
        CompleteMatrix filled = fill_from_assignment(mp, full);
        CompleteMatrix completion =
            filled.permuted(inverse_perm(row_perm), inverse_perm(col_perm));
        verify_rmc_completion(m, completion, t);
        result.status = SolveOutcome::sat;
        result.achieved_rank = rank(completion);
        result.completion = std::move(completion);
        CombSignature sig;
        sig.rows = to_original_rows(winner->first.rows, cover.rows);
        sig.cols = to_original_rows(winner->first.cols, cover.cols);
        result.comb_signature = std::move(sig);
        if (undecided_sizes.empty()) {
            result.min_achievable_rank = *best + rk_lower;
        }
        return result;
    }
    if (unknown_matters) {
        result.status = SolveOutcome::unknown;
        return result;
    }
    result.status = SolveOutcome::unsat;
    if (best && undecided_sizes.empty()) {
        result.min_achievable_rank = *best + rk_lower;
    }
    return result;
}

RmcResult brute_force_rmc(const IncompleteMatrix& m, std::size_t t,
                          std::uint64_t budget) {
    const auto holes = m.missing_positions();
    const std::uint64_t p = m.field().modulus();
    unsigned __int128 space = 1;
    for (std::size_t i = 0; i < holes.size(); ++i) {
        space *= p;
        if (space > budget) {
            throw resource_error("completion space exceeds enumeration budget");
        }
    }

    CompleteMatrix work = fill_from_assignment(m, {});
    std::vector<std::uint32_t> values(holes.size(), 0);
    std::optional<CompleteMatrix> best;
    std::size_t best_rank = 0;
    for (;;) {
        std::size_t rk = rank(work);
        if (!best || rk < best_rank) {
            best = work;
            best_rank = rk;
            if (best_rank == 0) break;
        }
        std::size_t i = holes.size();
        bool advanced = false;
        while (i > 0) {
            --i;
            if (++values[i] < p) {
                work.set(holes[i].first, holes[i].second, values[i]);
                advanced = true;
                break;
            }
            values[i] = 0;
            work.set(holes[i].first, holes[i].second, 0);
        }
        if (!advanced) break;
    }

    RmcResult result;
    result.min_achievable_rank = best_rank;
    if (best_rank <= t) {
        verify_rmc_completion(m, *best, t);
        result.status = SolveOutcome::sat;
        result.achieved_rank = best_rank;
        result.completion = std::move(*best);
    } else {
        result.status = SolveOutcome::unsat;
    }
    return result;
}

} // namespace mc
