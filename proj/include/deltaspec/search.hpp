#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <memory>
#include <optional>
#include <thread>
#include <vector>

#include "deltaspec/fourier.hpp"
#include "deltaspec/group.hpp"
#include "deltaspec/linalg.hpp"
#include "deltaspec/zeta_int.hpp"

namespace deltaspec {

// ---------------------------------------------------------------------------
// Problem / result containers
// ---------------------------------------------------------------------------

struct SearchProblem {
    GroupSpec spec;
    PointSet B;
    std::uint64_t t_min = 1;
    std::uint64_t t_max = 0;  // 0 means |G|
    bool prune_permutations = true;
    // Galois scaling a -> k*a: defaults on for CyclotomicField, off (and
    // trivial anyway, since p = 1 mod e) for PrimeField.
    std::optional<bool> prune_galois;
    std::uint64_t budget = 100000000;  // feasibility tests per run
    std::uint64_t resume_t = 0;        // resume at this level ...
    std::uint64_t resume_rank = 0;     // ... skipping this many canonical subsets
};

struct SearchProgress {
    std::uint64_t t = 0;
    std::uint64_t last_rank = 0;  // canonical subsets fully processed at level t
};

enum class SearchStatus { found, exhausted, aborted };

template <class F>
struct SearchResult {
    SearchStatus status = SearchStatus::exhausted;
    std::uint64_t min_t = 0;
    std::optional<Spectrum<F>> witness;
    // (t, canonical subsets refuted at that level); at the found level this
    // counts only the subsets preceding the witness.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> refuted_per_t;
    std::uint64_t feasibility_tests = 0;
    double wall_seconds = 0.0;  // informational; excluded from canonical JSON
    std::optional<SearchProgress> progress;
};

// ---------------------------------------------------------------------------
// Symmetry pruning
// ---------------------------------------------------------------------------

namespace detail {

// Index-permutation tables of the support symmetries: coordinate
// permutations among equal moduli that fix B setwise, composed with the
// scaling maps a -> k*a. The identity is excluded. Any subset of the valid
// symmetry group keeps pruning sound, so the table count is capped.
std::vector<std::vector<std::uint32_t>> build_symmetry_maps(
    const GroupSpec& spec, const PointSet& B, bool use_permutations,
    const std::vector<std::uint64_t>& scalings);

// Units mod e (the CyclotomicField scaling set).
std::vector<std::uint64_t> all_units(std::uint64_t e);
// The subgroup generated by p mod e (the PrimeField scaling set).
std::vector<std::uint64_t> frobenius_units(std::uint64_t p, std::uint64_t e);

inline bool subset_is_canonical(const std::vector<std::uint32_t>& S,
                                const std::vector<std::vector<std::uint32_t>>& maps,
                                std::vector<std::uint32_t>& scratch) {
    for (const auto& map : maps) {
        std::uint32_t mn = map[S[0]];
        for (std::size_t i = 1; i < S.size(); ++i) mn = std::min(mn, map[S[i]]);
        if (mn > S[0]) continue;
        if (mn < S[0]) return false;
        scratch.clear();
        for (std::uint32_t s : S) {
            const std::uint32_t v = map[s];
            scratch.insert(std::upper_bound(scratch.begin(), scratch.end(), v), v);
        }
        if (std::lexicographical_compare(scratch.begin(), scratch.end(), S.begin(), S.end()))
            return false;
    }
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Feasibility oracle: does a delta function with support inside T exist?
// ---------------------------------------------------------------------------

template <class F>
class FeasibilityOracle {
public:
    FeasibilityOracle(const F& field, const GroupSpec& spec, const PointSet& B)
        : field_(field), spec_(spec), B_(B) {
        check_transform_compatible(field, spec);
        if (B.elements.empty() || spec.index_of(B.elements[0]) != 0)
            throw PreconditionError("FeasibilityOracle: B must contain 0 first");
        const std::uint64_t e = field.e();
        const std::uint64_t n = spec.order();
        const auto& mods = spec.moduli();
        rows_ = B.elements.size();
        if (rows_ * n > (std::uint64_t(1) << 26))
            throw PreconditionError("FeasibilityOracle: |B| * |G| exceeds the table cap");
        expo_.assign(rows_, std::vector<std::uint32_t>(n));
        for (std::size_t rix = 0; rix < rows_; ++rix) {
            const Coords& b = B.elements[rix];
            for (std::uint64_t a = 0; a < n; ++a) {
                Coords ac = spec.element_of(a);
                std::uint64_t k = 0;
                for (std::size_t i = 0; i < mods.size(); ++i)
                    k += (e / mods[i]) * (std::uint64_t(ac[i]) * b[i] % mods[i]) % e;
                expo_[rix][a] = static_cast<std::uint32_t>(k % e);
            }
        }
        if constexpr (std::is_same_v<F, PrimeField>) {
            zeta_u64_.resize(e);
            PrimeField::Element cur = field.one();
            for (std::uint64_t k = 0; k < e; ++k) {
                zeta_u64_[k] = cur;
                cur = field.mul(cur, field.zeta());
            }
        }
        if constexpr (std::is_same_v<F, CyclotomicField>) {
            try {
                zctx_ = std::make_shared<detail::ZetaIntCtx>(e);
            } catch (const detail::ZetaFastPathBail&) {
                zctx_.reset();
            }
        }
    }

    std::size_t rows() const { return rows_; }

    // Exact feasibility decision. Thread-safe.
    bool feasible(const std::vector<std::uint32_t>& T) const {
        if constexpr (std::is_same_v<F, PrimeField>) {
            return feasible_fp(T);
        } else if constexpr (std::is_same_v<F, CyclotomicField>) {
            if (zctx_) {
                try {
                    return feasible_zeta(T);
                } catch (const detail::ZetaFastPathBail&) {
                }
            }
            return feasible_generic(T);
        } else {
            return feasible_generic(T);
        }
    }

    // Exact solve for witness extraction (slow path).
    std::optional<Spectrum<F>> solve(const std::vector<std::uint32_t>& T) const {
        Matrix<F> M(rows_, T.size(), field_.zero());
        std::vector<typename F::Element> rhs(rows_, field_.zero());
        rhs[0] = field_.one();
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < T.size(); ++j)
                M.at(i, j) = element_at(i, T[j]);
        auto res = solve_linear(field_, M, rhs);
        if (!res.solution) return std::nullopt;
        Spectrum<F> s{spec_, {}};
        for (std::size_t j = 0; j < T.size(); ++j)
            if (!field_.is_zero((*res.solution)[j]))
                s.coeffs.emplace(spec_.element_of(T[j]), (*res.solution)[j]);
        return s;
    }

private:
    typename F::Element element_at(std::size_t row, std::uint32_t a) const {
        const std::uint32_t k = expo_[row][a];
        if constexpr (std::is_same_v<F, PrimeField>) {
            return zeta_u64_[k];
        } else if constexpr (std::is_same_v<F, CyclotomicField>) {
            return field_.zeta_power(k);
        } else {
            return field_.pow(field_.zeta(), k);
        }
    }

    bool feasible_generic(const std::vector<std::uint32_t>& T) const {
        Matrix<F> M(rows_, T.size(), field_.zero());
        std::vector<typename F::Element> rhs(rows_, field_.zero());
        rhs[0] = field_.one();
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < T.size(); ++j)
                M.at(i, j) = element_at(i, T[j]);
        auto res = solve_linear(field_, M, rhs);
        return res.rank == res.rank_aug;
    }

    bool feasible_fp(const std::vector<std::uint32_t>& T) const {
        static thread_local std::vector<std::uint64_t> w;
        const std::size_t t = T.size(), cols = t + 1;
        const std::uint64_t p = field_.p();
        w.assign(rows_ * cols, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < t; ++j) w[i * cols + j] = zeta_u64_[expo_[i][T[j]]];
        w[0 * cols + t] = 1;

        std::size_t row = 0;
        for (std::size_t col = 0; col < t && row < rows_; ++col) {
            std::size_t pr = rows_;
            for (std::size_t i = row; i < rows_; ++i)
                if (w[i * cols + col] != 0) {
                    pr = i;
                    break;
                }
            if (pr == rows_) continue;
            if (pr != row)
                for (std::size_t j = col; j < cols; ++j)
                    std::swap(w[row * cols + j], w[pr * cols + j]);
            const std::uint64_t inv_piv = pow_mod(w[row * cols + col], p - 2, p);
            for (std::size_t i = row + 1; i < rows_; ++i) {
                const std::uint64_t lead = w[i * cols + col];
                if (lead == 0) continue;
                const std::uint64_t factor =
                    static_cast<std::uint64_t>((static_cast<unsigned __int128>(lead) * inv_piv) % p);
                for (std::size_t j = col; j < cols; ++j) {
                    unsigned __int128 sub =
                        static_cast<unsigned __int128>(factor) * w[row * cols + j] % p;
                    w[i * cols + j] = (w[i * cols + j] + p - static_cast<std::uint64_t>(sub)) % p;
                }
            }
            ++row;
        }
        for (std::size_t i = row; i < rows_; ++i)
            if (w[i * cols + t] != 0) return false;
        return true;
    }

    // Fraction-free Bareiss elimination on a flat int64 buffer; the update
    // rule divides by the previous pivot exactly in Z[zeta_e]. Any overflow
    // or inexact division bails out to the rational path.
    bool feasible_zeta(const std::vector<std::uint32_t>& T) const {
        const detail::ZetaIntCtx& ctx = *zctx_;
        const std::size_t d = ctx.deg(), t = T.size(), cols = t + 1;
        static thread_local std::vector<long long> wbuf, tmpa, tmpb, pivv;
        static thread_local std::vector<__int128> scratch;
        wbuf.assign(rows_ * cols * d, 0);
        tmpa.resize(d);
        tmpb.resize(d);
        pivv.resize(d);
        scratch.resize(d > 0 ? 2 * d - 1 : 1);
        auto at = [&](std::size_t i, std::size_t j) { return wbuf.data() + (i * cols + j) * d; };
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < t; ++j) {
                const auto& zp = ctx.zeta_power(expo_[i][T[j]]);
                std::memcpy(at(i, j), zp.data(), d * sizeof(long long));
            }
        at(0, t)[0] = 1;  // rhs = e_0; B lists 0 first

        detail::ZetaIntCtx::Divisor prev;  // divide by one
        std::size_t row = 0;
        for (std::size_t col = 0; col < t && row < rows_; ++col) {
            std::size_t pr = rows_;
            for (std::size_t i = row; i < rows_; ++i)
                if (!ctx.is_zero_span(at(i, col))) {
                    pr = i;
                    break;
                }
            if (pr == rows_) continue;
            if (pr != row)
                for (std::size_t j = col; j < cols; ++j)
                    std::swap_ranges(at(row, j), at(row, j) + d, at(pr, j));
            std::memcpy(pivv.data(), at(row, col), d * sizeof(long long));
            for (std::size_t i = row + 1; i < rows_; ++i) {
                for (std::size_t j = col + 1; j < cols; ++j) {
                    ctx.mul_span(at(i, j), pivv.data(), tmpa.data(), scratch.data());
                    ctx.mul_span(at(i, col), at(row, j), tmpb.data(), scratch.data());
                    ctx.sub_span(tmpa.data(), tmpb.data());
                    ctx.div_span(tmpa.data(), prev, scratch.data(), tmpb.data());
                    std::memcpy(at(i, j), tmpa.data(), d * sizeof(long long));
                }
                std::memset(at(i, col), 0, d * sizeof(long long));
            }
            prev = ctx.make_divisor(pivv.data(), scratch.data());
            ++row;
        }
        for (std::size_t i = row; i < rows_; ++i)
            if (!ctx.is_zero_span(at(i, t))) return false;
        return true;
    }

    F field_;
    GroupSpec spec_;
    PointSet B_;
    std::size_t rows_ = 0;
    std::vector<std::vector<std::uint32_t>> expo_;
    std::vector<std::uint64_t> zeta_u64_;
    std::shared_ptr<detail::ZetaIntCtx> zctx_;
};

// Solve sum_{a in T} c_a psi_a(b) = [b = 0] for b in B; returns the sparse
// solution when the system is consistent.
template <class F>
std::optional<Spectrum<F>> feasible_support(const F& field, const GroupSpec& spec,
                                            const std::vector<Coords>& T, const PointSet& B) {
    if (T.empty()) throw PreconditionError("feasible_support: empty support");
    std::vector<std::uint32_t> idx;
    idx.reserve(T.size());
    for (const Coords& a : T) idx.push_back(static_cast<std::uint32_t>(spec.index_of(a)));
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw PreconditionError("feasible_support: support characters must be distinct");
    FeasibilityOracle<F> oracle(field, spec, B);
    return oracle.solve(idx);
}

// ---------------------------------------------------------------------------
// Minimal-sparsity search
// ---------------------------------------------------------------------------

namespace detail {

struct ChunkOutcome {
    std::uint64_t canonical = 0;
    std::uint64_t tested = 0;
    std::uint64_t skipped = 0;
    bool found = false;
    bool budget_hit = false;
    std::vector<std::uint32_t> witness;
    std::uint64_t refuted_before = 0;
};

// Scans every size-t subset whose smallest element is s0, in lexicographic
// order. The first `skip` canonical subsets are counted but not tested.
template <class F>
ChunkOutcome scan_chunk(const FeasibilityOracle<F>& oracle,
                        const std::vector<std::vector<std::uint32_t>>& sym, std::uint32_t n,
                        std::uint32_t s0, std::uint32_t t, std::uint64_t skip,
                        std::uint64_t test_cap) {
    ChunkOutcome out;
    if (s0 + t > n) return out;  // no completion fits
    std::vector<std::uint32_t> S(t);
    std::vector<std::uint32_t> scratch;
    for (std::uint32_t i = 0; i < t; ++i) S[i] = s0 + i;

    while (true) {
        if (sym.empty() || subset_is_canonical(S, sym, scratch)) {
            ++out.canonical;
            if (out.skipped < skip) {
                ++out.skipped;
            } else {
                ++out.tested;
                if (oracle.feasible(S)) {
                    out.found = true;
                    out.witness = S;
                    out.refuted_before = out.canonical - 1;
                    return out;
                }
                if (out.tested >= test_cap) {
                    out.budget_hit = true;
                    return out;
                }
            }
        }
        // advance positions 1..t-1 (position 0 is pinned to s0);
        // position i tops out at n - t + i
        if (t == 1) return out;
        std::size_t pos = t - 1;
        while (pos >= 1 && S[pos] == n - t + pos) --pos;
        if (pos == 0) return out;
        ++S[pos];
        for (std::size_t q = pos + 1; q < t; ++q) S[q] = S[q - 1] + 1;
    }
}

}  // namespace detail

// Smallest t in [t_min, t_max] admitting a B-delta with support of size t,
// by canonical subset enumeration and exact feasibility. The enumeration is
// split into contiguous chunks (grouped by smallest support element) merged
// in order, so the result is identical for any worker count.
template <class F>
SearchResult<F> min_sparsity(const F& field, const SearchProblem& prob, unsigned workers = 1) {
    static_assert(F::exact, "certificate-producing searches require an exact backend");
    const auto t_start = std::chrono::steady_clock::now();
    const std::uint64_t n = prob.spec.order();
    if (n > (std::uint64_t(1) << 31))
        throw PreconditionError("min_sparsity: group order too large to enumerate");
    std::uint64_t t_max = prob.t_max == 0 ? n : prob.t_max;
    if (prob.t_min < 1 || prob.t_min > t_max || t_max > n)
        throw PreconditionError("min_sparsity: need 1 <= t_min <= t_max <= |G|");
    if (workers == 0) workers = 1;

    std::vector<std::uint64_t> scalings{1};
    bool galois = prob.prune_galois.value_or(std::is_same_v<F, CyclotomicField>);
    if (galois) {
        if constexpr (std::is_same_v<F, CyclotomicField>)
            scalings = detail::all_units(field.e());
        else if constexpr (std::is_same_v<F, PrimeField>)
            scalings = detail::frobenius_units(field.p(), field.e());
    }
    const auto sym =
        detail::build_symmetry_maps(prob.spec, prob.B, prob.prune_permutations, scalings);

    FeasibilityOracle<F> oracle(field, prob.spec, prob.B);

    SearchResult<F> result;
    auto done = [&](SearchStatus st) -> SearchResult<F> {
        result.status = st;
        result.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return std::move(result);
    };

    std::uint64_t tests_used = 0;
    const std::uint64_t first_t = std::max<std::uint64_t>(prob.t_min, std::max<std::uint64_t>(
                                                                          prob.resume_t, 1));
    for (std::uint64_t t = first_t; t <= t_max; ++t) {
        const std::uint32_t tt = static_cast<std::uint32_t>(t);
        std::uint64_t skip_left = (prob.resume_t == t) ? prob.resume_rank : 0;

        std::uint64_t level_rank = 0;  // canonical subsets merged in order
        bool found = false, aborted = false;
        std::vector<std::uint32_t> witnessT;

        const std::uint64_t chunk_cap = prob.budget + 1;
        std::uint64_t s0 = 0;
        const std::uint64_t s0_end = n >= t ? n - t + 1 : 0;
        while (s0 < s0_end && !found && !aborted) {
            const bool sequential = (skip_left > 0) || workers == 1;
            const unsigned wave =
                sequential ? 1
                           : static_cast<unsigned>(std::min<std::uint64_t>(workers, s0_end - s0));
            std::vector<detail::ChunkOutcome> outs(wave);
            std::vector<std::exception_ptr> errs(wave);
            if (wave == 1) {
                outs[0] = detail::scan_chunk(oracle, sym, static_cast<std::uint32_t>(n),
                                             static_cast<std::uint32_t>(s0), tt, skip_left,
                                             chunk_cap);
            } else {
                std::vector<std::thread> pool;
                for (unsigned k = 0; k < wave; ++k) {
                    pool.emplace_back([&, k] {
                        try {
                            outs[k] = detail::scan_chunk(oracle, sym, static_cast<std::uint32_t>(n),
                                                         static_cast<std::uint32_t>(s0 + k), tt, 0,
                                                         chunk_cap);
                        } catch (...) {
                            errs[k] = std::current_exception();
                        }
                    });
                }
                for (auto& th : pool) th.join();
                for (auto& ep : errs)
                    if (ep) std::rethrow_exception(ep);
            }
            for (unsigned k = 0; k < wave; ++k) {
                const auto& oc = outs[k];
                tests_used += oc.tested;
                skip_left -= std::min<std::uint64_t>(skip_left, oc.skipped);
                if (oc.budget_hit || tests_used > prob.budget) {
                    aborted = true;
                    result.progress = SearchProgress{t, level_rank};
                    break;
                }
                if (oc.found) {
                    found = true;
                    witnessT = oc.witness;
                    level_rank += oc.refuted_before;
                    break;
                }
                level_rank += oc.canonical;
            }
            s0 += wave;
        }

        result.feasibility_tests = tests_used;
        if (aborted) return done(SearchStatus::aborted);
        result.refuted_per_t.emplace_back(t, level_rank);
        if (found) {
            auto wit = oracle.solve(witnessT);
            if (!wit)
                throw VerificationError("min_sparsity: feasible support failed exact re-solve");
            auto dense = inverse(field, *wit);
            if (!is_delta_on(field, dense, prob.B))
                throw VerificationError("min_sparsity: witness failed delta re-verification");
            result.min_t = t;
            result.witness = std::move(*wit);
            return done(SearchStatus::found);
        }
    }
    return done(SearchStatus::exhausted);
}

// ---------------------------------------------------------------------------
// Exact covering numbers, translate bound, coprime rank-2 helpers
// ---------------------------------------------------------------------------

struct CoveringResult {
    std::uint64_t value = 0;
    std::vector<Coords> witness;
    std::uint64_t nodes = 0;
};

// Exact minimum |S| with S + prod(Z_{m_i} \ {0}) = G, by branch and bound
// with a greedy incumbent and the covering recursion as root lower bound.
CoveringResult covering_number_exact(const GroupSpec& spec, std::uint64_t order_cap = 4096,
                                     std::uint64_t node_budget = 20000000);

// Checks D - D subseteq B and returns |D| (a certified sparsity lower bound).
std::uint64_t translate_bound(const GroupSpec& spec, const PointSet& B,
                              const std::vector<Coords>& D);

// Multilinear P with P(alpha_i, beta_i) = 0 and (for coprime m1, m2)
// P(0,0) != 0, following the three-case construction.
struct MultilinearPoly {
    CyclotomicField::Element v1, vx, vy, vxy;
    int case_id = 0;
    bool origin_nonzero = false;
    bool gcd_ok = true;  // hypothesis gcd(m1, m2) = 1 held
};

MultilinearPoly mobius_multilinear(const CyclotomicField& field, std::uint32_t m1,
                                   std::uint32_t m2,
                                   const std::array<CyclotomicField::Element, 3>& alphas,
                                   const std::array<CyclotomicField::Element, 3>& betas);

// Exhaustively certifies that no support of size <= 3 admits a hypercube
// delta on Z_{m1} x Z_{m2} over Q(zeta_{m1 m2}).
struct R2LowerResult {
    bool verified = false;
    std::uint64_t subsets_checked = 0;
};

R2LowerResult verify_r2_lower(std::uint32_t m1, std::uint32_t m2,
                              std::uint64_t budget = 100000000);

}  // namespace deltaspec
