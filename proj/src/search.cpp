#include "deltaspec/search.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "deltaspec/constructions.hpp"

namespace deltaspec {

namespace detail {

std::vector<std::uint64_t> all_units(std::uint64_t e) {
    std::vector<std::uint64_t> units;
    for (std::uint64_t k = 1; k < e; ++k)
        if (std::gcd(k, e) == 1) units.push_back(k);
    if (units.empty()) units.push_back(1);
    return units;
}

std::vector<std::uint64_t> frobenius_units(std::uint64_t p, std::uint64_t e) {
    std::set<std::uint64_t> subgroup;
    std::uint64_t cur = p % e;
    if (cur == 0) return {1};
    while (subgroup.insert(cur).second) cur = cur * (p % e) % e;
    return {subgroup.begin(), subgroup.end()};
}

namespace {

// Permutations of [0, r) that permute positions of equal moduli only,
// emitted as the product of per-group permutations. Count is capped so the
// tables stay small; any subset of the symmetry group prunes soundly.
std::vector<std::vector<std::uint32_t>> coordinate_permutations(
    const std::vector<std::uint32_t>& moduli, std::size_t max_count) {
    const std::size_t r = moduli.size();
    std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t i = 0; i < r; ++i) groups[moduli[i]].push_back(i);

    std::vector<std::vector<std::uint32_t>> result{std::vector<std::uint32_t>(r)};
    std::iota(result[0].begin(), result[0].end(), 0);
    for (auto& [m, positions] : groups) {
        std::vector<std::vector<std::uint32_t>> arrangements;
        std::vector<std::uint32_t> arr = positions;
        do {
            arrangements.push_back(arr);
            if (arrangements.size() * result.size() > max_count) break;
        } while (std::next_permutation(arr.begin(), arr.end()));

        std::vector<std::vector<std::uint32_t>> next;
        next.reserve(result.size() * arrangements.size());
        for (const auto& base : result)
            for (const auto& a : arrangements) {
                std::vector<std::uint32_t> perm = base;
                for (std::size_t k = 0; k < positions.size(); ++k) perm[positions[k]] = a[k];
                next.push_back(std::move(perm));
                if (next.size() >= max_count) break;
            }
        result = std::move(next);
        if (result.size() >= max_count) break;
    }
    return result;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> build_symmetry_maps(
    const GroupSpec& spec, const PointSet& B, bool use_permutations,
    const std::vector<std::uint64_t>& scalings) {
    const std::uint64_t n = spec.order();
    // Cap total table memory at ~2^22 entries.
    const std::size_t max_maps =
        std::max<std::size_t>(64, (std::size_t(1) << 22) / std::max<std::uint64_t>(n, 1));

    std::vector<std::vector<std::uint32_t>> perms{std::vector<std::uint32_t>(spec.rank())};
    std::iota(perms[0].begin(), perms[0].end(), 0);
    if (use_permutations) perms = coordinate_permutations(spec.moduli(), max_maps);

    // Keep only permutations fixing B setwise (hypercube / pm_cube / full
    // always qualify; custom sets are checked).
    std::set<std::uint64_t> b_idx;
    for (const Coords& b : B.elements) b_idx.insert(spec.index_of(b));
    std::vector<std::vector<std::uint32_t>> kept;
    for (const auto& perm : perms) {
        bool ok = true;
        for (const Coords& b : B.elements) {
            Coords img(spec.rank());
            for (std::size_t i = 0; i < spec.rank(); ++i) img[i] = b[perm[i]];
            if (!b_idx.count(spec.index_of(img))) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(perm);
    }

    std::set<std::vector<std::uint32_t>> maps;
    std::vector<std::uint32_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    for (const auto& perm : kept) {
        for (std::uint64_t k : scalings) {
            std::vector<std::uint32_t> map(n);
            for (std::uint64_t idx = 0; idx < n; ++idx) {
                Coords a = spec.element_of(idx);
                Coords img(spec.rank());
                for (std::size_t i = 0; i < spec.rank(); ++i) img[i] = a[perm[i]];
                img = spec.scale(img, k);
                map[idx] = static_cast<std::uint32_t>(spec.index_of(img));
            }
            if (map != identity) maps.insert(std::move(map));
            if (maps.size() >= max_maps) break;
        }
        if (maps.size() >= max_maps) break;
    }
    return {maps.begin(), maps.end()};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// covering_number_exact
// ---------------------------------------------------------------------------

namespace {

struct BitMask {
    std::vector<std::uint64_t> words;

    explicit BitMask(std::size_t bits) : words((bits + 63) / 64, 0) {}
    void set(std::uint64_t i) { words[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(std::uint64_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
    void or_with(const BitMask& o) {
        for (std::size_t k = 0; k < words.size(); ++k) words[k] |= o.words[k];
    }
    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (std::uint64_t w : words) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
        return c;
    }
    std::uint64_t count_new(const BitMask& covered) const {
        std::uint64_t c = 0;
        for (std::size_t k = 0; k < words.size(); ++k)
            c += static_cast<std::uint64_t>(__builtin_popcountll(words[k] & ~covered.words[k]));
        return c;
    }
    std::int64_t first_clear(std::uint64_t bits) const {
        for (std::size_t k = 0; k < words.size(); ++k) {
            std::uint64_t inv = ~words[k];
            if (k == words.size() - 1 && (bits & 63))
                inv &= (std::uint64_t(1) << (bits & 63)) - 1;
            if (inv) return static_cast<std::int64_t>((k << 6) + __builtin_ctzll(inv));
        }
        return -1;
    }
};

struct CoverSearch {
    std::uint64_t n = 0, h_size = 0;
    std::vector<BitMask> masks;                       // translate s + H
    std::vector<std::vector<std::uint32_t>> covers;   // covers[u] = {s : u in s + H}
    std::uint64_t best = 0;
    std::vector<std::uint32_t> best_sets;
    std::vector<std::uint32_t> chosen;
    std::uint64_t nodes = 0, node_budget = 0;

    void dfs(BitMask covered, std::uint64_t covered_count) {
        if (++nodes > node_budget)
            throw BudgetExceeded("covering_number_exact: node budget exceeded");
        if (covered_count == n) {
            if (chosen.size() < best) {
                best = chosen.size();
                best_sets = chosen;
            }
            return;
        }
        const std::uint64_t uncovered = n - covered_count;
        const std::uint64_t lb = chosen.size() + (uncovered + h_size - 1) / h_size;
        if (lb >= best) return;

        const std::int64_t u = covered.first_clear(n);
        // Children ordered by newly-covered count, descending.
        std::vector<std::pair<std::uint64_t, std::uint32_t>> order;
        order.reserve(covers[static_cast<std::size_t>(u)].size());
        for (std::uint32_t s : covers[static_cast<std::size_t>(u)])
            order.emplace_back(masks[s].count_new(covered), s);
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (const auto& [gain, s] : order) {
            if (chosen.size() + 1 + (uncovered - gain + h_size - 1) / h_size >= best) continue;
            BitMask next = covered;
            next.or_with(masks[s]);
            chosen.push_back(s);
            dfs(std::move(next), covered_count + gain);
            chosen.pop_back();
        }
    }
};

}  // namespace

CoveringResult covering_number_exact(const GroupSpec& spec, std::uint64_t order_cap,
                                     std::uint64_t node_budget) {
    const std::uint64_t n = spec.order();
    if (n > order_cap) throw BudgetExceeded("covering_number_exact: order exceeds cap");

    // H = prod (Z_{m_i} \ {0}) as index offsets.
    std::vector<std::uint64_t> H;
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        Coords x = spec.element_of(idx);
        bool all_nonzero = true;
        for (std::size_t i = 0; i < x.size(); ++i) all_nonzero &= (x[i] != 0);
        if (all_nonzero) H.push_back(idx);
    }

    CoverSearch cs;
    cs.n = n;
    cs.h_size = H.size();
    cs.node_budget = node_budget;
    cs.masks.assign(n, BitMask(n));
    cs.covers.assign(n, {});
    for (std::uint64_t s = 0; s < n; ++s) {
        const Coords sc = spec.element_of(s);
        for (std::uint64_t h : H) {
            const std::uint64_t u = spec.index_of(spec.add(sc, spec.element_of(h)));
            cs.masks[s].set(u);
            cs.covers[u].push_back(static_cast<std::uint32_t>(s));
        }
    }

    // Greedy incumbent.
    {
        BitMask covered(n);
        std::vector<std::uint32_t> picks;
        std::uint64_t cnt = 0;
        while (cnt < n) {
            std::uint64_t best_gain = 0;
            std::uint32_t best_s = 0;
            for (std::uint64_t s = 0; s < n; ++s) {
                const std::uint64_t g = cs.masks[s].count_new(covered);
                if (g > best_gain) {
                    best_gain = g;
                    best_s = static_cast<std::uint32_t>(s);
                }
            }
            if (best_gain == 0)
                throw VerificationError("covering_number_exact: greedy cannot cover");
            picks.push_back(best_s);
            covered.or_with(cs.masks[best_s]);
            cnt += best_gain;
        }
        cs.best = picks.size();
        cs.best_sets = picks;
    }

    // Branch and bound; translation lets us pin 0 into S. When the greedy
    // incumbent already meets the recursion lower bound it is optimal.
    const std::uint64_t recursion_lb = covering_recursion_bound(spec.moduli());
    if (cs.best > recursion_lb) {
        BitMask covered(n);
        covered.or_with(cs.masks[0]);
        cs.chosen.assign(1, 0);
        cs.dfs(covered, cs.masks[0].count());
    }

    if (cs.best < recursion_lb)
        throw VerificationError("covering_number_exact: result below the recursion bound");

    CoveringResult res;
    res.value = cs.best;
    res.nodes = cs.nodes;
    for (std::uint32_t s : cs.best_sets) res.witness.push_back(spec.element_of(s));

    // Witness must actually cover.
    BitMask check(n);
    for (std::uint32_t s : cs.best_sets) check.or_with(cs.masks[s]);
    if (check.count() != n)
        throw VerificationError("covering_number_exact: witness fails to cover");
    return res;
}

// ---------------------------------------------------------------------------
// translate_bound
// ---------------------------------------------------------------------------

std::uint64_t translate_bound(const GroupSpec& spec, const PointSet& B,
                              const std::vector<Coords>& D) {
    std::set<std::uint64_t> b_idx;
    for (const Coords& b : B.elements) b_idx.insert(spec.index_of(b));
    if (!b_idx.count(0)) throw PreconditionError("translate_bound: B must contain 0");
    for (const Coords& d1 : D)
        for (const Coords& d2 : D) {
            const Coords diff = spec.sub(d1, d2);
            if (!b_idx.count(spec.index_of(diff))) {
                std::string msg = "translate_bound: D - D not contained in B; violating pair (";
                for (std::size_t i = 0; i < d1.size(); ++i)
                    msg += std::to_string(d1[i]) + (i + 1 < d1.size() ? "," : "");
                msg += ") - (";
                for (std::size_t i = 0; i < d2.size(); ++i)
                    msg += std::to_string(d2[i]) + (i + 1 < d2.size() ? "," : "");
                msg += ")";
                throw PreconditionError(msg);
            }
        }
    std::set<std::uint64_t> d_idx;
    for (const Coords& d : D) d_idx.insert(spec.index_of(d));
    return d_idx.size();
}

// ---------------------------------------------------------------------------
// mobius_multilinear / verify_r2_lower
// ---------------------------------------------------------------------------

MultilinearPoly mobius_multilinear(const CyclotomicField& field, std::uint32_t m1,
                                   std::uint32_t m2,
                                   const std::array<CyclotomicField::Element, 3>& alphas,
                                   const std::array<CyclotomicField::Element, 3>& betas) {
    using El = CyclotomicField::Element;
    for (const auto& a : alphas)
        if (!field.eq(field.pow(a, m1), field.one()))
            throw PreconditionError("mobius_multilinear: alpha is not an m1-th root of unity");
    for (const auto& b : betas)
        if (!field.eq(field.pow(b, m2), field.one()))
            throw PreconditionError("mobius_multilinear: beta is not an m2-th root of unity");

    MultilinearPoly P;
    P.gcd_ok = std::gcd(m1, m2) == 1;

    auto set_product_form = [&](const El& alpha, const El& beta, int case_id) {
        // (X - alpha)(Y - beta) = XY - beta X - alpha Y + alpha beta
        P.v1 = field.mul(alpha, beta);
        P.vx = field.neg(beta);
        P.vy = field.neg(alpha);
        P.vxy = field.one();
        P.case_id = case_id;
    };

    int ai = -1, aj = -1, bi = -1, bj = -1;
    for (int i = 0; i < 3 && ai < 0; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (field.eq(alphas[i], alphas[j])) {
                ai = i;
                aj = j;
                break;
            }
    for (int i = 0; i < 3 && bi < 0; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (field.eq(betas[i], betas[j])) {
                bi = i;
                bj = j;
                break;
            }

    if (ai >= 0) {
        const int k = 3 - ai - aj;
        set_product_form(alphas[ai], betas[k], 1);
    } else if (bi >= 0) {
        const int k = 3 - bi - bj;
        set_product_form(alphas[k], betas[bi], 2);
    } else {
        // All distinct: solve the 3x4 homogeneous system for the kernel.
        Matrix<CyclotomicField> M(3, 4, field.zero());
        for (int i = 0; i < 3; ++i) {
            M.at(i, 0) = field.one();
            M.at(i, 1) = alphas[i];
            M.at(i, 2) = betas[i];
            M.at(i, 3) = field.mul(alphas[i], betas[i]);
        }
        // Reduced row echelon form.
        std::size_t row = 0;
        std::vector<std::size_t> pivot_cols;
        for (std::size_t col = 0; col < 4 && row < 3; ++col) {
            std::size_t pr = 3;
            for (std::size_t i = row; i < 3; ++i)
                if (!field.is_zero(M.at(i, col))) {
                    pr = i;
                    break;
                }
            if (pr == 3) continue;
            for (std::size_t j = 0; j < 4; ++j) std::swap(M.at(row, j), M.at(pr, j));
            const El inv_piv = field.inv(M.at(row, col));
            for (std::size_t j = 0; j < 4; ++j) M.at(row, j) = field.mul(M.at(row, j), inv_piv);
            for (std::size_t i = 0; i < 3; ++i) {
                if (i == row || field.is_zero(M.at(i, col))) continue;
                const El f = M.at(i, col);
                for (std::size_t j = 0; j < 4; ++j)
                    M.at(i, j) = field.sub(M.at(i, j), field.mul(f, M.at(row, j)));
            }
            pivot_cols.push_back(col);
            ++row;
        }
        // Kernel basis: one vector per free column.
        std::vector<std::array<El, 4>> basis;
        std::vector<bool> is_pivot(4, false);
        for (std::size_t c : pivot_cols) is_pivot[c] = true;
        for (std::size_t free_col = 0; free_col < 4; ++free_col) {
            if (is_pivot[free_col]) continue;
            std::array<El, 4> v{field.zero(), field.zero(), field.zero(), field.zero()};
            v[free_col] = field.one();
            for (std::size_t k = 0; k < pivot_cols.size(); ++k)
                v[pivot_cols[k]] = field.neg(M.at(k, free_col));
            basis.push_back(std::move(v));
        }
        if (basis.empty())
            throw VerificationError("mobius_multilinear: empty kernel for a 3x4 system");
        std::size_t pick = basis.size();
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!field.is_zero(basis[k][0])) {
                pick = k;
                break;
            }
        if (pick == basis.size()) {
            // Every kernel vector vanishes at the origin: the coprimality
            // hypothesis failed. Report the first basis vector, flagged.
            P.v1 = basis[0][0];
            P.vx = basis[0][1];
            P.vy = basis[0][2];
            P.vxy = basis[0][3];
            P.case_id = 3;
            P.origin_nonzero = false;
            if (P.gcd_ok)
                throw VerificationError(
                    "mobius_multilinear: coprime moduli but no polynomial with P(0,0) != 0");
            return P;
        }
        const El scale = field.inv(basis[pick][0]);
        P.v1 = field.one();
        P.vx = field.mul(basis[pick][1], scale);
        P.vy = field.mul(basis[pick][2], scale);
        P.vxy = field.mul(basis[pick][3], scale);
        P.case_id = 3;
    }

    // P must vanish on all three points.
    for (int i = 0; i < 3; ++i) {
        El val = P.v1;
        val = field.add(val, field.mul(P.vx, alphas[i]));
        val = field.add(val, field.mul(P.vy, betas[i]));
        val = field.add(val, field.mul(P.vxy, field.mul(alphas[i], betas[i])));
        if (!field.is_zero(val))
            throw VerificationError("mobius_multilinear: P does not vanish at a data point");
    }
    P.origin_nonzero = !field.is_zero(P.v1);
    if (P.gcd_ok && !P.origin_nonzero)
        throw VerificationError("mobius_multilinear: P(0,0) = 0 despite coprime moduli");
    return P;
}

R2LowerResult verify_r2_lower(std::uint32_t m1, std::uint32_t m2, std::uint64_t budget) {
    if (std::gcd(m1, m2) != 1)
        throw PreconditionError("verify_r2_lower: m1 and m2 must be coprime");
    const std::uint64_t e = std::uint64_t(m1) * m2;
    CyclotomicField field = CyclotomicField::make(e);
    GroupSpec spec({m1, m2});
    SearchProblem prob{.spec = spec,
                       .B = point_set(spec, PointSetKind::hypercube),
                       .t_min = 1,
                       .t_max = 3,
                       .prune_permutations = false,
                       .prune_galois = false,
                       .budget = budget};
    auto res = min_sparsity(field, prob);
    if (res.status == SearchStatus::aborted)
        throw BudgetExceeded("verify_r2_lower: enumeration budget exceeded");
    R2LowerResult out;
    out.verified = res.status == SearchStatus::exhausted;
    for (const auto& [t, count] : res.refuted_per_t) out.subsets_checked += count;
    return out;
}

}  // namespace deltaspec
