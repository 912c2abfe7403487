#include "deltaspec/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace deltaspec {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

std::uint64_t covering_bound_memo(std::vector<std::uint32_t> moduli,
                                  std::map<std::vector<std::uint32_t>, std::uint64_t>& memo) {
    if (moduli.empty()) return 1;
    std::sort(moduli.begin(), moduli.end());
    auto hit = memo.find(moduli);
    if (hit != memo.end()) return hit->second;
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (i > 0 && moduli[i] == moduli[i - 1]) continue;  // peel distinct values only
        std::vector<std::uint32_t> rest;
        rest.reserve(moduli.size() - 1);
        for (std::size_t j = 0; j < moduli.size(); ++j)
            if (j != i) rest.push_back(moduli[j]);
        const std::uint64_t sub = covering_bound_memo(std::move(rest), memo);
        const std::uint64_t m = moduli[i];
        best = std::max(best, ceil_div(m * sub, m - 1));
    }
    memo[moduli] = best;
    return best;
}

}  // namespace

std::uint64_t covering_recursion_bound(std::vector<std::uint32_t> moduli) {
    std::map<std::vector<std::uint32_t>, std::uint64_t> memo;
    return covering_bound_memo(std::move(moduli), memo);
}

BoundReport lower_bounds(const GroupSpec& spec) {
    BoundReport rep;
    rep.moduli = spec.moduli();
    rep.linear_bound = spec.rank() + 1;

    // ceil(prod m_i / prod (m_i - 1)); both products fit u64 under the order cap.
    std::uint64_t num = 1, den = 1;
    for (std::uint32_t m : spec.moduli()) {
        num *= m;
        den *= (m - 1);
    }
    rep.product_bound = ceil_div(num, den);
    rep.covering_bound = covering_recursion_bound(spec.moduli());

    // Best product-form construction: within each group of equal moduli m
    // (multiplicity c), blocks of size m-1 plus a remainder block give
    // sparsity m^{floor(c/(m-1))} * (c mod (m-1) + 1).
    std::map<std::uint32_t, std::uint64_t> mult;
    for (std::uint32_t m : spec.moduli()) ++mult[m];
    std::uint64_t upper = 1;
    bool overflow = false;
    for (const auto& [m, c] : mult) {
        const std::uint64_t full = c / (m - 1), rem = c % (m - 1);
        for (std::uint64_t i = 0; i < full && !overflow; ++i) {
            if (upper > GroupSpec::kOrderCap / m) overflow = true;
            upper *= m;
        }
        if (!overflow) {
            if (upper > GroupSpec::kOrderCap / (rem + 1)) overflow = true;
            upper *= (rem + 1);
        }
    }
    if (!overflow) {
        rep.best_known_upper = upper;
        rep.upper_provenance =
            mult.size() == 1 && upper == spec.rank() + 1 ? "single_block" : "partitioned";
    }
    return rep;
}

HyperplaneClasses validate_classes(HyperplaneClasses classes) {
    if (!is_prime_u64(classes.p))
        throw PreconditionError("hyperplane classes: p must be prime");
    if (classes.r < 1) throw PreconditionError("hyperplane classes: r must be >= 1");
    for (const auto& cls : classes.classes) {
        if (cls.normal.size() != classes.r)
            throw PreconditionError("hyperplane classes: normal has wrong dimension");
        bool nonzero = false;
        for (std::uint32_t c : cls.normal) {
            if (c >= classes.p)
                throw PreconditionError("hyperplane classes: normal entry out of range");
            nonzero |= (c != 0);
        }
        if (!nonzero) throw PreconditionError("hyperplane classes: zero normal vector");
        if (cls.offsets.empty())
            throw PreconditionError("hyperplane classes: class with no hyperplanes");
        for (std::uint32_t d : cls.offsets)
            if (d == 0 || d >= classes.p)
                throw PreconditionError("hyperplane classes: a hyperplane contains 0");
    }
    // Normals must be pairwise non-proportional (distinct parallel classes).
    for (std::size_t i = 0; i < classes.classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.classes.size(); ++j) {
            const auto& a = classes.classes[i].normal;
            const auto& b = classes.classes[j].normal;
            for (std::uint32_t lambda = 1; lambda < classes.p; ++lambda) {
                bool equal = true;
                for (std::uint32_t k = 0; k < classes.r && equal; ++k)
                    equal = (std::uint64_t(a[k]) * lambda % classes.p) == b[k];
                if (equal)
                    throw PreconditionError("hyperplane classes: proportional normals");
            }
        }
    return classes;
}

HyperplaneClasses covering_from_partitioned(
    const GroupSpec& spec, const std::vector<std::vector<std::uint32_t>>& blocks) {
    const std::uint32_t p = spec.moduli()[0];
    for (std::uint32_t m : spec.moduli())
        if (m != p) throw PreconditionError("covering_from_partitioned: spec must be Z_p^r");
    if (!is_prime_u64(p))
        throw PreconditionError("covering_from_partitioned: modulus must be prime");

    HyperplaneClasses cs;
    cs.p = p;
    cs.r = static_cast<std::uint32_t>(spec.rank());
    for (const auto& blk : blocks) {
        if (blk.empty() || blk.size() >= p)
            throw PreconditionError("covering_from_partitioned: block size must be in [1, p-1]");
        HyperplaneClasses::Class cls;
        cls.normal.assign(cs.r, 0);
        for (std::uint32_t idx : blk) {
            if (idx >= cs.r)
                throw PreconditionError("covering_from_partitioned: block index out of range");
            cls.normal[idx] = 1;
        }
        for (std::uint32_t d = 1; d <= blk.size(); ++d) cls.offsets.push_back(d);
        cs.classes.push_back(std::move(cls));
    }
    return validate_classes(std::move(cs));
}

bool verify_cover(const HyperplaneClasses& classes) {
    HyperplaneClasses cs = validate_classes(classes);
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << cs.r); ++mask) {
        bool covered = false;
        for (const auto& cls : cs.classes) {
            std::uint64_t dot = 0;
            for (std::uint32_t i = 0; i < cs.r; ++i)
                if ((mask >> i) & 1) dot += cls.normal[i];
            dot %= cs.p;
            for (std::uint32_t d : cls.offsets)
                if (dot == d) {
                    covered = true;
                    break;
                }
            if (covered) break;
        }
        if (!covered) return false;
    }
    return true;
}

bool covering_bound_check(const HyperplaneClasses& classes) {
    HyperplaneClasses cs = validate_classes(classes);
    std::uint64_t prod = 1;
    for (const auto& cls : cs.classes) prod *= cls.offsets.size() + 1;
    if (prod < cs.r + 1) return false;
    // prod >= (p/(p-1))^r  <=>  prod * (p-1)^r >= p^r, with exact integers.
    mpz_class lhs(static_cast<unsigned long>(prod)), rhs(1);
    mpz_class pm1(static_cast<unsigned long>(cs.p - 1)), pz(static_cast<unsigned long>(cs.p));
    for (std::uint32_t i = 0; i < cs.r; ++i) {
        lhs *= pm1;
        rhs *= pz;
    }
    return lhs >= rhs;
}

}  // namespace deltaspec
