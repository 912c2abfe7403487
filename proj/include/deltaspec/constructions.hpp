#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deltaspec/fourier.hpp"
#include "deltaspec/group.hpp"

namespace deltaspec {

// The three closed-form lower bounds, reported independently (their relative
// order is checked by tests, not assumed), plus the best constructive upper
// bound available for the spec.
struct BoundReport {
    std::vector<std::uint32_t> moduli;
    std::uint64_t linear_bound = 0;    // r + 1
    std::uint64_t product_bound = 0;   // ceil(prod m_i / (m_i - 1))
    std::uint64_t covering_bound = 0;  // recursive F bound, best peeling order
    std::optional<std::uint64_t> best_known_upper;
    std::string upper_provenance;

    std::uint64_t max_lower() const {
        return std::max(linear_bound, std::max(product_bound, covering_bound));
    }
};

BoundReport lower_bounds(const GroupSpec& spec);

// The recursion F(m_1,...,m_r) >= ceil(m/(m-1) * F(rest)), maximized over
// peeling orders by memoized DP on sub-multisets. F(empty) = 1.
std::uint64_t covering_recursion_bound(std::vector<std::uint32_t> moduli);

// Classes of parallel affine hyperplanes over F_p, none through 0:
// class (c, D) is the union of {x : c.x = d} for d in D.
struct HyperplaneClasses {
    struct Class {
        Coords normal;
        std::vector<std::uint32_t> offsets;
    };
    std::uint32_t p = 0;
    std::uint32_t r = 0;
    std::vector<Class> classes;
};

// Validates the invariants (p prime, no offset 0, normals pairwise
// non-proportional) and returns the input.
HyperplaneClasses validate_classes(HyperplaneClasses classes);

// The hyperplane classes realized by the partitioned construction on Z_p^r.
HyperplaneClasses covering_from_partitioned(const GroupSpec& spec,
                                            const std::vector<std::vector<std::uint32_t>>& blocks);

// Every nonzero Boolean point lies on some hyperplane.
bool verify_cover(const HyperplaneClasses& classes);

// prod_i (|H_i| + 1) >= max(r+1, (p/(p-1))^r), checked with exact integers.
bool covering_bound_check(const HyperplaneClasses& classes);

namespace detail {

// Coefficients of prod_{i=lo..hi} (y - omega^i), low-degree-first.
template <class F>
std::vector<typename F::Element> root_product_poly(const F& field,
                                                   const typename F::Element& omega,
                                                   std::uint32_t lo, std::uint32_t hi) {
    std::vector<typename F::Element> poly{field.one()};
    auto pw = field.pow(omega, lo);
    for (std::uint32_t i = lo; i <= hi; ++i) {
        std::vector<typename F::Element> next(poly.size() + 1, field.zero());
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] = field.add(next[k + 1], poly[k]);
            next[k] = field.sub(next[k], field.mul(poly[k], pw));
        }
        poly = std::move(next);
        pw = field.mul(pw, omega);
    }
    return poly;
}

}  // namespace detail

// f(x) = prod_{i=1..r} (omega^{x_1+...+x_r} - omega^i) on Z_m^r, normalized
// so f(0) = 1. Support is the diagonal {(k,...,k) : 0 <= k <= r}.
template <class F>
Spectrum<F> single_block(const F& field, std::uint32_t m, std::uint32_t r) {
    if (m <= r) throw PreconditionError("single_block: requires m > r");
    if (r < 1) throw PreconditionError("single_block: requires r >= 1");
    GroupSpec spec(std::vector<std::uint32_t>(r, m));
    check_transform_compatible(field, spec);
    const auto omega = field.root_of_unity(m);
    auto poly = detail::root_product_poly(field, omega, 1, r);
    // f(0) = value of the polynomial at y = 1.
    auto at_one = field.zero();
    for (const auto& c : poly) at_one = field.add(at_one, c);
    if (field.is_zero(at_one))
        throw VerificationError("single_block: vanishing normalizer");
    const auto scale = field.inv(at_one);
    Spectrum<F> s{spec, {}};
    for (std::uint32_t k = 0; k <= r; ++k) {
        auto c = field.mul(poly[k], scale);
        if (!field.is_zero(c)) s.coeffs.emplace(Coords(r, k), std::move(c));
    }
    return s;
}

// Product of single-block deltas over a partition of the coordinates of
// Z_m^r; block sizes may differ as long as each is <= m-1. Sparsity is
// prod_k (|A_k| + 1), which equals m^{r/(m-1)} for equal blocks of size m-1.
template <class F>
Spectrum<F> partitioned(const F& field, std::uint32_t m,
                        const std::vector<std::vector<std::uint32_t>>& blocks) {
    if (blocks.empty()) throw PreconditionError("partitioned: empty partition");
    std::size_t r = 0;
    for (const auto& blk : blocks) r += blk.size();
    std::vector<bool> seen(r, false);
    for (const auto& blk : blocks) {
        if (blk.empty()) throw PreconditionError("partitioned: empty block");
        if (blk.size() >= m)
            throw PreconditionError("partitioned: block size must be <= m-1");
        for (std::uint32_t idx : blk) {
            if (idx >= r || seen[idx])
                throw PreconditionError("partitioned: blocks must partition the coordinates");
            seen[idx] = true;
        }
    }
    GroupSpec spec(std::vector<std::uint32_t>(r, m));
    check_transform_compatible(field, spec);
    const auto omega = field.root_of_unity(m);

    // Normalized diagonal coefficients per block.
    std::vector<std::vector<typename F::Element>> block_coeffs;
    for (const auto& blk : blocks) {
        auto poly = detail::root_product_poly(field, omega,
                                              1, static_cast<std::uint32_t>(blk.size()));
        auto at_one = field.zero();
        for (const auto& c : poly) at_one = field.add(at_one, c);
        const auto scale = field.inv(at_one);
        for (auto& c : poly) c = field.mul(c, scale);
        block_coeffs.push_back(std::move(poly));
    }

    // Tensor the blocks: support vectors are constant on each block.
    Spectrum<F> s{spec, {}};
    std::vector<std::uint32_t> choice(blocks.size(), 0);
    while (true) {
        Coords a(r, 0);
        auto coeff = field.one();
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            for (std::uint32_t idx : blocks[k]) a[idx] = choice[k];
            coeff = field.mul(coeff, block_coeffs[k][choice[k]]);
        }
        if (!field.is_zero(coeff)) s.coeffs.emplace(std::move(a), std::move(coeff));
        std::size_t k = 0;
        while (k < blocks.size() && choice[k] == blocks[k].size()) {
            choice[k] = 0;
            ++k;
        }
        if (k == blocks.size()) break;
        ++choice[k];
    }
    return s;
}

// The auxiliary function g = prod_i h_i with
//   h_i(x) = omega^x * prod_{j=2}^{m_i-1} (omega^x - omega^j):
// supported on {0,1}^r with g(0) != 0, and Supp(g_hat) = prod {1..m_i-1}.
// Returns both the dense values (evaluated from the definition) and the
// spectrum (assembled from per-coordinate coefficients).
template <class F>
std::pair<DenseFunction<F>, Spectrum<F>> aux_g(const F& field, const GroupSpec& spec) {
    check_transform_compatible(field, spec);
    const std::size_t r = spec.rank();

    std::vector<std::vector<typename F::Element>> h_vals;    // h_i at x in [0, m_i)
    std::vector<std::vector<typename F::Element>> h_coeffs;  // coefficient of omega^{k x}
    for (std::uint32_t m : spec.moduli()) {
        const auto omega = field.root_of_unity(m);
        std::vector<typename F::Element> vals;
        for (std::uint32_t x = 0; x < m; ++x) {
            auto wx = field.pow(omega, x);
            auto v = wx;
            for (std::uint32_t j = 2; j < m; ++j)
                v = field.mul(v, field.sub(wx, field.pow(omega, j)));
            vals.push_back(std::move(v));
        }
        h_vals.push_back(std::move(vals));

        // y * prod_{j=2}^{m-1} (y - omega^j): degree m-1, constant term 0.
        std::vector<typename F::Element> poly{field.one()};
        if (m >= 3) poly = detail::root_product_poly(field, omega, 2, m - 1);
        poly.insert(poly.begin(), field.zero());
        h_coeffs.push_back(std::move(poly));
    }

    DenseFunction<F> g{spec, std::vector<typename F::Element>(spec.order(), field.one())};
    for (std::uint64_t idx = 0; idx < spec.order(); ++idx) {
        Coords x = spec.element_of(idx);
        auto v = field.one();
        for (std::size_t i = 0; i < r; ++i) v = field.mul(v, h_vals[i][x[i]]);
        g.values[idx] = std::move(v);
    }

    Spectrum<F> s{spec, {}};
    Coords b(r, 1);
    while (true) {
        auto coeff = field.one();
        for (std::size_t i = 0; i < r; ++i) coeff = field.mul(coeff, h_coeffs[i][b[i]]);
        if (!field.is_zero(coeff)) s.coeffs.emplace(b, std::move(coeff));
        std::size_t i = 0;
        while (i < r && b[i] == spec.moduli()[i] - 1) {
            b[i] = 1;
            ++i;
        }
        if (i == r) break;
        ++b[i];
    }
    return {std::move(g), std::move(s)};
}

// f(x) = prod over classes, prod_{d in D} (omega^{c.x} - omega^d),
// normalized so f(0) = 1; a hypercube delta whenever the classes cover
// {0,1}^r \ {0}.
template <class F>
Spectrum<F> delta_from_covering(const F& field, const HyperplaneClasses& classes) {
    HyperplaneClasses cs = validate_classes(classes);
    GroupSpec spec(std::vector<std::uint32_t>(cs.r, cs.p));
    check_transform_compatible(field, spec);
    const auto omega = field.root_of_unity(cs.p);

    DenseFunction<F> f{spec, std::vector<typename F::Element>(spec.order(), field.one())};
    for (std::uint64_t idx = 0; idx < spec.order(); ++idx) {
        Coords x = spec.element_of(idx);
        auto v = field.one();
        for (const auto& cls : cs.classes) {
            std::uint64_t dot = 0;
            for (std::uint32_t i = 0; i < cs.r; ++i)
                dot += std::uint64_t(cls.normal[i]) * x[i];
            auto wdot = field.pow(omega, dot % cs.p);
            for (std::uint32_t d : cls.offsets)
                v = field.mul(v, field.sub(wdot, field.pow(omega, d)));
        }
        f.values[idx] = std::move(v);
    }
    if (field.is_zero(f.values[0]))
        throw VerificationError("delta_from_covering: vanishing value at 0");
    const auto scale = field.inv(f.values[0]);
    for (auto& v : f.values) v = field.mul(v, scale);
    return forward(field, f);
}

}  // namespace deltaspec
