#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "deltaspec/errors.hpp"
#include "deltaspec/field.hpp"
#include "deltaspec/group.hpp"

namespace deltaspec {

// f: G -> F as a value array in group index order.
template <class F>
struct DenseFunction {
    GroupSpec spec;
    std::vector<typename F::Element> values;
};

// Sparse Fourier coefficients: only nonzero entries are stored, keyed by the
// character's exponent vector. sparsity() = |Supp(f_hat)|.
template <class F>
struct Spectrum {
    GroupSpec spec;
    std::map<Coords, typename F::Element> coeffs;

    std::size_t sparsity() const { return coeffs.size(); }

    std::vector<Coords> support() const {
        std::vector<Coords> s;
        s.reserve(coeffs.size());
        for (const auto& [a, c] : coeffs) s.push_back(a);
        return s;
    }
};

// The transform needs every m_i-th root of unity in F and |G| invertible.
template <class F>
void check_transform_compatible(const F& field, const GroupSpec& spec) {
    for (std::uint32_t m : spec.moduli())
        if (field.e() % m != 0)
            throw PreconditionError("field does not contain the required " + std::to_string(m) +
                                    "-th roots of unity");
    // char(F) | |G| makes 1/|G| undefined; reject at pairing time.
    if (field.is_zero(field.from_int(static_cast<std::int64_t>(spec.order()))))
        throw PreconditionError("field characteristic divides the group order");
}

// Per-coordinate tables of root-of-unity powers: pows[i][k] = omega_{m_i}^k.
template <class F>
class CharacterTable {
public:
    CharacterTable(const F& field, const GroupSpec& spec) {
        pows_.reserve(spec.rank());
        for (std::uint32_t m : spec.moduli()) {
            std::vector<typename F::Element> row;
            row.reserve(m);
            auto omega = field.root_of_unity(m);
            auto cur = field.one();
            for (std::uint32_t k = 0; k < m; ++k) {
                row.push_back(cur);
                cur = field.mul(cur, omega);
            }
            pows_.push_back(std::move(row));
        }
    }

    // psi_a(x) = prod_i omega_{m_i}^{a_i x_i}
    typename F::Element eval(const F& field, const GroupSpec& spec, const Coords& a,
                             const Coords& x) const {
        typename F::Element v = field.one();
        for (std::size_t i = 0; i < spec.rank(); ++i) {
            const std::uint64_t k = std::uint64_t(a[i]) * x[i] % spec.moduli()[i];
            v = field.mul(v, pows_[i][k]);
        }
        return v;
    }

    const std::vector<typename F::Element>& coordinate_powers(std::size_t i) const {
        return pows_[i];
    }

private:
    std::vector<std::vector<typename F::Element>> pows_;
};

template <class F>
typename F::Element character_eval(const F& field, const GroupSpec& spec, const Coords& a,
                                   const Coords& x) {
    if (!spec.is_valid(a) || !spec.is_valid(x))
        throw PreconditionError("character_eval: invalid coordinates");
    CharacterTable<F> table(field, spec);
    return table.eval(field, spec, a, x);
}

namespace detail {

// One tensor pass along each coordinate. sign=+1 evaluates sums of
// psi_a(x); sign=-1 uses psi_a(-x), which is psi_a(x)^{-1}.
template <class F>
void tensor_transform(const F& field, const GroupSpec& spec, const CharacterTable<F>& table,
                      std::vector<typename F::Element>& vals, int sign) {
    using El = typename F::Element;
    const auto& mods = spec.moduli();
    std::uint64_t stride = 1;
    for (std::size_t axis = 0; axis < spec.rank(); ++axis) {
        const std::uint32_t m = mods[axis];
        const auto& pows = table.coordinate_powers(axis);
        std::vector<El> line(m, field.zero());
        const std::uint64_t block = stride * m;
        for (std::uint64_t base = 0; base < spec.order(); base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                const std::uint64_t lo = base + off;
                for (std::uint32_t a = 0; a < m; ++a) {
                    El acc = field.zero();
                    for (std::uint32_t x = 0; x < m; ++x) {
                        std::uint64_t k = std::uint64_t(a) * x % m;
                        if (sign < 0 && k != 0) k = m - k;
                        acc = field.add(acc, field.mul(vals[lo + x * stride], pows[k]));
                    }
                    line[a] = acc;
                }
                for (std::uint32_t a = 0; a < m; ++a) vals[lo + a * stride] = line[a];
            }
        }
        stride = block;
    }
}

}  // namespace detail

// f_hat(a) = (1/|G|) sum_x f(x) psi_a(x)^{-1}; zero coefficients dropped.
template <class F>
Spectrum<F> forward(const F& field, const DenseFunction<F>& f) {
    check_transform_compatible(field, f.spec);
    if (f.values.size() != f.spec.order())
        throw PreconditionError("forward: value array length != group order");
    CharacterTable<F> table(field, f.spec);
    std::vector<typename F::Element> vals = f.values;
    detail::tensor_transform(field, f.spec, table, vals, -1);
    const auto inv_order =
        field.inv(field.from_int(static_cast<std::int64_t>(f.spec.order())));
    Spectrum<F> s{f.spec, {}};
    for (std::uint64_t idx = 0; idx < f.spec.order(); ++idx) {
        auto c = field.mul(vals[idx], inv_order);
        if (!field.is_zero(c)) s.coeffs.emplace(f.spec.element_of(idx), std::move(c));
    }
    return s;
}

// f(x) = sum_a f_hat(a) psi_a(x).
template <class F>
DenseFunction<F> inverse(const F& field, const Spectrum<F>& s) {
    check_transform_compatible(field, s.spec);
    CharacterTable<F> table(field, s.spec);
    std::vector<typename F::Element> vals(s.spec.order(), field.zero());
    for (const auto& [a, c] : s.coeffs) vals[s.spec.index_of(a)] = c;
    detail::tensor_transform(field, s.spec, table, vals, +1);
    return DenseFunction<F>{s.spec, std::move(vals)};
}

// The G-delta: every character weighted 1/|G|.
template <class F>
Spectrum<F> total_delta(const F& field, const GroupSpec& spec) {
    check_transform_compatible(field, spec);
    const auto inv_order = field.inv(field.from_int(static_cast<std::int64_t>(spec.order())));
    Spectrum<F> s{spec, {}};
    for (std::uint64_t idx = 0; idx < spec.order(); ++idx)
        s.coeffs.emplace(spec.element_of(idx), inv_order);
    return s;
}

template <class F>
DenseFunction<F> pointwise_mul(const F& field, const DenseFunction<F>& f,
                               const DenseFunction<F>& g) {
    if (f.spec != g.spec) throw PreconditionError("pointwise_mul: mismatched group specs");
    if (f.values.size() != g.values.size())
        throw PreconditionError("pointwise_mul: mismatched value arrays");
    DenseFunction<F> h{f.spec, {}};
    h.values.reserve(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i)
        h.values.push_back(field.mul(f.values[i], g.values[i]));
    return h;
}

// Evaluate the sparse expansion sum_a c_a psi_a at the points of B only and
// test the delta property there. Equivalent to is_delta_on(inverse(s), B)
// without materializing the dense function; the only option when |G| is
// large but B is small.
template <class F>
bool is_delta_on_support(const F& field, const Spectrum<F>& s, const PointSet& B) {
    check_transform_compatible(field, s.spec);
    CharacterTable<F> table(field, s.spec);
    for (const Coords& b : B.elements) {
        auto acc = field.zero();
        for (const auto& [a, c] : s.coeffs)
            acc = field.add(acc, field.mul(c, table.eval(field, s.spec, a, b)));
        if (s.spec.index_of(b) == 0) {
            if (!field.eq(acc, field.one())) return false;
        } else if (!field.is_zero(acc)) {
            return false;
        }
    }
    return true;
}

// f(0) = 1 and f vanishes on B \ {0}.
template <class F>
bool is_delta_on(const F& field, const DenseFunction<F>& f, const PointSet& B) {
    if (!field.eq(f.values[0], field.one())) return false;
    for (const Coords& b : B.elements) {
        const std::uint64_t idx = f.spec.index_of(b);
        if (idx == 0) continue;
        if (!field.is_zero(f.values[idx])) return false;
    }
    return true;
}

// Randomized check of the polynomial identity
//   sum_j b_j prod_i (1 + T_i alpha_i(j)) = sum_j b_j,
// which holds exactly when the spectrum belongs to a hypercube-delta
// function. T_i is drawn from {0} union {zeta_e^k}; equality is exact on
// exact backends.
template <class F>
bool delta_identity_check(const F& field, const Spectrum<F>& s, std::uint64_t trials,
                          std::uint64_t seed = 0) {
    check_transform_compatible(field, s.spec);
    CharacterTable<F> table(field, s.spec);
    typename F::Element rhs = field.zero();
    for (const auto& [a, c] : s.coeffs) rhs = field.add(rhs, c);

    const std::uint64_t e = field.e();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, e);  // e means "zero"
    const std::size_t r = s.spec.rank();

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::vector<std::uint64_t> t_codes(r);
        for (std::size_t i = 0; i < r; ++i) t_codes[i] = pick(rng);
        typename F::Element lhs = field.zero();
        for (const auto& [a, c] : s.coeffs) {
            typename F::Element term = c;
            for (std::size_t i = 0; i < r; ++i) {
                if (t_codes[i] == e) continue;  // T_i = 0 contributes factor 1
                // factor = 1 + T_i * omega_{m_i}^{a_i}
                auto alpha = table.coordinate_powers(i)[a[i]];
                auto ti = field.pow(field.zeta(), t_codes[i]);
                term = field.mul(term, field.add(field.one(), field.mul(ti, alpha)));
            }
            lhs = field.add(lhs, term);
        }
        if (!field.eq(lhs, rhs)) return false;
    }
    return true;
}

}  // namespace deltaspec
