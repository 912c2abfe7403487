#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "deltaspec/fourier.hpp"
#include "deltaspec/group.hpp"
#include "deltaspec/search.hpp"

namespace deltaspec {

// Idempotents of Z_m for squarefree m: the canonical set S of the
// matching-vector literature, of size 2^r.
struct CanonicalSet {
    std::uint64_t m = 0;
    std::vector<std::uint32_t> primes;
    std::vector<std::uint64_t> elements;  // sorted, contains 0 and 1
};

CanonicalSet canonical_set(std::uint64_t m);

// P(Z) = sum over terms c_a Z^a with P(gamma^s) = 0 on S \ {0} and P(1) = 1,
// where gamma is the field's canonical primitive m-th root of unity.
template <class F>
struct DecodingPolynomial {
    std::uint64_t m = 0;
    std::map<std::uint64_t, typename F::Element> terms;  // exponent -> nonzero coeff

    std::size_t sparsity() const { return terms.size(); }

    typename F::Element eval_at_power(const F& field, const typename F::Element& gamma,
                                      std::uint64_t s) const {
        auto acc = field.zero();
        for (const auto& [a, c] : terms) {
            const std::uint64_t k = static_cast<std::uint64_t>(
                static_cast<unsigned __int128>(a) * s % m);
            acc = field.add(acc, field.mul(c, field.pow(gamma, k)));
        }
        return acc;
    }
};

template <class F>
typename F::Element decoding_root(const F& field, std::uint64_t m) {
    return field.root_of_unity(m);  // zeta_e^{e/m}, the module-wide convention
}

// Lagrange-style product: P(Z) = prod_{s in S \ {0}} (Z - gamma^s)/(1 - gamma^s).
template <class F>
DecodingPolynomial<F> trivial_decoding(const F& field, std::uint64_t m) {
    const CanonicalSet S = canonical_set(m);
    const auto gamma = decoding_root(field, m);
    std::vector<typename F::Element> poly{field.one()};
    auto denom = field.one();
    for (std::uint64_t s : S.elements) {
        if (s == 0) continue;
        const auto gs = field.pow(gamma, s);
        denom = field.mul(denom, field.sub(field.one(), gs));
        std::vector<typename F::Element> next(poly.size() + 1, field.zero());
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] = field.add(next[k + 1], poly[k]);
            next[k] = field.sub(next[k], field.mul(poly[k], gs));
        }
        poly = std::move(next);
    }
    const auto scale = field.inv(denom);
    DecodingPolynomial<F> P;
    P.m = m;
    for (std::size_t a = 0; a < poly.size(); ++a) {
        auto c = field.mul(poly[a], scale);
        if (!field.is_zero(c)) P.terms.emplace(a, std::move(c));
    }
    return P;
}

template <class F>
bool verify_decoding(const F& field, const DecodingPolynomial<F>& P, const CanonicalSet& S) {
    if (P.m != S.m) throw PreconditionError("verify_decoding: modulus mismatch");
    const auto gamma = decoding_root(field, P.m);
    for (std::uint64_t s : S.elements) {
        const auto v = P.eval_at_power(field, gamma, s);
        if (s == 0) {
            if (!field.eq(v, field.one())) return false;
        } else if (!field.is_zero(v)) {
            return false;
        }
    }
    return true;
}

namespace detail {

// The character on prod Z_{p_i} whose value at phi(s) is gamma^{a s}:
// coordinate i equals (m/p_i)^{-1} * a (mod p_i). (gamma factors as
// prod omega_{p_i} with omega_{p_i} = gamma^{e_i} over the CRT idempotents
// e_i; translating to the per-coordinate roots zeta^{e/p_i} used by the
// transform gives this twist.)
std::uint32_t poly_exponent_to_char_coord(std::uint64_t m, std::uint32_t p, std::uint64_t a);
std::uint32_t char_coord_to_poly_residue(std::uint64_t m, std::uint32_t p, std::uint32_t c);

}  // namespace detail

template <class F>
Spectrum<F> poly_to_delta(const F& /*field*/, const DecodingPolynomial<F>& P) {
    const CrtSplit split = crt_split(P.m);
    Spectrum<F> s{split.spec, {}};
    for (const auto& [a, c] : P.terms) {
        Coords ch(split.primes.size());
        for (std::size_t i = 0; i < split.primes.size(); ++i)
            ch[i] = detail::poly_exponent_to_char_coord(P.m, split.primes[i], a);
        if (s.coeffs.count(ch))
            throw VerificationError("poly_to_delta: exponent map collision");
        s.coeffs.emplace(std::move(ch), c);
    }
    return s;
}

template <class F>
DecodingPolynomial<F> delta_to_poly(const F& /*field*/, const Spectrum<F>& s, std::uint64_t m) {
    const CrtSplit split = crt_split(m);
    if (split.spec != s.spec)
        throw PreconditionError("delta_to_poly: spectrum moduli must be the prime split of m");
    DecodingPolynomial<F> P;
    P.m = m;
    for (const auto& [ch, c] : s.coeffs) {
        Coords residues(split.primes.size());
        for (std::size_t i = 0; i < split.primes.size(); ++i)
            residues[i] = detail::char_coord_to_poly_residue(m, split.primes[i], ch[i]);
        const std::uint64_t a = crt_unmap(split.spec, residues);
        P.terms.emplace(a, c);
    }
    if (P.terms.size() != s.coeffs.size())
        throw VerificationError("delta_to_poly: character map collision");
    return P;
}

// Minimal decoding sparsity via the CRT group search; the r+1 bound is
// asserted on every found result.
template <class F>
SearchResult<F> min_decoding_sparsity(const F& field, std::uint64_t m, std::uint64_t t_max = 0,
                                      std::uint64_t budget = 100000000, unsigned workers = 1) {
    const CrtSplit split = crt_split(m);
    SearchProblem prob{.spec = split.spec,
                       .B = point_set(split.spec, PointSetKind::hypercube),
                       .t_min = 1,
                       .t_max = t_max,
                       .budget = budget};
    auto res = min_sparsity(field, prob, workers);
    if (res.status == SearchStatus::found && res.min_t < split.primes.size() + 1)
        throw VerificationError(
            "min_decoding_sparsity: result below the r+1 bound; this is a bug");
    return res;
}

// Matching-vector PIR parameter shapes. Constants inside the Theta(.) are
// set to 1 and results are labeled shape-only: the underlying guarantees
// are asymptotic, with no explicit constants.
struct PirReport {
    std::uint32_t r = 0;
    double n = 0;
    std::optional<std::uint32_t> t;
    std::uint64_t required_servers = 0;  // r + 1
    bool feasible = true;                // t >= r + 1 when t is given
    double k = 0;                        // dimension with n = exp((log k)^r / (log log k)^{r-1})
    double comm_upper = 0;               // O(k) as a bare k value
    double comm_lower = 0;               // exp((log n)^{1/t})
    bool shape_only = true;
};

PirReport pir_params(std::uint32_t r, double n, std::optional<std::uint32_t> t);

}  // namespace deltaspec
