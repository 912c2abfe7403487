#include "deltaspec/decoding.hpp"

#include <algorithm>
#include <cmath>

namespace deltaspec {

CanonicalSet canonical_set(std::uint64_t m) {
    const CrtSplit split = crt_split(m);  // rejects non-squarefree m
    CanonicalSet S;
    S.m = m;
    S.primes = split.primes;
    const std::size_t r = split.primes.size();
    // Idempotents are the CRT combinations of 0/1 residues.
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << r); ++mask) {
        Coords residues(r);
        for (std::size_t i = 0; i < r; ++i) residues[i] = (mask >> i) & 1;
        S.elements.push_back(crt_unmap(split.spec, residues));
    }
    std::sort(S.elements.begin(), S.elements.end());
    for (std::uint64_t x : S.elements)
        if ((static_cast<unsigned __int128>(x) * x) % m != x % m)
            throw VerificationError("canonical_set: non-idempotent element");
    if (S.elements.size() != (std::uint64_t(1) << r))
        throw VerificationError("canonical_set: wrong idempotent count");
    return S;
}

namespace detail {

namespace {

std::uint32_t inverse_mod(std::uint64_t a, std::uint32_t p) {
    std::int64_t r0 = p, r1 = static_cast<std::int64_t>(a % p);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    return static_cast<std::uint32_t>((s0 % p + p) % p);
}

}  // namespace

std::uint32_t poly_exponent_to_char_coord(std::uint64_t m, std::uint32_t p, std::uint64_t a) {
    const std::uint64_t q = m / p;  // coprime to p for squarefree m
    const std::uint64_t k = inverse_mod(q, p);
    return static_cast<std::uint32_t>(k * (a % p) % p);
}

std::uint32_t char_coord_to_poly_residue(std::uint64_t m, std::uint32_t p, std::uint32_t c) {
    const std::uint64_t q = m / p;
    return static_cast<std::uint32_t>((q % p) * c % p);
}

}  // namespace detail

namespace {

// (log k)^r / (log log k)^{r-1} as a function of u = log k.
double mv_shape(double u, std::uint32_t r) {
    return std::pow(u, r) / std::pow(std::log(u), static_cast<int>(r) - 1);
}

}  // namespace

PirReport pir_params(std::uint32_t r, double n, std::optional<std::uint32_t> t) {
    if (r < 2) throw PreconditionError("pir_params: r must be >= 2");
    if (!(n >= 2)) throw PreconditionError("pir_params: n must be >= 2");

    PirReport rep;
    rep.r = r;
    rep.n = n;
    rep.t = t;
    rep.required_servers = r + 1;
    rep.feasible = !t || *t >= r + 1;

    const double log_n = std::log(n);
    // Invert log n = (log k)^r / (log log k)^{r-1} on the increasing branch
    // u >= e^{(r-1)/r}.
    double lo = std::exp(static_cast<double>(r - 1) / r);
    if (log_n <= mv_shape(lo, r)) {
        rep.k = std::exp(lo);
    } else {
        double hi = lo + 1;
        while (mv_shape(hi, r) < log_n && hi < 700) hi *= 2;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (mv_shape(mid, r) < log_n ? lo : hi) = mid;
        }
        rep.k = std::exp(0.5 * (lo + hi));
    }
    rep.comm_upper = rep.k;
    if (t && *t > 0) rep.comm_lower = std::exp(std::pow(log_n, 1.0 / *t));
    return rep;
}

}  // namespace deltaspec
