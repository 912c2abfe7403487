#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "deltaspec/errors.hpp"

namespace deltaspec {

// Number-theory helpers shared by the backends.
bool is_prime_u64(std::uint64_t n);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t smallest_primitive_root(std::uint64_t p);
// Monic e-th cyclotomic polynomial over Z, computed by exact division of
// x^e - 1 by the proper-divisor cyclotomics. Returned low-degree-first.
std::vector<mpz_class> cyclotomic_polynomial(std::uint64_t e);
std::uint64_t euler_phi(std::uint64_t n);

// F_p with a distinguished element omega of exact multiplicative order e.
// p is chosen as the smallest prime = 1 (mod e), omega = g^((p-1)/e) for the
// smallest primitive root g, so every run and platform agrees on the roots.
class PrimeField {
public:
    using Element = std::uint64_t;
    static constexpr bool exact = true;

    static PrimeField make(std::uint64_t e);
    static PrimeField with_prime(std::uint64_t p, std::uint64_t e);

    std::uint64_t p() const { return p_; }
    std::uint64_t e() const { return e_; }
    std::uint64_t generator() const { return g_; }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_int(std::int64_t v) const;
    Element zeta() const { return omega_; }
    Element root_of_unity(std::uint64_t n) const;

    Element add(Element a, Element b) const { return (a + b) % p_; }
    Element sub(Element a, Element b) const { return (a + p_ - b) % p_; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element mul(Element a, Element b) const {
        return static_cast<Element>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    Element inv(Element a) const;
    Element pow(Element a, std::uint64_t k) const { return pow_mod(a, k, p_); }
    bool is_zero(Element a) const { return a == 0; }
    bool eq(Element a, Element b) const { return a == b; }

    std::string describe() const;

private:
    PrimeField(std::uint64_t p, std::uint64_t e, std::uint64_t g, std::uint64_t omega)
        : p_(p), e_(e), g_(g), omega_(omega) {}

    std::uint64_t p_, e_, g_, omega_;
};

// Exact cyclotomic rationals Q(zeta_e) = Q[x]/(Phi_e), elements stored as
// rational coefficient vectors of length phi(e), always reduced.
class CyclotomicField {
public:
    using Element = std::vector<mpq_class>;
    static constexpr bool exact = true;

    static CyclotomicField make(std::uint64_t e);

    std::uint64_t e() const { return e_; }
    std::size_t degree() const { return deg_; }
    const std::vector<mpz_class>& phi() const { return phi_; }

    Element zero() const { return Element(deg_, mpq_class(0)); }
    Element one() const;
    Element from_int(std::int64_t v) const;
    Element zeta() const;
    Element root_of_unity(std::uint64_t n) const;

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;
    Element pow(const Element& a, std::uint64_t k) const;
    bool is_zero(const Element& a) const;
    bool eq(const Element& a, const Element& b) const { return a == b; }

    // x^k mod Phi_e for arbitrary k >= 0 (k reduced mod e first).
    Element zeta_power(std::uint64_t k) const;

    std::string describe() const;

private:
    explicit CyclotomicField(std::uint64_t e);

    std::uint64_t e_;
    std::size_t deg_;
    std::vector<mpz_class> phi_;
    // x^k mod Phi_e for k in [0, e): every root-of-unity power, precomputed.
    std::vector<Element> zeta_pows_;
};

// Complex doubles with a zero tolerance. Exists for cross-checks and
// plotting; certificate-producing searches refuse it.
class ComplexField {
public:
    using Element = std::complex<double>;
    static constexpr bool exact = false;

    static ComplexField make(std::uint64_t e, double tolerance = 1e-9);

    std::uint64_t e() const { return e_; }
    double tolerance() const { return tol_; }

    Element zero() const { return {0.0, 0.0}; }
    Element one() const { return {1.0, 0.0}; }
    Element from_int(std::int64_t v) const { return {static_cast<double>(v), 0.0}; }
    Element zeta() const { return root_of_unity(e_); }
    Element root_of_unity(std::uint64_t n) const;

    Element add(Element a, Element b) const { return a + b; }
    Element sub(Element a, Element b) const { return a - b; }
    Element neg(Element a) const { return -a; }
    Element mul(Element a, Element b) const { return a * b; }
    Element inv(Element a) const;
    Element pow(Element a, std::uint64_t k) const;
    bool is_zero(Element a) const { return std::abs(a) <= tol_; }
    bool eq(Element a, Element b) const { return std::abs(a - b) <= tol_; }

    std::string describe() const;

private:
    ComplexField(std::uint64_t e, double tol) : e_(e), tol_(tol) {}

    std::uint64_t e_;
    double tol_;
};

}  // namespace deltaspec
