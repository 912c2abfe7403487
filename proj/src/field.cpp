#include "deltaspec/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace deltaspec {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (n % d == 0) return n == d;
    }
    for (std::uint64_t d = 11; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    unsigned __int128 acc = 1, b = base % mod;
    while (exp) {
        if (exp & 1) acc = acc * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            fs.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

std::uint64_t smallest_primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    const auto qs = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::uint64_t q : qs)
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw VerificationError("smallest_primitive_root: no generator found");
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p : prime_factors(n)) result -= result / p;
    return result;
}

namespace {

// Exact division of integer polynomials (low-degree-first); remainder must
// vanish, which holds for the cyclotomic recursion.
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> num,
                                      const std::vector<mpz_class>& den) {
    const std::size_t dn = num.size() - 1, dd = den.size() - 1;
    std::vector<mpz_class> q(dn - dd + 1, mpz_class(0));
    for (std::size_t k = dn - dd + 1; k-- > 0;) {
        mpz_class c = num[k + dd] / den[dd];
        q[k] = c;
        for (std::size_t j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw VerificationError("poly_div_exact: nonzero remainder");
    return q;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(std::uint64_t e) {
    if (e == 0) throw PreconditionError("cyclotomic_polynomial: e must be >= 1");
    static std::map<std::uint64_t, std::vector<mpz_class>> cache;
    auto hit = cache.find(e);
    if (hit != cache.end()) return hit->second;

    std::vector<mpz_class> num(e + 1, mpz_class(0));
    num[0] = -1;
    num[e] = 1;
    std::vector<mpz_class> result = num;  // placeholder
    if (e == 1) {
        result = {mpz_class(-1), mpz_class(1)};
    } else {
        std::vector<mpz_class> acc = num;
        for (std::uint64_t d = 1; d < e; ++d)
            if (e % d == 0) acc = poly_div_exact(std::move(acc), cyclotomic_polynomial(d));
        result = std::move(acc);
    }
    cache[e] = result;
    return result;
}

// ---------------------------------------------------------------------------
// PrimeField
// ---------------------------------------------------------------------------

PrimeField PrimeField::make(std::uint64_t e) {
    if (e < 1) throw PreconditionError("PrimeField::make: e must be >= 1");
    std::uint64_t p = e + 1;
    if (e == 1) p = 2;
    while (!(is_prime_u64(p) && (p - 1) % e == 0)) p += (e == 1 ? 1 : e);
    return with_prime(p, e);
}

PrimeField PrimeField::with_prime(std::uint64_t p, std::uint64_t e) {
    if (!is_prime_u64(p)) throw PreconditionError("PrimeField: p is not prime");
    if (e < 1 || (p - 1) % e != 0)
        throw PreconditionError("PrimeField: requires p = 1 (mod e)");
    std::uint64_t g = smallest_primitive_root(p);
    std::uint64_t omega = pow_mod(g, (p - 1) / e, p);
    return PrimeField(p, e, g, omega);
}

PrimeField::Element PrimeField::from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    return static_cast<Element>(m);
}

PrimeField::Element PrimeField::root_of_unity(std::uint64_t n) const {
    if (n == 0 || e_ % n != 0)
        throw PreconditionError("root_of_unity: n must divide e");
    return pow_mod(omega_, e_ / n, p_);
}

PrimeField::Element PrimeField::inv(Element a) const {
    if (a == 0) throw PreconditionError("PrimeField::inv: division by zero");
    return pow_mod(a, p_ - 2, p_);
}

std::string PrimeField::describe() const {
    return "F_" + std::to_string(p_) + " (e=" + std::to_string(e_) + ")";
}

// ---------------------------------------------------------------------------
// CyclotomicField
// ---------------------------------------------------------------------------

CyclotomicField::CyclotomicField(std::uint64_t e) : e_(e) {
    phi_ = cyclotomic_polynomial(e);
    deg_ = phi_.size() - 1;
    // zeta_pows_[k] = x^k mod Phi_e, built by repeated shift-and-reduce.
    zeta_pows_.resize(e_);
    Element cur(deg_, mpq_class(0));
    cur[0] = 1;
    for (std::uint64_t k = 0; k < e_; ++k) {
        zeta_pows_[k] = cur;
        // cur <- x * cur mod Phi_e
        mpq_class top = deg_ > 0 ? cur[deg_ - 1] : mpq_class(0);
        for (std::size_t j = deg_; j-- > 1;) cur[j] = cur[j - 1];
        if (deg_ > 0) cur[0] = 0;
        if (top != 0)
            for (std::size_t j = 0; j < deg_; ++j) cur[j] -= top * mpq_class(phi_[j]);
    }
}

CyclotomicField CyclotomicField::make(std::uint64_t e) {
    if (e < 1) throw PreconditionError("CyclotomicField::make: e must be >= 1");
    return CyclotomicField(e);
}

CyclotomicField::Element CyclotomicField::one() const {
    Element v = zero();
    v[0] = 1;
    return v;
}

CyclotomicField::Element CyclotomicField::from_int(std::int64_t v) const {
    Element x = zero();
    x[0] = static_cast<long>(v);
    return x;
}

CyclotomicField::Element CyclotomicField::zeta() const { return zeta_power(1); }

CyclotomicField::Element CyclotomicField::zeta_power(std::uint64_t k) const {
    return zeta_pows_[k % e_];
}

CyclotomicField::Element CyclotomicField::root_of_unity(std::uint64_t n) const {
    if (n == 0 || e_ % n != 0)
        throw PreconditionError("root_of_unity: n must divide e");
    return zeta_power(e_ / n);
}

CyclotomicField::Element CyclotomicField::add(const Element& a, const Element& b) const {
    Element c(deg_);
    for (std::size_t i = 0; i < deg_; ++i) c[i] = a[i] + b[i];
    return c;
}

CyclotomicField::Element CyclotomicField::sub(const Element& a, const Element& b) const {
    Element c(deg_);
    for (std::size_t i = 0; i < deg_; ++i) c[i] = a[i] - b[i];
    return c;
}

CyclotomicField::Element CyclotomicField::neg(const Element& a) const {
    Element c(deg_);
    for (std::size_t i = 0; i < deg_; ++i) c[i] = -a[i];
    return c;
}

CyclotomicField::Element CyclotomicField::mul(const Element& a, const Element& b) const {
    if (deg_ == 0) return zero();
    std::vector<mpq_class> prod(2 * deg_ - 1, mpq_class(0));
    for (std::size_t i = 0; i < deg_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < deg_; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] += a[i] * b[j];
        }
    }
    // Reduce mod the monic Phi_e from the top down.
    for (std::size_t k = prod.size(); k-- > deg_;) {
        if (prod[k] == 0) continue;
        mpq_class c = prod[k];
        prod[k] = 0;
        for (std::size_t j = 0; j < deg_; ++j) prod[k - deg_ + j] -= c * mpq_class(phi_[j]);
    }
    prod.resize(deg_);
    return prod;
}

bool CyclotomicField::is_zero(const Element& a) const {
    for (const auto& c : a)
        if (c != 0) return false;
    return true;
}

CyclotomicField::Element CyclotomicField::inv(const Element& a) const {
    if (is_zero(a)) throw PreconditionError("CyclotomicField::inv: division by zero");
    // Extended Euclid in Q[x] for gcd(a, Phi_e) = 1.
    std::vector<mpq_class> r0(phi_.size());
    for (std::size_t i = 0; i < phi_.size(); ++i) r0[i] = mpq_class(phi_[i]);
    std::vector<mpq_class> r1(a);
    std::vector<mpq_class> s0(1, mpq_class(0)), s1(1, mpq_class(1));

    auto degree = [](const std::vector<mpq_class>& p) -> std::ptrdiff_t {
        for (std::size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return static_cast<std::ptrdiff_t>(i);
        return -1;
    };
    auto trim = [&](std::vector<mpq_class>& p) {
        std::ptrdiff_t d = degree(p);
        p.resize(static_cast<std::size_t>(d + 1));
    };
    trim(r1);

    while (true) {
        std::ptrdiff_t d1 = degree(r1);
        if (d1 < 0) throw VerificationError("CyclotomicField::inv: gcd(a, Phi_e) != 1");
        if (d1 == 0) break;
        // r0 = q*r1 + r; replace (r0, s0) by the remainder pair.
        std::vector<mpq_class> rem(r0);
        std::vector<mpq_class> q(std::max<std::ptrdiff_t>(degree(r0) - d1 + 1, 0), mpq_class(0));
        for (std::ptrdiff_t k = degree(rem); k >= d1; --k) {
            if (rem[static_cast<std::size_t>(k)] == 0) continue;
            mpq_class c = rem[static_cast<std::size_t>(k)] / r1[static_cast<std::size_t>(d1)];
            q[static_cast<std::size_t>(k - d1)] = c;
            for (std::ptrdiff_t j = 0; j <= d1; ++j)
                rem[static_cast<std::size_t>(k - d1 + j)] -= c * r1[static_cast<std::size_t>(j)];
        }
        trim(rem);
        // s_new = s0 - q*s1
        std::vector<mpq_class> snew(std::max(s0.size(), q.size() + s1.size()), mpq_class(0));
        for (std::size_t i = 0; i < s0.size(); ++i) snew[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (std::size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
        }
        trim(snew);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snew);
    }
    // r1 is a nonzero constant c: inverse = s1 / c, reduced mod Phi_e.
    mpq_class c = r1[0];
    Element out = zero();
    std::vector<mpq_class> s(s1);
    // s may exceed deg; reduce.
    while (s.size() > deg_) {
        std::size_t k = s.size() - 1;
        mpq_class top = s[k];
        s.pop_back();
        if (top != 0)
            for (std::size_t j = 0; j < deg_; ++j) s[k - deg_ + j] -= top * mpq_class(phi_[j]);
    }
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] / c;
    return out;
}

CyclotomicField::Element CyclotomicField::pow(const Element& a, std::uint64_t k) const {
    Element acc = one(), base = a;
    while (k) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

std::string CyclotomicField::describe() const {
    return "Q(zeta_" + std::to_string(e_) + ")";
}

// ---------------------------------------------------------------------------
// ComplexField
// ---------------------------------------------------------------------------

ComplexField ComplexField::make(std::uint64_t e, double tolerance) {
    if (e < 1) throw PreconditionError("ComplexField::make: e must be >= 1");
    if (!(tolerance > 0)) throw PreconditionError("ComplexField::make: tolerance must be > 0");
    return ComplexField(e, tolerance);
}

ComplexField::Element ComplexField::root_of_unity(std::uint64_t n) const {
    if (n == 0 || e_ % n != 0)
        throw PreconditionError("root_of_unity: n must divide e");
    const double theta = 2.0 * M_PI / static_cast<double>(n);
    return {std::cos(theta), std::sin(theta)};
}

ComplexField::Element ComplexField::inv(Element a) const {
    if (is_zero(a)) throw PreconditionError("ComplexField::inv: division by zero");
    return 1.0 / a;
}

ComplexField::Element ComplexField::pow(Element a, std::uint64_t k) const {
    Element acc = one(), base = a;
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::string ComplexField::describe() const {
    return "C (tol=" + std::to_string(tol_) + ")";
}

}  // namespace deltaspec
