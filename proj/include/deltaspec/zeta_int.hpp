#pragma once

#include <cstdint>
#include <cstring>
#include <numeric>
#include <vector>

#include "deltaspec/errors.hpp"
#include "deltaspec/field.hpp"

namespace deltaspec::detail {

// Signals that the int64 fast path cannot finish this instance; the caller
// retries with arbitrary-precision arithmetic.
struct ZetaFastPathBail {};

// Exact arithmetic in Z[zeta_e] with int64 coefficients in the power basis
// 1, x, ..., x^{phi(e)-1} mod Phi_e. Feasibility elimination over supports
// of root-of-unity matrices stays well inside int64 at the sizes the search
// visits; every operation checks its bounds and bails out rather than wrap.
//
// The span kernels operate on caller-owned coefficient blocks of length
// deg() so the elimination hot loop runs without heap traffic.
class ZetaIntCtx {
public:
    using El = std::vector<long long>;

    static constexpr long long kLimit = (1ll << 62);

    explicit ZetaIntCtx(std::uint64_t e) : e_(e) {
        const auto phi_z = cyclotomic_polynomial(e);
        d_ = phi_z.size() - 1;
        phi_.resize(d_ + 1);
        for (std::size_t i = 0; i <= d_; ++i) {
            if (!phi_z[i].fits_slong_p()) throw ZetaFastPathBail{};
            phi_[i] = phi_z[i].get_si();
        }
        // x^k mod Phi_e for k in [0, max(e, 2d-1)): covers zeta powers and
        // the reduction of degree < 2d-1 products.
        const std::size_t need = std::max<std::size_t>(e_, 2 * d_ > 0 ? 2 * d_ - 1 : 1);
        xpow_.resize(need);
        El cur(d_, 0);
        if (d_ > 0) cur[0] = 1;
        for (std::size_t k = 0; k < need; ++k) {
            xpow_[k] = cur;
            long long top = d_ > 0 ? cur[d_ - 1] : 0;
            for (std::size_t j = d_; j-- > 1;) cur[j] = cur[j - 1];
            if (d_ > 0) cur[0] = 0;
            if (top != 0)
                for (std::size_t j = 0; j < d_; ++j) {
                    __int128 t = static_cast<__int128>(cur[j]) -
                                 static_cast<__int128>(top) * phi_[j];
                    cur[j] = clamp(t);
                }
        }
        for (std::uint64_t k = 1; k < e_; ++k)
            if (std::gcd(k, e_) == 1) units_.push_back(static_cast<std::uint32_t>(k));
    }

    std::uint64_t e() const { return e_; }
    std::size_t deg() const { return d_; }

    El zero() const { return El(d_, 0); }
    El one() const {
        El v(d_, 0);
        v[0] = 1;
        return v;
    }
    const El& zeta_power(std::uint64_t k) const { return xpow_[k % e_]; }

    // ---- span kernels ----

    bool is_zero_span(const long long* a) const {
        for (std::size_t i = 0; i < d_; ++i)
            if (a[i] != 0) return false;
        return true;
    }

    void sub_span(long long* a, const long long* b) const {
        for (std::size_t i = 0; i < d_; ++i) {
            a[i] -= b[i];
            check(a[i]);
        }
    }

    // out = a * b mod Phi_e; scratch must hold 2*deg()-1 entries.
    void mul_span(const long long* a, const long long* b, long long* out,
                  __int128* scratch) const {
        if (d_ == 0) return;
        const std::size_t len = 2 * d_ - 1;
        for (std::size_t k = 0; k < len; ++k) scratch[k] = 0;
        for (std::size_t i = 0; i < d_; ++i) {
            if (a[i] == 0) continue;
            const __int128 ai = a[i];
            for (std::size_t j = 0; j < d_; ++j) scratch[i + j] += ai * b[j];
        }
        for (std::size_t i = 0; i < d_; ++i) out[i] = clamp(scratch[i]);
        for (std::size_t k = len; k-- > d_;) {
            if (scratch[k] == 0) continue;
            const long long c = clamp(scratch[k]);
            const El& rep = xpow_[k];
            for (std::size_t j = 0; j < d_; ++j) {
                __int128 t = static_cast<__int128>(out[j]) + static_cast<__int128>(c) * rep[j];
                out[j] = clamp(t);
            }
        }
    }

    // out = sigma_k(a), the Galois conjugate x -> x^k.
    void conj_span(const long long* a, std::uint32_t k, long long* out) const {
        for (std::size_t i = 0; i < d_; ++i) out[i] = 0;
        for (std::size_t j = 0; j < d_; ++j) {
            if (a[j] == 0) continue;
            const El& rep = xpow_[(j * k) % e_];
            for (std::size_t i = 0; i < d_; ++i) {
                __int128 t = static_cast<__int128>(out[i]) + static_cast<__int128>(a[j]) * rep[i];
                out[i] = clamp(t);
            }
        }
    }

    // Exact division by a fixed nonzero divisor: u / piv = u * adj(piv) / N(piv)
    // with adj the product of the other Galois conjugates and N the norm.
    struct Divisor {
        std::vector<long long> adj;
        long long norm = 1;
        bool trivial = true;  // divide by one
    };

    Divisor make_divisor(const long long* piv, __int128* scratch) const {
        Divisor dv;
        dv.adj.assign(d_, 0);
        if (d_ > 0) dv.adj[0] = 1;
        std::vector<long long> conj(d_), acc(d_);
        for (std::uint32_t k : units_) {
            if (k == 1) continue;
            conj_span(piv, k, conj.data());
            mul_span(dv.adj.data(), conj.data(), acc.data(), scratch);
            dv.adj.swap(acc);
        }
        std::vector<long long> n(d_);
        mul_span(piv, dv.adj.data(), n.data(), scratch);
        for (std::size_t i = 1; i < d_; ++i)
            if (n[i] != 0) throw ZetaFastPathBail{};  // norm must be rational
        dv.norm = d_ > 0 ? n[0] : 1;
        if (dv.norm == 0) throw ZetaFastPathBail{};
        dv.trivial = false;
        return dv;
    }

    // u <- u / divisor; tmp must hold deg() entries.
    void div_span(long long* u, const Divisor& dv, __int128* scratch, long long* tmp) const {
        if (dv.trivial) return;
        mul_span(u, dv.adj.data(), tmp, scratch);
        for (std::size_t i = 0; i < d_; ++i) {
            if (tmp[i] % dv.norm != 0) throw ZetaFastPathBail{};
            u[i] = tmp[i] / dv.norm;
        }
    }

    // ---- vector conveniences (tests, cold paths) ----

    bool is_zero(const El& a) const { return is_zero_span(a.data()); }

    void sub_inplace(El& a, const El& b) const { sub_span(a.data(), b.data()); }

    El mul(const El& a, const El& b) const {
        El out(d_, 0);
        std::vector<__int128> scratch(d_ > 0 ? 2 * d_ - 1 : 1);
        mul_span(a.data(), b.data(), out.data(), scratch.data());
        return out;
    }

    El conjugate(const El& a, std::uint32_t k) const {
        El out(d_, 0);
        conj_span(a.data(), k, out.data());
        return out;
    }

private:
    static long long clamp(__int128 v) {
        if (v >= kLimit || v <= -kLimit) throw ZetaFastPathBail{};
        return static_cast<long long>(v);
    }
    static void check(long long v) {
        if (v >= kLimit || v <= -kLimit) throw ZetaFastPathBail{};
    }

    std::uint64_t e_;
    std::size_t d_ = 0;
    std::vector<long long> phi_;
    std::vector<El> xpow_;
    std::vector<std::uint32_t> units_;
};

}  // namespace deltaspec::detail
