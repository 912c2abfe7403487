#include "deltaspec/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace deltaspec {

namespace {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    return a / std::gcd(a, b) * b;
}

}  // namespace

GroupSpec::GroupSpec(std::vector<std::uint32_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw PreconditionError("GroupSpec: at least one modulus required");
    weights_.reserve(moduli_.size());
    for (std::uint32_t m : moduli_) {
        if (m < 2) throw PreconditionError("GroupSpec: moduli must be >= 2");
        weights_.push_back(order_);
        if (order_ > kOrderCap / m)
            throw PreconditionError("GroupSpec: group order exceeds 2^40 cap");
        order_ *= m;
        exponent_ = lcm_u64(exponent_, m);
    }
}

std::uint64_t GroupSpec::index_of(const Coords& x) const {
    if (x.size() != moduli_.size())
        throw PreconditionError("index_of: coordinate count mismatch");
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= moduli_[i])
            throw PreconditionError("index_of: coordinate " + std::to_string(i) + " out of range");
        idx += std::uint64_t(x[i]) * weights_[i];
    }
    return idx;
}

Coords GroupSpec::element_of(std::uint64_t idx) const {
    if (idx >= order_) throw PreconditionError("element_of: index out of range");
    Coords x(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        x[i] = static_cast<std::uint32_t>(idx % moduli_[i]);
        idx /= moduli_[i];
    }
    return x;
}

bool GroupSpec::is_valid(const Coords& x) const {
    if (x.size() != moduli_.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] >= moduli_[i]) return false;
    return true;
}

Coords GroupSpec::add(const Coords& a, const Coords& b) const {
    if (a.size() != moduli_.size() || b.size() != moduli_.size())
        throw PreconditionError("add: coordinate count mismatch");
    Coords c(moduli_.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::uint32_t s = a[i] + b[i];
        c[i] = s >= moduli_[i] ? s - moduli_[i] : s;
    }
    return c;
}

Coords GroupSpec::sub(const Coords& a, const Coords& b) const {
    if (a.size() != moduli_.size() || b.size() != moduli_.size())
        throw PreconditionError("sub: coordinate count mismatch");
    Coords c(moduli_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + moduli_[i] - b[i];
    return c;
}

Coords GroupSpec::neg(const Coords& a) const { return sub(zero(), a); }

Coords GroupSpec::scale(const Coords& a, std::uint64_t k) const {
    if (a.size() != moduli_.size())
        throw PreconditionError("scale: coordinate count mismatch");
    Coords c(moduli_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = static_cast<std::uint32_t>((std::uint64_t(a[i]) * (k % moduli_[i])) % moduli_[i]);
    return c;
}

namespace {

std::vector<Coords> sorted_by_index(const GroupSpec& spec, std::set<std::uint64_t> idxs) {
    std::vector<Coords> out;
    out.reserve(idxs.size());
    for (std::uint64_t i : idxs) out.push_back(spec.element_of(i));
    return out;
}

}  // namespace

PointSet point_set(const GroupSpec& spec, PointSetKind kind, const std::vector<Coords>* custom) {
    PointSet ps;
    ps.kind = kind;
    const std::size_t r = spec.rank();
    switch (kind) {
        case PointSetKind::hypercube: {
            Coords x(r, 0);
            for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << r); ++mask) {
                for (std::size_t i = 0; i < r; ++i) x[i] = (mask >> i) & 1;
                ps.elements.push_back(x);
            }
            std::sort(ps.elements.begin(), ps.elements.end(),
                      [&](const Coords& a, const Coords& b) {
                          return spec.index_of(a) < spec.index_of(b);
                      });
            break;
        }
        case PointSetKind::pm_cube: {
            for (std::uint32_t m : spec.moduli())
                if (m < 3)
                    throw PreconditionError(
                        "point_set: pm_cube requires all moduli >= 3 (1 = -1 mod 2)");
            std::set<std::uint64_t> idxs;
            Coords x(r, 0);
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < r; ++i) total *= 3;
            for (std::uint64_t code = 0; code < total; ++code) {
                std::uint64_t c = code;
                for (std::size_t i = 0; i < r; ++i) {
                    std::uint32_t digit = c % 3;
                    c /= 3;
                    x[i] = digit == 2 ? spec.moduli()[i] - 1 : digit;
                }
                idxs.insert(spec.index_of(x));
            }
            ps.elements = sorted_by_index(spec, std::move(idxs));
            break;
        }
        case PointSetKind::full: {
            for (std::uint64_t i = 0; i < spec.order(); ++i)
                ps.elements.push_back(spec.element_of(i));
            break;
        }
        case PointSetKind::custom: {
            if (custom == nullptr)
                throw PreconditionError("point_set: custom kind requires explicit elements");
            std::set<std::uint64_t> idxs;
            for (const Coords& x : *custom) idxs.insert(spec.index_of(x));
            if (idxs.empty() || *idxs.begin() != 0)
                throw PreconditionError("point_set: custom set must contain the zero element");
            ps.elements = sorted_by_index(spec, std::move(idxs));
            break;
        }
    }
    return ps;
}

std::vector<Coords> sumset(const GroupSpec& spec, const std::vector<Coords>& A,
                           const std::vector<Coords>& B) {
    std::set<std::uint64_t> idxs;
    for (const Coords& a : A)
        for (const Coords& b : B) idxs.insert(spec.index_of(spec.add(a, b)));
    return sorted_by_index(spec, std::move(idxs));
}

std::vector<Coords> difference_set(const GroupSpec& spec, const std::vector<Coords>& D) {
    std::set<std::uint64_t> idxs;
    for (const Coords& a : D)
        for (const Coords& b : D) idxs.insert(spec.index_of(spec.sub(a, b)));
    return sorted_by_index(spec, std::move(idxs));
}

CrtSplit crt_split(std::uint64_t m) {
    if (m < 2) throw PreconditionError("crt_split: m must be >= 2");
    std::vector<std::uint32_t> primes;
    std::uint64_t rest = m;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p == 0) {
            rest /= p;
            if (rest % p == 0) throw PreconditionError("crt_split: m is not squarefree");
            primes.push_back(static_cast<std::uint32_t>(p));
        }
    }
    if (rest > 1) primes.push_back(static_cast<std::uint32_t>(rest));
    return CrtSplit{m, primes, GroupSpec(primes)};
}

Coords crt_map(const CrtSplit& split, std::uint64_t a) {
    if (a >= split.m) throw PreconditionError("crt_map: residue out of range");
    Coords c(split.primes.size());
    for (std::size_t i = 0; i < split.primes.size(); ++i)
        c[i] = static_cast<std::uint32_t>(a % split.primes[i]);
    return c;
}

Coords crt_map(std::uint64_t m, std::uint64_t a) { return crt_map(crt_split(m), a); }

std::uint64_t crt_unmap(const GroupSpec& spec, const Coords& coords) {
    if (!spec.is_valid(coords)) throw PreconditionError("crt_unmap: invalid coordinates");
    const auto& mods = spec.moduli();
    for (std::size_t i = 0; i < mods.size(); ++i)
        for (std::size_t j = i + 1; j < mods.size(); ++j)
            if (std::gcd(mods[i], mods[j]) != 1)
                throw PreconditionError("crt_unmap: moduli must be pairwise coprime");
    // Garner-style incremental reconstruction.
    std::uint64_t value = 0, modulus = 1;
    for (std::size_t i = 0; i < mods.size(); ++i) {
        const std::uint64_t mi = mods[i];
        // Solve value + modulus * t = coords[i] (mod mi).
        std::uint64_t rhs = (coords[i] + mi - value % mi) % mi;
        // Inverse of modulus mod mi by exponentiation-free Euclid.
        std::int64_t r0 = static_cast<std::int64_t>(mi), r1 = static_cast<std::int64_t>(modulus % mi);
        std::int64_t s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            r0 -= q * r1;
            std::swap(r0, r1);
            s0 -= q * s1;
            std::swap(s0, s1);
        }
        std::uint64_t inv = static_cast<std::uint64_t>((s0 % static_cast<std::int64_t>(mi) +
                                                        static_cast<std::int64_t>(mi)) %
                                                       static_cast<std::int64_t>(mi));
        std::uint64_t t = (rhs * inv) % mi;
        value += modulus * t;
        modulus *= mi;
    }
    return value;
}

}  // namespace deltaspec
