#pragma once

#include <cstdint>
#include <vector>

#include "deltaspec/errors.hpp"

namespace deltaspec {

// A point of G = prod_i Z_{m_i}: one reduced residue per coordinate.
// Characters are identified with the same coordinate vectors (exponent
// vectors a of psi_a), so this type also represents elements of the dual.
using Coords = std::vector<std::uint32_t>;

// The ambient group prod_i Z_{m_i}. Immutable after construction.
//
// Element indices are little-endian mixed radix: coordinate 0 varies
// fastest. This encoding is shared by every module and by the file formats.
class GroupSpec {
public:
    // Dense enumeration must stay honest; larger groups are rejected.
    static constexpr std::uint64_t kOrderCap = std::uint64_t(1) << 40;

    explicit GroupSpec(std::vector<std::uint32_t> moduli);

    std::size_t rank() const { return moduli_.size(); }
    const std::vector<std::uint32_t>& moduli() const { return moduli_; }
    std::uint64_t exponent() const { return exponent_; }
    std::uint64_t order() const { return order_; }

    std::uint64_t index_of(const Coords& x) const;
    Coords element_of(std::uint64_t idx) const;

    Coords zero() const { return Coords(moduli_.size(), 0); }
    bool is_valid(const Coords& x) const;

    Coords add(const Coords& a, const Coords& b) const;
    Coords sub(const Coords& a, const Coords& b) const;
    Coords neg(const Coords& a) const;
    // Coordinatewise a_i -> k*a_i mod m_i (the Galois scaling action on supports).
    Coords scale(const Coords& a, std::uint64_t k) const;

    bool operator==(const GroupSpec& o) const { return moduli_ == o.moduli_; }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }

private:
    std::vector<std::uint32_t> moduli_;
    std::vector<std::uint64_t> weights_;  // weights_[i] = prod_{j<i} m_j
    std::uint64_t exponent_ = 1;
    std::uint64_t order_ = 1;
};

enum class PointSetKind { hypercube, pm_cube, full, custom };

// An ordered point set B with 0 first (delta functions are defined relative
// to such a B). Elements are deduplicated and sorted by group index.
struct PointSet {
    PointSetKind kind = PointSetKind::custom;
    std::vector<Coords> elements;

    std::size_t size() const { return elements.size(); }
};

PointSet point_set(const GroupSpec& spec, PointSetKind kind,
                   const std::vector<Coords>* custom = nullptr);

// {a + b : a in A, b in B}, deduplicated and sorted by index.
std::vector<Coords> sumset(const GroupSpec& spec, const std::vector<Coords>& A,
                           const std::vector<Coords>& B);

// D - D.
std::vector<Coords> difference_set(const GroupSpec& spec, const std::vector<Coords>& D);

// CRT view of Z_m for squarefree m: Z_m ~ prod_i Z_{p_i}, p_1 < ... < p_r.
struct CrtSplit {
    std::uint64_t m = 0;
    std::vector<std::uint32_t> primes;
    GroupSpec spec;
};

CrtSplit crt_split(std::uint64_t m);

// phi(a) = (a mod p_1, ..., a mod p_r).
Coords crt_map(const CrtSplit& split, std::uint64_t a);
Coords crt_map(std::uint64_t m, std::uint64_t a);

// Inverse of crt_map; spec moduli must be pairwise coprime.
std::uint64_t crt_unmap(const GroupSpec& spec, const Coords& coords);

}  // namespace deltaspec
