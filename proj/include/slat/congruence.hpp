#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "slat/mat2q.hpp"
#include "slat/places.hpp"

namespace slat {

/// |SL2(Z/q)| by explicit enumeration (intended for q <= 50).
std::uint64_t sl2_order_enumerated(std::uint32_t q);

/// |SL2(Z/q)| = q^3 prod_{l | q} (1 - l^-2).
std::uint64_t sl2_order_formula(std::uint32_t q);

/// Enumeration for q <= 50, multiplicative formula beyond.
std::uint64_t sl2_order(std::uint32_t q);

/// All elements of SL2(Z/q) as packed keys.
std::vector<std::uint64_t> sl2_elements(std::uint32_t q);

/// A congruence condition W: the full preimage in I^S of an explicit subset
/// of SL2(Z/q), q coprime to S. Restricting W to such preimages keeps it
/// bi-invariant under the principal congruence subgroup of level q.
class CongruenceCondition {
public:
    /// W = I^S, no constraint (modulus 1).
    static CongruenceCondition full();
    /// {I mod q}.
    static CongruenceCondition identity_mod(std::uint32_t q);
    /// Upper-triangular subgroup mod q.
    static CongruenceCondition upper_triangular_mod(std::uint32_t q);
    /// Explicit residue set; every member must have det = 1 mod q and the
    /// set must be nonempty.
    static CongruenceCondition from_residues(std::uint32_t q, const std::vector<ModMat2>& set);

    std::uint32_t modulus() const { return q_; }
    bool is_full() const { return full_; }
    std::size_t residue_count() const;

    /// |residue_set| / |SL2(Z/q)| as an exact rational.
    Rational measure() const;

    bool contains(const ModMat2& m) const;
    bool contains(const Mat2Q& gamma) const;
    bool contains_packed(std::uint64_t key) const;

    /// Throws std::invalid_argument when q shares a factor with S.
    void require_coprime_to(const PlaceSet& S) const;

    /// Stable fingerprint of (q, residue set) for cache keys.
    std::string fingerprint() const;

    /// Subset relation on residue sets (same modulus required).
    bool subset_of(const CongruenceCondition& o) const;

private:
    CongruenceCondition() = default;
    std::uint32_t q_ = 1;
    bool full_ = true;
    std::unordered_set<std::uint64_t> residues_;
};

Rational congruence_measure(const CongruenceCondition& W);

} // namespace slat
