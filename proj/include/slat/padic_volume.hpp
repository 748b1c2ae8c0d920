#pragma once

#include "slat/bigint.hpp"
#include "slat/fitting.hpp"
#include "slat/heights.hpp"

namespace slat {

/// Haar measure of the height-p^k sphere in SL2(Q_p), normalized so that
/// SL2(Z_p) has measure one: the number of left SL2(Z_p)-cosets it contains.
/// 1 for k = 0, (p+1) p^{2k-1} for k >= 1.
BigInt sphere_volume(long long p, int k);

/// Independent oracle for sphere_volume, k >= 1: counts Hermite-normal-form
/// sublattices [[d1, b], [0, d2]] of Z^2 with d1 d2 = p^{2k}, 0 <= b < d1
/// and gcd(d1, d2, b) = 1. Cyclic quotient of order p^{2k} corresponds to a
/// vertex at distance 2k in the (p+1)-regular tree, i.e. one coset of the
/// height-p^k sphere. Requires p^{2k} <= 10^6; throws std::range_error
/// beyond that.
BigInt sphere_volume_oracle(long long p, int k);

/// Product of single-prime sphere volumes over the exponents of h.
BigInt sphere_volume_product(const RealizableHeight& h);

/// Measures of all spheres and cumulative ball volumes up to max_height.
class SphereVolumeTable {
public:
    struct Row {
        RealizableHeight h;
        BigInt sphere; // m_S(Sigma_S(h))
        BigInt ball;   // v_S(h), cumulative over realizable heights <= h
    };

    SphereVolumeTable(const PlaceSet& S, long long max_height);

    const std::vector<Row>& rows() const { return rows_; }
    const PlaceSet& place_set() const { return S_; }

    /// v_S(h); h below 1 gives 0, otherwise steps down to the largest
    /// realizable height <= h (v_S is a step function).
    BigInt ball_volume(long long h) const;

private:
    PlaceSet S_;
    std::vector<Row> rows_;
};

/// v_S(h) computed directly (builds the table up to h).
BigInt ball_volume_padic(const PlaceSet& S, long long h);

/// Least-squares slope of log m_S(Sigma_S(h)) against log h over realizable
/// heights h in (1, cutoff]. The trivial sphere h = 1 is excluded: it is
/// the compact subgroup itself, not a shell, and sits off the growth law.
/// Throws std::domain_error with fewer than 3 usable heights.
double growth_exponent_a(const PlaceSet& S, long long cutoff);

} // namespace slat
