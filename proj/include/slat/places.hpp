#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "slat/rational.hpp"

namespace slat {

/// The finite place set S together with the experiment constants that ride
/// along with it: the spectral decay exponent and dim SL2(R) = 3.
struct PlaceSet {
    std::vector<long long> primes;
    double spectral_kappa = 0.5;
    int dim_d = 3;

    PlaceSet() = default;
    PlaceSet(std::vector<long long> ps, double kappa = 0.5);

    bool contains(long long p) const;
    /// q must be coprime to every prime of S (congruence side condition).
    bool coprime_to(long long q) const;
};

/// A positive integer of the form prod p^{k_p} over the places of S, with
/// its exponent vector. These are exactly the realizable heights for SL2.
struct RealizableHeight {
    long long value = 1;
    std::map<long long, int> exponents; // p -> k_p >= 0, zero entries omitted

    static RealizableHeight one() { return {}; }

    int exponent(long long p) const {
        auto it = exponents.find(p);
        return it == exponents.end() ? 0 : it->second;
    }

    bool operator==(const RealizableHeight& o) const { return value == o.value; }
    bool operator<(const RealizableHeight& o) const { return value < o.value; }
};

} // namespace slat
