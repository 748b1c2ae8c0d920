#pragma once

#include "slat/mat2q.hpp"
#include "slat/places.hpp"

namespace slat {

/// Finite-adelic height prod_{p in S} max(1, |r|_p) of an element of
/// SL2(Z_S), as an exact positive integer together with its exponents.
/// Throws std::domain_error if some entry has a denominator prime outside S
/// (the point is not in Gamma_S), std::range_error on int64 overflow.
RealizableHeight height_with_exponents(const Mat2Q& r, const PlaceSet& S);

long long height(const Mat2Q& r, const PlaceSet& S);

/// true iff height(r, S) == h exactly.
bool height_shell_test(const Mat2Q& r, const RealizableHeight& h, const PlaceSet& S);

/// All values prod p^{k_p} <= T in increasing order. Every one of them is
/// realized in Gamma_S: diag(h, 1/h) has height exactly h.
std::vector<RealizableHeight> realizable_heights(const PlaceSet& S, long long T);

/// The diagonal witness diag(h, 1/h).
Mat2Q height_witness(const RealizableHeight& h);

} // namespace slat
