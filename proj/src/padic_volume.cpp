#include "slat/padic_volume.hpp"

#include <numeric>

namespace slat {

BigInt sphere_volume(long long p, int k) {
    require_prime(p);
    if (k < 0) throw std::invalid_argument("sphere_volume: k must be >= 0");
    if (k == 0) return 1;
    return BigInt(p + 1) * big_pow(p, static_cast<unsigned long>(2 * k - 1));
}

BigInt sphere_volume_oracle(long long p, int k) {
    require_prime(p);
    if (k < 1) throw std::invalid_argument("sphere_volume_oracle: k must be >= 1");
    BigInt n2k = big_pow(p, static_cast<unsigned long>(2 * k));
    if (n2k > 1000000) throw std::range_error("sphere_volume_oracle: p^(2k) exceeds 10^6");
    long long n = n2k.convert_to<long long>();
    long long count = 0;
    for (long long d1 = 1; d1 <= n; d1 *= p) {
        long long d2 = n / d1;
        for (long long b = 0; b < d1; ++b)
            if (std::gcd(std::gcd(d1, d2), b) == 1) ++count;
    }
    return count;
}

BigInt sphere_volume_product(const RealizableHeight& h) {
    BigInt v = 1;
    for (auto& [p, k] : h.exponents) v *= sphere_volume(p, k);
    return v;
}

SphereVolumeTable::SphereVolumeTable(const PlaceSet& S, long long max_height) : S_(S) {
    BigInt cum = 0;
    for (const RealizableHeight& h : realizable_heights(S, max_height)) {
        Row r;
        r.h = h;
        r.sphere = sphere_volume_product(h);
        cum += r.sphere;
        r.ball = cum;
        rows_.push_back(std::move(r));
    }
}

BigInt SphereVolumeTable::ball_volume(long long h) const {
    BigInt v = 0;
    for (const Row& r : rows_) {
        if (r.h.value > h) break;
        v = r.ball;
    }
    return v;
}

BigInt ball_volume_padic(const PlaceSet& S, long long h) {
    if (h < 1) return 0;
    return SphereVolumeTable(S, h).ball_volume(h);
}

double growth_exponent_a(const PlaceSet& S, long long cutoff) {
    SphereVolumeTable table(S, cutoff);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : table.rows())
        if (r.h.value > 1)
            pts.emplace_back(static_cast<double>(r.h.value), big_to_double(r.sphere));
    if (pts.size() < 3)
        throw std::domain_error("growth_exponent_a: fewer than 3 realizable heights below cutoff");
    return fit_exponent(pts).slope;
}

} // namespace slat
