#include "slat/heights.hpp"

#include <algorithm>
#include <limits>

namespace slat {

PlaceSet::PlaceSet(std::vector<long long> ps, double kappa)
    : primes(std::move(ps)), spectral_kappa(kappa) {
    if (primes.empty()) throw std::invalid_argument("PlaceSet: primes must be nonempty");
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size(); ++i) {
        require_prime(primes[i]);
        if (i > 0 && primes[i] == primes[i - 1])
            throw std::invalid_argument("PlaceSet: duplicate prime " + std::to_string(primes[i]));
    }
    if (!(spectral_kappa > 0.0 && spectral_kappa <= 0.5))
        throw std::invalid_argument("PlaceSet: spectral_kappa must be in (0, 1/2]");
}

bool PlaceSet::contains(long long p) const {
    return std::binary_search(primes.begin(), primes.end(), p);
}

bool PlaceSet::coprime_to(long long q) const {
    for (long long p : primes)
        if (q % p == 0) return false;
    return true;
}

namespace {

long long checked_mul(long long a, long long b) {
    if (a != 0 && b > std::numeric_limits<long long>::max() / a)
        throw std::range_error("height: value overflows int64");
    return a * b;
}

} // namespace

RealizableHeight height_with_exponents(const Mat2Q& r, const PlaceSet& S) {
    // Membership in Gamma_S: denominators must factor entirely over S.
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            BigInt d = r.at(i, j).den();
            for (long long p : S.primes)
                while (d % p == 0) d /= p;
            if (d != 1)
                throw std::domain_error("height: entry (" + std::to_string(i) + "," +
                                        std::to_string(j) + ") = " + r.at(i, j).to_string() +
                                        " has a denominator prime outside S");
        }
    RealizableHeight h;
    for (long long p : S.primes) {
        Valuation v = padic_min_valuation(r, p);
        if (v.infinite || v.v >= 0) continue; // |r|_p <= 1, contributes max(1, .) = 1
        int k = static_cast<int>(-v.v);
        h.exponents[p] = k;
        for (int t = 0; t < k; ++t) h.value = checked_mul(h.value, p);
    }
    return h;
}

long long height(const Mat2Q& r, const PlaceSet& S) { return height_with_exponents(r, S).value; }

bool height_shell_test(const Mat2Q& r, const RealizableHeight& h, const PlaceSet& S) {
    return height(r, S) == h.value;
}

std::vector<RealizableHeight> realizable_heights(const PlaceSet& S, long long T) {
    std::vector<RealizableHeight> out;
    if (T < 1) return out;
    RealizableHeight cur;
    // Depth-first over exponent vectors, product capped by T.
    auto rec = [&](auto&& self, size_t idx) -> void {
        if (idx == S.primes.size()) {
            out.push_back(cur);
            return;
        }
        long long p = S.primes[idx];
        long long saved = cur.value;
        int k = 0;
        while (true) {
            if (k > 0) cur.exponents[p] = k;
            self(self, idx + 1);
            if (cur.value > T / p) break;
            cur.value *= p;
            ++k;
        }
        cur.value = saved;
        cur.exponents.erase(p);
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

Mat2Q height_witness(const RealizableHeight& h) {
    return Mat2Q::diag(Rational(h.value), Rational(BigInt(1), BigInt(h.value)));
}

} // namespace slat
