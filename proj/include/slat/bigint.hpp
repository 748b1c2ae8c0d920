#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace slat {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

inline double big_to_double(const BigInt& x) {
    return x.convert_to<double>();
}

} // namespace slat
