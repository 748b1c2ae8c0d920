#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "slat/bigint.hpp"

namespace slat {

/// Exact rational scalar, always stored in lowest terms with positive
/// denominator. Zero is 0/1. Immutable after construction.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(const BigInt& n) : num_(n), den_(1) {}
    Rational(BigInt num, BigInt den);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }

    Rational abs() const;
    double to_double() const;

    /// "n" for integers, "n/d" otherwise.
    std::string to_string() const;
    static Rational parse(const std::string& s);

private:
    BigInt num_;
    BigInt den_;
};

/// p-adic valuation value: v with |x|_p = p^{-v}, or +infinity for x = 0.
struct Valuation {
    bool infinite = false;
    long long v = 0;

    static Valuation infinity() { return {true, 0}; }
    static Valuation finite(long long v) { return {false, v}; }

    bool operator==(const Valuation& o) const {
        return infinite == o.infinite && (infinite || v == o.v);
    }
};

/// Throws std::invalid_argument unless p is a prime (configuration error).
void require_prime(long long p);
bool is_prime(long long p);

/// v_p(x); Valuation::infinity() for x = 0.
Valuation padic_valuation(const Rational& x, long long p);

/// |x|_p as an exact rational power of p (0 for x = 0).
Rational padic_abs(const Rational& x, long long p);

} // namespace slat
