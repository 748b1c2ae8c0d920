#include "slat/rational.hpp"

#include <utility>

namespace slat {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = big_gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

Rational Rational::abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

double Rational::to_double() const { return big_to_double(num_) / big_to_double(den_); }

std::string Rational::to_string() const {
    std::string s = num_.str();
    if (den_ != 1) {
        s += '/';
        s += den_.str();
    }
    return s;
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s), BigInt(1));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("Rational::parse: bad rational '" + s + "'");
    }
}

bool is_prime(long long p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

void require_prime(long long p) {
    if (!is_prime(p)) throw std::invalid_argument("expected a prime, got " + std::to_string(p));
}

Valuation padic_valuation(const Rational& x, long long p) {
    require_prime(p);
    if (x.is_zero()) return Valuation::infinity();
    long long v = 0;
    BigInt n = x.num() < 0 ? BigInt(-x.num()) : x.num();
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    // num and den are coprime, so at most one of the two loops runs.
    BigInt d = x.den();
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return Valuation::finite(v);
}

Rational padic_abs(const Rational& x, long long p) {
    Valuation val = padic_valuation(x, p);
    if (val.infinite) return Rational(0);
    if (val.v >= 0) return Rational(BigInt(1), big_pow(p, static_cast<unsigned long>(val.v)));
    return Rational(big_pow(p, static_cast<unsigned long>(-val.v)), BigInt(1));
}

} // namespace slat
