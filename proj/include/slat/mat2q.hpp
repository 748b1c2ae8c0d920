#pragma once

#include <array>
#include <string>

#include "slat/modmat.hpp"
#include "slat/rational.hpp"

namespace slat {

/// Exact 2x2 rational matrix. Group elements carry det = 1 exactly.
/// Immutable value type, safe to share across threads.
class Mat2Q {
public:
    Mat2Q() : e_{Rational(0), Rational(0), Rational(0), Rational(0)} {}
    Mat2Q(Rational a, Rational b, Rational c, Rational d) : e_{a, b, c, d} {}

    static Mat2Q identity() { return Mat2Q(Rational(1), Rational(0), Rational(0), Rational(1)); }
    static Mat2Q diag(Rational a, Rational d) { return Mat2Q(a, Rational(0), Rational(0), d); }

    /// Integer matrix divided by a common denominator h > 0.
    static Mat2Q from_integers(long long a, long long b, long long c, long long d,
                               long long h = 1);

    const Rational& at(int i, int j) const { return e_[2 * i + j]; }

    Rational det() const;
    Mat2Q operator*(const Mat2Q& o) const;
    /// Inverse of a determinant-one element (adjugate).
    Mat2Q inverse_unimodular() const;

    bool operator==(const Mat2Q& o) const { return e_ == o.e_; }
    bool operator!=(const Mat2Q& o) const { return !(*this == o); }
    /// Lexicographic order on (a, b, c, d); the canonical point ordering.
    bool operator<(const Mat2Q& o) const;

    /// Row-major "a/b,c/d;e/f,g/h" with reduced fractions (integers bare).
    std::string serialize() const;
    static Mat2Q parse(const std::string& s);

private:
    std::array<Rational, 4> e_;
};

/// max over entries of |entry|_p, as an exact power of p (0 for the zero
/// matrix).
Rational padic_norm_matrix(const Mat2Q& m, long long p);

/// min over entries of v_p(entry); infinity for the zero matrix.
Valuation padic_min_valuation(const Mat2Q& m, long long p);

/// Entry-wise image in Z/q. Every denominator must be invertible mod q;
/// otherwise throws std::domain_error naming the offending entry.
ModMat2 reduce_mod(const Mat2Q& m, std::int64_t q);

} // namespace slat
