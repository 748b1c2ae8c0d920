#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace slat {

/// Plain 2x2 double matrix (row major a b ; c d). Used both for group
/// points and for arbitrary centers such as the zero matrix.
struct Mat2d {
    double a = 0, b = 0, c = 0, d = 0;

    static Mat2d identity() { return {1, 0, 0, 1}; }
    static Mat2d zero() { return {0, 0, 0, 0}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    Mat2d operator+(const Mat2d& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2d operator-(const Mat2d& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2d operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    Mat2d operator*(const Mat2d& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    /// Inverse assuming det = 1 (adjugate).
    Mat2d inverse_unimodular() const { return {d, -b, -c, a}; }

    double frobenius() const { return std::sqrt(a * a + b * b + c * c + d * d); }
    double frobenius_sq() const { return a * a + b * b + c * c + d * d; }

    /// Largest singular value.
    double op_norm() const;

    std::string serialize() const;
    static Mat2d parse(const std::string& s);
};

inline double frobenius_distance(const Mat2d& x, const Mat2d& y) { return (x - y).frobenius(); }

/// Rescale to determinant one; throws std::domain_error when det <= 0.
Mat2d project_unimodular(const Mat2d& g);

/// A point of SL2(R): determinant within 1e-9 of 1 after projection.
struct RealPoint {
    Mat2d m;

    RealPoint() : m(Mat2d::identity()) {}
    explicit RealPoint(const Mat2d& g) : m(project_unimodular(g)) {}

    static RealPoint identity() { return RealPoint(); }
};

/// Principal matrix logarithm on SL2(R). Defined for trace > -2 + 1e-9;
/// std::nullopt outside that neighborhood (no principal real logarithm).
std::optional<Mat2d> sl2_log(const Mat2d& g);

/// exp of a traceless 2x2 matrix (closed form via X^2 = -det(X) I).
Mat2d sl2_exp(const Mat2d& x);

} // namespace slat
