#include "slat/mat2d.hpp"

#include <cstdio>

namespace slat {

double Mat2d::op_norm() const {
    // Singular values of [[a,b],[c,d]]: sigma^2 are eigenvalues of A^T A.
    double s = a * a + b * b + c * c + d * d;
    double dt = det();
    double disc = s * s - 4.0 * dt * dt;
    if (disc < 0) disc = 0;
    return std::sqrt(0.5 * (s + std::sqrt(disc)));
}

std::string Mat2d::serialize() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g;%.17g,%.17g", a, b, c, d);
    return buf;
}

Mat2d Mat2d::parse(const std::string& s) {
    Mat2d m;
    if (std::sscanf(s.c_str(), "%lf,%lf;%lf,%lf", &m.a, &m.b, &m.c, &m.d) != 4)
        throw std::invalid_argument("Mat2d::parse: expected 'a,b;c,d', got '" + s + "'");
    return m;
}

Mat2d project_unimodular(const Mat2d& g) {
    double dt = g.det();
    if (!(dt > 0))
        throw std::domain_error("project_unimodular: determinant " + std::to_string(dt) +
                                " is not positive");
    double s = 1.0 / std::sqrt(dt);
    return g * s;
}

std::optional<Mat2d> sl2_log(const Mat2d& g) {
    double t = g.trace();
    if (t <= -2.0 + 1e-9) return std::nullopt;
    Mat2d m = g - Mat2d::identity() * (t / 2.0); // traceless part
    if (t >= 2.0) {
        // Hyperbolic or parabolic: t = 2 cosh(mu).
        double mu = std::acosh(std::max(1.0, t / 2.0));
        if (mu < 1e-12) return m; // parabolic: g = I + N, N^2 = 0, log = N
        return m * (mu / std::sinh(mu));
    }
    // Elliptic: t = 2 cos(omega), omega in (0, pi).
    double omega = std::acos(std::max(-1.0, std::min(1.0, t / 2.0)));
    if (omega < 1e-12) return m;
    return m * (omega / std::sin(omega));
}

Mat2d sl2_exp(const Mat2d& x) {
    double dt = x.det(); // for traceless X: X^2 = -det(X) I
    if (dt < 0) {
        double mu = std::sqrt(-dt);
        return Mat2d::identity() * std::cosh(mu) + x * (std::sinh(mu) / mu);
    }
    if (dt > 0) {
        double omega = std::sqrt(dt);
        return Mat2d::identity() * std::cos(omega) + x * (std::sin(omega) / omega);
    }
    return Mat2d::identity() + x;
}

} // namespace slat
