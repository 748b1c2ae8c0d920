#include "slat/region.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace slat {

RegionE RegionE::ball(const Mat2d& center, double radius, MetricChoice m) {
    if (!(radius > 0) || !std::isfinite(radius))
        throw std::invalid_argument("RegionE::ball: radius must be positive and finite");
    RegionE e;
    e.kind = Kind::metric_ball;
    e.center = center;
    e.radius = radius;
    e.metric = m;
    if (m == MetricChoice::log_invariant) (void)project_unimodular(center); // validates
    return e;
}

RegionE RegionE::norm_ball(double R) { return ball(Mat2d::zero(), R, MetricChoice::frobenius); }

RegionE RegionE::box(const Mat2d& center, const std::array<double, 4>& halfwidths) {
    RegionE e;
    e.kind = Kind::frobenius_box;
    e.center = center;
    e.halfwidths = halfwidths;
    for (double w : halfwidths)
        if (w < 0 || !std::isfinite(w))
            throw std::invalid_argument("RegionE::box: half-widths must be >= 0 and finite");
    return e;
}

RegionE RegionE::translated(const Mat2d& x) const {
    RegionE e = *this;
    e.translation = project_unimodular(e.translation * x);
    return e;
}

bool RegionE::contains(const Mat2d& g) const {
    Mat2d u = g * translation.inverse_unimodular();
    if (kind == Kind::metric_ball) return distance_to_center(u, center, metric).value <= radius;
    Mat2d d = u - center;
    return std::abs(d.a) <= halfwidths[0] && std::abs(d.b) <= halfwidths[1] &&
           std::abs(d.c) <= halfwidths[2] && std::abs(d.d) <= halfwidths[3];
}

RegionE::Ball RegionE::circumscribing() const {
    Mat2d base_center = center;
    double base_radius;
    if (kind == Kind::metric_ball) {
        base_radius = metric == MetricChoice::frobenius
                          ? radius
                          : std::expm1(radius) * center.op_norm();
    } else {
        base_radius = std::sqrt(halfwidths[0] * halfwidths[0] + halfwidths[1] * halfwidths[1] +
                                halfwidths[2] * halfwidths[2] + halfwidths[3] * halfwidths[3]);
    }
    // E x is contained in the ball around (center x) of radius scaled by
    // the operator norm of x.
    return {base_center * translation, base_radius * translation.op_norm()};
}

std::string RegionE::fingerprint() const {
    char buf[256];
    if (kind == Kind::metric_ball)
        std::snprintf(buf, sizeof buf, "ball[%s;r=%.17g;m=%s;t=%s]", center.serialize().c_str(),
                      radius, metric_name(metric).c_str(), translation.serialize().c_str());
    else
        std::snprintf(buf, sizeof buf, "box[%s;w=%.17g,%.17g,%.17g,%.17g;t=%s]",
                      center.serialize().c_str(), halfwidths[0], halfwidths[1], halfwidths[2],
                      halfwidths[3], translation.serialize().c_str());
    return buf;
}

std::pair<RegionE, RegionE> region_inner_outer(const RegionE& E, double eps) {
    if (E.kind != RegionE::Kind::metric_ball)
        throw std::invalid_argument("region_inner_outer: only metric balls are supported");
    if (!(eps > 0)) throw std::invalid_argument("region_inner_outer: eps must be positive");
    if (eps >= E.radius)
        throw std::domain_error("region_inner_outer: eps >= radius, inner region degenerate");
    RegionE inner = E, outer = E;
    inner.radius = E.radius - eps;
    outer.radius = E.radius + eps;
    return {inner, outer};
}

McEstimate region_volume_mc(const RegionE& E, const HaarCalibration& cal, std::int64_t samples,
                            std::uint64_t seed, int threads) {
    // Volume is right-translation invariant; measure the base set.
    RegionE base = E;
    base.translation = Mat2d::identity();
    RegionE::Ball bound = base.circumscribing();
    double B = bound.center.frobenius() + bound.radius;
    McEstimate est = mc_base_volume([&base](const Mat2d& g) { return base.contains(g); }, B,
                                    samples, seed, threads);
    est.value *= cal.kappa;
    est.stderr_ *= cal.kappa;
    return est;
}

namespace {

/// SL2(Z) elements with Frobenius norm <= R, as double matrices.
std::vector<Mat2d> sl2z_ball(double R) {
    std::vector<Mat2d> out;
    double R2 = R * R;
    long long amax = static_cast<long long>(std::floor(R));
    for (long long a = -amax; a <= amax; ++a)
        for (long long b = -amax; b <= amax; ++b) {
            double ab = double(a) * a + double(b) * b;
            if (ab > R2) continue;
            if (a == 0) {
                if (b != 1 && b != -1) continue;
                double rem = R2 - ab - 1.0;
                if (rem < 0) continue;
                long long dmax = static_cast<long long>(std::floor(std::sqrt(rem)));
                for (long long d = -dmax; d <= dmax; ++d)
                    out.push_back({0.0, double(b), double(-b), double(d)});
                continue;
            }
            for (long long c = -amax; c <= amax; ++c) {
                double abc = ab + double(c) * c;
                if (abc > R2) continue;
                long long num = 1 + b * c;
                if (num % a != 0) continue;
                long long d = num / a;
                if (abc + double(d) * d <= R2)
                    out.push_back({double(a), double(b), double(c), double(d)});
            }
        }
    return out;
}

std::uint64_t integer_mat_key(const Mat2d& g) {
    auto enc = [](double x) {
        return static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(x)) + 32768);
    };
    return (enc(g.a) << 48) ^ (enc(g.b) << 32) ^ (enc(g.c) << 16) ^ enc(g.d);
}

} // namespace

std::int64_t n_of_e(const RegionE& E, const NofEOptions& opts) {
    RegionE base = E;
    base.translation = Mat2d::identity(); // N(E) is defined for E, not E(x)
    RegionE::Ball bound = base.circumscribing();
    double rmax = bound.center.frobenius() + bound.radius;
    if (!std::isfinite(rmax)) throw std::invalid_argument("n_of_e: unbounded region");
    // E cap gamma E nonempty forces ||gamma|| <= ||u|| ||v^{-1}||_op with
    // u, v in E on the group, and ||v^{-1}||_op = sigma_max(v) <= ||v||_F.
    double gamma_bound = rmax * rmax;

    IwasawaBox box = norm_ball_box(std::max(rmax, std::sqrt(2.0) + 1e-6));
    std::int64_t count = 0;
    for (const Mat2d& gamma : sl2z_ball(gamma_bound)) {
        Mat2d gamma_inv = gamma.inverse_unimodular();
        Rng rng(derive_seed(opts.seed, 0x0effULL, integer_mat_key(gamma)));
        int hits = 0;
        for (std::int64_t i = 0; i < opts.samples_per_candidate && hits < opts.hit_threshold;
             ++i) {
            Mat2d g = box.sample(rng);
            if (base.contains(g) && base.contains(gamma_inv * g)) ++hits;
        }
        if (hits >= opts.hit_threshold) ++count;
    }
    return count;
}

} // namespace slat
