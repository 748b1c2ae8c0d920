#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "slat/metric.hpp"
#include "slat/volume_table.hpp"

namespace slat {

/// A bounded archimedean region E, optionally right-translated by a group
/// point x (the effective set is E x). Membership of g tests g x^{-1} in
/// the base set, which is exact for every kind.
struct RegionE {
    enum class Kind { metric_ball, frobenius_box };

    Kind kind = Kind::metric_ball;
    Mat2d center = Mat2d::identity(); // ball center or box center
    double radius = 1.0;              // metric_ball
    MetricChoice metric = MetricChoice::frobenius;
    std::array<double, 4> halfwidths{0, 0, 0, 0}; // frobenius_box
    Mat2d translation = Mat2d::identity();        // right translation x

    static RegionE ball(const Mat2d& center, double radius,
                        MetricChoice m = MetricChoice::frobenius);
    /// {g : ||g||_F <= R} (frobenius ball around the zero matrix).
    static RegionE norm_ball(double R);
    static RegionE box(const Mat2d& center, const std::array<double, 4>& halfwidths);

    RegionE translated(const Mat2d& x) const;

    bool contains(const Mat2d& g) const;

    struct Ball {
        Mat2d center;
        double radius;
    };
    /// Frobenius ball containing the (translated) region.
    Ball circumscribing() const;

    /// Stable fingerprint for cache keys.
    std::string fingerprint() const;
};

/// (E_eps^-, E_eps^+) for metric balls: radii r -+ eps. Throws
/// std::domain_error when eps >= radius (degenerate inner region) or
/// std::invalid_argument for non-ball regions.
std::pair<RegionE, RegionE> region_inner_outer(const RegionE& E, double eps);

/// Calibrated Monte Carlo volume of a region (right translation does not
/// change the volume, so the base set is measured).
McEstimate region_volume_mc(const RegionE& E, const HaarCalibration& cal, std::int64_t samples,
                            std::uint64_t seed, int threads);

struct NofEOptions {
    std::int64_t samples_per_candidate = 200000;
    int hit_threshold = 10; // MC hits required to call an overlap positive
    std::uint64_t seed = 2;
    int threads = 0;
};

/// |{gamma in SL2(Z): m_inf(E cap gamma E) > 0}| for bounded E, with the
/// overlap tested by deterministic Monte Carlo.
std::int64_t n_of_e(const RegionE& E, const NofEOptions& opts = {});

} // namespace slat
