#pragma once

#include <filesystem>
#include <vector>

#include "slat/haar.hpp"
#include "slat/metric.hpp"

namespace slat {

/// Calibrated Monte Carlo volumes of metric balls at the identity, cached
/// on a log-spaced radius grid. Lookups interpolate log-log linearly;
/// radii outside [r_min, r_max] are refused (no extrapolation), except
/// that r = 0 returns 0.
class ArchVolumeTable {
public:
    struct Point {
        double r = 0.0;
        double volume = 0.0; // calibrated (kappa included)
        double stderr_ = 0.0;
        std::int64_t samples = 0;
        std::uint64_t seed = 0;
    };

    struct BuildOptions {
        double r_min = 0.01;
        double r_max = 1.0;
        int points_per_decade = 24;
        std::int64_t samples_per_point = 1000000;
        std::uint64_t seed = 1;
        int threads = 0;
    };

    static ArchVolumeTable build(MetricChoice metric, const HaarCalibration& cal,
                                 const BuildOptions& opts);

    MetricChoice metric() const { return metric_; }
    double kappa() const { return kappa_; }
    double r_min() const { return points_.front().r; }
    double r_max() const { return points_.back().r; }
    const std::vector<Point>& points() const { return points_; }

    double volume(double r) const;
    double stderr_at(double r) const;

    void save_csv(const std::filesystem::path& path, const std::string& manifest_ref) const;
    static ArchVolumeTable load_csv(const std::filesystem::path& path, MetricChoice metric,
                                    double kappa);

    /// FNV-1a of the table contents, for run manifests.
    std::string fingerprint() const;

private:
    MetricChoice metric_ = MetricChoice::frobenius;
    double kappa_ = 0.0;
    std::vector<Point> points_;

    const Point& lookup_bounds(double r, const Point*& lo, const Point*& hi) const;
};

/// Frobenius-ball circumscribing radius for the metric ball of radius r at
/// the identity (||exp X - I|| <= e^r - 1 for the log metric).
double metric_ball_frobenius_bound(double r, MetricChoice m);

/// One-off Monte Carlo volume of a metric ball at the identity.
McEstimate mc_metric_ball_volume(double r, MetricChoice m, std::int64_t samples,
                                 std::uint64_t seed, int threads);

} // namespace slat
