#pragma once

#include <cstdint>
#include <functional>

#include "slat/mat2d.hpp"
#include "slat/rng.hpp"

namespace slat {

/// Iwasawa coordinates: g = n(x) a(y) k(theta) with n = [[1,x],[0,1]],
/// a = [[sqrt y, 0],[0, 1/sqrt y]], k a rotation. Haar measure on SL2(R)
/// is proportional to dx dy/y^2 dtheta/(2 pi); we call that the base
/// measure. The calibrated measure is kappa times it.
Mat2d iwasawa_point(double x, double y, double theta);

/// A box in Iwasawa coordinates with the full rotation fiber. Supports
/// exact base-measure mass and Haar-distributed sampling.
struct IwasawaBox {
    double x_min = -0.5, x_max = 0.5;
    double y_min = 0.5, y_max = 2.0;

    double base_mass() const { return (x_max - x_min) * (1.0 / y_min - 1.0 / y_max); }
    Mat2d sample(Rng& rng) const;
};

/// The smallest Iwasawa box containing the Frobenius norm ball
/// {g in SL2(R): ||g||_F <= B}; ||g||_F^2 = y + (x^2 + 1)/y there.
/// Throws std::domain_error for B < sqrt(2) (empty ball).
IwasawaBox norm_ball_box(double frobenius_bound);

/// Exact base-measure volume of {||g||_F <= B}: pi (B^2 - 2) for B >= sqrt 2.
double norm_ball_base_volume(double frobenius_bound);

struct McEstimate {
    double value = 0.0;  // base-measure estimate
    double stderr_ = 0.0;
    std::int64_t hits = 0;
    std::int64_t samples = 0;
};

/// Monte Carlo base-measure volume of {g : member(g)} where the member set
/// is contained in {||g||_F <= frobenius_bound}. Sampling is split into
/// fixed blocks with seeds derived from (seed, block); the result is
/// independent of the thread count.
McEstimate mc_base_volume(const std::function<bool(const Mat2d&)>& member,
                          double frobenius_bound, std::int64_t samples, std::uint64_t seed,
                          int threads);

/// Exact |SL2(Z) cap {||g||_F <= R}| by integer enumeration.
std::int64_t count_sl2z_in_ball(double R);

/// Calibration of the archimedean Haar measure m_inf = kappa * base.
/// Covolume-one normalization: the quotient of SL2(R) by SL2(Z) has base
/// measure (pi/3) * (1/2) = pi/6 -- hyperbolic area pi/3 of the modular
/// domain, halved because -I fixes every point of the upper half plane --
/// so kappa = 6/pi.
struct HaarCalibration {
    double kappa = 0.0;
    // Point-count cross-check |SL2(Z) cap B_R| / m_inf(B_R).
    double crosscheck_ratio = 0.0;
    double crosscheck_radius = 0.0;
    std::int64_t crosscheck_count = 0;
    double crosscheck_volume = 0.0;
    double crosscheck_stderr = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

struct CalibrationOptions {
    double radius = 50.0;
    std::int64_t samples = 4000000;
    std::uint64_t seed = 1;
    int threads = 0;
};

/// Analytic kappa for the covolume-one normalization.
double covolume_one_kappa();

/// Returns the analytic kappa and runs the mandatory point-counting
/// cross-check; throws std::runtime_error if the ratio leaves [0.85, 1.15].
HaarCalibration calibrate_haar(const CalibrationOptions& opts = {});

} // namespace slat
