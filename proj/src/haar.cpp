#include "slat/haar.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "slat/parallel.hpp"

namespace slat {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kBlockSize = 1 << 16;
} // namespace

Mat2d iwasawa_point(double x, double y, double theta) {
    double sy = std::sqrt(y);
    double ct = std::cos(theta), st = std::sin(theta);
    // n(x) a(y) k(theta)
    return {sy * ct + (x / sy) * st, -sy * st + (x / sy) * ct, st / sy, ct / sy};
}

Mat2d IwasawaBox::sample(Rng& rng) const {
    // y has density 1/y^2 on [y_min, y_max]: invert the CDF.
    double u = rng.uniform();
    double y = 1.0 / (1.0 / y_min - u * (1.0 / y_min - 1.0 / y_max));
    double x = rng.uniform(x_min, x_max);
    double theta = rng.uniform(0.0, 2.0 * kPi);
    return iwasawa_point(x, y, theta);
}

IwasawaBox norm_ball_box(double B) {
    double B2 = B * B;
    if (B2 < 2.0) throw std::domain_error("norm_ball_box: bound below sqrt(2), empty ball");
    double disc = std::sqrt(B2 * B2 - 4.0);
    IwasawaBox box;
    box.y_min = (B2 - disc) / 2.0;
    box.y_max = (B2 + disc) / 2.0;
    // x^2 <= B^2 y - y^2 - 1 <= (B^2/2)^2 - 1
    double xmax = std::sqrt(std::max(B2 * B2 / 4.0 - 1.0, 0.0));
    box.x_min = -xmax;
    box.x_max = xmax;
    return box;
}

double norm_ball_base_volume(double B) {
    if (B * B < 2.0) return 0.0;
    return kPi * (B * B - 2.0);
}

McEstimate mc_base_volume(const std::function<bool(const Mat2d&)>& member, double frobenius_bound,
                          std::int64_t samples, std::uint64_t seed, int threads) {
    McEstimate est;
    est.samples = samples;
    if (samples <= 0) throw std::invalid_argument("mc_base_volume: samples must be positive");
    if (frobenius_bound * frobenius_bound < 2.0) return est; // empty intersection with SL2(R)
    IwasawaBox box = norm_ball_box(frobenius_bound);
    double mass = box.base_mass();

    std::size_t n_blocks = static_cast<std::size_t>((samples + kBlockSize - 1) / kBlockSize);
    std::vector<std::int64_t> hits(n_blocks, 0);
    run_blocks(n_blocks, threads, [&](std::size_t blk) {
        std::int64_t lo = static_cast<std::int64_t>(blk) * kBlockSize;
        std::int64_t hi = std::min(samples, lo + kBlockSize);
        Rng rng(derive_seed(seed, 0xb10cULL, blk));
        std::int64_t h = 0;
        for (std::int64_t i = lo; i < hi; ++i) {
            Mat2d g = box.sample(rng);
            if (member(g)) ++h;
        }
        hits[blk] = h;
    });
    for (std::int64_t h : hits) est.hits += h;
    double p = double(est.hits) / double(samples);
    est.value = mass * p;
    est.stderr_ = mass * std::sqrt(std::max(p * (1.0 - p), 0.0) / double(samples));
    return est;
}

std::int64_t count_sl2z_in_ball(double R) {
    double R2 = R * R;
    std::int64_t amax = static_cast<std::int64_t>(std::floor(R));
    if (amax > 100000) throw std::range_error("count_sl2z_in_ball: radius too large");
    std::int64_t n = 0;
    for (std::int64_t a = -amax; a <= amax; ++a)
        for (std::int64_t b = -amax; b <= amax; ++b) {
            double ab = double(a) * a + double(b) * b;
            if (ab > R2) continue;
            if (a == 0) {
                // bc = -1, d free within the norm budget.
                if (b != 1 && b != -1) continue;
                double rem = R2 - ab - 1.0; // c = -b contributes 1
                if (rem < 0) continue;
                n += 2 * static_cast<std::int64_t>(std::floor(std::sqrt(rem))) + 1;
                continue;
            }
            for (std::int64_t c = -amax; c <= amax; ++c) {
                double abc = ab + double(c) * c;
                if (abc > R2) continue;
                std::int64_t num = 1 + b * c;
                if (num % a != 0) continue;
                std::int64_t d = num / a;
                if (abc + double(d) * d <= R2) ++n;
            }
        }
    return n;
}

double covolume_one_kappa() {
    double base_covolume = (kPi / 3.0) / 2.0;
    return 1.0 / base_covolume; // 6/pi
}

HaarCalibration calibrate_haar(const CalibrationOptions& opts) {
    HaarCalibration cal;
    cal.kappa = covolume_one_kappa();
    cal.crosscheck_radius = opts.radius;
    cal.samples = opts.samples;
    cal.seed = opts.seed;

    double R = opts.radius;
    McEstimate vol = mc_base_volume(
        [R](const Mat2d& g) { return g.frobenius_sq() <= R * R; }, R, opts.samples, opts.seed,
        opts.threads);
    cal.crosscheck_count = count_sl2z_in_ball(R);
    cal.crosscheck_volume = cal.kappa * vol.value;
    cal.crosscheck_stderr = cal.kappa * vol.stderr_;
    cal.crosscheck_ratio = double(cal.crosscheck_count) / cal.crosscheck_volume;
    if (cal.crosscheck_ratio < 0.85 || cal.crosscheck_ratio > 1.15)
        throw std::runtime_error("calibrate_haar: point-count cross-check ratio " +
                                 std::to_string(cal.crosscheck_ratio) +
                                 " outside [0.85, 1.15]");
    return cal;
}

} // namespace slat
