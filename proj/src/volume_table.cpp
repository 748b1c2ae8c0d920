#include "slat/volume_table.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace slat {

double metric_ball_frobenius_bound(double r, MetricChoice m) {
    double reach = m == MetricChoice::frobenius ? r : std::expm1(r);
    return std::sqrt(2.0) + reach;
}

McEstimate mc_metric_ball_volume(double r, MetricChoice m, std::int64_t samples,
                                 std::uint64_t seed, int threads) {
    Mat2d id = Mat2d::identity();
    auto member = [m, r, id](const Mat2d& g) {
        return distance_to_center(g, id, m).value <= r;
    };
    return mc_base_volume(member, metric_ball_frobenius_bound(r, m), samples, seed, threads);
}

ArchVolumeTable ArchVolumeTable::build(MetricChoice metric, const HaarCalibration& cal,
                                       const BuildOptions& opts) {
    if (!(opts.r_min > 0 && opts.r_max > opts.r_min))
        throw std::invalid_argument("ArchVolumeTable: need 0 < r_min < r_max");
    ArchVolumeTable t;
    t.metric_ = metric;
    t.kappa_ = cal.kappa;
    double decades = std::log10(opts.r_max / opts.r_min);
    int n = std::max(2, static_cast<int>(std::ceil(decades * opts.points_per_decade)) + 1);
    for (int i = 0; i < n; ++i) {
        Point p;
        p.r = opts.r_min * std::pow(opts.r_max / opts.r_min, double(i) / double(n - 1));
        if (i == n - 1) p.r = opts.r_max; // exact endpoint
        p.samples = opts.samples_per_point;
        p.seed = derive_seed(opts.seed, 0x7ab1eULL, static_cast<std::uint64_t>(i));
        McEstimate est = mc_metric_ball_volume(p.r, metric, p.samples, p.seed, opts.threads);
        p.volume = cal.kappa * est.value;
        p.stderr_ = cal.kappa * est.stderr_;
        t.points_.push_back(p);
    }
    return t;
}

const ArchVolumeTable::Point& ArchVolumeTable::lookup_bounds(double r, const Point*& lo,
                                                             const Point*& hi) const {
    if (points_.empty()) throw std::logic_error("ArchVolumeTable: empty table");
    const double rmin = points_.front().r, rmax = points_.back().r;
    if (r < rmin * (1.0 - 1e-12) || r > rmax * (1.0 + 1e-12))
        throw std::range_error("ArchVolumeTable: radius " + std::to_string(r) +
                               " outside cached grid [" + std::to_string(rmin) + ", " +
                               std::to_string(rmax) + "]; extrapolation refused");
    r = std::min(std::max(r, rmin), rmax);
    std::size_t j = 1;
    while (j + 1 < points_.size() && points_[j].r < r) ++j;
    lo = &points_[j - 1];
    hi = &points_[j];
    return *lo;
}

double ArchVolumeTable::volume(double r) const {
    if (r == 0.0) return 0.0;
    const Point *lo, *hi;
    lookup_bounds(r, lo, hi);
    if (r <= lo->r) return lo->volume;
    if (r >= hi->r) return hi->volume;
    double t = (std::log(r) - std::log(lo->r)) / (std::log(hi->r) - std::log(lo->r));
    return std::exp((1.0 - t) * std::log(lo->volume) + t * std::log(hi->volume));
}

double ArchVolumeTable::stderr_at(double r) const {
    if (r == 0.0) return 0.0;
    const Point *lo, *hi;
    lookup_bounds(r, lo, hi);
    return std::max(lo->stderr_ / std::max(lo->volume, 1e-300),
                    hi->stderr_ / std::max(hi->volume, 1e-300)) *
           volume(r);
}

void ArchVolumeTable::save_csv(const std::filesystem::path& path,
                               const std::string& manifest_ref) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# manifest: " << manifest_ref << "\n";
    out << "r,volume,stderr,n_samples,seed\n";
    char buf[160];
    for (const Point& p : points_) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%lld,%llu\n", p.r, p.volume, p.stderr_,
                      static_cast<long long>(p.samples), static_cast<unsigned long long>(p.seed));
        out << buf;
    }
}

ArchVolumeTable ArchVolumeTable::load_csv(const std::filesystem::path& path, MetricChoice metric,
                                          double kappa) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    ArchVolumeTable t;
    t.metric_ = metric;
    t.kappa_ = kappa;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("r,", 0) == 0) continue;
        Point p;
        long long samples;
        unsigned long long seed;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lld,%llu", &p.r, &p.volume, &p.stderr_,
                        &samples, &seed) != 5)
            throw std::runtime_error("bad volume table row: " + line);
        p.samples = samples;
        p.seed = seed;
        t.points_.push_back(p);
    }
    if (t.points_.size() < 2) throw std::runtime_error("volume table too short");
    return t;
}

std::string ArchVolumeTable::fingerprint() const {
    std::uint64_t hash = 1469598103934665603ULL;
    auto mix_double = [&hash](double x) {
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof x);
        std::memcpy(&bits, &x, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            hash ^= (bits >> (8 * i)) & 0xff;
            hash *= 1099511628211ULL;
        }
    };
    for (const Point& p : points_) {
        mix_double(p.r);
        mix_double(p.volume);
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace slat
