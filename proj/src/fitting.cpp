#include "slat/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace slat {

FitResult fit_linear(const std::vector<std::pair<double, double>>& pts) {
    const size_t n = pts.size();
    if (n < 2) throw std::domain_error("fit_linear: need at least 2 points");
    double sx = 0, sy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) throw std::domain_error("fit_linear: degenerate x values");
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (auto& [x, y] : pts) {
        double e = y - (r.intercept + r.slope * x);
        ss_res += e * e;
        ss_tot += (y - my) * (y - my);
    }
    r.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return r;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 3) throw std::domain_error("fit_exponent: need at least 3 points");
    std::vector<std::pair<double, double>> logs;
    logs.reserve(pts.size());
    for (auto& [x, y] : pts) {
        if (!(x > 0) || !(y > 0))
            throw std::domain_error("fit_exponent: coordinates must be positive");
        logs.emplace_back(std::log(x), std::log(y));
    }
    return fit_linear(logs);
}

} // namespace slat
