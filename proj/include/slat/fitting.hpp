#pragma once

#include <utility>
#include <vector>

namespace slat {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares of y against x.
FitResult fit_linear(const std::vector<std::pair<double, double>>& pts);

/// OLS on (log x, log y). Requires >= 3 pairs with positive coordinates;
/// throws std::domain_error otherwise.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& pts);

} // namespace slat
