#pragma once

#include <string>

#include "slat/mat2d.hpp"

namespace slat {

enum class MetricChoice {
    frobenius,     // ||x - y||_F, plain matrix-space distance
    log_invariant, // ||log(x y^{-1})||_F, right-invariant by construction
};

std::string metric_name(MetricChoice m);
MetricChoice parse_metric(const std::string& name);

struct Distance {
    double value = 0.0;
    /// Set when the log metric fell back to frobenius because x y^{-1} is
    /// outside the principal logarithm's safe neighborhood (trace <= -2+eps).
    bool fallback = false;
};

Distance distance(const RealPoint& x, const RealPoint& y, MetricChoice m);

/// Distance from a group point to an arbitrary matrix center (frobenius
/// only concept for non-unimodular centers; log requires invertible center).
Distance distance_to_center(const Mat2d& g, const Mat2d& center, MetricChoice m);

} // namespace slat
