#include "slat/metric.hpp"

namespace slat {

std::string metric_name(MetricChoice m) {
    return m == MetricChoice::frobenius ? "frobenius" : "log";
}

MetricChoice parse_metric(const std::string& name) {
    if (name == "frobenius") return MetricChoice::frobenius;
    if (name == "log" || name == "log_invariant") return MetricChoice::log_invariant;
    throw std::invalid_argument("unknown metric '" + name + "' (use frobenius or log)");
}

Distance distance_to_center(const Mat2d& g, const Mat2d& center, MetricChoice m) {
    if (m == MetricChoice::frobenius) return {frobenius_distance(g, center), false};
    double dt = center.det();
    if (!(dt > 0.5 && dt < 2.0))
        throw std::domain_error("log metric needs a unimodular center");
    Mat2d w = g * center.inverse_unimodular();
    if (auto lg = sl2_log(w)) return {lg->frobenius(), false};
    return {frobenius_distance(g, center), true};
}

Distance distance(const RealPoint& x, const RealPoint& y, MetricChoice m) {
    return distance_to_center(x.m, y.m, m);
}

} // namespace slat
