#include "slat/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace slat {

double predicted_b0(double a, double kappa, int d) {
    if (!(a > 0) || !(kappa > 0) || d <= 0)
        throw std::invalid_argument("predicted_b0: a, kappa, d must be positive");
    return 2.0 * a * kappa / double(d);
}

double predicted_theta0(double a, double kappa, int d, double b) {
    double b0 = predicted_b0(a, kappa, d);
    if (!(b > 0) || !(b < b0))
        throw std::domain_error("predicted_theta0: b = " + std::to_string(b) +
                                " outside (0, b0) with b0 = " + std::to_string(b0));
    return 0.5 + (0.5 - kappa) * a / (a - b * double(d));
}

std::vector<std::pair<long long, double>> volume_sum_VT(const ApproximationParams& params,
                                                        const PlaceSet& S,
                                                        const ArchVolumeTable& table) {
    std::vector<std::pair<long long, double>> out;
    double running = 0.0;
    SphereVolumeTable spheres(S, params.T);
    for (const auto& row : spheres.rows()) {
        double r = std::pow(double(row.h.value), -params.b);
        running += table.volume(r) * big_to_double(row.sphere);
        out.emplace_back(row.h.value, running);
    }
    return out;
}

SchmidtResult count_NT(const RealPoint& x, const ApproximationParams& params, const PlaceSet& S,
                       const ArchVolumeTable& table, int threads) {
    SchmidtResult res;
    double b0 = predicted_b0(params.a_exponent, params.spectral_kappa, params.dim_d);
    res.in_proven_range = params.b > 0 && params.b < b0;
    res.predicted_theta0 =
        res.in_proven_range
            ? predicted_theta0(params.a_exponent, params.spectral_kappa, params.dim_d, params.b)
            : 1.0;

    auto heights = realizable_heights(S, params.T);
    auto V = volume_sum_VT(params, S, table); // same grid as realizable_heights
    std::int64_t running = 0;
    std::vector<std::pair<double, double>> fit_pts;
    for (std::size_t i = 0; i < heights.size(); ++i) {
        auto& [T, VT] = V[i];
        double radius = std::pow(double(T), -params.b);
        ShellQuery q{S, heights[i], RegionE::ball(x.m, radius, params.metric), std::nullopt};
        running += static_cast<std::int64_t>(enumerate_shell(q, threads).points.size());
        SchmidtRow row;
        row.T = T;
        row.N = running;
        row.V = VT;
        row.diff = double(running) - VT;
        if (std::abs(row.diff) > 0 && VT > 0)
            fit_pts.emplace_back(VT, std::abs(row.diff));
        row.theta_fit = fit_pts.size() >= 3 ? fit_exponent(fit_pts).slope : 0.0;
        res.rows.push_back(row);
    }
    res.fitted_theta = res.rows.empty() ? 0.0 : res.rows.back().theta_fit;
    return res;
}

double region_volume(const RegionE& E, const ExperimentContext& ctx, std::uint64_t seed) {
    if (ctx.table && E.kind == RegionE::Kind::metric_ball && E.metric == ctx.table->metric() &&
        frobenius_distance(E.center, Mat2d::identity()) < 1e-12 && E.radius >= ctx.table->r_min() &&
        E.radius <= ctx.table->r_max())
        return ctx.table->volume(E.radius);
    return region_volume_mc(E, ctx.cal, ctx.volume_mc_samples, derive_seed(seed, 0xe0eULL, 0),
                            ctx.threads)
        .value;
}

DiscrepancyRecord discrepancy(long long h, const RegionE& E, const CongruenceCondition& W,
                              const ExperimentContext& ctx, std::uint64_t seed) {
    W.require_coprime_to(ctx.S);
    DiscrepancyRecord rec;
    rec.h = h;
    rec.seed = seed;
    rec.regime = "uniform"; // one fixed region, one base point
    std::optional<CongruenceCondition> w;
    if (!W.is_full()) w = W;
    auto shells = enumerate_up_to(ctx.S, h, E, w, ctx.threads);
    for (auto& [hh, r] : shells) rec.count += static_cast<std::int64_t>(r.points.size());
    rec.v_S = big_to_double(ball_volume_padic(ctx.S, h));
    double mE = region_volume(E, ctx, seed);
    rec.main_term = mE * W.measure().to_double();
    rec.D = std::abs(double(rec.count) / rec.v_S - rec.main_term);
    return rec;
}

double mean_square_discrepancy(long long h, const RegionE& E, const CongruenceCondition& W,
                               const ExperimentContext& ctx, const IwasawaBox& Q, int n_samples,
                               std::uint64_t seed) {
    if (n_samples < 1)
        throw std::invalid_argument("mean_square_discrepancy: n_samples must be >= 1");
    // m_inf(E x) = m_inf(E): compute the main term once.
    double mE = region_volume(E, ctx, seed);
    double main = mE * W.measure().to_double();
    double vS = big_to_double(ball_volume_padic(ctx.S, h));
    std::optional<CongruenceCondition> w;
    if (!W.is_full()) w = W;

    double sum_sq = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        Rng rng(derive_seed(seed, 0x5a3eULL, static_cast<std::uint64_t>(i)));
        Mat2d x = Q.sample(rng);
        RegionE Ex = E.translated(x);
        std::int64_t count = 0;
        auto shells = enumerate_up_to(ctx.S, h, Ex, w, ctx.threads);
        for (auto& [hh, r] : shells) count += static_cast<std::int64_t>(r.points.size());
        double D = std::abs(double(count) / vS - main);
        sum_sq += D * D;
    }
    return std::sqrt(sum_sq / double(n_samples));
}

std::vector<DiscrepancyRecord> almost_sure_trajectory(const RealPoint& x, const RegionE& E,
                                                      const CongruenceCondition& W,
                                                      const std::vector<long long>& heights,
                                                      const ApproximationParams& params,
                                                      const ExperimentContext& ctx) {
    std::vector<DiscrepancyRecord> out;
    if (heights.empty()) return out;
    long long h_max = *std::max_element(heights.begin(), heights.end());
    RegionE Ex = E.translated(x.m);
    std::optional<CongruenceCondition> w;
    if (!W.is_full()) w = W;
    auto shells = enumerate_up_to(ctx.S, h_max, Ex, w, ctx.threads);
    double mE = region_volume(E, ctx, 0);
    double main = mE * W.measure().to_double();
    SphereVolumeTable vs(ctx.S, h_max);

    for (long long h : heights) {
        DiscrepancyRecord rec;
        rec.h = h;
        rec.regime = "almost_sure";
        for (auto& [hh, r] : shells)
            if (hh <= h) rec.count += static_cast<std::int64_t>(r.points.size());
        rec.v_S = big_to_double(vs.ball_volume(h));
        rec.main_term = main;
        rec.D = std::abs(double(rec.count) / rec.v_S - main);
        double lv = std::log(std::max(rec.v_S, 2.0));
        rec.envelope = std::pow(lv, 1.5 + params.eta) * std::pow(rec.v_S, -params.spectral_kappa);
        out.push_back(rec);
    }
    return out;
}

std::vector<SweepEntry> uniform_discrepancy_sweep(const std::vector<RealPoint>& xs,
                                                  const std::vector<double>& ells,
                                                  const CongruenceCondition& W, long long h,
                                                  const ApproximationParams& params,
                                                  const ExperimentContext& ctx) {
    std::vector<SweepEntry> out;
    double vS = big_to_double(ball_volume_padic(ctx.S, h));
    double mW = W.measure().to_double();
    double d = double(params.dim_d);
    std::optional<CongruenceCondition> w;
    if (!W.is_full()) w = W;
    for (double ell : ells) {
        RegionE ball_e = RegionE::ball(Mat2d::identity(), ell, params.metric);
        double mB = region_volume(ball_e, ctx, 0x5eedULL + std::uint64_t(ell * 1e6));
        bool admissible = mB * mB * mW >= std::pow(vS, -2.0 * params.spectral_kappa);
        double count_scale = std::pow(mB, d / (d + 2.0)) * std::pow(mW, (d + 1.0) / (d + 2.0)) *
                             std::pow(vS, 1.0 - 2.0 * params.spectral_kappa / (d + 2.0));
        for (const RealPoint& x : xs) {
            SweepEntry e;
            e.ell = ell;
            e.x_norm = x.m.frobenius();
            e.error_scale_count = count_scale;
            e.out_of_regime = ell >= params.ell0;
            DiscrepancyRecord& rec = e.record;
            rec.h = h;
            rec.regime = "small_ball";
            rec.admissible = admissible;
            RegionE Bx = RegionE::ball(x.m, ell, params.metric);
            auto shells = enumerate_up_to(ctx.S, h, Bx, w, ctx.threads);
            for (auto& [hh, r] : shells) rec.count += static_cast<std::int64_t>(r.points.size());
            rec.v_S = vS;
            rec.main_term = mB * mW;
            rec.D = std::abs(double(rec.count) / vS - rec.main_term);
            rec.envelope = count_scale / vS;
            out.push_back(std::move(e));
        }
    }
    return out;
}

double SchmidtSweep::share_within(double lo, double hi) const {
    if (per_sample.empty()) return 0.0;
    int ok = 0;
    for (const SchmidtResult& r : per_sample) {
        if (r.rows.empty()) continue;
        double ratio = double(r.rows.back().N) / r.rows.back().V;
        if (ratio >= lo && ratio <= hi) ++ok;
    }
    return double(ok) / double(per_sample.size());
}

SchmidtSweep schmidt_sweep(const ApproximationParams& params, const PlaceSet& S,
                           const ArchVolumeTable& table, const IwasawaBox& Q, int n_samples,
                           std::uint64_t seed, int threads) {
    SchmidtSweep sweep;
    for (auto& [T, VT] : volume_sum_VT(params, S, table)) {
        sweep.heights.push_back(T);
        sweep.V.push_back(VT);
    }
    for (int i = 0; i < n_samples; ++i) {
        Rng rng(derive_seed(seed, 0x5c4dULL, static_cast<std::uint64_t>(i)));
        RealPoint x(Q.sample(rng));
        sweep.per_sample.push_back(count_NT(x, params, S, table, threads));
    }
    std::vector<std::pair<double, double>> med_pts;
    for (std::size_t t = 0; t < sweep.heights.size(); ++t) {
        std::vector<double> diffs;
        for (const SchmidtResult& r : sweep.per_sample)
            diffs.push_back(std::abs(r.rows[t].diff));
        std::sort(diffs.begin(), diffs.end());
        double med = diffs.empty() ? 0.0
                     : diffs.size() % 2 ? diffs[diffs.size() / 2]
                                        : 0.5 * (diffs[diffs.size() / 2 - 1] +
                                                 diffs[diffs.size() / 2]);
        sweep.median_abs_diff.push_back(med);
        if (med > 0 && sweep.V[t] > 0) med_pts.emplace_back(sweep.V[t], med);
    }
    sweep.median_slope = med_pts.size() >= 3 ? fit_exponent(med_pts).slope : 0.0;
    return sweep;
}

} // namespace slat
