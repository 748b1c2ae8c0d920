#include <doctest.h>

#include <cmath>

#include "slat/experiments.hpp"

using namespace slat;

namespace {

Rational q(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

HaarCalibration analytic_cal() {
    HaarCalibration cal;
    cal.kappa = covolume_one_kappa();
    return cal;
}

const ArchVolumeTable& exp_table() {
    static ArchVolumeTable t = [] {
        ArchVolumeTable::BuildOptions opts;
        opts.r_min = 0.1;
        opts.r_max = 1.0;
        opts.points_per_decade = 16;
        opts.samples_per_point = 500000;
        opts.seed = 19;
        return ArchVolumeTable::build(MetricChoice::frobenius, analytic_cal(), opts);
    }();
    return t;
}

ExperimentContext make_ctx(const PlaceSet& S) {
    ExperimentContext ctx;
    ctx.S = S;
    ctx.cal = analytic_cal();
    ctx.table = &exp_table();
    ctx.volume_mc_samples = 300000;
    return ctx;
}

} // namespace

TEST_CASE("predicted exponents") {
    CHECK(predicted_b0(2, 0.5, 3) == doctest::Approx(2.0 / 3.0));
    CHECK(predicted_b0(2, 0.25, 3) == doctest::Approx(1.0 / 3.0));
    CHECK(predicted_b0(2, 1e-9, 3) == doctest::Approx(0.0).epsilon(1e-6));

    CHECK(predicted_theta0(2, 0.5, 3, 0.4) == doctest::Approx(0.5));
    CHECK(predicted_theta0(2, 0.25, 3, 0.2) == doctest::Approx(0.5 + 0.5 / 1.4));
    CHECK_THROWS_AS(predicted_theta0(2, 0.5, 3, 0.7), std::domain_error);
    CHECK_THROWS_AS(predicted_theta0(2, 0.25, 3, 0.4), std::domain_error);

    // theta0 in (1/2, 1) for admissible parameters with kappa < 1/2.
    for (double a : {1.5, 2.0, 3.0})
        for (double kappa : {0.2, 0.35, 0.49})
            for (double frac : {0.2, 0.5, 0.9}) {
                double b = frac * predicted_b0(a, kappa, 3);
                double th = predicted_theta0(a, kappa, 3, b);
                CHECK(th > 0.5);
                CHECK(th < 1.0);
            }
}

TEST_CASE("exponent fitting") {
    FitResult f = fit_exponent({{10, 100}, {100, 10000}, {1000, 1000000}});
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));

    FitResult c = fit_exponent({{1, 5}, {10, 5}, {100, 5}});
    CHECK(c.slope == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, 2}}), std::domain_error);
    CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, 2}, {3, -1}}), std::domain_error);

    // Sphere-volume data for S = {2} fits slope 2 exactly.
    std::vector<std::pair<double, double>> pts;
    for (int k = 1; k <= 10; ++k)
        pts.emplace_back(std::pow(2.0, k), big_to_double(sphere_volume(2, k)));
    FitResult s = fit_exponent(pts);
    CHECK(s.slope == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(s.r2 > 0.999);
}

TEST_CASE("volume sum composition") {
    PlaceSet S({2});
    ApproximationParams params;
    params.b = 0.5;
    params.T = 2;
    auto V = volume_sum_VT(params, S, exp_table());
    REQUIRE(V.size() == 2);
    CHECK(V[0].first == 1);
    CHECK(V[0].second == doctest::Approx(exp_table().volume(1.0)));
    CHECK(V[1].second ==
          doctest::Approx(exp_table().volume(1.0) + exp_table().volume(std::pow(2.0, -0.5)) * 6));

    params.T = 0;
    CHECK(volume_sum_VT(params, S, exp_table()).empty());
}

TEST_CASE("count_NT basics") {
    PlaceSet S({2});
    ApproximationParams params;
    params.b = 0.7;
    params.T = 2;
    RealPoint x(Mat2d{0.5, 0, 0, 2.0});
    SchmidtResult res = count_NT(x, params, S, exp_table());
    REQUIRE(res.rows.size() == 2);
    CHECK(res.rows[1].N >= 1); // the point x itself sits in its own shell
    CHECK(res.rows[1].N >= res.rows[0].N);
    CHECK(res.rows[1].T == 2);
}

TEST_CASE("count_NT flags out-of-range b") {
    PlaceSet S({2});
    ApproximationParams params;
    params.b = 0.7; // b0 = 2/3
    params.T = 2;
    SchmidtResult res = count_NT(RealPoint::identity(), params, S, exp_table());
    CHECK_FALSE(res.in_proven_range);
}

TEST_CASE("count_NT agrees with a recount-oracle composition") {
    PlaceSet S({2});
    ApproximationParams params;
    params.b = 0.5;
    params.T = 4;
    RealPoint x = RealPoint::identity();
    SchmidtResult res = count_NT(x, params, S, exp_table());
    std::int64_t total = 0;
    auto heights = realizable_heights(S, params.T);
    for (std::size_t i = 0; i < heights.size(); ++i) {
        double r = std::pow(double(heights[i].value), -params.b);
        ShellQuery qy{S, heights[i], RegionE::ball(x.m, r, params.metric), std::nullopt};
        total += brute_force_recount(qy);
        CHECK(res.rows[i].N == total);
    }
}

TEST_CASE("discrepancy record arithmetic") {
    PlaceSet S({2});
    ExperimentContext ctx = make_ctx(S);
    auto W = CongruenceCondition::full();

    RegionE E = RegionE::ball(Mat2d::identity(), 0.5);
    DiscrepancyRecord rec = discrepancy(4, E, W, ctx);
    CHECK(rec.v_S == doctest::Approx(31.0));
    CHECK(rec.D == doctest::Approx(std::abs(double(rec.count) / rec.v_S - rec.main_term)));
    // W full: the main term is m(E) alone.
    CHECK(rec.main_term == doctest::Approx(exp_table().volume(0.5)));

    // A small ball placed away from every point of height <= 2.
    RegionE empty_ball = RegionE::ball(Mat2d{1.3, 0, 0, 1.0 / 1.3}, 0.05);
    DiscrepancyRecord rec0 = discrepancy(2, empty_ball, W, ctx);
    CHECK(rec0.count == 0);
    CHECK(rec0.D == doctest::Approx(rec0.main_term));
}

TEST_CASE("count monotone in the congruence condition") {
    PlaceSet S({2});
    ExperimentContext ctx = make_ctx(S);
    auto Wid = CongruenceCondition::identity_mod(3);
    auto Wut = CongruenceCondition::upper_triangular_mod(3);
    RegionE E = RegionE::ball(Mat2d::identity(), 1.0);
    DiscrepancyRecord small = discrepancy(16, E, Wid, ctx);
    DiscrepancyRecord large = discrepancy(16, E, Wut, ctx);
    DiscrepancyRecord full = discrepancy(16, E, CongruenceCondition::full(), ctx);
    CHECK(small.count <= large.count);
    CHECK(large.count <= full.count);
    CHECK(Wid.measure() <= Wut.measure());
}

TEST_CASE("mean square discrepancy: determinism and n=1 reduction") {
    PlaceSet S({2});
    ExperimentContext ctx = make_ctx(S);
    auto W = CongruenceCondition::full();
    RegionE E = RegionE::ball(Mat2d::identity(), 0.5);
    IwasawaBox Q{-0.25, 0.25, 0.8, 1.25};

    double d1 = mean_square_discrepancy(8, E, W, ctx, Q, 1, 42);
    double d1b = mean_square_discrepancy(8, E, W, ctx, Q, 1, 42);
    CHECK(d1 == d1b);

    // n = 1 reduces to the discrepancy at the single sampled x.
    Rng rng(derive_seed(42, 0x5a3eULL, 0));
    Mat2d x0 = Q.sample(rng);
    std::int64_t count = 0;
    auto shells = enumerate_up_to(S, 8, E.translated(x0), std::nullopt);
    for (auto& [h, r] : shells) count += std::int64_t(r.points.size());
    double expected = std::abs(double(count) / 127.0 - exp_table().volume(0.5));
    CHECK(d1 == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("almost sure trajectory rows and envelope") {
    PlaceSet S({2});
    ExperimentContext ctx = make_ctx(S);
    ApproximationParams params;
    params.eta = 0.1;
    params.spectral_kappa = 0.5;
    auto W = CongruenceCondition::full();
    RegionE E = RegionE::ball(Mat2d::identity(), 0.5);
    std::vector<long long> hs{1, 2, 4, 8, 16};
    auto rows = almost_sure_trajectory(RealPoint::identity(), E, W, hs, params, ctx);
    REQUIRE(rows.size() == hs.size());
    std::int64_t prev = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].h == hs[i]);
        CHECK(rows[i].count >= prev);
        prev = rows[i].count;
        double v = rows[i].v_S;
        double expected_env = std::pow(std::log(std::max(v, 2.0)), 1.6) * std::pow(v, -0.5);
        CHECK(rows[i].envelope == doctest::Approx(expected_env));
        CHECK(rows[i].regime == "almost_sure");
    }
}

TEST_CASE("uniform sweep admissibility and error scale") {
    PlaceSet S({2});
    ExperimentContext ctx = make_ctx(S);
    ApproximationParams params; // kappa = 0.5, d = 3
    auto W = CongruenceCondition::full();
    auto entries = uniform_discrepancy_sweep({RealPoint::identity()}, {0.5}, W, 4, params, ctx);
    REQUIRE(entries.size() == 1);
    const SweepEntry& e = entries[0];
    double mB = exp_table().volume(0.5);
    // admissibility at v = 31: m(B)^2 >= 31^{-1}
    CHECK(e.record.admissible == (mB * mB >= 1.0 / 31.0));
    CHECK(e.record.admissible);
    double expect_scale = std::pow(mB, 3.0 / 5.0) * std::pow(31.0, 1.0 - 2.0 * 0.5 / 5.0);
    CHECK(e.error_scale_count == doctest::Approx(expect_scale));
    CHECK(e.record.envelope == doctest::Approx(expect_scale / 31.0));
    CHECK(e.record.regime == "small_ball");
}

TEST_CASE("sweep flags scales above ell0 as out of regime") {
    PlaceSet S({2});
    ExperimentContext ctx = make_ctx(S);
    ApproximationParams params; // ell0 = 0.5
    auto W = CongruenceCondition::full();
    auto entries =
        uniform_discrepancy_sweep({RealPoint::identity()}, {0.3, 0.8}, W, 4, params, ctx);
    REQUIRE(entries.size() == 2);
    CHECK_FALSE(entries[0].out_of_regime);
    CHECK(entries[1].out_of_regime);
}

TEST_CASE("inner and outer regions bracket the count") {
    PlaceSet S({2});
    RegionE E = RegionE::ball(Mat2d::identity(), 0.5);
    auto [inner, outer] = region_inner_outer(E, 0.1);
    auto count_in = [&](const RegionE& R) {
        std::int64_t n = 0;
        for (auto& [h, r] : enumerate_up_to(S, 16, R, std::nullopt))
            n += std::int64_t(r.points.size());
        return n;
    };
    std::int64_t a = count_in(inner), b = count_in(E), c = count_in(outer);
    CHECK(a <= b);
    CHECK(b <= c);
    CHECK(c > 0);
}

TEST_CASE("volume sum grows like T^(a - b d)") {
    PlaceSet S({2});
    ApproximationParams params;
    params.b = 0.4; // a - b d = 2 - 1.2 = 0.8
    params.T = 128;
    std::vector<std::pair<double, double>> pts;
    for (auto& [T, VT] : volume_sum_VT(params, S, exp_table()))
        if (T >= 4) pts.emplace_back(double(T), VT);
    FitResult fit = fit_exponent(pts);
    CHECK(fit.slope > 0.65);
    CHECK(fit.slope < 0.95);
}

TEST_CASE("trajectory from a rational base point still decays") {
    PlaceSet S({2});
    ExperimentContext ctx = make_ctx(S);
    ApproximationParams params;
    RealPoint x(Mat2d{0.5, 0, 0, 2.0}); // a height-2 point of Gamma_S
    RegionE E = RegionE::ball(Mat2d::identity(), 0.5);
    auto rows = almost_sure_trajectory(x, E, CongruenceCondition::full(), {2, 8, 32, 128},
                                       params, ctx);
    REQUIRE(rows.size() == 4);
    CHECK(rows.back().D < rows.front().D);
}

TEST_CASE("schmidt sweep smoke") {
    PlaceSet S({2});
    ApproximationParams params;
    params.b = 0.4;
    params.T = 8;
    IwasawaBox Q{-0.25, 0.25, 0.8, 1.25};
    SchmidtSweep sweep = schmidt_sweep(params, S, exp_table(), Q, 3, 77, 0);
    CHECK(sweep.per_sample.size() == 3);
    CHECK(sweep.heights == std::vector<long long>{1, 2, 4, 8});
    for (const auto& r : sweep.per_sample) REQUIRE(r.rows.size() == 4);
    CHECK(sweep.median_abs_diff.size() == 4);
    double share = sweep.share_within(0.0, 100.0);
    CHECK(share == doctest::Approx(1.0));
}
