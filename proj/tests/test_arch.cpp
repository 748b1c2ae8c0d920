#include <doctest.h>

#include <cmath>

#include "slat/region.hpp"
#include "slat/volume_table.hpp"

using namespace slat;

namespace {

HaarCalibration analytic_cal() {
    HaarCalibration cal;
    cal.kappa = covolume_one_kappa();
    return cal;
}

const ArchVolumeTable& shared_table() {
    static ArchVolumeTable t = [] {
        ArchVolumeTable::BuildOptions opts;
        opts.r_min = 0.1;
        opts.r_max = 1.0;
        opts.points_per_decade = 12;
        opts.samples_per_point = 400000;
        opts.seed = 17;
        return ArchVolumeTable::build(MetricChoice::frobenius, analytic_cal(), opts);
    }();
    return t;
}

Mat2d haar_in_norm_ball(Rng& rng, double R) {
    IwasawaBox box = norm_ball_box(R);
    while (true) {
        Mat2d g = box.sample(rng);
        if (g.frobenius() <= R) return g;
    }
}

} // namespace

TEST_CASE("distance examples") {
    RealPoint I = RealPoint::identity();
    CHECK(distance(I, I, MetricChoice::frobenius).value == doctest::Approx(0.0));
    CHECK(distance(I, I, MetricChoice::log_invariant).value == doctest::Approx(0.0));

    RealPoint a(Mat2d{2, 0, 0, 0.5});
    CHECK(distance(a, I, MetricChoice::frobenius).value ==
          doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));

    double t = 0.1;
    RealPoint h(Mat2d{std::exp(t), 0, 0, std::exp(-t)});
    Distance d = distance(h, I, MetricChoice::log_invariant);
    CHECK_FALSE(d.fallback);
    CHECK(d.value == doctest::Approx(t * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("log metric is right-invariant") {
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        RealPoint x(haar_in_norm_ball(rng, 2.5));
        RealPoint y(haar_in_norm_ball(rng, 2.5));
        RealPoint g(haar_in_norm_ball(rng, 2.5));
        Distance base = distance(x, y, MetricChoice::log_invariant);
        if (base.fallback) continue;
        RealPoint xg(x.m * g.m), yg(y.m * g.m);
        Distance moved = distance(xg, yg, MetricChoice::log_invariant);
        CHECK(moved.value == doctest::Approx(base.value).epsilon(1e-7));
    }
}

TEST_CASE("sl2 log and exp invert each other") {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        Mat2d x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), 0};
        x.d = -x.a; // traceless
        Mat2d g = sl2_exp(x * 0.4);
        CHECK(g.det() == doctest::Approx(1.0).epsilon(1e-10));
        auto lg = sl2_log(g);
        REQUIRE(lg.has_value());
        CHECK(frobenius_distance(*lg, x * 0.4) < 1e-9);
    }
}

TEST_CASE("log falls back outside the principal branch") {
    // trace = -2 - eps: no principal logarithm.
    RealPoint g(Mat2d{-2, 0, 0, -0.5});
    RealPoint I = RealPoint::identity();
    Distance d = distance(g, I, MetricChoice::log_invariant);
    CHECK(d.fallback);
    CHECK(d.value == doctest::Approx(frobenius_distance(g.m, I.m)));
}

TEST_CASE("metric equivalence holds with the window's operator-norm constant") {
    // Pairs inside ||.||_F <= 3 at frobenius distance <= 0.5. The sharp
    // bound for the ratio is sup sigma_max over the window, about 2.98;
    // allow a small curvature margin on top.
    Rng rng(23);
    int n = 0, fallbacks = 0;
    double lo = 1e9, hi = 0, median_acc = 0;
    while (n < 10000) {
        Mat2d x = haar_in_norm_ball(rng, 3.0);
        Mat2d z{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), 0};
        z.d = -z.a;
        Mat2d y = sl2_exp(z * (rng.uniform() * 0.4)) * x;
        double dfro = frobenius_distance(x, y);
        if (dfro > 0.5 || dfro < 1e-9 || y.frobenius() > 3.0) continue;
        Distance dl = distance_to_center(x, y, MetricChoice::log_invariant);
        if (dl.fallback) ++fallbacks;
        double ratio = dl.value / dfro;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        median_acc += ratio;
        ++n;
    }
    CHECK(fallbacks == 0);
    CHECK(hi <= 3.2);
    CHECK(lo >= 1.0 / 3.2);
    CHECK(median_acc / n > 0.5);
    CHECK(median_acc / n < 1.5);
}

TEST_CASE("exact norm-ball volume against Monte Carlo") {
    double R = 3.0;
    McEstimate est = mc_base_volume([R](const Mat2d& g) { return g.frobenius() <= R; }, R,
                                    400000, 5, 0);
    double exact = norm_ball_base_volume(R); // pi (R^2 - 2)
    CHECK(std::abs(est.value - exact) < 5 * est.stderr_);
    CHECK(exact == doctest::Approx(M_PI * 7.0));
}

TEST_CASE("integer point counts in frobenius balls (frozen)") {
    CHECK(count_sl2z_in_ball(10) == 580);
    CHECK(count_sl2z_in_ball(25) == 3700);
}

TEST_CASE("calibration returns the covolume-one scale and passes its cross-check") {
    CalibrationOptions opts;
    opts.radius = 25.0;
    opts.samples = 1500000;
    opts.seed = 7;
    HaarCalibration cal = calibrate_haar(opts);
    CHECK(cal.kappa == doctest::Approx(6.0 / M_PI).epsilon(1e-12));
    CHECK(cal.crosscheck_ratio > 0.9);
    CHECK(cal.crosscheck_ratio < 1.1);

    // Deterministic and thread-count independent.
    opts.threads = 1;
    HaarCalibration c1 = calibrate_haar(opts);
    opts.threads = 3;
    HaarCalibration c3 = calibrate_haar(opts);
    CHECK(c1.crosscheck_volume == c3.crosscheck_volume);
}

TEST_CASE("point-count to volume ratio approaches one") {
    HaarCalibration cal = analytic_cal();
    double worst = 0;
    for (double R : {10.0, 25.0, 50.0}) {
        double ratio = double(count_sl2z_in_ball(R)) / (cal.kappa * norm_ball_base_volume(R));
        CHECK(ratio > 0.9);
        CHECK(ratio < 1.1);
        worst = std::max(worst, std::abs(ratio - 1.0));
    }
    // At R = 50 the ratio is within the R = 10 deviation plus slack.
    double r10 = std::abs(double(count_sl2z_in_ball(10)) /
                              (cal.kappa * norm_ball_base_volume(10)) -
                          1.0);
    double r50 = std::abs(double(count_sl2z_in_ball(50)) /
                              (cal.kappa * norm_ball_base_volume(50)) -
                          1.0);
    CHECK(r50 <= r10 + 0.05);
}

TEST_CASE("volume table: scaling, interpolation, persistence") {
    const ArchVolumeTable& t = shared_table();
    CHECK(t.volume(0.0) == 0.0);
    CHECK_THROWS_AS(t.volume(0.01), std::range_error);
    CHECK_THROWS_AS(t.volume(1.5), std::range_error);

    // d = 3 doubling ratio at higher sample counts than the grid carries
    double v1 = analytic_cal().kappa *
                mc_metric_ball_volume(0.1, MetricChoice::frobenius, 8000000, 71, 0).value;
    double v2 = analytic_cal().kappa *
                mc_metric_ball_volume(0.2, MetricChoice::frobenius, 8000000, 72, 0).value;
    CHECK(std::abs(v2 / v1 - 8.0) <= 0.5);
    CHECK(t.volume(0.1) == doctest::Approx(v1).epsilon(0.25));

    // interpolation lands between neighbors
    double r_mid = std::sqrt(0.1 * 0.2);
    double vm = t.volume(r_mid);
    CHECK(vm > v1);
    CHECK(vm < v2);

    // monotone in r on the grid
    for (std::size_t i = 1; i < t.points().size(); ++i)
        CHECK(t.points()[i].volume > t.points()[i - 1].volume);

    auto tmp = std::filesystem::temp_directory_path() / "slat_voltab_test.csv";
    t.save_csv(tmp, "test");
    ArchVolumeTable loaded =
        ArchVolumeTable::load_csv(tmp, MetricChoice::frobenius, t.kappa());
    CHECK(loaded.volume(0.35) == doctest::Approx(t.volume(0.35)).epsilon(1e-12));
    CHECK(loaded.fingerprint() == t.fingerprint());
    std::filesystem::remove(tmp);
}

TEST_CASE("ball volume regularity: relative gap bounded by c eps / r") {
    const ArchVolumeTable& t = shared_table();
    const auto& pts = t.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double r = pts[i].r, eps = pts[j].r - r;
            if (eps > r / 2) break;
            double gap = (pts[j].volume - pts[i].volume) / pts[i].volume;
            CHECK(gap <= 8.0 * eps / r);
        }
}

TEST_CASE("regions: membership, translation, circumscription") {
    RegionE ball = RegionE::ball(Mat2d::identity(), 0.5);
    CHECK(ball.contains(Mat2d::identity()));
    CHECK_FALSE(ball.contains(Mat2d{2, 0, 0, 0.5}));

    Rng rng(41);
    Mat2d x = haar_in_norm_ball(rng, 2.0);
    RegionE moved = ball.translated(x);
    for (int i = 0; i < 500; ++i) {
        Mat2d g = haar_in_norm_ball(rng, 3.0);
        bool in_moved = moved.contains(g);
        bool in_base = ball.contains(g * x.inverse_unimodular());
        CHECK(in_moved == in_base);
        if (in_moved) {
            RegionE::Ball c = moved.circumscribing();
            CHECK(frobenius_distance(g, c.center) <= c.radius + 1e-9);
        }
    }

    RegionE nb = RegionE::norm_ball(3.0);
    CHECK(nb.contains(Mat2d::identity()));
    CHECK(nb.contains(Mat2d{2, 0, 0, 0.5}));
    CHECK_FALSE(nb.contains(Mat2d{3, 0, 0, 1.0 / 3}));
}

TEST_CASE("inner and outer regions") {
    RegionE ball = RegionE::ball(Mat2d::identity(), 0.5);
    auto [inner, outer] = region_inner_outer(ball, 0.1);
    CHECK(inner.radius == doctest::Approx(0.4));
    CHECK(outer.radius == doctest::Approx(0.6));
    CHECK_THROWS_AS(region_inner_outer(RegionE::ball(Mat2d::identity(), 0.1), 0.2),
                    std::domain_error);
    CHECK_THROWS_AS(region_inner_outer(RegionE::box(Mat2d::identity(), {1, 1, 1, 1}), 0.1),
                    std::invalid_argument);

    // (RS)-style volume gap control: m(E+ \ E-) <= C eps, with C on the
    // scale of the boundary area ~ d vol(r)/r.
    const ArchVolumeTable& t = shared_table();
    for (double eps : {0.05, 0.1, 0.15}) {
        auto [in_e, out_e] = region_inner_outer(ball, eps);
        double gap = t.volume(out_e.radius) - t.volume(in_e.radius);
        CHECK(gap / eps < 10.0 * t.volume(0.5) / 0.5);
        CHECK(gap > 0);
    }
}

TEST_CASE("n_of_e") {
    NofEOptions opts;
    opts.samples_per_candidate = 50000;
    CHECK(n_of_e(RegionE::ball(Mat2d::identity(), 0.1), opts) == 1);

    // measure-zero region: a box with one zero half-width
    CHECK(n_of_e(RegionE::box(Mat2d::identity(), {0.0, 0.3, 0.3, 0.3}), opts) == 0);

    // N(E) is computed for E, not E(x): translation does not change it.
    Rng rng(2);
    RegionE moved = RegionE::ball(Mat2d::identity(), 0.1).translated(haar_in_norm_ball(rng, 2.0));
    CHECK(n_of_e(moved, opts) == 1);
}

TEST_CASE("region volume via Monte Carlo matches the table on identity balls") {
    HaarCalibration cal = analytic_cal();
    McEstimate est = region_volume_mc(RegionE::ball(Mat2d::identity(), 0.5), cal, 400000, 9, 0);
    double tab = shared_table().volume(0.5);
    CHECK(std::abs(est.value - tab) < 5 * (est.stderr_ + shared_table().stderr_at(0.5)));
}
