#include <doctest.h>

#include "slat/padic_volume.hpp"

using namespace slat;

TEST_CASE("sphere volume closed form and frozen oracle values") {
    CHECK(sphere_volume(2, 0) == 1);
    CHECK(sphere_volume(2, 1) == 6);
    CHECK(sphere_volume(3, 1) == 12);
    CHECK(sphere_volume(2, 2) == 24);
    CHECK(sphere_volume(5, 1) == 30);

    // Values computed by the sublattice enumeration, frozen.
    CHECK(sphere_volume_oracle(2, 1) == 6);
    CHECK(sphere_volume_oracle(2, 2) == 24);
    CHECK(sphere_volume_oracle(5, 1) == 30);
}

TEST_CASE("sphere volume equals the oracle for small prime powers") {
    for (long long p : {2, 3, 5, 7})
        for (int k = 1; k <= 3; ++k)
            CHECK(sphere_volume(p, k) == sphere_volume_oracle(p, k));
}

TEST_CASE("oracle guards its loop bound") {
    CHECK_THROWS_AS(sphere_volume_oracle(7, 4), std::range_error); // 7^8 > 10^6
    CHECK_THROWS_AS(sphere_volume_oracle(6, 1), std::invalid_argument);
}

TEST_CASE("padic ball volume accumulates sphere volumes") {
    PlaceSet S2({2});
    CHECK(ball_volume_padic(S2, 1) == 1);
    CHECK(ball_volume_padic(S2, 2) == 7);
    CHECK(ball_volume_padic(S2, 4) == 31);
    CHECK(ball_volume_padic(S2, 8) == 127);
    CHECK(ball_volume_padic(S2, 3) == 7); // steps down to the last realizable height
    CHECK(ball_volume_padic(S2, 0) == 0);
}

TEST_CASE("volume table is strictly increasing with the right increments") {
    PlaceSet S({2, 3});
    SphereVolumeTable t(S, 200);
    BigInt prev = 0;
    for (const auto& row : t.rows()) {
        CHECK(row.ball == prev + row.sphere);
        CHECK(row.ball > prev);
        CHECK(row.sphere == sphere_volume_product(row.h));
        prev = row.ball;
    }
}

TEST_CASE("sphere volumes dominate h^2 (growth lower bound)") {
    PlaceSet S({2, 3});
    SphereVolumeTable table(S, 300);
    for (const auto& row : table.rows()) {
        BigInt h2 = BigInt(row.h.value) * row.h.value;
        CHECK(row.sphere >= h2);
    }
}

TEST_CASE("growth exponent fits") {
    CHECK(growth_exponent_a(PlaceSet({2}), 1024) == doctest::Approx(2.0).epsilon(0.005));
    CHECK(growth_exponent_a(PlaceSet({3}), 729) == doctest::Approx(2.0).epsilon(0.005));
    CHECK_THROWS_AS(growth_exponent_a(PlaceSet({5}), 4), std::domain_error);
}
