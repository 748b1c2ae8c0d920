#include <doctest.h>

#include "slat/congruence.hpp"

using namespace slat;

TEST_CASE("sl2 group orders") {
    CHECK(sl2_order_enumerated(1) == 1);
    CHECK(sl2_order_enumerated(2) == 6);
    CHECK(sl2_order_enumerated(3) == 24);
    // Formula cross-checked against enumeration on the overlap.
    for (std::uint32_t q = 2; q <= 16; ++q)
        CHECK(sl2_order_formula(q) == sl2_order_enumerated(q));
    CHECK(sl2_order(60) == sl2_order_formula(60));
}

TEST_CASE("congruence measures") {
    CHECK(CongruenceCondition::full().measure() == Rational(1));
    CHECK(CongruenceCondition::identity_mod(3).measure() == Rational(BigInt(1), BigInt(24)));
    CHECK(CongruenceCondition::upper_triangular_mod(2).measure() ==
          Rational(BigInt(1), BigInt(3)));
    // Full residue set collapses to the trivial condition.
    std::vector<ModMat2> all;
    for (std::uint64_t key : sl2_elements(3)) {
        ModMat2 m;
        m.q = 3;
        m.e = {std::uint32_t(key >> 48) & 0xffff, std::uint32_t(key >> 32) & 0xffff,
               std::uint32_t(key >> 16) & 0xffff, std::uint32_t(key) & 0xffff};
        all.push_back(m);
    }
    CHECK(all.size() == 24);
    CHECK(CongruenceCondition::from_residues(3, all).is_full());
}

TEST_CASE("measure is additive over disjoint residue sets") {
    auto keys = sl2_elements(5);
    std::vector<ModMat2> first, second;
    auto unpack = [](std::uint64_t key) {
        ModMat2 m;
        m.q = 5;
        m.e = {std::uint32_t(key >> 48) & 0xffff, std::uint32_t(key >> 32) & 0xffff,
               std::uint32_t(key >> 16) & 0xffff, std::uint32_t(key) & 0xffff};
        return m;
    };
    for (std::size_t i = 0; i < 30; ++i) first.push_back(unpack(keys[i]));
    for (std::size_t i = 30; i < 75; ++i) second.push_back(unpack(keys[i]));
    std::vector<ModMat2> both = first;
    both.insert(both.end(), second.begin(), second.end());
    Rational sum = CongruenceCondition::from_residues(5, first).measure() +
                   CongruenceCondition::from_residues(5, second).measure();
    CHECK(sum == CongruenceCondition::from_residues(5, both).measure());
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(CongruenceCondition::from_residues(3, {}), std::invalid_argument);
    ModMat2 bad;
    bad.q = 3;
    bad.e = {2, 0, 0, 1}; // det = 2 mod 3
    CHECK_THROWS_AS(CongruenceCondition::from_residues(3, {bad}), std::invalid_argument);
    PlaceSet S({2});
    CHECK_THROWS_AS(CongruenceCondition::identity_mod(2).require_coprime_to(S),
                    std::invalid_argument);
    CHECK_NOTHROW(CongruenceCondition::identity_mod(3).require_coprime_to(S));
}

TEST_CASE("membership and subsets") {
    auto W = CongruenceCondition::identity_mod(3);
    auto U = CongruenceCondition::upper_triangular_mod(3);
    CHECK(W.contains(Mat2Q::identity()));
    CHECK(W.subset_of(U));
    CHECK_FALSE(U.subset_of(W));
    CHECK(U.subset_of(CongruenceCondition::full()));
    Mat2Q shear(Rational(1), Rational(1), Rational(0), Rational(1));
    CHECK_FALSE(W.contains(shear));
    CHECK(U.contains(shear));
    // Upper triangular mod 3: 6 units-pairs x 3 shears / = |units| * q = 2*3.
    CHECK(U.residue_count() == 6);
}
