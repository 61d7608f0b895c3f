#include "pythagorion/monomial.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracle.hpp"

using namespace pythagorion;

TEST_CASE("compare orders exact values", "[monomial]") {
    SECTION("ascending neighbors of the 5-note scale") {
        CHECK(compare({2, 3}, {4, 6}) == std::strong_ordering::less);
    }
    SECTION("identical exponents are equal") {
        CHECK(compare({5, 7}, {5, 7}) == std::strong_ordering::equal);
    }
    SECTION("the comma 3^12/2^19 exceeds one") {
        // 531441 > 524288
        CHECK(compare({12, 19}, {0, 0}) == std::strong_ordering::greater);
        CHECK(531441 > 524288);
    }
    SECTION("pure powers of two") {
        CHECK(compare({0, 1}, {0, 0}) == std::strong_ordering::less);
        CHECK(compare({0, -1}, {0, 0}) == std::strong_ordering::greater);
    }
}

TEST_CASE("mul and inverse act on exponents", "[monomial]") {
    CHECK(mul({2, 3}, {2, 3}) == Monomial{4, 6});
    // I_3 * J_3 = 4/3
    CHECK(mul({2, 3}, {-3, -5}) == Monomial{-1, -2});
    Monomial const m{7, 11};
    CHECK(mul(m, inverse(m)) == Monomial{0, 0});
    CHECK(pow(m, 3) == Monomial{21, 33});
}

TEST_CASE("cents of reference intervals", "[monomial]") {
    CHECK(cents({0, 0}) == 0.0);
    CHECK(cents({0, -1}) == 1200.0);
    CHECK_THAT(cents({1, 1}), Catch::Matchers::WithinAbs(701.9550008653874177, 1e-9));
    CHECK_THAT(cents({-5, -8}), Catch::Matchers::WithinAbs(90.224995, 1e-5));
}

TEST_CASE("octave_exponent places powers of three", "[monomial]") {
    CHECK(octave_exponent(1) == 1);
    CHECK(octave_exponent(2) == 3);
    CHECK(octave_exponent(7) == 11);
    CHECK(octave_exponent(12) == 19);
    CHECK_THROWS_AS(octave_exponent(0), std::domain_error);
    CHECK_THROWS_AS(octave_exponent(-3), std::domain_error);
}

TEST_CASE("octave_exponent is exact for every b up to 2000", "[monomial][property]") {
    auto const expected = oracle::octave_exponents(2000);
    for (std::int64_t b = 1; b <= 2000; ++b) {
        INFO("b = " << b);
        REQUIRE(octave_exponent(b) == expected[static_cast<std::size_t>(b - 1)]);
    }
}

namespace {

Monomial random_monomial(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> b_dist(-200, 200);
    std::uniform_int_distribution<std::int64_t> a_dist(-320, 320);
    return {b_dist(rng), a_dist(rng)};
}

}  // namespace

TEST_CASE("comparator trichotomy, antisymmetry, float agreement", "[monomial][property]") {
    std::mt19937_64 rng(20260810);
    for (int trial = 0; trial < 10000; ++trial) {
        Monomial const x = random_monomial(rng);
        Monomial const y = random_monomial(rng);
        auto const order = compare(x, y);
        auto const reverse = compare(y, x);
        if (order == std::strong_ordering::equal) {
            REQUIRE(x == y);
            REQUIRE(reverse == std::strong_ordering::equal);
        } else if (order == std::strong_ordering::less) {
            REQUIRE(reverse == std::strong_ordering::greater);
        } else {
            REQUIRE(reverse == std::strong_ordering::less);
        }
        // The exact path is authoritative; floats only get a vote when the
        // gap is far above double noise.
        double const gap = cents(x) - cents(y);
        if (std::abs(gap) > 1e-6) {
            REQUIRE((gap < 0) == (order == std::strong_ordering::less));
        }
        REQUIRE(oracle::compare(x, y) == (order == std::strong_ordering::less    ? -1
                                          : order == std::strong_ordering::equal ? 0
                                                                                 : 1));
    }
}

TEST_CASE("comparator is transitive on random triples", "[monomial][property]") {
    std::mt19937_64 rng(987654321);
    for (int trial = 0; trial < 10000; ++trial) {
        Monomial a = random_monomial(rng);
        Monomial b = random_monomial(rng);
        Monomial c = random_monomial(rng);
        if (less(b, a)) std::swap(a, b);
        if (less(c, b)) {
            std::swap(b, c);
            if (less(b, a)) std::swap(a, b);
        }
        REQUIRE_FALSE(less(b, a));
        REQUIRE_FALSE(less(c, b));
        REQUIRE_FALSE(less(c, a));
    }
}
