#include "pythagorion/contfrac.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "oracle.hpp"

using namespace pythagorion;

TEST_CASE("partial quotients of log2(3)", "[contfrac]") {
    CHECK(cf_log2_3(1).terms == std::vector<std::int64_t>{1});
    CHECK(cf_log2_3(4).terms == std::vector<std::int64_t>{1, 1, 1, 2});
    CHECK(cf_log2_3(10).terms == std::vector<std::int64_t>{1, 1, 1, 2, 2, 3, 1, 5, 2, 23});
    CHECK_THROWS_AS(cf_log2_3(0), std::invalid_argument);
    CHECK_THROWS_AS(cf_log2_3(13), std::out_of_range);
    CHECK(cf_log2_3(13, 16).terms.size() == 13);
}

TEST_CASE("convergent recursion", "[contfrac]") {
    auto const conv = convergents(cf_log2_3(10));
    CHECK(conv[0] == Convergent{-1, 1, 0});
    CHECK(conv[1] == Convergent{0, 1, 1});
    CHECK(conv[2] == Convergent{1, 2, 1});
    CHECK(conv[3] == Convergent{2, 3, 2});
    CHECK(conv[4] == Convergent{3, 8, 5});
    CHECK(conv[5] == Convergent{4, 19, 12});
    CHECK(conv[6] == Convergent{5, 65, 41});

    SECTION("reduced fractions, strictly growing denominators") {
        for (std::size_t j = 1; j < conv.size(); ++j) {
            CHECK(std::gcd(conv[j].num, conv[j].den) == 1);
            if (conv[j].index >= 2) CHECK(conv[j].den > conv[j - 1].den);
        }
    }
    CHECK_THROWS_AS(convergents(ContinuedFraction{}), std::invalid_argument);
}

TEST_CASE("2^a_i - 3^b_i alternates in sign", "[contfrac]") {
    auto const conv = convergents(cf_log2_3(10));
    int previous = 0;
    for (std::size_t j = 1; j < conv.size() && conv[j].index <= 8; ++j) {
        mpz_class const diff = oracle::pow2(conv[j].num) - oracle::pow3(conv[j].den);
        int const sign = mpz_sgn(diff.get_mpz_t());
        REQUIRE(sign != 0);
        if (previous != 0) REQUIRE(sign == -previous);
        previous = sign;
    }
}

TEST_CASE("semi-convergent list", "[contfrac]") {
    auto const list = semiconvergents(50);

    SECTION("the i = 2 family interpolates from 2/1") {
        REQUIRE(list.size() >= 2);
        CHECK(list[0] == SemiConvergent{2, 1, 2, 0});
        CHECK(list[1] == SemiConvergent{5, 3, 2, 1});
    }
    SECTION("first eight distinct fractions, in generation order") {
        std::vector<std::pair<std::int64_t, std::int64_t>> head;
        for (std::size_t j = 0; j < 8; ++j) head.push_back({list[j].num, list[j].den});
        CHECK(head == std::vector<std::pair<std::int64_t, std::int64_t>>{
                          {2, 1}, {5, 3}, {3, 2}, {11, 7}, {8, 5}, {27, 17}, {46, 29}, {19, 12}});
    }
    SECTION("each fraction appears exactly once") {
        std::set<std::pair<std::int64_t, std::int64_t>> seen;
        for (const auto& sc : list) CHECK(seen.insert({sc.num, sc.den}).second);
    }
    SECTION("the defining linear combination holds") {
        auto const conv = convergents(cf_log2_3(10));
        auto a = [&](std::int64_t i) { return conv[static_cast<std::size_t>(i + 1)].num; };
        auto b = [&](std::int64_t i) { return conv[static_cast<std::size_t>(i + 1)].den; };
        for (const auto& sc : list) {
            CHECK(sc.num == a(sc.i - 1) + sc.k * a(sc.i));
            CHECK(sc.den == b(sc.i - 1) + sc.k * b(sc.i));
        }
    }
    SECTION("denominators at or below 50") {
        // Reference enumeration straight from the definition: every family
        // i >= 1 with the full 0 <= k <= k_{i+1} range, duplicates and all.
        auto const cf = cf_log2_3(10);
        auto const conv = convergents(cf);
        std::set<std::int64_t> expected;
        for (std::size_t i = 1; i + 2 < conv.size(); ++i) {
            std::int64_t const b_prev = conv[i].den;       // b_{i-1}
            std::int64_t const b_cur = conv[i + 1].den;    // b_i
            std::int64_t const k_next = cf.terms[i + 1];   // k_{i+1}
            for (std::int64_t k = 0; k <= k_next; ++k)
                if (b_prev + k * b_cur <= 50) expected.insert(b_prev + k * b_cur);
        }
        CHECK(expected == std::set<std::int64_t>{1, 2, 3, 5, 7, 12, 17, 29, 41});

        std::set<std::int64_t> emitted;
        for (const auto& sc : list) emitted.insert(sc.den);
        CHECK(emitted == expected);
    }
    CHECK_THROWS_AS(semiconvergents(0), std::invalid_argument);
    CHECK_THROWS_AS(semiconvergents(100000, 5), std::out_of_range);
}

TEST_CASE("semi-convergent denominator witnesses", "[contfrac]") {
    auto const hit12 = is_semiconvergent_denominator(12);
    REQUIRE(hit12.has_value());
    CHECK(hit12->num == 19);
    CHECK(hit12->den == 12);

    auto const hit7 = is_semiconvergent_denominator(7);
    REQUIRE(hit7.has_value());
    CHECK(hit7->num == 11);
    CHECK(hit7->den == 7);

    CHECK_FALSE(is_semiconvergent_denominator(6).has_value());
    CHECK(is_semiconvergent_denominator(1).has_value());
    CHECK_THROWS_AS(is_semiconvergent_denominator(0), std::invalid_argument);

    SECTION("witness satisfies its own identity") {
        auto const conv = convergents(cf_log2_3(12, 12));
        auto b = [&](std::int64_t i) { return conv[static_cast<std::size_t>(i + 1)].den; };
        for (std::int64_t n = 1; n <= 400; ++n) {
            auto const w = is_semiconvergent_denominator(n);
            if (!w) continue;
            CHECK(w->den == n);
            CHECK(b(w->i - 1) + w->k * b(w->i) == n);
        }
    }
}

TEST_CASE("convergents are best approximations", "[contfrac][property]") {
    // Every convergent a/b with b <= 700 beats every fraction p/q, q < b.
    // Only the two integers bracketing q*log2(3) can compete for a given q,
    // and a/b is closer than p/q exactly when log2(3) falls on the a/b side
    // of their midpoint (aq + pb) / (2bq): an exact comparison of 3^{2bq}
    // with 2^{aq + pb}.
    auto const conv = convergents(cf_log2_3(10));
    auto const floors = oracle::octave_exponents(700);  // floor(q * log2 3)
    for (const auto& c : conv) {
        if (c.index < 1 || c.den > 700) continue;
        mpz_class const step3 = oracle::pow3(2 * c.den);  // 3^{2b}
        mpz_class power3 = 1;                             // 3^{2bq}, grown per q
        for (std::int64_t q = 1; q < c.den; ++q) {
            power3 *= step3;
            std::int64_t const floor_q = floors[static_cast<std::size_t>(q - 1)];
            for (std::int64_t p : {floor_q, floor_q + 1}) {
                // side of p/q relative to a/b by cross multiplication
                std::int64_t const side = p * c.den - c.num * q;
                REQUIRE(side != 0);
                mpz_class const mid = oracle::pow2(c.num * q + p * c.den);
                int const cmp = mpz_cmp(power3.get_mpz_t(), mid.get_mpz_t());
                INFO("convergent " << c.num << "/" << c.den << " vs " << p << "/" << q);
                if (side > 0)
                    REQUIRE(cmp < 0);  // log2 3 below the midpoint
                else
                    REQUIRE(cmp > 0);
            }
        }
    }
}
