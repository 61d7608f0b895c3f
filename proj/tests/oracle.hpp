// Test-only reference implementations.  Everything here compares explicit
// big integers built by multiplication and shifting; none of it shares the
// bit-length shortcut or the sorted construction used by the library, so
// agreement is meaningful.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "pythagorion/monomial.hpp"

namespace oracle {

inline mpz_class pow3(std::int64_t e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 3, static_cast<unsigned long>(e));
    return out;
}

inline mpz_class pow2(std::int64_t e) {
    mpz_class out = 1;
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return out;
}

/// Cross-multiplied comparison of 3^{b1}/2^{a1} with 3^{b2}/2^{a2}:
/// both sides are scaled by the common denominator and compared as
/// explicit integers.
inline int compare(pythagorion::Monomial lhs, pythagorion::Monomial rhs) {
    std::int64_t const min_b = std::min(lhs.pow3, rhs.pow3);
    std::int64_t const min_a = std::min(lhs.pow2, rhs.pow2);
    mpz_class const left = pow3(lhs.pow3 - min_b) * pow2(rhs.pow2 - min_a);
    mpz_class const right = pow3(rhs.pow3 - min_b) * pow2(lhs.pow2 - min_a);
    return mpz_cmp(left.get_mpz_t(), right.get_mpz_t());
}

/// Octave exponents for b = 1..max_b by maintaining 3^b and the bracketing
/// power of two explicitly: multiply by three, then double until the value
/// fits below the next power of two again.
inline std::vector<std::int64_t> octave_exponents(std::int64_t max_b) {
    std::vector<std::int64_t> out;  // out[b-1] = a(b)
    mpz_class value = 1;
    mpz_class upper = 2;  // 2^{a+1}
    std::int64_t a = 0;
    for (std::int64_t b = 1; b <= max_b; ++b) {
        value *= 3;
        while (value >= upper) {
            upper *= 2;
            ++a;
        }
        out.push_back(a);
    }
    return out;
}

/// The n-note scale built the slow way: normalize each power of three by
/// repeated doubling, then sort with the cross-multiplied comparator.
inline std::vector<pythagorion::Monomial> build_scale(std::int64_t n) {
    std::vector<pythagorion::Monomial> notes;
    notes.push_back({0, 0});
    std::vector<std::int64_t> const a = octave_exponents(n - 1);
    for (std::int64_t b = 1; b < n; ++b) notes.push_back({b, a[static_cast<std::size_t>(b - 1)]});
    notes.push_back({0, -1});
    std::sort(notes.begin(), notes.end(), [](pythagorion::Monomial x, pythagorion::Monomial y) {
        return oracle::compare(x, y) < 0;
    });
    return notes;
}

inline std::vector<pythagorion::Monomial> steps(const std::vector<pythagorion::Monomial>& notes) {
    std::vector<pythagorion::Monomial> out;
    for (std::size_t j = 0; j + 1 < notes.size(); ++j)
        out.push_back({notes[j + 1].pow3 - notes[j].pow3, notes[j + 1].pow2 - notes[j].pow2});
    return out;
}

inline std::size_t distinct_step_count(std::int64_t n) {
    std::vector<pythagorion::Monomial> st = steps(build_scale(n));
    std::sort(st.begin(), st.end(), [](pythagorion::Monomial x, pythagorion::Monomial y) {
        return x.pow3 != y.pow3 ? x.pow3 < y.pow3 : x.pow2 < y.pow2;
    });
    return static_cast<std::size_t>(std::unique(st.begin(), st.end()) - st.begin());
}

}  // namespace oracle
