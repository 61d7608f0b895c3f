#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace pythagorion {

/// log2(3), correct to 36 significant digits.  Display and export only;
/// no comparison ever consults it.
inline constexpr double kLog2Of3 = 1.58496250072115618145373894394781651;

/// An exact number of the form 3^pow3 / 2^pow2.
///
/// Every note and every step ratio in this library is such a number, and
/// since log2(3) is irrational, distinct exponent pairs always represent
/// distinct values.  Equality is therefore plain field equality; value
/// ordering goes through compare() below.
struct Monomial {
    std::int64_t pow3 = 0;
    std::int64_t pow2 = 0;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline Monomial mul(Monomial lhs, Monomial rhs) {
    return {lhs.pow3 + rhs.pow3, lhs.pow2 + rhs.pow2};
}

inline Monomial operator*(Monomial lhs, Monomial rhs) { return mul(lhs, rhs); }

inline Monomial inverse(Monomial m) { return {-m.pow3, -m.pow2}; }

/// m^e by exponent scaling.
inline Monomial pow(Monomial m, std::int64_t e) { return {m.pow3 * e, m.pow2 * e}; }

namespace detail {

// Exponents at or below this are served from a per-thread table; larger ones
// get a one-off exponentiation.  Dense table extension is quadratic in the
// cap, so keep it moderate.
inline constexpr std::int64_t kPow3TableCap = 1 << 16;

// floors[b] = floor(b * log2(3)), i.e. the bit length of 3^b minus one.
struct Pow3BitTable {
    std::vector<std::int64_t> floors{0};
    mpz_class power{1};

    std::int64_t at(std::int64_t b) {
        while (std::cmp_less_equal(floors.size(), b)) {
            power *= 3;
            floors.push_back(
                static_cast<std::int64_t>(mpz_sizeinbase(power.get_mpz_t(), 2)) - 1);
        }
        return floors[static_cast<std::size_t>(b)];
    }
};

/// floor(b * log2(3)) for b >= 0, computed exactly: 2^a <= 3^b < 2^{a+1}
/// holds precisely for a = bit_length(3^b) - 1, and the power of three is
/// evaluated in arbitrary precision.
inline std::int64_t floor_log2_pow3(std::int64_t b) {
    if (b <= 0) return 0;
    if (b <= kPow3TableCap) {
        thread_local Pow3BitTable table;
        return table.at(b);
    }
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 3, static_cast<unsigned long>(b));
    return static_cast<std::int64_t>(mpz_sizeinbase(power.get_mpz_t(), 2)) - 1;
}

}  // namespace detail

/// Exact value order of two Monomials.
///
/// Reduces to 3^db versus 2^da with db = pow3 difference, da = pow2
/// difference.  For db > 0 the powers are never equal (irrationality), and
/// 3^db > 2^da exactly when floor(log2(3^db)) >= da, which the big-integer
/// bit length of 3^db settles.  No floating point is involved.
inline std::strong_ordering compare(Monomial lhs, Monomial rhs) {
    std::int64_t db = lhs.pow3 - rhs.pow3;
    std::int64_t da = lhs.pow2 - rhs.pow2;
    if (db == 0) {
        // Ratio is 2^{-da}.
        if (da == 0) return std::strong_ordering::equal;
        return da < 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    bool flipped = false;
    if (db < 0) {
        db = -db;
        da = -da;
        flipped = true;
    }
    bool const greater = detail::floor_log2_pow3(db) >= da;
    if (greater != flipped) return std::strong_ordering::greater;
    return std::strong_ordering::less;
}

inline bool less(Monomial lhs, Monomial rhs) {
    return compare(lhs, rhs) == std::strong_ordering::less;
}

/// 1200 * log2(value).  Advisory precision: good to well under a
/// micro-cent for every exponent this library produces.
inline double cents(Monomial m) {
    return 1200.0 * (static_cast<double>(m.pow3) * kLog2Of3 - static_cast<double>(m.pow2));
}

/// The unique integer a with 1 < 3^b / 2^a < 2 for b >= 1.  Rejects b < 1:
/// at b = 0 both a = 0 and a = -1 land on an endpoint of the octave.
inline std::int64_t octave_exponent(std::int64_t b) {
    if (b < 1) throw std::domain_error("octave_exponent: exponent must be >= 1");
    return detail::floor_log2_pow3(b);
}

}  // namespace pythagorion
