#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pythagorion/monomial.hpp"

namespace pythagorion {

/// The n-note Pythagorean scale: the n + 1 values 3^b / 2^a with
/// 0 <= b < n normalized into [1, 2], plus the octave 2 itself, sorted
/// strictly ascending by the exact comparator.
struct PythagoreanScale {
    std::int64_t n = 0;
    std::vector<Monomial> notes;
};

/// Successive quotients notes[j+1] / notes[j]; n steps, product exactly 2.
struct StepSequence {
    std::vector<Monomial> steps;
};

/// The scale's notes in generation (circle-of-fifths) order: unison, the
/// powers of three in exponent order, then the octave.  Sorting this list
/// yields build_scale(n).
inline std::vector<Monomial> scale_generation_order(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("scale size must be >= 1");
    std::vector<Monomial> notes;
    notes.reserve(static_cast<std::size_t>(n) + 1);
    notes.push_back({0, 0});
    for (std::int64_t b = 1; b < n; ++b) notes.push_back({b, octave_exponent(b)});
    notes.push_back({0, -1});
    return notes;
}

inline PythagoreanScale build_scale(std::int64_t n) {
    PythagoreanScale scale{n, scale_generation_order(n)};
    std::sort(scale.notes.begin(), scale.notes.end(), less);
    return scale;
}

inline StepSequence step_sequence(const PythagoreanScale& scale) {
    StepSequence seq;
    seq.steps.reserve(scale.notes.size() - 1);
    for (std::size_t j = 0; j + 1 < scale.notes.size(); ++j)
        seq.steps.push_back(mul(scale.notes[j + 1], inverse(scale.notes[j])));
    return seq;
}

}  // namespace pythagorion
