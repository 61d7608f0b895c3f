#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pythagorion/contfrac.hpp"
#include "pythagorion/monomial.hpp"
#include "pythagorion/scale.hpp"

namespace pythagorion {

/// Distinct steps of the n-note scale with multiplicities, ascending by value.
struct StepProfile {
    std::int64_t n = 0;
    std::vector<std::pair<Monomial, std::int64_t>> distinct_steps;
    int k = 0;
};

/// The two step generators attached to convergent index i:
/// i_step = 3^{b_{i-1}} / 2^{a_{i-1}} and j_step = 3^{b_{i-1}-b_i} / 2^{a_{i-1}-a_i}.
/// Whether they or their inverses appear in a scale depends on the type below.
struct StepBasis {
    std::int64_t i = 0;
    Monomial i_step;
    Monomial j_step;
};

/// Block shape of a convergent-sized scale: runs of I-steps closed by one
/// J-step (A), or one J-inverse step leading a run of I-inverse steps (B).
enum class ScaleType { A, B };

inline char scale_type_name(ScaleType type) { return type == ScaleType::A ? 'A' : 'B'; }

/// One block: where it starts in the scale and how many I-steps it carries
/// (the J-step is implied; every block has exactly one).
struct Block {
    std::int64_t start_note = 0;
    std::int64_t i_steps = 0;
};

struct BlockDecomposition {
    std::int64_t i = 0;
    ScaleType type = ScaleType::A;
    StepBasis basis;
    PythagoreanScale scale;
    StepSequence steps;
    std::vector<Block> blocks;
};

/// The three observed step sizes of a scale whose size is not a
/// semi-convergent denominator, sitting strictly inside deletion depth k of
/// the ambient b_i-note scale.
struct ThreeStepWitness {
    std::int64_t i = 0;
    std::int64_t k = 0;
    Monomial run_step;
    Monomial short_combo;  // run_step^{k-1} merged into the block step
    Monomial long_combo;   // run_step^k merged into the block step
};

struct VerificationEntry {
    std::int64_t n = 0;
    int k = 0;
    std::optional<SemiConvergent> witness;
    bool ok = false;
};

struct VerificationReport {
    std::int64_t max_n = 0;
    std::vector<VerificationEntry> entries;  // n = 2 .. max_n
    std::vector<std::int64_t> counterexamples;
    bool verdict = false;

    std::vector<std::int64_t> two_step_sizes() const {
        std::vector<std::int64_t> out;
        for (const auto& e : entries)
            if (e.k == 2) out.push_back(e.n);
        return out;
    }
};

inline StepProfile step_profile_of(std::int64_t n, const StepSequence& seq) {
    std::vector<Monomial> sorted = seq.steps;
    std::sort(sorted.begin(), sorted.end(), less);
    StepProfile profile;
    profile.n = n;
    for (const Monomial& s : sorted) {
        if (profile.distinct_steps.empty() || !(profile.distinct_steps.back().first == s))
            profile.distinct_steps.push_back({s, 0});
        ++profile.distinct_steps.back().second;
    }
    profile.k = static_cast<int>(profile.distinct_steps.size());
    return profile;
}

inline StepProfile step_profile(std::int64_t n) {
    return step_profile_of(n, step_sequence(build_scale(n)));
}

inline StepBasis step_basis_from(const ConvergentTable& table, std::int64_t i) {
    if (i < 1) throw std::out_of_range("step basis index must be >= 1");
    return {i,
            {table.den(i - 1), table.num(i - 1)},
            {table.den(i - 1) - table.den(i), table.num(i - 1) - table.num(i)}};
}

inline StepBasis step_basis(std::int64_t i, int term_cap = kDefaultCfTermCap) {
    if (i < 1) throw std::out_of_range("step basis index must be >= 1");
    ConvergentTable table(term_cap);
    table.ensure_terms(i + 1);
    return step_basis_from(table, i);
}

/// Side of the i-th convergent: A when 2^{a_i} > 3^{b_i}.  The block
/// machinery treats this as a prediction and cross-checks it against the
/// observed first step rather than trusting it.
inline ScaleType scale_type_from_sign(const ConvergentTable& table, std::int64_t i) {
    return detail::floor_log2_pow3(table.den(i)) < table.num(i) ? ScaleType::A
                                                                : ScaleType::B;
}

inline BlockDecomposition decompose_blocks_from(const ConvergentTable& table, std::int64_t i) {
    if (i < 2) throw std::out_of_range("block decomposition needs i >= 2");
    BlockDecomposition dec;
    dec.i = i;
    dec.basis = step_basis_from(table, i);
    dec.scale = build_scale(table.den(i));
    dec.steps = step_sequence(dec.scale);
    Monomial const i_step = dec.basis.i_step;
    Monomial const j_step = dec.basis.j_step;
    Monomial const i_inv = inverse(i_step);
    Monomial const j_inv = inverse(j_step);

    const std::vector<Monomial>& st = dec.steps.steps;
    std::string const scale_name = std::to_string(table.den(i)) + "-note scale";
    if (st.front() == i_step) {
        dec.type = ScaleType::A;
    } else if (st.front() == j_inv) {
        dec.type = ScaleType::B;
    } else {
        throw std::runtime_error("block structure violated: first step of the " + scale_name +
                                 " is neither I nor J^-1");
    }
    if (dec.type != scale_type_from_sign(table, i))
        throw std::runtime_error("block type of the " + scale_name +
                                 " disagrees with the side of convergent " + std::to_string(i));

    if (dec.type == ScaleType::A) {
        std::int64_t start = 0, run = 0;
        for (std::size_t j = 0; j < st.size(); ++j) {
            if (st[j] == i_step) {
                ++run;
            } else if (st[j] == j_step) {
                dec.blocks.push_back({start, run});
                start = static_cast<std::int64_t>(j) + 1;
                run = 0;
            } else {
                throw std::runtime_error("block structure violated: stray step in the " + scale_name);
            }
        }
        if (run != 0)
            throw std::runtime_error("block structure violated: trailing I-steps in the " + scale_name);
    } else {
        std::int64_t start = 0, run = 0;
        bool open = false;
        for (std::size_t j = 0; j < st.size(); ++j) {
            if (st[j] == j_inv) {
                if (open) dec.blocks.push_back({start, run});
                open = true;
                start = static_cast<std::int64_t>(j);
                run = 0;
            } else if (st[j] == i_inv) {
                if (!open)
                    throw std::runtime_error("block structure violated: I^-1 before any J^-1 in the " +
                                             scale_name);
                ++run;
            } else {
                throw std::runtime_error("block structure violated: stray step in the " + scale_name);
            }
        }
        if (open) dec.blocks.push_back({start, run});
    }

    if (std::ssize(dec.blocks) != table.den(i - 1))
        throw std::runtime_error("block structure violated: " + scale_name + " has " +
                                 std::to_string(dec.blocks.size()) + " blocks, expected " +
                                 std::to_string(table.den(i - 1)));
    std::int64_t const ki = table.term(i);
    for (const Block& block : dec.blocks)
        if (block.i_steps != ki && block.i_steps != ki - 1)
            throw std::runtime_error("block structure violated: block with " +
                                     std::to_string(block.i_steps) + " I-steps in the " + scale_name);
    return dec;
}

inline BlockDecomposition decompose_blocks(std::int64_t i, int term_cap = kDefaultCfTermCap) {
    if (i < 2) throw std::out_of_range("block decomposition needs i >= 2");
    ConvergentTable table(term_cap);
    table.ensure_terms(i + 1);
    return decompose_blocks_from(table, i);
}

/// True iff the notes opening the blocks of the b_i-note scale, plus the
/// octave, are exactly the notes of the b_{i-1}-note scale.
inline bool block_boundaries_check(std::int64_t i, int term_cap = kDefaultCfTermCap) {
    BlockDecomposition dec = decompose_blocks(i, term_cap);
    // Block count equals b_{i-1} once decompose_blocks validated it.
    PythagoreanScale parent = build_scale(std::ssize(dec.blocks));
    if (std::ssize(dec.blocks) + 1 != std::ssize(parent.notes)) return false;
    for (std::size_t idx = 0; idx < dec.blocks.size(); ++idx)
        if (!(dec.scale.notes[static_cast<std::size_t>(dec.blocks[idx].start_note)] ==
              parent.notes[idx]))
            return false;
    return dec.scale.notes.back() == parent.notes.back();
}

inline PythagoreanScale delete_to_from(const ConvergentTable& table, std::int64_t i,
                                       std::int64_t k) {
    if (i < 2) throw std::out_of_range("deletion needs i >= 2");
    if (k < 0 || k >= table.term(i))
        throw std::out_of_range("deletion depth must satisfy 0 <= k <= k_i - 1");
    std::int64_t const target = table.den(i) - k * table.den(i - 1);
    PythagoreanScale parent = build_scale(table.den(i));
    PythagoreanScale result;
    result.n = target;
    for (const Monomial& m : parent.notes)
        if (m.pow3 < target) result.notes.push_back(m);
    if (!(result.notes == build_scale(target).notes))
        throw std::runtime_error("deleting down from the " + std::to_string(table.den(i)) +
                                 "-note scale did not reproduce the " + std::to_string(target) +
                                 "-note scale");
    return result;
}

inline PythagoreanScale delete_to(std::int64_t i, std::int64_t k,
                                  int term_cap = kDefaultCfTermCap) {
    if (i < 2) throw std::out_of_range("deletion needs i >= 2");
    ConvergentTable table(term_cap);
    table.ensure_terms(i + 1);
    return delete_to_from(table, i, k);
}

/// The two step sizes the deleted scale must show: {I, I^k J} in Type A,
/// {I^-1, J^-1 I^-k} in Type B.
inline std::array<Monomial, 2> predicted_deletion_steps(std::int64_t i, std::int64_t k,
                                                        int term_cap = kDefaultCfTermCap) {
    if (i < 2) throw std::out_of_range("deletion needs i >= 2");
    ConvergentTable table(term_cap);
    table.ensure_terms(i + 1);
    if (k < 0 || k >= table.term(i))
        throw std::out_of_range("deletion depth must satisfy 0 <= k <= k_i - 1");
    StepBasis basis = step_basis_from(table, i);
    if (scale_type_from_sign(table, i) == ScaleType::A)
        return {basis.i_step, mul(pow(basis.i_step, k), basis.j_step)};
    return {inverse(basis.i_step), mul(inverse(basis.j_step), pow(inverse(basis.i_step), k))};
}

/// True iff the notes removed by delete_to(i, k) are exactly the k notes
/// before each J-step (Type A) or after each J^-1-step (Type B) of the
/// b_i-note scale.
inline bool deleted_note_positions(std::int64_t i, std::int64_t k,
                                   int term_cap = kDefaultCfTermCap) {
    if (i < 2) throw std::out_of_range("deletion needs i >= 2");
    ConvergentTable table(term_cap);
    table.ensure_terms(i + 1);
    if (k < 1 || k >= table.term(i))
        throw std::out_of_range("position check needs 1 <= k <= k_i - 1");
    BlockDecomposition dec = decompose_blocks_from(table, i);
    std::int64_t const threshold = table.den(i) - k * table.den(i - 1);

    std::vector<std::int64_t> deleted;
    for (std::size_t idx = 0; idx < dec.scale.notes.size(); ++idx)
        if (dec.scale.notes[idx].pow3 >= threshold)
            deleted.push_back(static_cast<std::int64_t>(idx));

    Monomial const marker =
        dec.type == ScaleType::A ? dec.basis.j_step : inverse(dec.basis.j_step);
    std::vector<std::int64_t> expected;
    for (std::size_t j = 0; j < dec.steps.steps.size(); ++j) {
        if (!(dec.steps.steps[j] == marker)) continue;
        for (std::int64_t t = 0; t < k; ++t)
            expected.push_back(dec.type == ScaleType::A ? static_cast<std::int64_t>(j) - t
                                                        : static_cast<std::int64_t>(j) + 1 + t);
    }
    std::sort(expected.begin(), expected.end());
    return deleted == expected;
}

/// For n that is not a semi-convergent denominator, the three observed step
/// sizes together with the (i, k) placement that predicts them; empty for
/// semi-convergent denominators.
inline std::optional<ThreeStepWitness> three_step_witness(std::int64_t n,
                                                          int term_cap = kDefaultCfTermCap) {
    if (n < 2) throw std::invalid_argument("three-step witness needs n >= 2");
    ConvergentTable table(term_cap);
    table.ensure_coverage(n);
    if (find_semiconvergent_denominator(table, n)) return std::nullopt;

    std::int64_t i = 1;
    while (table.den(i) <= n) ++i;
    std::int64_t const k = (table.den(i) - n) / table.den(i - 1) + 1;

    StepBasis const basis = step_basis_from(table, i);
    ThreeStepWitness w;
    w.i = i;
    w.k = k;
    if (scale_type_from_sign(table, i) == ScaleType::A) {
        w.run_step = basis.i_step;
        w.short_combo = mul(pow(basis.i_step, k - 1), basis.j_step);
        w.long_combo = mul(pow(basis.i_step, k), basis.j_step);
    } else {
        w.run_step = inverse(basis.i_step);
        w.short_combo = mul(inverse(basis.j_step), pow(inverse(basis.i_step), k - 1));
        w.long_combo = mul(inverse(basis.j_step), pow(inverse(basis.i_step), k));
    }

    StepProfile const profile = step_profile(n);
    auto has = [&](Monomial m) {
        for (const auto& [step, count] : profile.distinct_steps)
            if (step == m) return true;
        return false;
    };
    if (profile.k != 3 || !has(w.run_step) || !has(w.short_combo) || !has(w.long_combo))
        throw std::runtime_error("three-step prediction violated for the " + std::to_string(n) +
                                 "-note scale");
    return w;
}

using VerifyProgress = std::function<void(const VerificationEntry&)>;

/// Checks, for every 2 <= n <= max_n, that the n-note scale is 2-step
/// exactly when n is a semi-convergent denominator, and that every scale in
/// range is 2- or 3-step.  Counterexamples are collected, not thrown.
inline VerificationReport verify_main_theorem(std::int64_t max_n, int jobs = 1,
                                              const VerifyProgress& progress = {},
                                              int term_cap = kDefaultCfTermCap) {
    if (max_n < 2) throw std::invalid_argument("verification range must reach at least 2");
    ConvergentTable table(term_cap);
    table.ensure_coverage(max_n);

    VerificationReport report;
    report.max_n = max_n;
    report.entries.resize(static_cast<std::size_t>(max_n - 1));

    auto run_one = [&table](std::int64_t n) {
        VerificationEntry entry;
        entry.n = n;
        entry.k = step_profile(n).k;
        entry.witness = find_semiconvergent_denominator(table, n);
        entry.ok = ((entry.k == 2) == entry.witness.has_value()) && (entry.k == 2 || entry.k == 3);
        return entry;
    };

    if (jobs <= 1) {
        for (std::int64_t n = 2; n <= max_n; ++n) {
            VerificationEntry entry = run_one(n);
            if (progress) progress(entry);
            report.entries[static_cast<std::size_t>(n - 2)] = std::move(entry);
        }
    } else {
        std::atomic<std::int64_t> next{2};
        std::mutex progress_mutex;
        std::mutex error_mutex;
        std::exception_ptr first_error;
        std::size_t const worker_count = static_cast<std::size_t>(
            std::min<std::int64_t>(jobs, max_n - 1));
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w) {
            workers.emplace_back([&] {
                try {
                    while (true) {
                        std::int64_t const n = next.fetch_add(1);
                        if (n > max_n) break;
                        VerificationEntry entry = run_one(n);
                        if (progress) {
                            std::scoped_lock lock(progress_mutex);
                            progress(entry);
                        }
                        report.entries[static_cast<std::size_t>(n - 2)] = std::move(entry);
                    }
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (std::thread& worker : workers) worker.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (const VerificationEntry& entry : report.entries)
        if (!entry.ok) report.counterexamples.push_back(entry.n);
    report.verdict = report.counterexamples.empty();
    return report;
}

/// Theorem context of one scale, for rendering and labeling.
struct Classification {
    int k = 0;
    ScaleType type = ScaleType::A;
    std::int64_t basis_i = 0;
    std::int64_t deletion_k = 0;  // I-steps merged into each block step; 0 for convergent sizes
};

struct ScaleAnalysis {
    PythagoreanScale scale;
    StepSequence steps;
    StepProfile profile;
    StepBasis basis;
    Classification classification;
};

inline ScaleAnalysis analyze_scale(std::int64_t n, int term_cap = kDefaultCfTermCap) {
    if (n < 1) throw std::invalid_argument("scale size must be >= 1");
    ConvergentTable table(term_cap);
    table.ensure_coverage(n);

    ScaleAnalysis analysis;
    analysis.scale = build_scale(n);
    analysis.steps = step_sequence(analysis.scale);
    analysis.profile = step_profile_of(n, analysis.steps);

    std::int64_t basis_i = 1;
    std::int64_t deletion_k = 0;
    if (n > 1) {
        if (auto witness = find_semiconvergent_denominator(table, n)) {
            if (witness->k == table.term(witness->i + 1)) {
                basis_i = witness->i + 1;  // n = b_{i+1}
            } else if (witness->k == 0) {
                basis_i = witness->i - 1;  // n = b_{i-1}
            } else {
                basis_i = witness->i + 1;
                deletion_k = table.term(witness->i + 1) - witness->k;
            }
        } else {
            std::int64_t i = 1;
            while (table.den(i) <= n) ++i;
            basis_i = i;
            deletion_k = (table.den(i) - n) / table.den(i - 1) + 1;
        }
    }
    analysis.basis = step_basis_from(table, basis_i);
    analysis.classification = {analysis.profile.k, scale_type_from_sign(table, basis_i), basis_i,
                               deletion_k};
    return analysis;
}

}  // namespace pythagorion
