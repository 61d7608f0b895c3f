#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pythagorion/monomial.hpp"

namespace pythagorion {

/// Default ceiling on the number of continued-fraction terms.  Term ten of
/// log2(3) is 23 and already drives the walk to denominator 15601; each
/// further term multiplies the cost of the exact power comparisons.
inline constexpr int kDefaultCfTermCap = 12;

/// Partial quotients k_0, k_1, ... of log2(3).
struct ContinuedFraction {
    std::vector<std::int64_t> terms;
};

/// Convergent a_i / b_i of log2(3), indices from -1 (the 1/0 base case).
struct Convergent {
    std::int64_t index = 0;
    std::int64_t num = 0;
    std::int64_t den = 0;

    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Semi-convergent (a_{i-1} + k a_i) / (b_{i-1} + k b_i) with its
/// generating pair (i, k), 0 <= k <= k_{i+1}.
struct SemiConvergent {
    std::int64_t num = 0;
    std::int64_t den = 0;
    std::int64_t i = 0;
    std::int64_t k = 0;

    friend bool operator==(const SemiConvergent&, const SemiConvergent&) = default;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("continued fraction state exceeds 64-bit range");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("continued fraction state exceeds 64-bit range");
    return r;
}

// Emits the partial quotients of log2(3) one at a time via a mediant
// (Stern-Brocot) walk.  Every direction decision is the exact comparison
// 3^q versus 2^p; runs of same-direction moves are the partial quotients,
// with the usual adjustment that the initial downward run has length
// k_1 - 1 (an immediate upward move means k_1 = 1).
class Log23TermWalker {
  public:
    std::int64_t next() {
        if (!pending_.empty()) return pop_pending();
        if (!emitted_any_) {
            emitted_any_ = true;
            return 1;  // k_0: 2 <= 3 < 4.
        }
        while (true) {
            std::int64_t const p = checked_add(lo_p_, hi_p_);
            std::int64_t const q = checked_add(lo_q_, hi_q_);
            // log2(3) > p/q  <=>  3^q > 2^p.
            bool const above = detail::floor_log2_pow3(q) >= p;
            if (above) {
                lo_p_ = p;
                lo_q_ = q;
            } else {
                hi_p_ = p;
                hi_q_ = q;
            }
            if (!have_dir_) {
                have_dir_ = true;
                dir_ = above;
                run_ = 1;
                continue;
            }
            if (above == dir_) {
                ++run_;
                continue;
            }
            // Run ended; turn it into one or two terms.
            if (first_run_) {
                first_run_ = false;
                if (!dir_) {
                    pending_.push_back(run_ + 1);
                } else {
                    pending_.push_back(1);
                    pending_.push_back(run_);
                }
            } else {
                pending_.push_back(run_);
            }
            dir_ = above;
            run_ = 1;
            return pop_pending();
        }
    }

  private:
    std::int64_t pop_pending() {
        std::int64_t t = pending_.front();
        pending_.pop_front();
        return t;
    }

    std::int64_t lo_p_ = 1, lo_q_ = 1;  // 1/1 < log2(3) < 2/1
    std::int64_t hi_p_ = 2, hi_q_ = 1;
    bool emitted_any_ = false;
    bool have_dir_ = false;
    bool first_run_ = true;
    bool dir_ = false;
    std::int64_t run_ = 0;
    std::deque<std::int64_t> pending_;
};

}  // namespace detail

/// Lazily grown table of partial quotients and convergents of log2(3).
///
/// Terms are pulled from the exact mediant walk on demand, never past the
/// construction-time cap.  Grow it first (ensure_terms / ensure_coverage),
/// then read it from as many threads as you like.
class ConvergentTable {
  public:
    explicit ConvergentTable(int term_cap = kDefaultCfTermCap) : term_cap_(term_cap) {
        if (term_cap_ < 1) throw std::invalid_argument("term cap must be >= 1");
    }

    int term_cap() const { return term_cap_; }

    /// Number of terms materialized so far; convergent indices run
    /// from -1 to size() - 1.
    std::int64_t size() const { return static_cast<std::int64_t>(terms_.size()); }

    /// Makes terms k_0 .. k_{count-1} available.
    void ensure_terms(std::int64_t count) {
        if (count > term_cap_)
            throw std::out_of_range(
                "continued fraction needs " + std::to_string(count) +
                " terms but the cap is " + std::to_string(term_cap_) +
                " (raise PYTHAGORION_CF_CAP)");
        while (size() < count) {
            std::int64_t const k = walker_.next();
            terms_.push_back(k);
            std::int64_t const i = size() - 1;
            if (i == 0) {
                nums_.push_back(k);  // a_0 = k_0
                dens_.push_back(1);  // b_0 = 1
            } else {
                nums_.push_back(detail::checked_add(detail::checked_mul(k, num(i - 1)), num(i - 2)));
                dens_.push_back(detail::checked_add(detail::checked_mul(k, den(i - 1)), den(i - 2)));
            }
        }
    }

    /// Grows until the semi-convergent family scans for denominators
    /// up to n are fully decidable: b_{m-1} > n with k_m on hand.
    void ensure_coverage(std::int64_t n) {
        ensure_terms(3);
        while (den(size() - 2) <= n) ensure_terms(size() + 1);
    }

    std::int64_t term(std::int64_t i) const { return terms_.at(static_cast<std::size_t>(i)); }

    std::int64_t num(std::int64_t i) const {
        if (i == -1) return 1;
        return nums_.at(static_cast<std::size_t>(i));
    }

    std::int64_t den(std::int64_t i) const {
        if (i == -1) return 0;
        return dens_.at(static_cast<std::size_t>(i));
    }

    Convergent convergent(std::int64_t i) const { return {i, num(i), den(i)}; }

    ContinuedFraction cf() const { return {terms_}; }

  private:
    int term_cap_;
    detail::Log23TermWalker walker_;
    std::vector<std::int64_t> terms_;
    std::vector<std::int64_t> nums_;
    std::vector<std::int64_t> dens_;
};

/// First num_terms partial quotients of log2(3), exactly.
inline ContinuedFraction cf_log2_3(int num_terms, int term_cap = kDefaultCfTermCap) {
    if (num_terms < 1) throw std::invalid_argument("cf_log2_3: need at least one term");
    ConvergentTable table(term_cap);
    table.ensure_terms(num_terms);
    ContinuedFraction cf = table.cf();
    cf.terms.resize(static_cast<std::size_t>(num_terms));
    return cf;
}

/// All convergents of the given expansion, for i = -1 .. m, via the
/// standard recursion a_i = k_i a_{i-1} + a_{i-2} (same for b).
inline std::vector<Convergent> convergents(const ContinuedFraction& cf) {
    if (cf.terms.empty()) throw std::invalid_argument("convergents: empty continued fraction");
    std::vector<Convergent> out;
    out.reserve(cf.terms.size() + 1);
    out.push_back({-1, 1, 0});
    std::int64_t a_prev2 = 1, b_prev2 = 0;   // i-2
    std::int64_t a_prev = cf.terms[0], b_prev = 1;  // i-1 rolling
    out.push_back({0, a_prev, b_prev});
    for (std::size_t j = 1; j < cf.terms.size(); ++j) {
        std::int64_t const k = cf.terms[j];
        std::int64_t const a = detail::checked_add(detail::checked_mul(k, a_prev), a_prev2);
        std::int64_t const b = detail::checked_add(detail::checked_mul(k, b_prev), b_prev2);
        out.push_back({static_cast<std::int64_t>(j), a, b});
        a_prev2 = a_prev;
        b_prev2 = b_prev;
        a_prev = a;
        b_prev = b;
    }
    return out;
}

/// All semi-convergents of log2(3) with denominator <= max_denominator, in
/// generation order: families i = 2, 3, ... with k = 0 .. k_{i+1} - 1.
///
/// Each family opens with the convergent a_{i-1}/b_{i-1} (its k = 0 entry)
/// and stops short of the terminal k = k_{i+1}, which would repeat the
/// convergent that the later family i + 2 opens with; every fraction is
/// therefore emitted exactly once.  The i = 1 family is not emitted, which
/// keeps 1/1 out of the list.
inline std::vector<SemiConvergent> semiconvergents(std::int64_t max_denominator,
                                                   int term_cap = kDefaultCfTermCap) {
    if (max_denominator < 1)
        throw std::invalid_argument("semiconvergents: max denominator must be >= 1");
    ConvergentTable table(term_cap);
    table.ensure_coverage(max_denominator);
    std::vector<SemiConvergent> out;
    for (std::int64_t i = 2; table.den(i - 1) <= max_denominator; ++i) {
        for (std::int64_t k = 0; k < table.term(i + 1); ++k) {
            std::int64_t const den = table.den(i - 1) + k * table.den(i);
            if (den > max_denominator) break;
            out.push_back({table.num(i - 1) + k * table.num(i), den, i, k});
        }
    }
    return out;
}

/// Witness search against an already-grown table: some (i, k) with
/// b_{i-1} + k b_i = n and 0 <= k <= k_{i+1}, lowest family first.
inline std::optional<SemiConvergent> find_semiconvergent_denominator(
    const ConvergentTable& table, std::int64_t n) {
    for (std::int64_t i = 1; table.den(i - 1) <= n; ++i) {
        std::int64_t const rest = n - table.den(i - 1);
        if (rest % table.den(i) == 0) {
            std::int64_t const k = rest / table.den(i);
            if (k <= table.term(i + 1))
                return SemiConvergent{table.num(i - 1) + k * table.num(i), n, i, k};
        }
    }
    return std::nullopt;
}

/// Is n the denominator of a semi-convergent of log2(3)?
inline std::optional<SemiConvergent> is_semiconvergent_denominator(
    std::int64_t n, int term_cap = kDefaultCfTermCap) {
    if (n < 1) throw std::invalid_argument("is_semiconvergent_denominator: n must be >= 1");
    ConvergentTable table(term_cap);
    table.ensure_coverage(n);
    return find_semiconvergent_denominator(table, n);
}

}  // namespace pythagorion
