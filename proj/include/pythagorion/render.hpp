#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pythagorion/analysis.hpp"
#include "pythagorion/contfrac.hpp"
#include "pythagorion/monomial.hpp"
#include "pythagorion/scale.hpp"

namespace pythagorion {

/// Cents with exactly six decimal places, ties rounded away from zero.
inline std::string format_cents(double value) {
    long long const scaled = std::llround(value * 1e6);
    long long const whole = scaled / 1000000;
    long long const frac = scaled % 1000000;
    char buf[40];
    if (scaled < 0 && whole == 0)
        std::snprintf(buf, sizeof buf, "-0.%06lld", -frac);
    else
        std::snprintf(buf, sizeof buf, "%lld.%06lld", whole, frac < 0 ? -frac : frac);
    return buf;
}

/// "3^b/2^a" display form.
inline std::string monomial_name(Monomial m) {
    return "3^" + std::to_string(m.pow3) + "/2^" + std::to_string(m.pow2);
}

/// Human-readable step label relative to a basis, e.g. "I", "J", "I^2J",
/// "J^-1I^-1".  Every step this library produces is an integer combination
/// I^s J^t, and the exponent pair determines (s, t) uniquely because the
/// basis determinant is +-1 (coprimality of consecutive convergents).
inline std::string step_label(Monomial step, const StepBasis& basis) {
    Monomial const I = basis.i_step;
    Monomial const J = basis.j_step;
    std::int64_t const det = I.pow3 * J.pow2 - I.pow2 * J.pow3;
    if (det != 1 && det != -1) return "?";
    std::int64_t const s = (step.pow3 * J.pow2 - step.pow2 * J.pow3) / det;
    std::int64_t const t = (I.pow3 * step.pow2 - I.pow2 * step.pow3) / det;
    if (!(mul(pow(I, s), pow(J, t)) == step)) return "?";
    if (s == 0 && t == 0) return "1";
    auto part = [](const char* name, std::int64_t e) -> std::string {
        if (e == 0) return "";
        if (e == 1) return name;
        return std::string(name) + "^" + std::to_string(e);
    };
    // Lead with the positive-power factor so Type A reads I...J and
    // Type B reads J^-1 I^-....
    if (s > 0 || (s == 0 && t > 0)) return part("I", s) + part("J", t);
    return part("J", t) + part("I", s);
}

// ---------------------------------------------------------------------------
// Tuning-file / CSV / JSON export
// ---------------------------------------------------------------------------

/// Scala-style tuning file, byte-stable: the n pitches above 1/1 in cents.
inline std::string scl_file(const PythagoreanScale& scale) {
    std::string out;
    out += "! pythagorean-" + std::to_string(scale.n) + ".scl\n";
    out += "!\n";
    out += "Pythagorean " + std::to_string(scale.n) + "-note scale (3^b/2^a)\n";
    out += std::to_string(scale.n) + "\n";
    out += "!\n";
    for (std::size_t idx = 1; idx < scale.notes.size(); ++idx)
        out += format_cents(cents(scale.notes[idx])) + "\n";
    return out;
}

/// CSV, one row per note; the step columns describe the step leaving the
/// note and are empty on the final (octave) row.  LF line endings.
inline std::string csv_table(const PythagoreanScale& scale) {
    StepSequence const seq = step_sequence(scale);
    std::string out = "index,pow3,pow2,cents,step_pow3,step_pow2,step_cents\n";
    for (std::size_t idx = 0; idx < scale.notes.size(); ++idx) {
        Monomial const note = scale.notes[idx];
        out += std::to_string(idx) + "," + std::to_string(note.pow3) + "," +
               std::to_string(note.pow2) + "," + format_cents(cents(note));
        if (idx < seq.steps.size()) {
            Monomial const step = seq.steps[idx];
            out += "," + std::to_string(step.pow3) + "," + std::to_string(step.pow2) + "," +
                   format_cents(cents(step));
        } else {
            out += ",,,";
        }
        out += "\n";
    }
    return out;
}

/// JSON document for one analyzed scale.  The exponent pairs are the exact
/// payload; cents and labels are advisory.
inline nlohmann::json scale_json(const ScaleAnalysis& analysis) {
    nlohmann::json doc;
    doc["n"] = analysis.scale.n;
    doc["notes"] = nlohmann::json::array();
    for (const Monomial& note : analysis.scale.notes)
        doc["notes"].push_back({{"pow3", note.pow3}, {"pow2", note.pow2}, {"cents", cents(note)}});
    doc["steps"] = nlohmann::json::array();
    for (const Monomial& step : analysis.steps.steps)
        doc["steps"].push_back({{"pow3", step.pow3},
                                {"pow2", step.pow2},
                                {"cents", cents(step)},
                                {"label", step_label(step, analysis.basis)}});
    doc["classification"] = {{"k", analysis.classification.k},
                             {"type", std::string(1, scale_type_name(analysis.classification.type))},
                             {"basis_i", analysis.classification.basis_i}};
    return doc;
}

// ---------------------------------------------------------------------------
// Plain-text tables
// ---------------------------------------------------------------------------

inline std::string render_cf_table(const ContinuedFraction& cf) {
    std::vector<Convergent> const conv = convergents(cf);
    std::ostringstream out;
    out << "  i         a_i         b_i   k_i\n";
    for (std::size_t j = 0; j < cf.terms.size(); ++j) {
        const Convergent& c = conv[j + 1];  // skip index -1
        char line[80];
        std::snprintf(line, sizeof line, "%3lld %11lld %11lld %5lld\n",
                      static_cast<long long>(c.index), static_cast<long long>(c.num),
                      static_cast<long long>(c.den), static_cast<long long>(cf.terms[j]));
        out << line;
    }
    return out.str();
}

inline std::string render_scale_table(const ScaleAnalysis& analysis) {
    std::ostringstream out;
    out << "idx  pow3  pow2         cents\n";
    for (std::size_t idx = 0; idx < analysis.scale.notes.size(); ++idx) {
        Monomial const note = analysis.scale.notes[idx];
        char line[96];
        std::snprintf(line, sizeof line, "%3zu %5lld %5lld  %12s\n", idx,
                      static_cast<long long>(note.pow3), static_cast<long long>(note.pow2),
                      format_cents(cents(note)).c_str());
        out << line;
        if (idx < analysis.steps.steps.size()) {
            Monomial const step = analysis.steps.steps[idx];
            out << "        step " << monomial_name(step) << " = " << format_cents(cents(step))
                << " c  [" << step_label(step, analysis.basis) << "]\n";
        }
    }
    out << "k = " << analysis.classification.k << " distinct steps, type "
        << scale_type_name(analysis.classification.type) << ", basis i = "
        << analysis.classification.basis_i << "\n";
    return out.str();
}

inline std::string render_steps_table(const ScaleAnalysis& analysis) {
    std::ostringstream out;
    out << "idx  pow3  pow2         cents  label\n";
    for (std::size_t j = 0; j < analysis.steps.steps.size(); ++j) {
        Monomial const step = analysis.steps.steps[j];
        char line[96];
        std::snprintf(line, sizeof line, "%3zu %5lld %5lld  %12s  %s\n", j,
                      static_cast<long long>(step.pow3), static_cast<long long>(step.pow2),
                      format_cents(cents(step)).c_str(),
                      step_label(step, analysis.basis).c_str());
        out << line;
    }
    return out.str();
}

inline std::string render_blocks(const BlockDecomposition& dec) {
    std::ostringstream out;
    out << dec.scale.n << "-note scale: type " << scale_type_name(dec.type) << ", "
        << dec.blocks.size() << " blocks\n";
    out << "I = " << monomial_name(dec.basis.i_step)
        << ", J = " << monomial_name(dec.basis.j_step) << "\n";
    for (std::size_t idx = 0; idx < dec.blocks.size(); ++idx) {
        const Block& block = dec.blocks[idx];
        out << "block " << idx << " @ note " << block.start_note << ": ";
        if (dec.type == ScaleType::A) {
            for (std::int64_t t = 0; t < block.i_steps; ++t) out << "I ";
            out << "J\n";
        } else {
            out << "J^-1";
            for (std::int64_t t = 0; t < block.i_steps; ++t) out << " I^-1";
            out << "\n";
        }
    }
    return out.str();
}

inline std::string render_verification_report(const VerificationReport& report) {
    std::ostringstream out;
    std::vector<std::int64_t> const two_step = report.two_step_sizes();
    out << "theorem check over n = 2.." << report.max_n << "\n";
    out << "2-step sizes (" << two_step.size() << "): ";
    for (std::size_t idx = 0; idx < two_step.size(); ++idx)
        out << (idx ? " " : "") << two_step[idx];
    out << "\n";
    if (report.verdict) {
        out << "PASS: 2-step exactly at semi-convergent denominators; all other sizes 3-step\n";
    } else {
        out << "FAIL: counterexamples at n =";
        for (std::int64_t n : report.counterexamples) out << " " << n;
        out << "\n";
    }
    return out.str();
}

}  // namespace pythagorion
