// pythagorion: exact Pythagorean-scale construction, continued-fraction
// tables for log2(3), 2-step classification, and tuning-file export.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "pythagorion/pythagorion.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // verification counterexample or runtime failure
constexpr int kExitUsage = 2;

int resolve_term_cap() {
    const char* raw = std::getenv("PYTHAGORION_CF_CAP");
    if (raw == nullptr || *raw == '\0') return pythagorion::kDefaultCfTermCap;
    char* end = nullptr;
    long const value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1)
        throw CLI::ValidationError("PYTHAGORION_CF_CAP must be a positive integer");
    return static_cast<int>(value);
}

int run(int argc, char** argv) {
    CLI::App app{"Pythagorean scales, semi-convergents of log2(3), and the 2-step property"};
    app.require_subcommand(1);
    int const term_cap = resolve_term_cap();

    auto* cf_cmd = app.add_subcommand("cf", "Continued-fraction terms and convergent table");
    int cf_terms = 10;
    cf_cmd->add_option("--terms", cf_terms, "number of partial quotients")->required();

    auto* scale_cmd = app.add_subcommand("scale", "Render the n-note scale");
    std::int64_t scale_n = 12;
    std::string scale_format = "table";
    scale_cmd->add_option("--n", scale_n, "scale size")->required();
    scale_cmd->add_option("--format", scale_format, "table|json|csv|scl")
        ->check(CLI::IsMember({"table", "json", "csv", "scl"}));

    auto* steps_cmd = app.add_subcommand("steps", "Step sequence of the n-note scale");
    std::int64_t steps_n = 12;
    steps_cmd->add_option("--n", steps_n, "scale size")->required();

    auto* blocks_cmd = app.add_subcommand("blocks", "Block decomposition of the b_i-note scale");
    std::int64_t blocks_i = 4;
    blocks_cmd->add_option("--i", blocks_i, "convergent index (i >= 2)")->required();

    auto* delete_cmd = app.add_subcommand("delete", "Delete down to the (b_i - k b_{i-1})-note scale");
    std::int64_t delete_i = 4, delete_k = 1;
    delete_cmd->add_option("--i", delete_i, "convergent index (i >= 2)")->required();
    delete_cmd->add_option("--k", delete_k, "deletion depth (0 <= k <= k_i - 1)")->required();

    auto* verify_cmd = app.add_subcommand("verify", "Check the 2-step theorem over 2..N");
    std::int64_t verify_max = 1000;
    int verify_jobs = 1;
    verify_cmd->add_option("--max", verify_max, "largest scale size")->required();
    verify_cmd->add_option("--jobs", verify_jobs, "worker threads");

    auto* export_cmd = app.add_subcommand("export", "Write the n-note scale as a tuning file");
    std::int64_t export_n = 12;
    std::string export_path;
    export_cmd->add_option("--n", export_n, "scale size")->required();
    export_cmd->add_option("--out", export_path, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    using namespace pythagorion;

    if (cf_cmd->parsed()) {
        ContinuedFraction const cf = cf_log2_3(cf_terms, term_cap);
        std::cout << render_cf_table(cf);
        return kExitOk;
    }

    if (scale_cmd->parsed()) {
        ScaleAnalysis const analysis = analyze_scale(scale_n, term_cap);
        if (scale_format == "table")
            std::cout << render_scale_table(analysis);
        else if (scale_format == "json")
            std::cout << scale_json(analysis).dump(2) << "\n";
        else if (scale_format == "csv")
            std::cout << csv_table(analysis.scale);
        else
            std::cout << scl_file(analysis.scale);
        return kExitOk;
    }

    if (steps_cmd->parsed()) {
        std::cout << render_steps_table(analyze_scale(steps_n, term_cap));
        return kExitOk;
    }

    if (blocks_cmd->parsed()) {
        std::cout << render_blocks(decompose_blocks(blocks_i, term_cap));
        return kExitOk;
    }

    if (delete_cmd->parsed()) {
        PythagoreanScale const scale = delete_to(delete_i, delete_k, term_cap);
        auto const predicted = predicted_deletion_steps(delete_i, delete_k, term_cap);
        std::cout << "deleted down to the " << scale.n << "-note scale\n";
        std::cout << "predicted steps: " << monomial_name(predicted[0]) << ", "
                  << monomial_name(predicted[1]) << "\n";
        std::cout << render_scale_table(analyze_scale(scale.n, term_cap));
        return kExitOk;
    }

    if (verify_cmd->parsed()) {
        VerifyProgress progress;
        if (isatty(fileno(stderr))) {
            progress = [](const VerificationEntry& entry) {
                std::string const witness =
                    entry.witness ? std::to_string(entry.witness->num) + "/" +
                                        std::to_string(entry.witness->den)
                                  : "-";
                std::fprintf(stderr, "n=%lld k=%d %s\n", static_cast<long long>(entry.n),
                             entry.k, witness.c_str());
            };
        }
        VerificationReport const report =
            verify_main_theorem(verify_max, verify_jobs, progress, term_cap);
        std::cout << render_verification_report(report);
        return report.verdict ? kExitOk : kExitFailure;
    }

    if (export_cmd->parsed()) {
        PythagoreanScale const scale = build_scale(export_n);
        std::ofstream out(export_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + export_path + " for writing");
        out << scl_file(scale);
        out.close();
        if (!out) throw std::runtime_error("write to " + export_path + " failed");
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return kExitOk;  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
