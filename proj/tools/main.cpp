#include <iostream>
#include <limits>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

using stiefel::cli::Format;
using stiefel::cli::RunConfig;
using stiefel::cli::Subcommand;

void add_common_options(CLI::App* sub, RunConfig& cfg, std::string& dims, bool data) {
    if (data) {
        sub->add_option("--input", cfg.input_path, "Matrix file (JSON or CSV)")
            ->check(CLI::ExistingFile);
        sub->add_option("--dims", dims, "Generate random M x D inputs, e.g. 4x2");
        sub->add_option("--batch", cfg.batch, "Number of generated items")
            ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    }
    sub->add_option("--output", cfg.output_path, "Output file (default: standard output)");
    sub->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}},
            CLI::ignore_case));
    sub->add_option("--seed", cfg.seed, "Random seed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gram-Schmidt retraction onto the Stiefel manifold"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string dims;

    auto* retract = app.add_subcommand("retract", "Orthonormalize the columns of a matrix");
    add_common_options(retract, cfg, dims, true);

    auto* path = app.add_subcommand("path", "Sample the deformation-retraction homotopy");
    add_common_options(path, cfg, dims, true);
    path->add_option("--steps", cfg.steps, "Number of t samples (>= 2)")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));

    auto* qr = app.add_subcommand("qr", "Positive-diagonal QR of a square matrix");
    add_common_options(qr, cfg, dims, true);

    auto* check = app.add_subcommand("check", "Check SO(m) equivariance on random rotations");
    add_common_options(check, cfg, dims, true);
    check->add_option("--tolerance", cfg.tolerance, "Max allowed defect")
        ->check(CLI::PositiveNumber);

    auto* selftest = app.add_subcommand("selftest", "Run the full invariant suite");
    add_common_options(selftest, cfg, dims, false);
    selftest->add_flag("--inject-fault", cfg.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : stiefel::cli::kParseError;
    }

    if (retract->parsed()) {
        cfg.subcommand = Subcommand::Retract;
    } else if (path->parsed()) {
        cfg.subcommand = Subcommand::Path;
    } else if (qr->parsed()) {
        cfg.subcommand = Subcommand::Qr;
    } else if (check->parsed()) {
        cfg.subcommand = Subcommand::Check;
    } else {
        cfg.subcommand = Subcommand::Selftest;
    }
    if (!dims.empty()) {
        try {
            cfg.dims = stiefel::cli::parse_dims(dims);
        } catch (const stiefel::cli::UsageError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return stiefel::cli::kParseError;
        }
    }
    cfg.threads = stiefel::cli::threads_from_env();

    return stiefel::cli::run(cfg, std::cout, std::cerr);
}
