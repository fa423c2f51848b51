#include "btforms/config.hpp"
#include "btforms/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace {

struct RunArgs {
    std::string config;
    std::string out;
    std::string form;
    double tol_scale = 1.0;
};

void add_run_options(CLI::App* cmd, RunArgs& args)
{
    cmd->add_option("--config", args.config, "model config (TOML subset)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out, "output directory")->required();
    cmd->add_option("--form", args.form, "restrict to one form")->check(CLI::IsMember({"instant", "point", "front"}));
    cmd->add_option("--tol-scale", args.tol_scale, "multiply every verification tolerance")
        ->check(CLI::PositiveNumber);
}

void print_summary(const btforms::RunReport& r)
{
    for (const auto& s : r.spectra) {
        std::printf("spectrum  %-7s j=%d  bound states: %zu", s.form.c_str(), s.j, s.bound_masses.size());
        for (double m : s.bound_masses) std::printf("  %.12g", m);
        std::printf("\n");
    }
    if (!r.phase_shifts.empty()) std::printf("phase shifts: %zu energies written\n", r.phase_shifts.size());
    for (const auto& v : r.verifications)
        std::printf("%-4s %-22s %-14s j=%d residual=%s %s %s\n", v.passed ? "PASS" : "FAIL", v.name.c_str(),
                    v.forms.c_str(), v.j, btforms::format_double(v.residual).c_str(), v.comparison.c_str(),
                    btforms::format_double(v.tolerance).c_str());
    for (const auto& i : r.issues)
        std::printf("issue %s [%s j=%d]: %s\n", i.kind.c_str(), i.form.c_str(), i.j, i.message.c_str());
}

int run_command(btforms::RunMode mode, const RunArgs& args)
{
    btforms::ModelConfig cfg = btforms::load_config(args.config);
    if (!args.form.empty()) cfg.forms = {btforms::parse_form(args.form)};
    if (args.tol_scale != 1.0) cfg.scale_tolerances(args.tol_scale);
    const btforms::RunReport report = btforms::run(cfg, mode);
    btforms::export_report(report, args.out);
    print_summary(report);
    std::printf("wrote %s\n", std::filesystem::path(args.out).string().c_str());
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"btforms: Bakamjian-Thomas two-body models in the instant, point and front forms"};
    app.require_subcommand(1);

    RunArgs solve_args, scatter_args, verify_args, run_args;
    auto* solve = app.add_subcommand("solve", "bound-state spectra in every requested form");
    add_run_options(solve, solve_args);
    auto* scatter = app.add_subcommand("scatter", "reduced S-matrix and phase shifts");
    add_run_options(scatter, scatter_args);
    auto* verify = app.add_subcommand("verify", "solve, scatter and run the cross-form verifications");
    add_run_options(verify, verify_args);
    auto* run = app.add_subcommand("run", "everything: spectra, phase shifts, verifications");
    add_run_options(run, run_args);

    std::string export_in, export_out;
    auto* exp = app.add_subcommand("export", "re-export CSV tables and JSON from a saved report.json");
    exp->add_option("--in", export_in, "report.json or a directory containing it")->required();
    exp->add_option("--out", export_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return run_command(btforms::RunMode::Solve, solve_args);
        if (*scatter) return run_command(btforms::RunMode::Scatter, scatter_args);
        if (*verify) return run_command(btforms::RunMode::Verify, verify_args);
        if (*run) return run_command(btforms::RunMode::All, run_args);
        if (*exp) {
            std::filesystem::path in(export_in);
            if (std::filesystem::is_directory(in)) in /= "report.json";
            const btforms::RunReport report = btforms::load_report(in.string());
            btforms::export_report(report, export_out);
            std::printf("wrote %s\n", export_out.c_str());
            return report.exit_code();
        }
    } catch (const btforms::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
