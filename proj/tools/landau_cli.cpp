// Command-line front end: run | oracle | fit-report | maxfit | compare-free.
// Exit codes: 0 success, 2 failed assertion, 1 error.

#include "landau/config.hpp"
#include "landau/driver.hpp"
#include "landau/errors.hpp"
#include "landau/io.hpp"
#include "landau/reports.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

using namespace landau;

struct Common {
    std::string config;
    std::string output;
    std::string resume;
    bool quiet = false;
};

void add_common(CLI::App *cmd, Common &c, bool needs_config)
{
    auto *opt = cmd->add_option("--config", c.config, "JSON configuration file");
    if (needs_config)
        opt->required();
    cmd->add_option("--output", c.output, "output directory (overrides output.directory)");
    cmd->add_flag("--quiet", c.quiet, "suppress progress lines");
}

SimulationConfig load(const Common &c)
{
    SimulationConfig cfg = parse_config(c.config);
    if (!c.output.empty())
        cfg.output_directory = c.output;
    return cfg;
}

int print_checks(const std::vector<Check> &checks)
{
    for (const auto &c : checks) {
        std::printf("%s  %-48s value %.6g  target %.6g", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                    c.target);
        if (c.tolerance > 0.0)
            std::printf(" +/- %.3g", c.tolerance);
        if (!c.detail.empty())
            std::printf("  (%s)", c.detail.c_str());
        std::printf("\n");
    }
    return all_pass(checks) ? 0 : 2;
}

int cmd_run(const Common &c)
{
    const SimulationConfig cfg = load(c);
    RunOptions opts;
    opts.output_directory = cfg.output_directory;
    opts.resume = c.resume;
    if (!c.quiet) {
        opts.on_record = [](const DiagnosticRecord &r, const DistributionField &) {
            std::fprintf(stderr, "t = %-10.4g mass = %-14.8g rho_sup = %-12.6g clipped = %.3g\n", r.t, r.mass,
                         r.rho_sup, r.clipped_mass);
        };
    }
    const RunResult res = run_simulation(cfg, opts);
    if (!c.quiet)
        std::fprintf(stderr, "%d steps, output in %s\n", res.steps, cfg.output_directory.c_str());
    return 0;
}

int cmd_fit_report(const Common &c, const std::string &input)
{
    const SimulationConfig cfg = load(c);
    const std::string path =
        input.empty() ? (std::filesystem::path(cfg.output_directory) / "diagnostics.ndjson").string() : input;
    const auto records = io::read_ndjson_file(path);
    std::printf("fit window [%g, %g], d_x = %d, gamma = %g\n", cfg.fit_window[0], cfg.fit_window[1], cfg.d_x,
                cfg.gamma);
    return print_checks(fit_report(cfg, records));
}

int cmd_maxfit(const Common &c, bool every)
{
    const SeriesReport rep = maxfit_report(load(c), every);
    std::printf("%12s %16s %16s %16s\n", "t", "residual", "data_norm", "relative");
    for (const auto &p : rep.series)
        std::printf("%12.6g %16.8e %16.8e %16.8e\n", p.t, p.value, p.reference,
                    p.reference > 0.0 ? p.value / p.reference : 0.0);
    return print_checks(rep.checks);
}

int cmd_compare_free(const Common &c, bool scaling)
{
    const SeriesReport rep = compare_free_report(load(c), scaling);
    if (scaling)
        std::printf("%12s %16s %16s\n", "t", "deviation", "deviation_eps/2");
    else
        std::printf("%12s %16s\n", "t", "deviation");
    for (const auto &p : rep.series) {
        if (scaling)
            std::printf("%12.6g %16.8e %16.8e\n", p.t, p.value, p.reference);
        else
            std::printf("%12.6g %16.8e\n", p.t, p.value);
    }
    return print_checks(rep.checks);
}

int cmd_oracle()
{
    const OracleResults res = oracle_report();
    std::printf("interpolation: sup_v int |v-v*|^-nu |h| / (|h|_1^(1-nu/3) |h|_inf^(nu/3))\n");
    std::printf("%-32s %5s %14s %14s %12s\n", "function", "nu", "lhs", "ratio", "refine");
    for (const auto &r : res.interpolation)
        std::printf("%-32s %5.2f %14.8g %14.8g %12.2e\n", r.name.c_str(), r.nu, r.lhs, r.ratio,
                    r.refinement_change);
    for (double nu : {0.5, 1.0, 1.5, 2.5})
        std::printf("sharp constant nu=%.2f: %.8g\n", nu, oracles::interpolation_sharp_constant(nu));
    std::printf("\ndispersion: transported Gaussian, 3D\n");
    std::printf("%8s %16s %16s %12s\n", "t", "lhs", "closed form", "ratio");
    for (const auto &p : res.dispersion)
        std::printf("%8.3g %16.8e %16.8e %12.6g\n", p.t, p.lhs, p.lhs_closed, p.ratio);
    std::printf("\nhls\n");
    std::printf("%-32s %5s %14s %14s %12s\n", "function", "nu", "lhs", "ratio", "refine");
    for (const auto &r : res.hls)
        std::printf("%-32s %5.2f %14.8g %14.8g %12.2e\n", r.name.c_str(), r.nu, r.lhs, r.ratio,
                    r.refinement_change);
    std::printf("\n");
    return print_checks(res.checks);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Landau equation near vacuum: simulator and verification harness"};
    app.require_subcommand(1);

    Common run_opts, fit_opts, max_opts, free_opts;
    std::string fit_input;
    bool every = false, scaling = false;

    auto *run = app.add_subcommand("run", "simulate and write diagnostics.ndjson, CSV and checkpoints");
    add_common(run, run_opts, true);
    run->add_option("--resume", run_opts.resume, "continue from an LNDK checkpoint");

    auto *oracle = app.add_subcommand("oracle", "3D inequality oracles on analytic test functions");

    auto *fit = app.add_subcommand("fit-report", "fitted decay slopes against the d_x-adjusted targets");
    add_common(fit, fit_opts, true);
    fit->add_option("--input", fit_input, "NDJSON stream (default: <output>/diagnostics.ndjson)");

    auto *maxfit = app.add_subcommand("maxfit", "traveling Maxwellian fit of f-sharp");
    add_common(maxfit, max_opts, true);
    maxfit->add_flag("--every", every, "fit at every output time");

    auto *cfree = app.add_subcommand("compare-free", "weighted sup of f - f_free over time");
    add_common(cfree, free_opts, true);
    cfree->add_flag("--scaling", scaling, "repeat at epsilon/2 and check the ratio");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run)
            return cmd_run(run_opts);
        if (*oracle)
            return cmd_oracle();
        if (*fit)
            return cmd_fit_report(fit_opts, fit_input);
        if (*maxfit)
            return cmd_maxfit(max_opts, every);
        if (*cfree)
            return cmd_compare_free(free_opts, scaling);
    } catch (const Error &e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "cli.Error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
