#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "bubbletile/commands.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"bubbletile: pneumatic tactile tile simulation, calibration and "
                 "COP/GRF estimation"};
    app.require_subcommand(1);

    std::string out_root = bubbletile::default_out_root();

    bubbletile::CalibrateOptions calibrate;
    std::string calibrate_config;
    CLI::App* cal = app.add_subcommand(
        "calibrate", "Simulate indentation runs, aggregate them, fit the curve");
    cal->add_option("--design", calibrate.design, "Design preset name")
        ->capture_default_str();
    cal->add_option("--config", calibrate_config, "Design config file (overrides --design)");
    cal->add_option("--runs", calibrate.runs, "Number of indentation runs")
        ->capture_default_str();
    cal->add_option("--sigma", calibrate.sigma, "Read noise std, normalized")
        ->capture_default_str();
    cal->add_option("--seed", calibrate.seed, "Master seed")->capture_default_str();
    cal->add_option("--out", calibrate.out_dir, "Output directory");

    bubbletile::SimulateOptions simulate;
    std::uint64_t simulate_seed = 0;
    CLI::App* sim = app.add_subcommand("simulate", "Run a scenario to trace files");
    sim->add_option("--config", simulate.scenario_path, "Scenario config file")
        ->required();
    CLI::Option* sim_seed_opt =
        sim->add_option("--seed", simulate_seed, "Override the scenario seed");
    sim->add_option("--out", simulate.out_dir, "Output directory");

    bubbletile::EstimateOptions estimate;
    CLI::App* est = app.add_subcommand(
        "estimate", "Recover COP or GRF from a simulated trace directory");
    est->add_option("trace_dir", estimate.trace_dir, "Directory written by simulate")
        ->required();
    est->add_option("--curve", estimate.curve_path,
                    "Calibration curve CSV (needed for hop traces)");
    est->add_option("--out", estimate.out_dir, "Output directory");

    bubbletile::ReportOptions report;
    CLI::App* rep = app.add_subcommand(
        "report", "Average metrics across run directories with 95% CIs");
    rep->add_option("run_dirs", report.run_dirs, "Run directories to aggregate")
        ->required();
    rep->add_option("--out", report.out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    if (cal->parsed()) {
        if (!calibrate_config.empty()) calibrate.config_path = calibrate_config;
        if (calibrate.out_dir.empty()) {
            calibrate.out_dir = (fs::path(out_root) / "calibrate").string();
        }
        return bubbletile::cmd_calibrate(calibrate);
    }
    if (sim->parsed()) {
        if (sim_seed_opt->count() > 0) simulate.seed_override = simulate_seed;
        if (simulate.out_dir.empty()) {
            simulate.out_dir =
                (fs::path(out_root) / fs::path(simulate.scenario_path).stem())
                    .string();
        }
        return bubbletile::cmd_simulate(simulate);
    }
    if (est->parsed()) {
        if (estimate.out_dir.empty()) {
            estimate.out_dir = (fs::path(estimate.trace_dir) / "estimate").string();
        }
        return bubbletile::cmd_estimate(estimate);
    }
    if (report.out_dir.empty()) {
        report.out_dir = (fs::path(out_root) / "report").string();
    }
    return bubbletile::cmd_report(report);
}
