#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bubbletile {

// Command implementations behind the CLI verbs. Each runs end to end,
// writes its outputs plus report and manifest into out_dir, and returns the
// process exit code: 0 on success with all thresholds met, 1 on any failed
// threshold or error (the error text goes to stderr).

struct CalibrateOptions {
    std::string design = "d11-vf60";
    int runs = 4;
    double sigma = 0.03;
    std::uint64_t seed = 1;
    // Optional design config file; overrides the preset.
    std::optional<std::string> config_path;
    std::string out_dir;
};

struct SimulateOptions {
    std::string scenario_path;
    std::optional<std::uint64_t> seed_override;
    std::string out_dir;
};

struct EstimateOptions {
    // A directory produced by `simulate`.
    std::string trace_dir;
    std::string curve_path;
    std::string out_dir;
};

struct ReportOptions {
    std::vector<std::string> run_dirs;
    std::string out_dir;
};

int cmd_calibrate(const CalibrateOptions& options);
int cmd_simulate(const SimulateOptions& options);
int cmd_estimate(const EstimateOptions& options);
int cmd_report(const ReportOptions& options);

// Default output root: $BUBBLETILE_OUT or ./out.
std::string default_out_root();

} // namespace bubbletile
