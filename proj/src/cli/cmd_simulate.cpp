#include <filesystem>

#include "bubbletile/commands.hpp"
#include "bubbletile/csv.hpp"
#include "bubbletile/simulation.hpp"
#include "cli_common.hpp"

namespace fs = std::filesystem;

namespace bubbletile {

namespace {

int simulate_roll_cmd(const Config& cfg, const SimulateOptions& options) {
    RollScenario scenario = roll_from_config(cfg);
    if (options.seed_override) scenario.seed = *options.seed_override;
    RollResult result = simulate_roll(scenario);

    fs::path out(options.out_dir);
    fs::create_directories(out);
    write_grid_frames(out / "plate.csv", result.plate_frames);
    write_tile_samples(out / "tiles.csv", result.tile_samples);
    write_markers(out / "markers.csv", result.markers);
    write_roll_truth(out / "roll_truth.csv", result.truth);
    result.resolved.save(out / "scenario.resolved.cfg");
    write_run_manifest(out, "simulate", result.resolved.hash(), scenario.seed,
                       {"plate.csv", "tiles.csv", "markers.csv", "roll_truth.csv",
                        "scenario.resolved.cfg"});
    return 0;
}

int simulate_hop_cmd(const Config& cfg, const SimulateOptions& options) {
    HopScenario scenario = hop_from_config(cfg);
    if (options.seed_override) scenario.seed = *options.seed_override;
    HopResult result = simulate_hop(scenario);

    // The force plate alone is the GRF ground truth consumers compare
    // against; the full state trace is for inspection.
    std::vector<std::vector<double>> plate_rows;
    plate_rows.reserve(result.truth.size());
    for (const auto& frame : result.truth) {
        plate_rows.push_back({frame.timestamp_s, frame.total_force_n});
    }

    fs::path out(options.out_dir);
    fs::create_directories(out);
    write_table(out / "forceplate.csv", "t,force_n", plate_rows);
    write_tile_samples(out / "tiles.csv", result.tile_samples);
    write_hop_truth(out / "hop_truth.csv", result.truth);
    result.resolved.save(out / "scenario.resolved.cfg");
    write_run_manifest(out, "simulate", result.resolved.hash(), scenario.seed,
                       {"forceplate.csv", "tiles.csv", "hop_truth.csv",
                        "scenario.resolved.cfg"});
    return 0;
}

} // namespace

int cmd_simulate(const SimulateOptions& options) {
    return guarded([&] {
        Config cfg = Config::load(options.scenario_path);
        if (!cfg.has("scenario")) {
            throw ConfigError("scenario file " + options.scenario_path +
                              " does not name a scenario kind");
        }
        std::string kind = cfg.get_string("scenario");
        if (kind == "roll") return simulate_roll_cmd(cfg, options);
        if (kind == "hop" || kind == "mud") return simulate_hop_cmd(cfg, options);
        throw ConfigError("unknown scenario kind: " + kind);
    });
}

} // namespace bubbletile
