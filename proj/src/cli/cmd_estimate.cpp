#include <cmath>
#include <filesystem>

#include "bubbletile/array_kinematics.hpp"
#include "bubbletile/commands.hpp"
#include "bubbletile/csv.hpp"
#include "bubbletile/estimation.hpp"
#include "bubbletile/report.hpp"
#include "bubbletile/simulation.hpp"
#include "cli_common.hpp"

namespace fs = std::filesystem;

namespace bubbletile {

namespace {

void check_aligned(double t_a, double t_b, double period_s, const char* what) {
    if (std::fabs(t_a - t_b) > period_s) {
        throw AlignmentError(std::string(what) + " timestamps diverge: " +
                             format_g9(t_a) + " vs " + format_g9(t_b) +
                             " (limit one frame, " + format_g9(period_s) + " s)");
    }
}

int estimate_roll(const Config& resolved, const EstimateOptions& options) {
    RollScenario scenario = roll_from_config(resolved);
    fs::path in(options.trace_dir);
    std::vector<MarkerPair> markers = read_markers(in / "markers.csv");
    std::vector<PressureSample> samples = read_tile_samples(in / "tiles.csv");
    std::vector<GridFrame> plate = read_grid_frames(in / "plate.csv");
    std::vector<RollTruthFrame> truth = read_roll_truth(in / "roll_truth.csv");

    size_t n = markers.size();
    if (plate.size() != n || truth.size() != n || samples.size() != n * 4) {
        throw AlignmentError("trace streams have mismatched frame counts: " +
                             std::to_string(markers.size()) + " marker, " +
                             std::to_string(plate.size()) + " plate, " +
                             std::to_string(truth.size()) + " truth, " +
                             std::to_string(samples.size()) + " tile samples");
    }
    double period = 1.0 / scenario.bus.aggregate_rate_hz;

    GridMapping mapping;
    mapping.rows = 3;
    mapping.cols = scenario.plate_cols;
    mapping.cell_pitch_mm = scenario.plate_pitch_mm;
    mapping.origin_y_mm = scenario.plate_origin_y_mm;
    mapping.origin_z_mm = -scenario.plate_pitch_mm;

    std::vector<std::vector<double>> est_rows, truth_rows, error_rows;
    double max_stance_err = 0.0;
    int n_stance = 0;
    for (size_t i = 0; i < n; ++i) {
        check_aligned(markers[i].timestamp_s, plate[i].timestamp_s, period, "marker/plate");
        check_aligned(markers[i].timestamp_s, truth[i].timestamp_s, period, "marker/truth");
        check_aligned(markers[i].timestamp_s, samples[i * 4].timestamp_s, period,
                      "marker/tile");

        // Pose from the markers alone, exactly what a tracking system gives.
        double gamma = segment_angle(markers[i]);
        SegmentState state;
        state.alpha_rad = gamma;
        state.joint_y_mm =
            markers[i].m2.y_mm + scenario.marker_m2_offset_mm * std::sin(gamma);
        state.joint_z_mm =
            markers[i].m2.z_mm + scenario.marker_m2_offset_mm * std::cos(gamma);
        state.timestamp_s = markers[i].timestamp_s;

        std::array<Point2, 4> contacts = tile_contact_points(state, scenario.layout);
        std::array<double, 4> values{};
        std::array<double, 4> positions{};
        for (int k = 0; k < 4; ++k) {
            double q = normalize_pressure(samples[i * 4 + (size_t)k].pressure_kpa,
                                          scenario.design);
            values[(size_t)k] = q >= scenario.deadband_norm ? q : 0.0;
            positions[(size_t)k] = contacts[(size_t)k].y_mm;
        }
        GridFrame embedded =
            embed_tiles(values, positions, mapping, markers[i].timestamp_s);
        std::optional<CopEstimate> est = cop(embedded);
        std::optional<CopEstimate> plate_cop = cop(plate[i]);

        if (est) {
            est_rows.push_back({markers[i].timestamp_s, est->pos_y_mm, est->p_total});
        }
        if (plate_cop) {
            truth_rows.push_back(
                {plate[i].timestamp_s, plate_cop->pos_y_mm, plate_cop->p_total});
        }
        if (est && plate_cop) {
            bool in_stance = est->p_total >= scenario.stance_min_pressure &&
                             !truth[i].guard_contact;
            double err = cop_error_mm(*est, *plate_cop);
            error_rows.push_back(
                {markers[i].timestamp_s, err, in_stance ? 1.0 : 0.0});
            if (in_stance) {
                ++n_stance;
                max_stance_err = std::max(max_stance_err, std::fabs(err));
            }
        }
    }

    Report report;
    report.metrics.push_back(make_metric("max_cop_error_mm", max_stance_err, "mm",
                                         std::nullopt, 4.0));
    report.metrics.push_back(
        make_metric("n_stance_frames", static_cast<double>(n_stance), "count"));
    report.metrics.push_back(
        make_metric("n_frames", static_cast<double>(n), "count"));

    fs::path out(options.out_dir);
    fs::create_directories(out);
    write_table(out / "cop_est.csv", "t,pos_y_mm,p_total", est_rows);
    write_table(out / "cop_truth.csv", "t,pos_y_mm,p_total", truth_rows);
    write_table(out / "cop_error.csv", "t,err_mm,in_stance", error_rows);
    write_report(out, report);
    write_run_manifest(out, "estimate", resolved.hash(), scenario.seed,
                       {"cop_est.csv", "cop_truth.csv", "cop_error.csv",
                        "report.json", "report.txt"});
    return report.all_pass() ? 0 : 1;
}

int estimate_hop(const Config& resolved, const EstimateOptions& options) {
    HopScenario scenario = hop_from_config(resolved);
    if (options.curve_path.empty()) {
        throw ConfigError("hop estimation needs a calibration curve (--curve)");
    }
    CalibrationCurve curve = read_curve(options.curve_path);

    fs::path in(options.trace_dir);
    std::vector<PressureSample> samples = read_tile_samples(in / "tiles.csv");
    Table plate = read_table(in / "forceplate.csv");
    if (plate.columns.size() != 2 || plate.rows.empty()) {
        throw IoError("forceplate.csv must hold t,force_n rows");
    }

    GrfOptions grf_options;
    grf_options.deadband_norm = scenario.deadband_norm;
    GrfTrace estimate = grf(samples, 4, curve, scenario.design, grf_options);

    // The plate runs faster than the tile bus; each estimate frame is
    // compared against the plate reading interpolated at its own timestamp.
    double plate_period = 1.0 / scenario.plate_rate_hz;
    std::vector<std::vector<double>> error_rows;
    double abs_sum = 0.0;
    size_t j = 0;
    for (const auto& point : estimate.points) {
        double t = point.timestamp_s;
        if (t < plate.rows.front()[0] - plate_period ||
            t > plate.rows.back()[0] + plate_period) {
            throw AlignmentError("tile sample at " + format_g9(t) +
                                 " s lies outside the force-plate trace");
        }
        while (j + 1 < plate.rows.size() && plate.rows[j + 1][0] <= t) ++j;
        double truth_force = plate.rows[j][1];
        if (j + 1 < plate.rows.size() && plate.rows[j + 1][0] > plate.rows[j][0]) {
            double w = (t - plate.rows[j][0]) /
                       (plate.rows[j + 1][0] - plate.rows[j][0]);
            w = std::clamp(w, 0.0, 1.0);
            truth_force = plate.rows[j][1] * (1.0 - w) + plate.rows[j + 1][1] * w;
        }
        double err = point.total_force_n - truth_force;
        abs_sum += std::fabs(err);
        error_rows.push_back({t, err});
    }
    double mean_err =
        estimate.points.empty() ? 0.0 : abs_sum / (double)estimate.points.size();

    std::vector<double> plate_t, plate_f;
    plate_t.reserve(plate.rows.size());
    plate_f.reserve(plate.rows.size());
    for (const auto& row : plate.rows) {
        plate_t.push_back(row[0]);
        plate_f.push_back(row[1]);
    }
    int episodes = count_contact_episodes(plate_t, plate_f,
                                          scenario.episode_threshold_n,
                                          scenario.episode_min_gap_s);

    Report report;
    report.metrics.push_back(make_metric("mean_grf_error_n", mean_err, "N",
                                         std::nullopt, scenario.grf_error_max_n));
    report.metrics.push_back(make_metric(
        "n_contact_episodes", static_cast<double>(episodes), "count",
        static_cast<double>(scenario.n_hops), static_cast<double>(scenario.n_hops)));
    report.metrics.push_back(make_metric(
        "n_frames", static_cast<double>(estimate.points.size()), "count"));

    fs::path out(options.out_dir);
    fs::create_directories(out);
    write_grf(out / "grf.csv", estimate);
    write_table(out / "grf_error.csv", "t,err_n", error_rows);
    write_report(out, report);
    write_run_manifest(out, "estimate", resolved.hash(), scenario.seed,
                       {"grf.csv", "grf_error.csv", "report.json", "report.txt"});
    return report.all_pass() ? 0 : 1;
}

} // namespace

int cmd_estimate(const EstimateOptions& options) {
    return guarded([&] {
        fs::path resolved_path =
            fs::path(options.trace_dir) / "scenario.resolved.cfg";
        Config resolved = Config::load(resolved_path);
        std::string kind = resolved.get_string("scenario");
        if (kind == "roll") return estimate_roll(resolved, options);
        if (kind == "hop" || kind == "mud") return estimate_hop(resolved, options);
        throw ConfigError("unknown scenario kind in " + resolved_path.string() +
                          ": " + kind);
    });
}

} // namespace bubbletile
