#include "bubbletile/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bubbletile/errors.hpp"
#include "bubbletile/rng.hpp"

namespace bubbletile {

namespace {

constexpr double kPi = 3.14159265358979323846;

double to_rad(double degrees) { return degrees * kPi / 180.0; }
double to_deg(double radians) { return radians * 180.0 / kPi; }

void check_granular(const GranularParams& params) {
    if (params.k_depth_n_per_mm < 0.0 || params.c_vel_ns_per_mm < 0.0) {
        throw ConfigError("granular stiffness and damping must be nonnegative");
    }
    if (params.yield_depth_mm <= 0.0 || params.shadow_scale_mm <= 0.0) {
        throw ConfigError("granular yield depth and shadow scale must be positive");
    }
}

} // namespace

double granular_force(double depth_mm, double depth_velocity_mm_s,
                      const GranularParams& params) {
    check_granular(params);
    if (depth_mm <= 0.0) return 0.0;
    double d = std::min(depth_mm, params.yield_depth_mm);
    return params.k_depth_n_per_mm * d +
           params.c_vel_ns_per_mm * std::max(0.0, depth_velocity_mm_s);
}

void validate_schedule(const BusSchedule& schedule, int n_tiles) {
    if (n_tiles < 1) throw DomainError("schedule needs at least one tile");
    if (schedule.conversion_time_s <= 0.0) {
        throw ScheduleError("conversion time must be positive");
    }
    if (schedule.aggregate_rate_hz <= 0.0) {
        throw ScheduleError("aggregate rate must be positive");
    }
    double budget_hz = 1.0 / schedule.conversion_time_s;
    double demand_hz = schedule.parallel_conversion
                           ? schedule.aggregate_rate_hz
                           : schedule.aggregate_rate_hz * n_tiles;
    // The = case is a back-to-back converter; tolerate rounding there.
    if (demand_hz > budget_hz * (1.0 + 1e-9)) {
        throw ScheduleError(
            "schedule needs " + std::to_string(demand_hz) +
            " conversions/s per converter, hardware does " +
            std::to_string(budget_hz) +
            (schedule.parallel_conversion ? " (parallel)" : " (serialized)"));
    }
    if (!schedule.tile_order.empty()) {
        if (static_cast<int>(schedule.tile_order.size()) != n_tiles) {
            throw ScheduleError("tile order must list every tile exactly once");
        }
        std::vector<bool> seen(static_cast<size_t>(n_tiles), false);
        for (int id : schedule.tile_order) {
            if (id < 0 || id >= n_tiles || seen[static_cast<size_t>(id)]) {
                throw ScheduleError("tile order must be a permutation of 0.." +
                                    std::to_string(n_tiles - 1));
            }
            seen[static_cast<size_t>(id)] = true;
        }
    }
}

std::vector<double> frame_times(const BusSchedule& schedule, double duration_s) {
    if (schedule.aggregate_rate_hz <= 0.0) {
        throw ScheduleError("aggregate rate must be positive");
    }
    std::vector<double> times;
    if (duration_s <= 0.0) return times;
    for (long i = 0;; ++i) {
        double t = static_cast<double>(i) / schedule.aggregate_rate_hz;
        if (t >= duration_s) break;
        times.push_back(t);
    }
    return times;
}

double sample_time(const BusSchedule& schedule, int n_tiles, int frame_index,
                   int tile_index) {
    if (n_tiles < 1 || frame_index < 0 || tile_index < 0 || tile_index >= n_tiles) {
        throw DomainError("sample_time index out of range");
    }
    double frame_start = static_cast<double>(frame_index) / schedule.aggregate_rate_hz;
    if (schedule.parallel_conversion) {
        // Conversions overlap; readout staggers the effective timestamps.
        return frame_start + schedule.conversion_time_s * tile_index / n_tiles;
    }
    int slot = tile_index;
    if (!schedule.tile_order.empty()) {
        auto it = std::find(schedule.tile_order.begin(), schedule.tile_order.end(),
                            tile_index);
        if (it == schedule.tile_order.end()) {
            throw ScheduleError("tile " + std::to_string(tile_index) +
                                " missing from serialized order");
        }
        slot = static_cast<int>(it - schedule.tile_order.begin());
    }
    return frame_start + schedule.conversion_time_s * slot;
}

IndentationRun simulate_indentation(const SensorDesign& design,
                                    const DeflectionModel& model,
                                    double depth_rate_mm_s, double noise_sigma,
                                    std::uint64_t seed, const BusSchedule& bus) {
    validate(design);
    validate_schedule(bus, 1);
    if (depth_rate_mm_s <= 0.0) throw ConfigError("depth rate must be positive");
    if (noise_sigma < 0.0) throw ConfigError("noise sigma must be nonnegative");

    double span_kpa = design.sensor_max_kpa - design.baseline_pressure_kpa;
    double depth_limit = 1.2 * saturation_deflection_mm(design, model);
    GaussianStream noise(derive_seed(seed, 0));

    IndentationRun run;
    run.run_id = seed;
    for (long i = 0;; ++i) {
        double t = static_cast<double>(i) / bus.aggregate_rate_hz;
        double depth = depth_rate_mm_s * t;
        if (depth > depth_limit) break;  // rig travel stop, normally unreached
        double force = force_from_deflection(depth, design, model);
        double analog = analog_pressure_kpa(force, design, model);
        double noisy = std::clamp(analog + noise.normal() * noise_sigma * span_kpa,
                                  design.sensor_min_kpa, design.sensor_max_kpa);
        run.samples.push_back({normalize_pressure(noisy, design), force});
        // Keep the first saturated reading, then stop the ramp.
        if (analog >= design.sensor_max_kpa - 1e-12) break;
    }
    return run;
}

namespace {

// Compression of a dome at arc station angle theta from vertical, for a rig
// that presses the footpad preload_mm into the plane.
double station_depth(double theta, double segment_radius_mm, double preload_mm) {
    return std::max(0.0, preload_mm - segment_radius_mm * (1.0 - std::cos(theta)));
}

// Paraboloid pressure patch of one dome rasterized onto the plate. Cell
// masses are normalized so the cell sum reproduces force_n exactly; a patch
// too small to catch any supersample point drops whole into its cell.
void splat(GridFrame& plate, double center_y_mm, double center_z_mm,
           double radius_mm, double force_n) {
    if (force_n <= 0.0) return;
    const int sub = 16;
    double pitch = plate.cell_pitch_mm;
    long col_c = std::lround((center_y_mm - plate.origin_y_mm) / pitch);
    long row_c = std::lround((center_z_mm - plate.origin_z_mm) / pitch);
    long reach = static_cast<long>(radius_mm / pitch) + 2;

    struct CellMass {
        int row, col;
        double mass;
        double area;
    };
    std::vector<CellMass> cells;
    double total = 0.0;
    double r2 = radius_mm * radius_mm;
    for (long row = row_c - reach; row <= row_c + reach; ++row) {
        if (row < 0 || row >= plate.rows) continue;
        for (long col = col_c - reach; col <= col_c + reach; ++col) {
            if (col < 0 || col >= plate.cols) continue;
            double cell_y = plate.origin_y_mm + col * pitch;
            double cell_z = plate.origin_z_mm + row * pitch;
            double mass = 0.0;
            for (int a = 0; a < sub; ++a) {
                double y = cell_y - pitch / 2 + (a + 0.5) * pitch / sub;
                double dy = y - center_y_mm;
                for (int b = 0; b < sub; ++b) {
                    double z = cell_z - pitch / 2 + (b + 0.5) * pitch / sub;
                    double dz = z - center_z_mm;
                    double w = 1.0 - (dy * dy + dz * dz) / r2;
                    if (w > 0.0) mass += w;
                }
            }
            if (mass > 0.0) {
                cells.push_back({static_cast<int>(row) + 1,
                                 static_cast<int>(col) + 1, mass, 0.0});
                total += mass;
            }
        }
    }
    if (total > 0.0) {
        for (const auto& c : cells) {
            at(plate, c.row, c.col) += force_n * c.mass / total;
        }
    } else if (row_c >= 0 && row_c < plate.rows && col_c >= 0 && col_c < plate.cols) {
        at(plate, static_cast<int>(row_c) + 1, static_cast<int>(col_c) + 1) += force_n;
    }
}

} // namespace

RollResult simulate_roll(const RollScenario& scenario) {
    validate(scenario.design);
    validate_schedule(scenario.bus, 4);
    const ArrayLayout& layout = scenario.layout;
    double l = layout.segment_radius_mm;
    double r = layout.dome_radius_mm;
    if (l <= 0.0 || r <= 0.0) throw ConfigError("layout radii must be positive");
    if (scenario.pull_velocity_mm_s <= 0.0) {
        throw ConfigError("pull velocity must be positive");
    }
    if (scenario.preload_mm <= 0.0 || scenario.preload_mm >= r) {
        throw ConfigError("preload must sit between 0 and the dome standoff");
    }
    if (scenario.guard_offset_rad < 0.0 || scenario.lead_rad < 0.0 ||
        scenario.start_jitter_mm < 0.0 || scenario.noise_sigma < 0.0) {
        throw ConfigError("roll scenario offsets must be nonnegative");
    }
    if (scenario.plate_rows < 1 || scenario.plate_cols < 1 ||
        scenario.plate_pitch_mm <= 0.0) {
        throw ConfigError("plate grid must have positive size and pitch");
    }
    if (scenario.marker_m1_offset_mm <= scenario.marker_m2_offset_mm ||
        scenario.marker_m2_offset_mm < 0.0) {
        throw ConfigError("marker m1 must sit below m2 on the leg");
    }

    double b_max = *std::max_element(layout.tile_arc_angles_rad.begin(),
                                     layout.tile_arc_angles_rad.end());
    double b_min = *std::min_element(layout.tile_arc_angles_rad.begin(),
                                     layout.tile_arc_angles_rad.end());
    double toe = b_max + scenario.guard_offset_rad;
    double heel = b_min - scenario.guard_offset_rad;
    // Half-width of one dome's contact window.
    double theta_c = std::acos(1.0 - scenario.preload_mm / l);
    double alpha_rate = scenario.pull_velocity_mm_s / (l + r);
    double alpha0 = -(toe + theta_c + scenario.lead_rad);
    double alpha_end = -heel + theta_c + scenario.lead_rad;
    double duration = scenario.duration_s
                          ? *scenario.duration_s
                          : (alpha_end - alpha0) / alpha_rate;
    double joint_z = l + r - scenario.preload_mm;

    double jitter =
        GaussianStream(derive_seed(scenario.seed, 100)).uniform() *
        scenario.start_jitter_mm;
    // Park the sweep over the middle of the plate.
    double plate_mid = scenario.plate_origin_y_mm +
                       (scenario.plate_cols - 1) * scenario.plate_pitch_mm / 2.0;
    double y_start = plate_mid + r - (l + r) * (0.0 - alpha0) + jitter;

    std::array<GaussianStream, 4> tile_noise{
        GaussianStream(derive_seed(scenario.seed, 0)),
        GaussianStream(derive_seed(scenario.seed, 1)),
        GaussianStream(derive_seed(scenario.seed, 2)),
        GaussianStream(derive_seed(scenario.seed, 3))};
    double span_kpa =
        scenario.design.sensor_max_kpa - scenario.design.baseline_pressure_kpa;

    RollResult result;
    result.resolved = roll_to_config(scenario);
    result.resolved.set_double("duration_s", duration);

    std::vector<double> times = frame_times(scenario.bus, duration);
    result.plate_frames.reserve(times.size());
    result.markers.reserve(times.size());
    result.truth.reserve(times.size());
    result.tile_samples.reserve(times.size() * 4);

    for (size_t i = 0; i < times.size(); ++i) {
        double t = times[i];
        double alpha = alpha0 + alpha_rate * t;
        SegmentState state;
        state.alpha_rad = alpha;
        state.joint_y_mm = y_start + (l + r) * (alpha - alpha0);
        state.joint_z_mm = joint_z;
        state.timestamp_s = t;

        std::array<double, 4> depth = tile_engagement(state, layout, 0.0);
        std::array<Point2, 4> contact = tile_contact_points(state, layout);

        RollTruthFrame truth;
        truth.timestamp_s = t;
        GridFrame plate;
        plate.rows = scenario.plate_rows;
        plate.cols = scenario.plate_cols;
        plate.cell_pitch_mm = scenario.plate_pitch_mm;
        plate.origin_y_mm = scenario.plate_origin_y_mm;
        plate.origin_z_mm = scenario.plate_origin_z_mm;
        plate.timestamp_s = t;
        plate.values.assign(static_cast<size_t>(plate.rows) * plate.cols, 0.0);

        double moment = 0.0;
        for (int k = 0; k < 4; ++k) {
            double force =
                force_from_deflection(depth[k], scenario.design, scenario.model);
            truth.tile_force_n[k] = force;
            truth.tile_contact_y_mm[k] = contact[k].y_mm;
            truth.total_force_n += force;
            moment += force * contact[k].y_mm;
            if (depth[k] > 0.0) truth.any_tile_contact = true;
            splat(plate, contact[k].y_mm, 0.0,
                  footprint_radius_mm(depth[k], layout), force);
        }
        for (double station : {toe, heel}) {
            double theta = alpha + station;
            double d = station_depth(theta, l, scenario.preload_mm);
            double force = force_from_deflection(d, scenario.design, scenario.model);
            Point2 p = contact_point(theta, layout);
            double y = p.y_mm + state.joint_y_mm;
            truth.guard_force_n += force;
            truth.total_force_n += force;
            moment += force * y;
            splat(plate, y, 0.0, footprint_radius_mm(d, layout), force);
        }
        truth.guard_contact = truth.guard_force_n > 1e-9;
        if (truth.total_force_n > 0.0) truth.cop_y_mm = moment / truth.total_force_n;

        MarkerPair markers;
        markers.timestamp_s = t;
        markers.m1 = {state.joint_y_mm - scenario.marker_m1_offset_mm * std::sin(alpha),
                      state.joint_z_mm - scenario.marker_m1_offset_mm * std::cos(alpha)};
        markers.m2 = {state.joint_y_mm - scenario.marker_m2_offset_mm * std::sin(alpha),
                      state.joint_z_mm - scenario.marker_m2_offset_mm * std::cos(alpha)};

        for (int k = 0; k < 4; ++k) {
            double ts = sample_time(scenario.bus, 4, static_cast<int>(i), k);
            double alpha_s = alpha0 + alpha_rate * ts;
            double theta = alpha_s + layout.tile_arc_angles_rad[k];
            double force = force_from_deflection(
                station_depth(theta, l, scenario.preload_mm), scenario.design,
                scenario.model);
            double noise_kpa =
                tile_noise[static_cast<size_t>(k)].normal() * scenario.noise_sigma *
                span_kpa;
            result.tile_samples.push_back(make_sample(
                force, scenario.design, scenario.model, noise_kpa, k + 1, ts));
        }

        result.plate_frames.push_back(std::move(plate));
        result.markers.push_back(markers);
        result.truth.push_back(truth);
    }
    return result;
}

HopResult simulate_hop(const HopScenario& scenario) {
    validate(scenario.design);
    validate_schedule(scenario.bus, 4);
    check_granular(scenario.granular);
    const ArrayLayout& layout = scenario.layout;
    double l = layout.segment_radius_mm;
    double r = layout.dome_radius_mm;
    if (l <= 0.0 || r <= 0.0) throw ConfigError("layout radii must be positive");
    if (scenario.leg_mass_kg <= 0.0) throw ConfigError("leg mass must be positive");
    if (scenario.dt_s <= 0.0) throw ConfigError("integration step must be positive");
    if (scenario.duration_s < 0.0) throw ConfigError("duration must be nonnegative");
    if (scenario.plate_rate_hz <= 0.0) {
        throw ConfigError("reference plate rate must be positive");
    }
    if (scenario.drop_height_mm < 0.0 || scenario.noise_sigma < 0.0) {
        throw ConfigError("drop height and noise sigma must be nonnegative");
    }
    if (scenario.servo_omega_rad_s <= 0.0) {
        throw ConfigError("servo bandwidth must be positive");
    }

    HopResult result;
    result.resolved = hop_to_config(scenario);

    // Start with the deepest-reaching dome drop_height above the surface.
    double reach = 0.0;
    for (double b : layout.tile_arc_angles_rad) {
        reach = std::max(reach, l * std::cos(scenario.hip_start_rad + b) + r);
    }
    double z = scenario.drop_height_mm + reach;
    double v = 0.0;
    double alpha = scenario.hip_start_rad;
    double alpha_dot = 0.0;
    double target = scenario.hip_start_rad;
    bool retargeted = false;

    std::array<GaussianStream, 4> tile_noise{
        GaussianStream(derive_seed(scenario.seed, 0)),
        GaussianStream(derive_seed(scenario.seed, 1)),
        GaussianStream(derive_seed(scenario.seed, 2)),
        GaussianStream(derive_seed(scenario.seed, 3))};
    double span_kpa =
        scenario.design.sensor_max_kpa - scenario.design.baseline_pressure_kpa;

    std::vector<double> frames = frame_times(scenario.bus, scenario.duration_s);
    size_t next_frame = 0;
    int next_tile = 0;

    long truth_stride = std::max(
        1L, std::lround(1.0 / (scenario.plate_rate_hz * scenario.dt_s)));
    long n_steps = std::lround(scenario.duration_s / scenario.dt_s);
    double omega = scenario.servo_omega_rad_s;
    std::array<double, 4> force{};

    for (long step = 0; step < n_steps; ++step) {
        double t = static_cast<double>(step) * scenario.dt_s;

        force = {};
        std::array<double, 4> depth{};
        double d_max = 0.0;
        bool contact = false;
        for (int k = 0; k < 4; ++k) {
            double theta = alpha + layout.tile_arc_angles_rad[k];
            depth[k] = l * std::cos(theta) + r - z;
            if (depth[k] > 0.0) {
                contact = true;
                d_max = std::max(d_max, depth[k]);
            }
        }
        double total = 0.0;
        for (int k = 0; k < 4; ++k) {
            if (depth[k] <= 0.0) continue;
            double theta = alpha + layout.tile_arc_angles_rad[k];
            double rate = -(v + l * std::sin(theta) * alpha_dot);
            double shadow =
                std::exp(-(d_max - depth[k]) / scenario.granular.shadow_scale_mm);
            force[k] = shadow * granular_force(depth[k], rate, scenario.granular);
            total += force[k];
        }

        if (step % truth_stride == 0) {
            HopTruthFrame truth;
            truth.timestamp_s = t;
            truth.tile_force_n = force;
            truth.total_force_n = total;
            truth.joint_z_mm = z;
            truth.velocity_mm_s = v;
            truth.alpha_rad = alpha;
            truth.contact = contact;
            result.truth.push_back(truth);
        }

        while (next_frame < frames.size()) {
            double ts = sample_time(scenario.bus, 4,
                                    static_cast<int>(next_frame), next_tile);
            if (ts > t + 1e-12) break;
            double noise = scenario.noise_kind == NoiseKind::gaussian
                               ? tile_noise[static_cast<size_t>(next_tile)].normal()
                               : tile_noise[static_cast<size_t>(next_tile)].student_t3();
            result.tile_samples.push_back(
                make_sample(force[next_tile], scenario.design, scenario.model,
                            noise * scenario.noise_sigma * span_kpa, next_tile + 1,
                            ts));
            if (++next_tile == 4) {
                next_tile = 0;
                ++next_frame;
            }
        }

        double accel = total / scenario.leg_mass_kg * 1000.0 -
                       scenario.gravity_m_s2 * 1000.0;
        double alpha_dd = omega * omega * (target - alpha) - 2.0 * omega * alpha_dot;
        double v_old = v;
        v += accel * scenario.dt_s;
        z += v * scenario.dt_s;
        alpha_dot += alpha_dd * scenario.dt_s;
        alpha += alpha_dot * scenario.dt_s;

        // First compression peak: swing the hip toward the far side so later
        // hops land on the other end of the array.
        if (!retargeted && contact && v_old < 0.0 && v >= 0.0) {
            target = scenario.hip_end_rad;
            retargeted = true;
        }
    }

    // Conversions scheduled inside the last fraction of a step still finish;
    // emit them from the final state so frames stay whole.
    while (next_frame < frames.size()) {
        double ts = sample_time(scenario.bus, 4, static_cast<int>(next_frame),
                                next_tile);
        double noise = scenario.noise_kind == NoiseKind::gaussian
                           ? tile_noise[static_cast<size_t>(next_tile)].normal()
                           : tile_noise[static_cast<size_t>(next_tile)].student_t3();
        result.tile_samples.push_back(
            make_sample(force[next_tile], scenario.design, scenario.model,
                        noise * scenario.noise_sigma * span_kpa, next_tile + 1, ts));
        if (++next_tile == 4) {
            next_tile = 0;
            ++next_frame;
        }
    }
    return result;
}

int count_contact_episodes(const std::vector<double>& timestamps,
                           const std::vector<double>& total_force_n,
                           double threshold_n, double min_gap_s) {
    if (timestamps.size() != total_force_n.size()) {
        throw DomainError("episode count needs matching time and force series");
    }
    if (min_gap_s < 0.0) throw DomainError("episode gap must be nonnegative");
    int episodes = 0;
    bool in_contact = false;
    bool ever = false;
    double fell_at = 0.0;
    for (size_t i = 0; i < timestamps.size(); ++i) {
        bool above = total_force_n[i] >= threshold_n;
        if (above && !in_contact) {
            // A dip shorter than min_gap is chatter inside one episode.
            if (!ever || timestamps[i] - fell_at >= min_gap_s) ++episodes;
            ever = true;
        }
        if (!above && in_contact) fell_at = timestamps[i];
        in_contact = above;
    }
    return episodes;
}

namespace {

BusSchedule bus_from_config(const Config& cfg) {
    BusSchedule bus;
    bus.conversion_time_s = cfg.get_double("conversion_time_s", bus.conversion_time_s);
    bus.aggregate_rate_hz = cfg.get_double("aggregate_rate_hz", bus.aggregate_rate_hz);
    bus.parallel_conversion =
        cfg.get_bool("parallel_conversion", bus.parallel_conversion);
    return bus;
}

void bus_to_config(const BusSchedule& bus, Config& cfg) {
    cfg.set_double("conversion_time_s", bus.conversion_time_s);
    cfg.set_double("aggregate_rate_hz", bus.aggregate_rate_hz);
    cfg.set_bool("parallel_conversion", bus.parallel_conversion);
}

ArrayLayout layout_from_config(const Config& cfg, const SensorDesign& design) {
    ArrayLayout layout = default_layout(design);
    layout.segment_radius_mm =
        cfg.get_double("segment_radius_mm", layout.segment_radius_mm);
    layout.dome_radius_mm = cfg.get_double("dome_radius_mm", layout.dome_radius_mm);
    for (int k = 0; k < 4; ++k) {
        std::string key = "tile_angle_" + std::to_string(k + 1) + "_deg";
        layout.tile_arc_angles_rad[static_cast<size_t>(k)] = to_rad(cfg.get_double(
            key, to_deg(layout.tile_arc_angles_rad[static_cast<size_t>(k)])));
    }
    return layout;
}

void layout_to_config(const ArrayLayout& layout, Config& cfg) {
    cfg.set_double("segment_radius_mm", layout.segment_radius_mm);
    cfg.set_double("dome_radius_mm", layout.dome_radius_mm);
    for (int k = 0; k < 4; ++k) {
        cfg.set_double("tile_angle_" + std::to_string(k + 1) + "_deg",
                       to_deg(layout.tile_arc_angles_rad[static_cast<size_t>(k)]));
    }
}

} // namespace

RollScenario roll_from_config(const Config& cfg) {
    if (cfg.get_string("scenario", "roll") != "roll") {
        throw ConfigError("scenario kind is not roll");
    }
    RollScenario sc;
    sc.design = design_from_config(cfg);
    sc.layout = layout_from_config(cfg, sc.design);
    sc.bus = bus_from_config(cfg);
    sc.pull_velocity_mm_s = cfg.get_double("pull_velocity_mm_s", sc.pull_velocity_mm_s);
    if (cfg.has("duration_s")) sc.duration_s = cfg.get_double("duration_s");
    sc.plate_rows = static_cast<int>(cfg.get_int("plate_rows", sc.plate_rows));
    sc.plate_cols = static_cast<int>(cfg.get_int("plate_cols", sc.plate_cols));
    sc.plate_pitch_mm = cfg.get_double("plate_pitch_mm", sc.plate_pitch_mm);
    sc.plate_origin_y_mm = cfg.get_double("plate_origin_y_mm", sc.plate_origin_y_mm);
    sc.plate_origin_z_mm = cfg.get_double("plate_origin_z_mm", sc.plate_origin_z_mm);
    sc.preload_mm = cfg.get_double("preload_mm", sc.preload_mm);
    sc.guard_offset_rad =
        to_rad(cfg.get_double("guard_offset_deg", to_deg(sc.guard_offset_rad)));
    sc.lead_rad = to_rad(cfg.get_double("lead_deg", to_deg(sc.lead_rad)));
    sc.noise_sigma = cfg.get_double("noise_sigma", sc.noise_sigma);
    sc.start_jitter_mm = cfg.get_double("start_jitter_mm", sc.start_jitter_mm);
    sc.marker_m1_offset_mm =
        cfg.get_double("marker_m1_offset_mm", sc.marker_m1_offset_mm);
    sc.marker_m2_offset_mm =
        cfg.get_double("marker_m2_offset_mm", sc.marker_m2_offset_mm);
    sc.stance_min_pressure =
        cfg.get_double("stance_min_pressure", sc.stance_min_pressure);
    sc.deadband_norm = cfg.get_double("deadband_norm", sc.deadband_norm);
    sc.seed = static_cast<std::uint64_t>(
        cfg.get_int("seed", static_cast<std::int64_t>(sc.seed)));
    return sc;
}

Config roll_to_config(const RollScenario& scenario) {
    Config cfg = design_to_config(scenario.design);
    cfg.set("scenario", "roll");
    layout_to_config(scenario.layout, cfg);
    bus_to_config(scenario.bus, cfg);
    cfg.set_double("pull_velocity_mm_s", scenario.pull_velocity_mm_s);
    if (scenario.duration_s) cfg.set_double("duration_s", *scenario.duration_s);
    cfg.set_int("plate_rows", scenario.plate_rows);
    cfg.set_int("plate_cols", scenario.plate_cols);
    cfg.set_double("plate_pitch_mm", scenario.plate_pitch_mm);
    cfg.set_double("plate_origin_y_mm", scenario.plate_origin_y_mm);
    cfg.set_double("plate_origin_z_mm", scenario.plate_origin_z_mm);
    cfg.set_double("preload_mm", scenario.preload_mm);
    cfg.set_double("guard_offset_deg", to_deg(scenario.guard_offset_rad));
    cfg.set_double("lead_deg", to_deg(scenario.lead_rad));
    cfg.set_double("noise_sigma", scenario.noise_sigma);
    cfg.set_double("start_jitter_mm", scenario.start_jitter_mm);
    cfg.set_double("marker_m1_offset_mm", scenario.marker_m1_offset_mm);
    cfg.set_double("marker_m2_offset_mm", scenario.marker_m2_offset_mm);
    cfg.set_double("stance_min_pressure", scenario.stance_min_pressure);
    cfg.set_double("deadband_norm", scenario.deadband_norm);
    cfg.set_int("seed", static_cast<std::int64_t>(scenario.seed));
    return cfg;
}

HopScenario hop_from_config(const Config& cfg) {
    std::string kind = cfg.get_string("scenario", "hop");
    if (kind != "hop" && kind != "mud") {
        throw ConfigError("scenario kind is not hop or mud");
    }
    HopScenario sc;
    if (kind == "mud") sc.noise_kind = NoiseKind::student_t3;
    sc.design = design_from_config(cfg);
    sc.layout = layout_from_config(cfg, sc.design);
    sc.bus = bus_from_config(cfg);
    sc.granular.k_depth_n_per_mm =
        cfg.get_double("granular_k_n_per_mm", sc.granular.k_depth_n_per_mm);
    sc.granular.c_vel_ns_per_mm =
        cfg.get_double("granular_c_ns_per_mm", sc.granular.c_vel_ns_per_mm);
    sc.granular.yield_depth_mm =
        cfg.get_double("granular_yield_depth_mm", sc.granular.yield_depth_mm);
    sc.granular.shadow_scale_mm =
        cfg.get_double("granular_shadow_scale_mm", sc.granular.shadow_scale_mm);
    sc.leg_mass_kg = cfg.get_double("leg_mass_kg", sc.leg_mass_kg);
    sc.drop_height_mm = cfg.get_double("drop_height_mm", sc.drop_height_mm);
    sc.n_hops = static_cast<int>(cfg.get_int("n_hops", sc.n_hops));
    sc.gravity_m_s2 = cfg.get_double("gravity_m_s2", sc.gravity_m_s2);
    sc.hip_start_rad =
        to_rad(cfg.get_double("hip_start_deg", to_deg(sc.hip_start_rad)));
    sc.hip_end_rad = to_rad(cfg.get_double("hip_end_deg", to_deg(sc.hip_end_rad)));
    sc.servo_omega_rad_s = cfg.get_double("servo_omega_rad_s", sc.servo_omega_rad_s);
    sc.duration_s = cfg.get_double("duration_s", sc.duration_s);
    sc.dt_s = cfg.get_double("dt_s", sc.dt_s);
    sc.plate_rate_hz = cfg.get_double("plate_rate_hz", sc.plate_rate_hz);
    sc.episode_threshold_n =
        cfg.get_double("episode_threshold_n", sc.episode_threshold_n);
    sc.episode_min_gap_s = cfg.get_double("episode_min_gap_s", sc.episode_min_gap_s);
    sc.noise_sigma = cfg.get_double("noise_sigma", sc.noise_sigma);
    sc.deadband_norm = cfg.get_double("deadband_norm", sc.deadband_norm);
    sc.grf_error_max_n = cfg.get_double("grf_error_max_n", sc.grf_error_max_n);
    std::string noise = cfg.get_string(
        "noise_kind", sc.noise_kind == NoiseKind::gaussian ? "gaussian" : "student_t3");
    if (noise == "gaussian") {
        sc.noise_kind = NoiseKind::gaussian;
    } else if (noise == "student_t3") {
        sc.noise_kind = NoiseKind::student_t3;
    } else {
        throw ConfigError("unknown noise kind: " + noise);
    }
    sc.seed = static_cast<std::uint64_t>(
        cfg.get_int("seed", static_cast<std::int64_t>(sc.seed)));
    return sc;
}

Config hop_to_config(const HopScenario& scenario) {
    Config cfg = design_to_config(scenario.design);
    cfg.set("scenario", "hop");
    layout_to_config(scenario.layout, cfg);
    bus_to_config(scenario.bus, cfg);
    cfg.set_double("granular_k_n_per_mm", scenario.granular.k_depth_n_per_mm);
    cfg.set_double("granular_c_ns_per_mm", scenario.granular.c_vel_ns_per_mm);
    cfg.set_double("granular_yield_depth_mm", scenario.granular.yield_depth_mm);
    cfg.set_double("granular_shadow_scale_mm", scenario.granular.shadow_scale_mm);
    cfg.set_double("leg_mass_kg", scenario.leg_mass_kg);
    cfg.set_double("drop_height_mm", scenario.drop_height_mm);
    cfg.set_int("n_hops", scenario.n_hops);
    cfg.set_double("gravity_m_s2", scenario.gravity_m_s2);
    cfg.set_double("hip_start_deg", to_deg(scenario.hip_start_rad));
    cfg.set_double("hip_end_deg", to_deg(scenario.hip_end_rad));
    cfg.set_double("servo_omega_rad_s", scenario.servo_omega_rad_s);
    cfg.set_double("duration_s", scenario.duration_s);
    cfg.set_double("dt_s", scenario.dt_s);
    cfg.set_double("plate_rate_hz", scenario.plate_rate_hz);
    cfg.set_double("episode_threshold_n", scenario.episode_threshold_n);
    cfg.set_double("episode_min_gap_s", scenario.episode_min_gap_s);
    cfg.set_double("noise_sigma", scenario.noise_sigma);
    cfg.set_double("deadband_norm", scenario.deadband_norm);
    cfg.set_double("grf_error_max_n", scenario.grf_error_max_n);
    cfg.set("noise_kind", scenario.noise_kind == NoiseKind::gaussian
                              ? "gaussian"
                              : "student_t3");
    cfg.set_int("seed", static_cast<std::int64_t>(scenario.seed));
    return cfg;
}

} // namespace bubbletile
