#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "bubbletile/errors.hpp"
#include "bubbletile/simulation.hpp"

using namespace bubbletile;

TEST_CASE("granular substrate force law") {
    GranularParams p;
    p.k_depth_n_per_mm = 0.5;
    p.c_vel_ns_per_mm = 0.0;
    CHECK(granular_force(10.0, 0.0, p) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(granular_force(0.0, 50.0, p) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(granular_force(-2.0, 0.0, p) == doctest::Approx(0.0).epsilon(1e-12));

    // Yield caps the depth the force law sees.
    CHECK(granular_force(250.0, 0.0, p) ==
          doctest::Approx(granular_force(p.yield_depth_mm, 0.0, p)).epsilon(1e-12));

    // Damping resists penetration only; grains never pull back on exit.
    GranularParams damped = p;
    damped.c_vel_ns_per_mm = 0.01;
    CHECK(granular_force(10.0, 200.0, damped) > granular_force(10.0, 0.0, damped));
    CHECK(granular_force(10.0, -200.0, damped) ==
          doctest::Approx(granular_force(10.0, 0.0, damped)).epsilon(1e-12));
}

TEST_CASE("bus schedule capacity") {
    BusSchedule bus;
    bus.parallel_conversion = true;
    bus.aggregate_rate_hz = 625.0;  // exactly the converter limit
    validate_schedule(bus, 4);
    bus.aggregate_rate_hz = 700.0;
    CHECK_THROWS_AS(validate_schedule(bus, 4), ScheduleError);

    // Serialized conversion shares one converter across the tiles.
    BusSchedule shared;
    shared.parallel_conversion = false;
    shared.aggregate_rate_hz = 150.0;
    validate_schedule(shared, 4);
    shared.aggregate_rate_hz = 200.0;
    CHECK_THROWS_AS(validate_schedule(shared, 4), ScheduleError);
}

TEST_CASE("frame times and per-tile stagger") {
    BusSchedule bus;  // 330 Hz parallel
    auto times = frame_times(bus, 1.0);
    CHECK(times.size() == 330);
    CHECK(times.front() == doctest::Approx(0.0).epsilon(1e-12));
    for (size_t i = 1; i < times.size(); ++i) {
        double gap = times[i] - times[i - 1];
        CHECK(gap == doctest::Approx(1.0 / 330.0).epsilon(1e-12));
        CHECK(gap >= bus.conversion_time_s);
    }

    // Readout staggers tile timestamps inside the frame window.
    double prev = -1.0;
    for (int k = 0; k < 4; ++k) {
        double t = sample_time(bus, 4, 10, k);
        CHECK(t >= times[10]);
        CHECK(t < times[11]);
        CHECK(t > prev);
        prev = t;
    }
    CHECK(sample_time(bus, 4, 10, 1) - sample_time(bus, 4, 10, 0) ==
          doctest::Approx(bus.conversion_time_s / 4.0).epsilon(1e-12));
}

TEST_CASE("rolling scenario bookkeeping") {
    RollScenario scenario;
    scenario.seed = 1;
    RollResult result = simulate_roll(scenario);

    REQUIRE(result.truth.size() > 100);
    CHECK(result.plate_frames.size() == result.truth.size());
    CHECK(result.markers.size() == result.truth.size());
    CHECK(result.tile_samples.size() == 4 * result.truth.size());
    CHECK(result.plate_frames.front().rows == scenario.plate_rows);
    CHECK(result.plate_frames.front().cols == scenario.plate_cols);

    // Per-frame force closure: tiles plus guards carry the whole load.
    int stance = 0, guard = 0;
    for (const auto& frame : result.truth) {
        double parts = frame.guard_force_n +
                       std::accumulate(frame.tile_force_n.begin(),
                                       frame.tile_force_n.end(), 0.0);
        CHECK(std::abs(parts - frame.total_force_n) < 1e-9);
        stance += frame.any_tile_contact && !frame.guard_contact;
        guard += frame.guard_contact;
    }
    // The pull crosses the instrumented span and both guard regions.
    CHECK(stance > 100);
    CHECK(guard > 10);

    // Tiles engage in numbered order as the arc rolls forward.
    auto first_loaded = [&](int k) {
        for (size_t i = 0; i < result.truth.size(); ++i)
            if (result.truth[i].tile_force_n[k] > 0.5) return i;
        return result.truth.size();
    };
    CHECK(first_loaded(0) < first_loaded(1));
    CHECK(first_loaded(1) < first_loaded(2));
    CHECK(first_loaded(2) < first_loaded(3));
}

TEST_CASE("rolling scenario repeats bit for bit under a fixed seed") {
    RollScenario scenario;
    scenario.seed = 5;
    RollResult a = simulate_roll(scenario);
    RollResult b = simulate_roll(scenario);
    REQUIRE(a.tile_samples.size() == b.tile_samples.size());
    for (size_t i = 0; i < a.tile_samples.size(); ++i) {
        CHECK(a.tile_samples[i].pressure_counts == b.tile_samples[i].pressure_counts);
        CHECK(a.tile_samples[i].timestamp_s == b.tile_samples[i].timestamp_s);
    }

    scenario.seed = 6;
    RollResult c = simulate_roll(scenario);
    bool differs = c.tile_samples.size() != a.tile_samples.size();
    for (size_t i = 0; !differs && i < a.tile_samples.size(); ++i)
        differs = a.tile_samples[i].pressure_counts != c.tile_samples[i].pressure_counts;
    CHECK(differs);
}

TEST_CASE("hopping scenario force accounting") {
    HopScenario scenario;
    scenario.seed = 1;
    HopResult result = simulate_hop(scenario);
    REQUIRE(result.truth.size() > 1000);

    // Impulse closure over the whole drop: substrate impulse balances
    // gravity plus whatever momentum the trace cuts off mid-oscillation.
    double impulse = 0.0;
    for (size_t i = 1; i < result.truth.size(); ++i) {
        double dt = result.truth[i].timestamp_s - result.truth[i - 1].timestamp_s;
        impulse += 0.5 * dt * (result.truth[i].total_force_n +
                               result.truth[i - 1].total_force_n);
    }
    double weight_impulse = scenario.leg_mass_kg * scenario.gravity_m_s2 *
                            (result.truth.back().timestamp_s -
                             result.truth.front().timestamp_s);
    double momentum_end =
        scenario.leg_mass_kg * result.truth.back().velocity_mm_s / 1000.0;
    CHECK(std::abs(impulse - weight_impulse - momentum_end) <
          0.01 * weight_impulse);

    // Distinct ground contacts of the ring-down.
    std::vector<double> t, f;
    for (const auto& frame : result.truth) {
        t.push_back(frame.timestamp_s);
        f.push_back(frame.total_force_n);
    }
    CHECK(count_contact_episodes(t, f, scenario.episode_threshold_n,
                                 scenario.episode_min_gap_s) == scenario.n_hops);

    // Settled: the tail carries the static weight.
    double tail = result.truth.back().total_force_n;
    CHECK(tail > 0.8 * scenario.leg_mass_kg * scenario.gravity_m_s2);
    CHECK(tail < 2.0 * scenario.leg_mass_kg * scenario.gravity_m_s2);
}

TEST_CASE("hopping scenario repeats bit for bit under a fixed seed") {
    HopScenario scenario;
    scenario.seed = 9;
    HopResult a = simulate_hop(scenario);
    HopResult b = simulate_hop(scenario);
    REQUIRE(a.tile_samples.size() == b.tile_samples.size());
    bool identical = true;
    for (size_t i = 0; i < a.tile_samples.size(); ++i)
        identical = identical &&
                    a.tile_samples[i].pressure_counts == b.tile_samples[i].pressure_counts;
    CHECK(identical);
}

TEST_CASE("episode counting edge cases") {
    auto step = [](std::vector<double>& t, std::vector<double>& f, double t0,
                   double t1, double level) {
        for (double x = t0; x < t1; x += 0.001) {
            t.push_back(x);
            f.push_back(level);
        }
    };

    std::vector<double> t, f;
    CHECK(count_contact_episodes(t, f) == 0);

    step(t, f, 0.0, 0.5, 8.0);
    CHECK(count_contact_episodes(t, f) == 1);

    // A micro-bounce shorter than the gap stays part of its hop.
    std::vector<double> t2, f2;
    step(t2, f2, 0.0, 0.2, 8.0);
    step(t2, f2, 0.2, 0.21, 0.0);
    step(t2, f2, 0.21, 0.4, 8.0);
    CHECK(count_contact_episodes(t2, f2, 1.0, 0.03) == 1);

    // A real flight phase separates two.
    std::vector<double> t3, f3;
    step(t3, f3, 0.0, 0.2, 8.0);
    step(t3, f3, 0.2, 0.3, 0.0);
    step(t3, f3, 0.3, 0.5, 8.0);
    CHECK(count_contact_episodes(t3, f3, 1.0, 0.03) == 2);

    // Threshold is a rising-edge test, not a mean.
    std::vector<double> t4, f4;
    step(t4, f4, 0.0, 0.5, 0.5);
    CHECK(count_contact_episodes(t4, f4, 1.0, 0.03) == 0);
}

TEST_CASE("scenario configs round trip") {
    RollScenario roll;
    roll.seed = 3;
    roll.pull_velocity_mm_s = 80.0;
    Config rc = roll_to_config(roll);
    RollScenario roll2 = roll_from_config(rc);
    CHECK(roll_to_config(roll2).serialize() == rc.serialize());
    CHECK(roll2.pull_velocity_mm_s == doctest::Approx(80.0).epsilon(1e-12));
    CHECK(roll2.seed == 3);

    HopScenario hop;
    hop.n_hops = 2;
    hop.noise_kind = NoiseKind::student_t3;
    Config hc = hop_to_config(hop);
    HopScenario hop2 = hop_from_config(hc);
    CHECK(hop_to_config(hop2).serialize() == hc.serialize());
    CHECK(hop2.noise_kind == NoiseKind::student_t3);
    CHECK(hop2.grf_error_max_n == doctest::Approx(hop.grf_error_max_n).epsilon(1e-12));

    // The heavy-substrate alias defaults to the long-tailed read noise,
    // but an explicit key still wins.
    Config mud = Config::parse("scenario = mud\n");
    CHECK(hop_from_config(mud).noise_kind == NoiseKind::student_t3);
    mud.set("noise_kind", "gaussian");
    CHECK(hop_from_config(mud).noise_kind == NoiseKind::gaussian);

    Config bad = hop_to_config(HopScenario{});
    bad.set("noise_kind", "weibull");
    CHECK_THROWS_AS(hop_from_config(bad), ConfigError);
}
