#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bubbletile/array_kinematics.hpp"
#include "bubbletile/calibration.hpp"
#include "bubbletile/estimation.hpp"
#include "bubbletile/rng.hpp"
#include "bubbletile/sensor_model.hpp"
#include "bubbletile/simulation.hpp"

namespace py = pybind11;
using namespace bubbletile;

PYBIND11_MODULE(bubbletile, m) {
    m.doc() = "Pneumatic tactile tile toolkit: sensor model, calibration, "
              "array kinematics, COP/GRF estimation, scenario simulation";

    py::register_exception<Error>(m, "Error");

    py::class_<SensorDesign>(m, "SensorDesign")
        .def(py::init<>())
        .def_readwrite("name", &SensorDesign::name)
        .def_readwrite("dome_diameter_mm", &SensorDesign::dome_diameter_mm)
        .def_readwrite("bubble_radius_mm", &SensorDesign::bubble_radius_mm)
        .def_readwrite("youngs_modulus_mpa", &SensorDesign::youngs_modulus_mpa)
        .def_readwrite("baseline_pressure_kpa", &SensorDesign::baseline_pressure_kpa)
        .def_readwrite("sensor_min_kpa", &SensorDesign::sensor_min_kpa)
        .def_readwrite("sensor_max_kpa", &SensorDesign::sensor_max_kpa)
        .def_readwrite("adc_bits", &SensorDesign::adc_bits)
        .def("__repr__", [](const SensorDesign& d) {
            return "<SensorDesign " + d.name + ">";
        });
    m.def("validate", &validate, py::arg("design"));
    m.def("design_presets", &design_presets);
    m.def("design_preset", &design_preset, py::arg("name"));

    py::class_<DeflectionModel>(m, "DeflectionModel")
        .def(py::init<>())
        .def_readwrite("reference_curve", &DeflectionModel::reference_curve)
        .def_readwrite("reference_dome_mm", &DeflectionModel::reference_dome_mm)
        .def_readwrite("reference_modulus_mpa", &DeflectionModel::reference_modulus_mpa)
        .def_readwrite("reference_saturation_n", &DeflectionModel::reference_saturation_n);
    m.def("reference_model", &reference_model);

    m.def("sphere_volume_mm3", &sphere_volume_mm3, py::arg("radius_mm"));
    m.def("initial_volume_mm3", &initial_volume_mm3, py::arg("design"));
    m.def("saturation_volume_mm3", &saturation_volume_mm3, py::arg("design"));
    m.def("bubble_pressure", &bubble_pressure, py::arg("p1_kpa"), py::arg("v1_mm3"),
          py::arg("v2_mm3"));
    m.def("stiffness_scale", &stiffness_scale, py::arg("design"), py::arg("model"));
    m.def("saturation_force", &saturation_force, py::arg("design"), py::arg("model"));
    m.def("saturation_deflection_mm", &saturation_deflection_mm, py::arg("design"),
          py::arg("model"));
    m.def("normalized_from_force", &normalized_from_force, py::arg("force_n"),
          py::arg("design"), py::arg("model"));
    m.def("force_from_deflection", &force_from_deflection, py::arg("depth_mm"),
          py::arg("design"), py::arg("model"));
    m.def("compressed_volume", &compressed_volume, py::arg("force_n"),
          py::arg("design"), py::arg("model"));
    m.def("volume_from_deflection", &volume_from_deflection, py::arg("depth_mm"),
          py::arg("design"));
    m.def("quantize", &quantize, py::arg("pressure_kpa"), py::arg("design"));
    m.def("dequantize", &dequantize, py::arg("counts"), py::arg("design"));
    m.def("analog_pressure_kpa", &analog_pressure_kpa, py::arg("force_n"),
          py::arg("design"), py::arg("model"));
    m.def("make_sample", &make_sample, py::arg("force_n"), py::arg("design"),
          py::arg("model"), py::arg("noise_kpa"), py::arg("tile_id") = 0,
          py::arg("timestamp_s") = 0.0);
    m.def("sample", &sample, py::arg("force_n"), py::arg("design"),
          py::arg("model"), py::arg("sigma"), py::arg("seed"));

    py::class_<CalibrationCurve>(m, "CalibrationCurve")
        .def(py::init<>())
        .def_readwrite("c3", &CalibrationCurve::c3)
        .def_readwrite("c2", &CalibrationCurve::c2)
        .def_readwrite("c1", &CalibrationCurve::c1)
        .def_readwrite("c0", &CalibrationCurve::c0)
        .def_readwrite("r_squared", &CalibrationCurve::r_squared)
        .def_readwrite("scale", &CalibrationCurve::scale);
    m.def("paper_reference_curve", &paper_reference_curve);
    m.def("evaluate", &evaluate, py::arg("curve"), py::arg("q"));
    m.def("invert", &invert, py::arg("curve"), py::arg("value"));
    m.def("force_from_normalized", &force_from_normalized, py::arg("curve"),
          py::arg("q"));
    m.def("normalize_pressure", &normalize_pressure, py::arg("pressure_kpa"),
          py::arg("design"));

    py::class_<CalibrationPoint>(m, "CalibrationPoint")
        .def(py::init<>())
        .def(py::init([](double pressure_norm, double force_n) {
                 return CalibrationPoint{pressure_norm, force_n};
             }),
             py::arg("pressure_norm"), py::arg("force_n"))
        .def_readwrite("pressure_norm", &CalibrationPoint::pressure_norm)
        .def_readwrite("force_n", &CalibrationPoint::force_n);
    py::class_<IndentationRun>(m, "IndentationRun")
        .def(py::init<>())
        .def_readwrite("run_id", &IndentationRun::run_id)
        .def_readwrite("samples", &IndentationRun::samples);
    py::class_<AggregateCurve>(m, "AggregateCurve")
        .def_readonly("force_grid", &AggregateCurve::force_grid)
        .def_readonly("mean_pressure", &AggregateCurve::mean_pressure)
        .def_readonly("ci95", &AggregateCurve::ci95)
        .def_readonly("std_across_runs", &AggregateCurve::std_across_runs)
        .def_readonly("pooled_std", &AggregateCurve::pooled_std)
        .def_readonly("n_runs", &AggregateCurve::n_runs);
    m.def("fit_cubic", &fit_cubic, py::arg("points"));
    m.def("fit_cubic_runs", &fit_cubic_runs, py::arg("runs"));
    m.def("aggregate_runs", &aggregate_runs, py::arg("runs"), py::arg("n_grid") = 401);

    py::class_<Point2>(m, "Point2")
        .def(py::init<>())
        .def_readwrite("y_mm", &Point2::y_mm)
        .def_readwrite("z_mm", &Point2::z_mm);
    py::class_<ArrayLayout>(m, "ArrayLayout")
        .def(py::init<>())
        .def_readwrite("segment_radius_mm", &ArrayLayout::segment_radius_mm)
        .def_readwrite("dome_radius_mm", &ArrayLayout::dome_radius_mm)
        .def_readwrite("tile_arc_angles_rad", &ArrayLayout::tile_arc_angles_rad);
    m.def("default_layout", &default_layout, py::arg("design"));
    py::class_<SegmentState>(m, "SegmentState")
        .def(py::init<>())
        .def_readwrite("alpha_rad", &SegmentState::alpha_rad)
        .def_readwrite("joint_y_mm", &SegmentState::joint_y_mm)
        .def_readwrite("joint_z_mm", &SegmentState::joint_z_mm)
        .def_readwrite("timestamp_s", &SegmentState::timestamp_s);
    py::class_<MarkerPair>(m, "MarkerPair")
        .def(py::init<>())
        .def_readwrite("timestamp_s", &MarkerPair::timestamp_s)
        .def_readwrite("m1", &MarkerPair::m1)
        .def_readwrite("m2", &MarkerPair::m2);
    m.def("contact_point", &contact_point, py::arg("alpha_rad"), py::arg("layout"));
    m.def("segment_angle", &segment_angle, py::arg("markers"));
    m.def("tile_engagement", &tile_engagement, py::arg("state"), py::arg("layout"),
          py::arg("ground_z_mm"));
    m.def("tile_contact_points", &tile_contact_points, py::arg("state"),
          py::arg("layout"));
    m.def("footprint_radius_mm", &footprint_radius_mm, py::arg("depth_mm"),
          py::arg("layout"));

    py::class_<GridFrame>(m, "GridFrame")
        .def(py::init<>())
        .def_readwrite("rows", &GridFrame::rows)
        .def_readwrite("cols", &GridFrame::cols)
        .def_readwrite("values", &GridFrame::values)
        .def_readwrite("cell_pitch_mm", &GridFrame::cell_pitch_mm)
        .def_readwrite("origin_y_mm", &GridFrame::origin_y_mm)
        .def_readwrite("origin_z_mm", &GridFrame::origin_z_mm)
        .def_readwrite("timestamp_s", &GridFrame::timestamp_s);
    py::class_<CopEstimate>(m, "CopEstimate")
        .def_readonly("x_cop", &CopEstimate::x_cop)
        .def_readonly("y_cop", &CopEstimate::y_cop)
        .def_readonly("pos_y_mm", &CopEstimate::pos_y_mm)
        .def_readonly("pos_z_mm", &CopEstimate::pos_z_mm)
        .def_readonly("p_total", &CopEstimate::p_total);
    m.def("cop", &cop, py::arg("grid"));
    m.def("cop_error_mm", &cop_error_mm, py::arg("estimate"), py::arg("truth"));
    py::class_<GridMapping>(m, "GridMapping")
        .def(py::init<>())
        .def_readwrite("rows", &GridMapping::rows)
        .def_readwrite("cols", &GridMapping::cols)
        .def_readwrite("cell_pitch_mm", &GridMapping::cell_pitch_mm)
        .def_readwrite("origin_y_mm", &GridMapping::origin_y_mm)
        .def_readwrite("origin_z_mm", &GridMapping::origin_z_mm);
    m.def("embed_tiles", &embed_tiles, py::arg("tile_values"), py::arg("tile_y_mm"),
          py::arg("mapping"), py::arg("timestamp_s"));

    py::class_<PressureSample>(m, "PressureSample")
        .def(py::init<>())
        .def_readwrite("tile_id", &PressureSample::tile_id)
        .def_readwrite("timestamp_s", &PressureSample::timestamp_s)
        .def_readwrite("pressure_counts", &PressureSample::pressure_counts)
        .def_readwrite("pressure_kpa", &PressureSample::pressure_kpa)
        .def_readwrite("saturated", &PressureSample::saturated);
    py::class_<GrfOptions>(m, "GrfOptions")
        .def(py::init<>())
        .def_readwrite("deadband_norm", &GrfOptions::deadband_norm);
    py::class_<GrfPoint>(m, "GrfPoint")
        .def_readonly("timestamp_s", &GrfPoint::timestamp_s)
        .def_readonly("tile_force_n", &GrfPoint::tile_force_n)
        .def_readonly("total_force_n", &GrfPoint::total_force_n);
    py::class_<GrfTrace>(m, "GrfTrace").def_readonly("points", &GrfTrace::points);
    m.def("grf", &grf, py::arg("samples"), py::arg("n_tiles"), py::arg("curve"),
          py::arg("design"), py::arg("options") = GrfOptions{});

    py::class_<BusSchedule>(m, "BusSchedule")
        .def(py::init<>())
        .def_readwrite("conversion_time_s", &BusSchedule::conversion_time_s)
        .def_readwrite("aggregate_rate_hz", &BusSchedule::aggregate_rate_hz)
        .def_readwrite("parallel_conversion", &BusSchedule::parallel_conversion)
        .def_readwrite("tile_order", &BusSchedule::tile_order);
    m.def("validate_schedule", &validate_schedule, py::arg("schedule"),
          py::arg("n_tiles"));
    m.def("frame_times", &frame_times, py::arg("schedule"), py::arg("duration_s"));
    m.def("sample_time", &sample_time, py::arg("schedule"), py::arg("n_tiles"),
          py::arg("frame_index"), py::arg("tile_index"));

    py::class_<GranularParams>(m, "GranularParams")
        .def(py::init<>())
        .def_readwrite("k_depth_n_per_mm", &GranularParams::k_depth_n_per_mm)
        .def_readwrite("c_vel_ns_per_mm", &GranularParams::c_vel_ns_per_mm)
        .def_readwrite("yield_depth_mm", &GranularParams::yield_depth_mm)
        .def_readwrite("shadow_scale_mm", &GranularParams::shadow_scale_mm);
    m.def("granular_force", &granular_force, py::arg("depth_mm"),
          py::arg("depth_velocity_mm_s"), py::arg("params"));

    m.def("simulate_indentation", &simulate_indentation, py::arg("design"),
          py::arg("model"), py::arg("depth_rate_mm_s"), py::arg("noise_sigma"),
          py::arg("seed"), py::arg("bus") = BusSchedule{});

    py::class_<RollScenario>(m, "RollScenario")
        .def(py::init<>())
        .def_readwrite("design", &RollScenario::design)
        .def_readwrite("model", &RollScenario::model)
        .def_readwrite("layout", &RollScenario::layout)
        .def_readwrite("bus", &RollScenario::bus)
        .def_readwrite("pull_velocity_mm_s", &RollScenario::pull_velocity_mm_s)
        .def_readwrite("duration_s", &RollScenario::duration_s)
        .def_readwrite("preload_mm", &RollScenario::preload_mm)
        .def_readwrite("noise_sigma", &RollScenario::noise_sigma)
        .def_readwrite("stance_min_pressure", &RollScenario::stance_min_pressure)
        .def_readwrite("deadband_norm", &RollScenario::deadband_norm)
        .def_readwrite("seed", &RollScenario::seed);
    py::class_<RollTruthFrame>(m, "RollTruthFrame")
        .def_readonly("timestamp_s", &RollTruthFrame::timestamp_s)
        .def_readonly("tile_force_n", &RollTruthFrame::tile_force_n)
        .def_readonly("tile_contact_y_mm", &RollTruthFrame::tile_contact_y_mm)
        .def_readonly("guard_force_n", &RollTruthFrame::guard_force_n)
        .def_readonly("total_force_n", &RollTruthFrame::total_force_n)
        .def_readonly("cop_y_mm", &RollTruthFrame::cop_y_mm)
        .def_readonly("any_tile_contact", &RollTruthFrame::any_tile_contact)
        .def_readonly("guard_contact", &RollTruthFrame::guard_contact);
    py::class_<RollResult>(m, "RollResult")
        .def_readonly("plate_frames", &RollResult::plate_frames)
        .def_readonly("tile_samples", &RollResult::tile_samples)
        .def_readonly("markers", &RollResult::markers)
        .def_readonly("truth", &RollResult::truth);
    m.def("simulate_roll", &simulate_roll, py::arg("scenario"));

    py::enum_<NoiseKind>(m, "NoiseKind")
        .value("gaussian", NoiseKind::gaussian)
        .value("student_t3", NoiseKind::student_t3);
    py::class_<HopScenario>(m, "HopScenario")
        .def(py::init<>())
        .def_readwrite("design", &HopScenario::design)
        .def_readwrite("model", &HopScenario::model)
        .def_readwrite("layout", &HopScenario::layout)
        .def_readwrite("bus", &HopScenario::bus)
        .def_readwrite("granular", &HopScenario::granular)
        .def_readwrite("leg_mass_kg", &HopScenario::leg_mass_kg)
        .def_readwrite("drop_height_mm", &HopScenario::drop_height_mm)
        .def_readwrite("n_hops", &HopScenario::n_hops)
        .def_readwrite("duration_s", &HopScenario::duration_s)
        .def_readwrite("plate_rate_hz", &HopScenario::plate_rate_hz)
        .def_readwrite("episode_threshold_n", &HopScenario::episode_threshold_n)
        .def_readwrite("episode_min_gap_s", &HopScenario::episode_min_gap_s)
        .def_readwrite("noise_sigma", &HopScenario::noise_sigma)
        .def_readwrite("deadband_norm", &HopScenario::deadband_norm)
        .def_readwrite("noise_kind", &HopScenario::noise_kind)
        .def_readwrite("grf_error_max_n", &HopScenario::grf_error_max_n)
        .def_readwrite("seed", &HopScenario::seed);
    py::class_<HopTruthFrame>(m, "HopTruthFrame")
        .def_readonly("timestamp_s", &HopTruthFrame::timestamp_s)
        .def_readonly("tile_force_n", &HopTruthFrame::tile_force_n)
        .def_readonly("total_force_n", &HopTruthFrame::total_force_n)
        .def_readonly("joint_z_mm", &HopTruthFrame::joint_z_mm)
        .def_readonly("velocity_mm_s", &HopTruthFrame::velocity_mm_s)
        .def_readonly("alpha_rad", &HopTruthFrame::alpha_rad)
        .def_readonly("contact", &HopTruthFrame::contact);
    py::class_<HopResult>(m, "HopResult")
        .def_readonly("tile_samples", &HopResult::tile_samples)
        .def_readonly("truth", &HopResult::truth);
    m.def("simulate_hop", &simulate_hop, py::arg("scenario"));
    m.def("count_contact_episodes", &count_contact_episodes, py::arg("timestamps"),
          py::arg("total_force_n"), py::arg("threshold_n") = 1.0,
          py::arg("min_gap_s") = 0.03);

    m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("stream"));
}
