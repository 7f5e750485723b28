#pragma once

#include <cstdint>

#include "bubbletile/calibration.hpp"
#include "bubbletile/rng.hpp"
#include "bubbletile/sensor_design.hpp"

namespace bubbletile {

// Physics shared by every dome size: the reference curve plus the scaling
// law that moves it across designs.
//
// A design's force response is the reference response stretched by
// stiffness_scale = (E / E_ref) * (d / d_ref)^2: stiffer polymer resists
// proportionally, a wider dome spreads the same gas compression over more
// contact area. Both factors grow the saturation force, which is what the
// design sweep is for.
struct DeflectionModel {
    CalibrationCurve reference_curve = paper_reference_curve();
    double reference_dome_mm = 11.0;
    double reference_modulus_mpa = 2.17;
    double reference_saturation_n = 30.0;
};

DeflectionModel reference_model();

double sphere_volume_mm3(double radius_mm);
double initial_volume_mm3(const SensorDesign& design);

// Isothermal ideal gas: p2 = p1 * v1 / v2. Volumes must be positive.
double bubble_pressure(double p1_kpa, double v1_mm3, double v2_mm3);

double stiffness_scale(const SensorDesign& design, const DeflectionModel& model);

// Smallest force at which the bubble pressure reaches sensor_max.
double saturation_force(const SensorDesign& design, const DeflectionModel& model);

// Volume at which the gas hits the transducer ceiling; compression below it
// cannot be observed, so compressed_volume() floors here.
double saturation_volume_mm3(const SensorDesign& design);

// Normalized pressure a force produces on this design, in [0, 1].
double normalized_from_force(double force_n, const SensorDesign& design,
                             const DeflectionModel& model);

// Bubble volume under a normal force, via the inverted force law and the gas
// law, floored at the saturation volume.
double compressed_volume(double force_n, const SensorDesign& design,
                         const DeflectionModel& model);

// Spherical-cap displacement of a flat plate pressed depth_mm into the dome:
// dV = pi * depth^2 * (r_dome - depth / 3). Floored at the saturation
// volume.
double volume_from_deflection(double depth_mm, const SensorDesign& design);

// Force produced by a plate indentation of depth_mm, consistent with
// compressed_volume by construction (exact round trip).
double force_from_deflection(double depth_mm, const SensorDesign& design,
                             const DeflectionModel& model);

// Depth at which the transducer saturates.
double saturation_deflection_mm(const SensorDesign& design, const DeflectionModel& model);

// ADC mapping over [sensor_min, sensor_max]. quantize clamps, rounds to the
// nearest of 2^adc_bits levels; dequantize returns the level's pressure.
int quantize(double pressure_kpa, const SensorDesign& design);
double dequantize(int counts, const SensorDesign& design);

struct PressureSample {
    int tile_id = 0;
    double timestamp_s = 0.0;
    int pressure_counts = 0;
    double pressure_kpa = 0.0;
    bool saturated = false;
};

// Noise-free transducer pressure under a force, clamped to the sensor span.
double analog_pressure_kpa(double force_n, const SensorDesign& design,
                           const DeflectionModel& model);

// Build the sample a real tile would report: add the drawn read noise (kPa),
// clamp to the sensor span, quantize; pressure_kpa is the dequantized value,
// so it is exactly what counts encodes. saturated reflects the noise-free
// analog value hitting sensor_max.
PressureSample make_sample(double force_n, const SensorDesign& design,
                           const DeflectionModel& model, double noise_kpa,
                           int tile_id = 0, double timestamp_s = 0.0);

// One-off convenience wrapper: sigma is the noise std as a fraction of the
// baseline-to-max span.
PressureSample sample(double force_n, const SensorDesign& design,
                      const DeflectionModel& model, double sigma,
                      std::uint64_t seed);

} // namespace bubbletile
