#include "bubbletile/sensor_model.hpp"

#include <algorithm>
#include <cmath>

namespace bubbletile {

DeflectionModel reference_model() {
    DeflectionModel model;
    model.reference_curve = paper_reference_curve();
    return model;
}

double sphere_volume_mm3(double radius_mm) {
    if (radius_mm < 0.0) throw DomainError("negative radius");
    return 4.0 / 3.0 * M_PI * radius_mm * radius_mm * radius_mm;
}

double initial_volume_mm3(const SensorDesign& design) {
    return sphere_volume_mm3(design.bubble_radius_mm);
}

double bubble_pressure(double p1_kpa, double v1_mm3, double v2_mm3) {
    if (v1_mm3 <= 0.0 || v2_mm3 <= 0.0) {
        throw DomainError("gas volumes must be positive");
    }
    return p1_kpa * v1_mm3 / v2_mm3;
}

double stiffness_scale(const SensorDesign& design, const DeflectionModel& model) {
    double d = design.dome_diameter_mm / model.reference_dome_mm;
    return (design.youngs_modulus_mpa / model.reference_modulus_mpa) * d * d;
}

double saturation_volume_mm3(const SensorDesign& design) {
    return initial_volume_mm3(design) * design.baseline_pressure_kpa /
           design.sensor_max_kpa;
}

double saturation_force(const SensorDesign& design, const DeflectionModel& model) {
    return stiffness_scale(design, model) *
           force_from_normalized(model.reference_curve, 1.0);
}

double normalized_from_force(double force_n, const SensorDesign& design,
                             const DeflectionModel& model) {
    if (force_n <= 0.0) return 0.0;
    const CalibrationCurve& curve = model.reference_curve;
    double target = evaluate(curve, 0.0) +
                    force_n / (stiffness_scale(design, model) * curve.scale);
    if (target >= evaluate(curve, 1.0)) return 1.0;
    return invert(curve, target);
}

double compressed_volume(double force_n, const SensorDesign& design,
                         const DeflectionModel& model) {
    double q = normalized_from_force(force_n, design, model);
    double p2 = design.baseline_pressure_kpa +
                q * (design.sensor_max_kpa - design.baseline_pressure_kpa);
    return design.baseline_pressure_kpa * initial_volume_mm3(design) / p2;
}

double volume_from_deflection(double depth_mm, const SensorDesign& design) {
    double v1 = initial_volume_mm3(design);
    if (depth_mm <= 0.0) return v1;
    double r = design.dome_diameter_mm / 2.0;
    if (depth_mm >= 2.0 * r) {
        throw DomainError("deflection exceeds dome diameter");
    }
    double cap = M_PI * depth_mm * depth_mm * (r - depth_mm / 3.0);
    return std::max(v1 - cap, saturation_volume_mm3(design));
}

double force_from_deflection(double depth_mm, const SensorDesign& design,
                             const DeflectionModel& model) {
    double v2 = volume_from_deflection(depth_mm, design);
    double p2 = bubble_pressure(design.baseline_pressure_kpa,
                                initial_volume_mm3(design), v2);
    double q = std::clamp(normalize_pressure(p2, design), 0.0, 1.0);
    return stiffness_scale(design, model) *
           force_from_normalized(model.reference_curve, q);
}

double saturation_deflection_mm(const SensorDesign& design, const DeflectionModel&) {
    double v1 = initial_volume_mm3(design);
    double target = v1 - saturation_volume_mm3(design);
    double r = design.dome_diameter_mm / 2.0;
    auto cap = [&](double d) { return M_PI * d * d * (r - d / 3.0); };
    double lo = 0.0;
    double hi = r;
    if (cap(hi) < target) throw DomainError("dome too small to reach saturation");
    for (int i = 0; i < 100 && (hi - lo) > 1e-15; ++i) {
        double mid = 0.5 * (lo + hi);
        if (cap(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

int quantize(double pressure_kpa, const SensorDesign& design) {
    double p = std::clamp(pressure_kpa, design.sensor_min_kpa, design.sensor_max_kpa);
    int levels = (1 << design.adc_bits) - 1;
    double t = (p - design.sensor_min_kpa) /
               (design.sensor_max_kpa - design.sensor_min_kpa);
    return static_cast<int>(std::llround(t * levels));
}

double dequantize(int counts, const SensorDesign& design) {
    int levels = (1 << design.adc_bits) - 1;
    int c = std::clamp(counts, 0, levels);
    return design.sensor_min_kpa +
           static_cast<double>(c) / levels *
               (design.sensor_max_kpa - design.sensor_min_kpa);
}

double analog_pressure_kpa(double force_n, const SensorDesign& design,
                           const DeflectionModel& model) {
    double p2 = bubble_pressure(design.baseline_pressure_kpa,
                                initial_volume_mm3(design),
                                compressed_volume(force_n, design, model));
    return std::clamp(p2, design.sensor_min_kpa, design.sensor_max_kpa);
}

PressureSample make_sample(double force_n, const SensorDesign& design,
                           const DeflectionModel& model, double noise_kpa,
                           int tile_id, double timestamp_s) {
    double p2 = bubble_pressure(design.baseline_pressure_kpa,
                                initial_volume_mm3(design),
                                compressed_volume(force_n, design, model));
    PressureSample s;
    s.tile_id = tile_id;
    s.timestamp_s = timestamp_s;
    s.saturated = p2 >= design.sensor_max_kpa - 1e-12;
    double noisy = std::clamp(p2 + noise_kpa, design.sensor_min_kpa,
                              design.sensor_max_kpa);
    s.pressure_counts = quantize(noisy, design);
    s.pressure_kpa = dequantize(s.pressure_counts, design);
    return s;
}

PressureSample sample(double force_n, const SensorDesign& design,
                      const DeflectionModel& model, double sigma,
                      std::uint64_t seed) {
    GaussianStream rng(seed);
    double noise = sigma * (design.sensor_max_kpa - design.baseline_pressure_kpa) *
                   rng.normal();
    return make_sample(force_n, design, model, noise);
}

} // namespace bubbletile
