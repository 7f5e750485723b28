#include "bubbletile/sensor_design.hpp"

#include <cmath>

namespace bubbletile {

void validate(const SensorDesign& design) {
    if (design.dome_diameter_mm <= 0.0 || design.bubble_radius_mm <= 0.0) {
        throw ConfigError("design " + design.name + ": sizes must be positive");
    }
    // The bubble must fit under the dome; the cast leaves up to 2 mm of cap
    // material above a flush bubble.
    if (2.0 * design.bubble_radius_mm > design.dome_diameter_mm + 2.0) {
        throw ConfigError("design " + design.name + ": bubble does not fit under dome");
    }
    if (design.youngs_modulus_mpa <= 0.0) {
        throw ConfigError("design " + design.name + ": modulus must be positive");
    }
    if (!(0.0 < design.sensor_min_kpa &&
          design.sensor_min_kpa < design.baseline_pressure_kpa &&
          design.baseline_pressure_kpa < design.sensor_max_kpa)) {
        throw ConfigError("design " + design.name +
                          ": need 0 < sensor_min < baseline < sensor_max");
    }
    if (design.adc_bits < 1 || design.adc_bits > 24) {
        throw ConfigError("design " + design.name + ": adc_bits out of range");
    }
}

std::vector<SensorDesign> design_presets() {
    std::vector<SensorDesign> out;
    const double diameters[] = {10.0, 11.0, 12.0};
    const std::pair<const char*, double> materials[] = {{"vf40", 0.69},
                                                        {"vf60", 2.17}};
    for (const auto& [suffix, modulus] : materials) {
        for (double d : diameters) {
            SensorDesign design;
            design.name = "d" + std::to_string(static_cast<int>(d)) + "-" + suffix;
            design.dome_diameter_mm = d;
            design.youngs_modulus_mpa = modulus;
            out.push_back(design);
        }
    }
    return out;
}

SensorDesign design_preset(const std::string& name) {
    for (const auto& design : design_presets()) {
        if (design.name == name) return design;
    }
    throw ConfigError("unknown design preset: " + name);
}

SensorDesign design_from_config(const Config& cfg) {
    SensorDesign d;
    if (cfg.has("design")) d = design_preset(cfg.get_string("design"));
    d.name = cfg.get_string("name", d.name);
    d.dome_diameter_mm = cfg.get_double("dome_diameter_mm", d.dome_diameter_mm);
    d.bubble_radius_mm = cfg.get_double("bubble_radius_mm", d.bubble_radius_mm);
    d.youngs_modulus_mpa = cfg.get_double("youngs_modulus_mpa", d.youngs_modulus_mpa);
    d.baseline_pressure_kpa =
        cfg.get_double("baseline_pressure_kpa", d.baseline_pressure_kpa);
    d.sensor_min_kpa = cfg.get_double("sensor_min_kpa", d.sensor_min_kpa);
    d.sensor_max_kpa = cfg.get_double("sensor_max_kpa", d.sensor_max_kpa);
    d.adc_bits = static_cast<int>(cfg.get_int("adc_bits", d.adc_bits));
    validate(d);
    return d;
}

Config design_to_config(const SensorDesign& design) {
    Config cfg;
    cfg.set("name", design.name);
    cfg.set_double("dome_diameter_mm", design.dome_diameter_mm);
    cfg.set_double("bubble_radius_mm", design.bubble_radius_mm);
    cfg.set_double("youngs_modulus_mpa", design.youngs_modulus_mpa);
    cfg.set_double("baseline_pressure_kpa", design.baseline_pressure_kpa);
    cfg.set_double("sensor_min_kpa", design.sensor_min_kpa);
    cfg.set_double("sensor_max_kpa", design.sensor_max_kpa);
    cfg.set_int("adc_bits", design.adc_bits);
    return cfg;
}

} // namespace bubbletile
