#pragma once

#include <string>
#include <vector>

#include "bubbletile/config.hpp"
#include "bubbletile/errors.hpp"

namespace bubbletile {

// Geometry and material of one sensing dome plus its transducer limits.
//
// The trapped gas bubble (radius bubble_radius_mm) sits inside a silicone
// dome of diameter dome_diameter_mm cast from a polymer with modulus
// youngs_modulus_mpa. The barometer reads baseline_pressure_kpa at rest and
// clips to [sensor_min_kpa, sensor_max_kpa] with an adc_bits converter.
struct SensorDesign {
    std::string name = "d11-vf60";
    double dome_diameter_mm = 11.0;
    double bubble_radius_mm = 3.0;
    double youngs_modulus_mpa = 2.17;
    double baseline_pressure_kpa = 100.0;
    double sensor_min_kpa = 50.0;
    double sensor_max_kpa = 115.0;
    int adc_bits = 10;
};

// Throws ConfigError when the design is not buildable: the bubble must fit
// under the dome (2*r <= d + 2 mm of cap clearance), the transducer span must
// bracket the baseline, modulus and sizes must be positive.
void validate(const SensorDesign& design);

// The six stock designs: dome diameters 10, 11, 12 mm in the soft urethane
// mix (vf40, 0.69 MPa) and the stiff one (vf60, 2.17 MPa).
std::vector<SensorDesign> design_presets();

// Lookup by preset name; throws ConfigError for unknown names.
SensorDesign design_preset(const std::string& name);

SensorDesign design_from_config(const Config& cfg);
Config design_to_config(const SensorDesign& design);

} // namespace bubbletile
