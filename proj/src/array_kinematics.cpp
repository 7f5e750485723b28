#include "bubbletile/array_kinematics.hpp"

#include <cmath>

#include "bubbletile/errors.hpp"

namespace bubbletile {

ArrayLayout default_layout(const SensorDesign& design) {
    ArrayLayout layout;
    // Dome plus 0.5 mm mounting pad above the arc shell.
    layout.dome_radius_mm = design.dome_diameter_mm / 2.0 + 0.5;
    // Tiles 1..4 over a 40 degree span, 10 degrees apart, numbered in
    // engagement order for the forward roll.
    const double deg = M_PI / 180.0;
    layout.tile_arc_angles_rad = {15.0 * deg, 5.0 * deg, -5.0 * deg, -15.0 * deg};
    return layout;
}

Point2 contact_point(double alpha_rad, const ArrayLayout& layout) {
    double l = layout.segment_radius_mm;
    double r = layout.dome_radius_mm;
    double s = std::sin(alpha_rad);
    double c = std::cos(alpha_rad);
    return {l * s - r * c, -l * c - r * s};
}

double segment_angle(const MarkerPair& markers) {
    double dy = markers.m2.y_mm - markers.m1.y_mm;
    double dz = markers.m2.z_mm - markers.m1.z_mm;
    if (dy == 0.0 && dz == 0.0) {
        throw DomainError("coincident markers have no direction");
    }
    return std::atan2(dy, dz);
}

std::array<double, 4> tile_engagement(const SegmentState& state,
                                      const ArrayLayout& layout,
                                      double ground_z_mm) {
    std::array<double, 4> depth{};
    for (size_t k = 0; k < depth.size(); ++k) {
        double theta = state.alpha_rad + layout.tile_arc_angles_rad[k];
        double lowest = state.joint_z_mm -
                        layout.segment_radius_mm * std::cos(theta) -
                        layout.dome_radius_mm;
        depth[k] = std::max(0.0, ground_z_mm - lowest);
    }
    return depth;
}

std::array<Point2, 4> tile_contact_points(const SegmentState& state,
                                          const ArrayLayout& layout) {
    std::array<Point2, 4> out{};
    for (size_t k = 0; k < out.size(); ++k) {
        Point2 p = contact_point(state.alpha_rad + layout.tile_arc_angles_rad[k],
                                 layout);
        out[k] = {p.y_mm + state.joint_y_mm, p.z_mm + state.joint_z_mm};
    }
    return out;
}

double footprint_radius_mm(double depth_mm, const ArrayLayout& layout) {
    double r = layout.dome_radius_mm;
    if (depth_mm <= 0.0) return 0.0;
    double d = std::min(depth_mm, r);
    return std::sqrt(d * (2.0 * r - d));
}

} // namespace bubbletile
