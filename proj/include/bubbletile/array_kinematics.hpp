#pragma once

#include <array>
#include <vector>

#include "bubbletile/sensor_design.hpp"

namespace bubbletile {

struct Point2 {
    double y_mm = 0.0;
    double z_mm = 0.0;
};

// Four domes on a circular-arc footpad of radius segment_radius_mm around
// the leg joint. Tile k sits at arc angle tile_arc_angles_rad[k] from the
// segment axis; dome_radius_mm is the dome's standoff above the arc
// (half the dome diameter plus the mounting pad).
struct ArrayLayout {
    double segment_radius_mm = 150.0;
    double dome_radius_mm = 6.0;
    // 15, 5, -5, -15 degrees: engagement order for a forward (+y) roll.
    std::array<double, 4> tile_arc_angles_rad{0.2617993877991494,
                                              0.08726646259971647,
                                              -0.08726646259971647,
                                              -0.2617993877991494};
};

ArrayLayout default_layout(const SensorDesign& design);

// Pose of the leg segment: rotation alpha about the joint plus the joint
// position. alpha = 0 points the segment axis straight down.
struct SegmentState {
    double alpha_rad = 0.0;
    double joint_y_mm = 0.0;
    double joint_z_mm = 0.0;
    double timestamp_s = 0.0;
};

// Two tracking markers on the segment axis, m1 distal (farther down the
// leg), m2 proximal. m2 - m1 points up the leg axis.
struct MarkerPair {
    double timestamp_s = 0.0;
    Point2 m1;
    Point2 m2;
};

// Ground contact point of the rolling footpad in joint coordinates:
//   y = l sin(a) - r cos(a),  z = -l cos(a) - r sin(a)
// with l the segment radius and r the dome standoff.
Point2 contact_point(double alpha_rad, const ArrayLayout& layout);

// Segment angle recovered from the marker pair, the angle of (m2 - m1)
// against straight down. Coincident markers throw DomainError.
double segment_angle(const MarkerPair& markers);

// Per-tile dome compression depth against a flat ground plane at
// ground_z_mm, zero for tiles above it. Tile k's lowest point sits at
// joint_z - l cos(theta_k) - r with theta_k = alpha + arc angle;
// depth_k = max(0, ground_z - that).
std::array<double, 4> tile_engagement(const SegmentState& state,
                                      const ArrayLayout& layout,
                                      double ground_z_mm);

// World position of each tile's ground contact, from the rolling-contact
// formula evaluated at the tile's own arc station.
std::array<Point2, 4> tile_contact_points(const SegmentState& state,
                                          const ArrayLayout& layout);

// Radius of the circular contact patch of a sphere of radius r pressed
// depth d into a plane: sqrt(d (2 r - d)).
double footprint_radius_mm(double depth_mm, const ArrayLayout& layout);

} // namespace bubbletile
