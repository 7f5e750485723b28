#include <doctest.h>

#include <cmath>

#include "bubbletile/array_kinematics.hpp"
#include "bubbletile/errors.hpp"

using namespace bubbletile;

namespace {
ArrayLayout bare_layout(double dome_radius_mm) {
    ArrayLayout layout;
    layout.dome_radius_mm = dome_radius_mm;
    return layout;
}
} // namespace

TEST_CASE("rolling contact point") {
    ArrayLayout layout = bare_layout(5.0);
    Point2 p = contact_point(0.2, layout);
    CHECK(p.y_mm == doctest::Approx(24.90007).epsilon(1e-6));
    CHECK(p.z_mm == doctest::Approx(-148.00334).epsilon(1e-6));

    // Straight down the contact sits r behind the axis and l below.
    Point2 down = contact_point(0.0, layout);
    CHECK(down.y_mm == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(down.z_mm == doctest::Approx(-150.0).epsilon(1e-12));

    // Rolling forward moves the contact forward monotonically.
    double prev = contact_point(-0.3, layout).y_mm;
    for (double a = -0.25; a <= 0.3; a += 0.05) {
        double y = contact_point(a, layout).y_mm;
        CHECK(y > prev);
        prev = y;
    }
}

TEST_CASE("segment angle from the marker pair") {
    for (double alpha = -0.5; alpha <= 0.5; alpha += 0.07) {
        // Markers sit on the segment axis below the joint, m1 distal,
        // m2 proximal, so m2 - m1 points up the axis.
        double uy = std::sin(alpha), uz = std::cos(alpha);
        MarkerPair markers;
        markers.m1 = {3.0 - 120.0 * uy, 40.0 - 120.0 * uz};
        markers.m2 = {3.0 - 20.0 * uy, 40.0 - 20.0 * uz};
        CHECK(segment_angle(markers) == doctest::Approx(alpha).epsilon(1e-12));
    }

    MarkerPair degenerate;
    degenerate.m1 = {1.0, 2.0};
    degenerate.m2 = {1.0, 2.0};
    CHECK_THROWS_AS(segment_angle(degenerate), DomainError);
}

TEST_CASE("tile engagement depths against a flat plate") {
    ArrayLayout layout = bare_layout(6.0);
    SegmentState state;
    // Align tile 1 straight down with 0.7 mm of preload.
    state.alpha_rad = -layout.tile_arc_angles_rad[0];
    state.joint_z_mm = layout.segment_radius_mm + layout.dome_radius_mm - 0.7;

    auto depths = tile_engagement(state, layout, 0.0);
    CHECK(depths[0] == doctest::Approx(0.7).epsilon(1e-9));
    // The neighbors sit 10 degrees up the arc, ~2.3 mm clear of the plate.
    CHECK(depths[1] == 0.0);
    CHECK(depths[2] == 0.0);
    CHECK(depths[3] == 0.0);

    // Lowering the joint brings the nearest neighbor in; the far tiles, 20
    // and 30 degrees up the arc, stay clear.
    state.joint_z_mm -= 3.0;
    auto deeper = tile_engagement(state, layout, 0.0);
    CHECK(deeper[0] == doctest::Approx(3.7).epsilon(1e-9));
    CHECK(deeper[1] > 0.0);
    CHECK(deeper[1] < deeper[0]);
    CHECK(deeper[2] == 0.0);
    CHECK(deeper[3] == 0.0);
}

TEST_CASE("tile contact points ride the arc stations") {
    ArrayLayout layout = bare_layout(6.0);
    SegmentState state;
    state.alpha_rad = 0.12;
    auto pts = tile_contact_points(state, layout);
    for (int k = 0; k < 4; ++k) {
        Point2 expected =
            contact_point(state.alpha_rad + layout.tile_arc_angles_rad[k], layout);
        CHECK(pts[k].y_mm == doctest::Approx(expected.y_mm).epsilon(1e-12));
        CHECK(pts[k].z_mm == doctest::Approx(expected.z_mm).epsilon(1e-12));
    }

    // Moving the joint translates every contact with it.
    SegmentState moved = state;
    moved.joint_y_mm += 12.5;
    moved.joint_z_mm -= 2.0;
    auto shifted = tile_contact_points(moved, layout);
    for (int k = 0; k < 4; ++k) {
        CHECK(shifted[k].y_mm == doctest::Approx(pts[k].y_mm + 12.5).epsilon(1e-12));
        CHECK(shifted[k].z_mm == doctest::Approx(pts[k].z_mm - 2.0).epsilon(1e-12));
    }
}

TEST_CASE("contact patch radius") {
    ArrayLayout layout = bare_layout(6.0);
    CHECK(footprint_radius_mm(0.0, layout) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(footprint_radius_mm(0.5, layout) ==
          doctest::Approx(std::sqrt(0.5 * 11.5)).epsilon(1e-12));
    // Grows sublinearly: doubling depth less than doubles the radius.
    CHECK(footprint_radius_mm(1.0, layout) <
          2.0 * footprint_radius_mm(0.5, layout));
}

TEST_CASE("layout follows the design") {
    SensorDesign d11 = design_preset("d11-vf60");
    ArrayLayout layout = default_layout(d11);
    CHECK(layout.segment_radius_mm == doctest::Approx(150.0));
    CHECK(layout.dome_radius_mm == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(layout.tile_arc_angles_rad[0] ==
          doctest::Approx(15.0 * M_PI / 180.0).epsilon(1e-12));
    CHECK(layout.tile_arc_angles_rad[3] ==
          doctest::Approx(-15.0 * M_PI / 180.0).epsilon(1e-12));

    ArrayLayout wide = default_layout(design_preset("d12-vf60"));
    CHECK(wide.dome_radius_mm == doctest::Approx(6.5).epsilon(1e-12));
}
