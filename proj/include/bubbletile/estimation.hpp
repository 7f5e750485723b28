#pragma once

#include <optional>
#include <vector>

#include "bubbletile/array_kinematics.hpp"
#include "bubbletile/calibration.hpp"
#include "bubbletile/sensor_model.hpp"

namespace bubbletile {

// One pressure-mat frame: rows x cols cell values (force per cell, N),
// row-major, cell centers at origin + (index - 1) * pitch with 1-based
// indices along (z: rows, y: cols).
struct GridFrame {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;
    double cell_pitch_mm = 7.62;
    double origin_y_mm = 0.0;
    double origin_z_mm = 0.0;
    double timestamp_s = 0.0;
};

double& at(GridFrame& grid, int row, int col);
double at(const GridFrame& grid, int row, int col);

// Center of pressure by marginal weighting:
//   x_cop = sum_i i * P(i) / p_total (rows), y_cop likewise over columns,
// indices 1-based, P the marginal sums. pos_*_mm are the same in mat
// coordinates. Empty frames (all cells zero) have no defined center.
struct CopEstimate {
    double x_cop = 0.0;
    double y_cop = 0.0;
    double pos_y_mm = 0.0;
    double pos_z_mm = 0.0;
    double p_total = 0.0;
};

std::optional<CopEstimate> cop(const GridFrame& grid);

// Signed along-track error, estimate minus truth, in mm. Only the rolling
// direction (column axis) is compared; the lateral axes of a 3-lane and a
// 4-lane grid do not line up and carry no information here.
double cop_error_mm(const CopEstimate& estimate, const CopEstimate& truth);

// Where the tile row lives on the reporting mat.
struct GridMapping {
    int rows = 3;
    int cols = 50;
    double cell_pitch_mm = 7.62;
    double origin_y_mm = 0.0;
    double origin_z_mm = 0.0;
};

// Place per-tile values into the middle lane of a fresh frame, each tile
// snapped to the nearest column under its contact point; tiles landing on
// the same column add up. Zero-valued tiles are skipped entirely (an idle
// tile may sit beyond the mat); a nonzero tile outside it throws EmbedError.
GridFrame embed_tiles(const std::array<double, 4>& tile_values,
                      const std::array<double, 4>& tile_y_mm,
                      const GridMapping& mapping, double timestamp_s);

struct GrfOptions {
    // Normalized pressure below this is treated as no contact; read noise on
    // idle tiles would otherwise leak into force sums.
    double deadband_norm = 0.05;
};

struct GrfPoint {
    double timestamp_s = 0.0;
    std::array<double, 4> tile_force_n{};
    double total_force_n = 0.0;
};

struct GrfTrace {
    std::vector<GrfPoint> points;
};

// Ground reaction force from one frame of tile samples (one PressureSample
// per tile, shared timestamp): per tile, normalized pressure through the
// calibration curve, negative forces clipped to zero.
GrfPoint grf_frame(const std::vector<PressureSample>& samples,
                   const CalibrationCurve& curve, const SensorDesign& design,
                   const GrfOptions& options = {});

// Whole run: samples grouped by timestamp index, n_tiles consecutive
// entries per frame.
GrfTrace grf(const std::vector<PressureSample>& samples, int n_tiles,
             const CalibrationCurve& curve, const SensorDesign& design,
             const GrfOptions& options = {});

} // namespace bubbletile
