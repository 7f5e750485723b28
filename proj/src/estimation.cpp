#include "bubbletile/estimation.hpp"

#include <cmath>

#include "bubbletile/errors.hpp"

namespace bubbletile {

namespace {

void check_index(const GridFrame& grid, int row, int col) {
    if (row < 1 || row > grid.rows || col < 1 || col > grid.cols) {
        throw DomainError("grid index (" + std::to_string(row) + "," +
                          std::to_string(col) + ") outside " +
                          std::to_string(grid.rows) + "x" + std::to_string(grid.cols));
    }
}

} // namespace

double& at(GridFrame& grid, int row, int col) {
    check_index(grid, row, col);
    return grid.values[static_cast<size_t>(row - 1) * grid.cols + (col - 1)];
}

double at(const GridFrame& grid, int row, int col) {
    check_index(grid, row, col);
    return grid.values[static_cast<size_t>(row - 1) * grid.cols + (col - 1)];
}

std::optional<CopEstimate> cop(const GridFrame& grid) {
    if (grid.rows < 1 || grid.cols < 1 ||
        grid.values.size() != static_cast<size_t>(grid.rows) * grid.cols) {
        throw DomainError("malformed grid");
    }
    double p_total = 0.0;
    double row_moment = 0.0;
    double col_moment = 0.0;
    for (int i = 1; i <= grid.rows; ++i) {
        for (int j = 1; j <= grid.cols; ++j) {
            double v = grid.values[static_cast<size_t>(i - 1) * grid.cols + (j - 1)];
            if (v < 0.0) throw DomainError("negative grid value");
            p_total += v;
            row_moment += v * i;
            col_moment += v * j;
        }
    }
    if (p_total <= 0.0) return std::nullopt;
    CopEstimate est;
    est.p_total = p_total;
    est.x_cop = row_moment / p_total;
    est.y_cop = col_moment / p_total;
    est.pos_y_mm = grid.origin_y_mm + (est.y_cop - 1.0) * grid.cell_pitch_mm;
    est.pos_z_mm = grid.origin_z_mm + (est.x_cop - 1.0) * grid.cell_pitch_mm;
    return est;
}

double cop_error_mm(const CopEstimate& estimate, const CopEstimate& truth) {
    return estimate.pos_y_mm - truth.pos_y_mm;
}

GridFrame embed_tiles(const std::array<double, 4>& tile_values,
                      const std::array<double, 4>& tile_y_mm,
                      const GridMapping& mapping, double timestamp_s) {
    GridFrame frame;
    frame.rows = mapping.rows;
    frame.cols = mapping.cols;
    frame.cell_pitch_mm = mapping.cell_pitch_mm;
    frame.origin_y_mm = mapping.origin_y_mm;
    frame.origin_z_mm = mapping.origin_z_mm;
    frame.timestamp_s = timestamp_s;
    frame.values.assign(static_cast<size_t>(frame.rows) * frame.cols, 0.0);
    int lane = (mapping.rows + 1) / 2;
    for (size_t k = 0; k < tile_values.size(); ++k) {
        if (tile_values[k] <= 0.0) continue;
        int col = 1 + static_cast<int>(std::lround(
                          (tile_y_mm[k] - mapping.origin_y_mm) / mapping.cell_pitch_mm));
        if (col < 1 || col > mapping.cols) {
            throw EmbedError("tile " + std::to_string(k + 1) + " at y=" +
                             std::to_string(tile_y_mm[k]) + " mm maps to column " +
                             std::to_string(col) + " outside 1.." +
                             std::to_string(mapping.cols));
        }
        at(frame, lane, col) += tile_values[k];
    }
    return frame;
}

GrfPoint grf_frame(const std::vector<PressureSample>& samples,
                   const CalibrationCurve& curve, const SensorDesign& design,
                   const GrfOptions& options) {
    if (samples.empty() || samples.size() > 4) {
        throw DomainError("grf frame needs 1..4 tile samples, got " +
                          std::to_string(samples.size()));
    }
    GrfPoint point;
    point.timestamp_s = samples.front().timestamp_s;
    for (size_t k = 0; k < samples.size(); ++k) {
        double q = normalize_pressure(samples[k].pressure_kpa, design);
        double force = 0.0;
        if (q >= options.deadband_norm) {
            force = std::max(0.0, force_from_normalized(curve, q));
        }
        point.tile_force_n[k] = force;
        point.total_force_n += force;
    }
    return point;
}

GrfTrace grf(const std::vector<PressureSample>& samples, int n_tiles,
             const CalibrationCurve& curve, const SensorDesign& design,
             const GrfOptions& options) {
    if (n_tiles < 1 || n_tiles > 4) throw DomainError("n_tiles must be 1..4");
    if (samples.size() % static_cast<size_t>(n_tiles) != 0) {
        throw DomainError("sample count " + std::to_string(samples.size()) +
                          " is not a whole number of " + std::to_string(n_tiles) +
                          "-tile frames");
    }
    GrfTrace trace;
    trace.points.reserve(samples.size() / n_tiles);
    for (size_t i = 0; i < samples.size(); i += n_tiles) {
        std::vector<PressureSample> frame(samples.begin() + static_cast<long>(i),
                                          samples.begin() + static_cast<long>(i) + n_tiles);
        trace.points.push_back(grf_frame(frame, curve, design, options));
    }
    return trace;
}

} // namespace bubbletile
