#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bubbletile/array_kinematics.hpp"
#include "bubbletile/calibration.hpp"
#include "bubbletile/errors.hpp"
#include "bubbletile/estimation.hpp"
#include "bubbletile/simulation.hpp"

namespace bubbletile {

// All numeric file output goes through this: 9 significant digits, enough
// for exact double round trips at the precision the pipeline checks, and
// byte-stable across reruns.
std::string format_g9(double value);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Plain CSV with one non-numeric header line. Rows must all match the
// header's arity; read_table throws IoError on ragged or non-numeric data.
void write_table(const std::filesystem::path& path, const std::string& header,
                 const std::vector<std::vector<double>>& rows);
Table read_table(const std::filesystem::path& path);

// pressure_norm,force_n
void write_indentation_run(const std::filesystem::path& path, const IndentationRun& run);
IndentationRun read_indentation_run(const std::filesystem::path& path);

// c3,c2,c1,c0,r2,scale (one row)
void write_curve(const std::filesystem::path& path, const CalibrationCurve& curve);
CalibrationCurve read_curve(const std::filesystem::path& path);

// force_n,mean_pressure,ci95,std_runs (plot-ready)
void write_aggregate(const std::filesystem::path& path, const AggregateCurve& aggregate);

// t,y1,z1,y2,z2
void write_markers(const std::filesystem::path& path, const std::vector<MarkerPair>& markers);
std::vector<MarkerPair> read_markers(const std::filesystem::path& path);

// Header line t,pitch,origin_y,origin_z, then per frame one row of those
// four values followed by the value matrix (one row per grid row) and a
// blank line.
void write_grid_frames(const std::filesystem::path& path, const std::vector<GridFrame>& frames);
std::vector<GridFrame> read_grid_frames(const std::filesystem::path& path);

// t,tile,counts,pressure_kpa,saturated
void write_tile_samples(const std::filesystem::path& path, const std::vector<PressureSample>& samples);
std::vector<PressureSample> read_tile_samples(const std::filesystem::path& path);

// t,f1,f2,f3,f4,total
void write_grf(const std::filesystem::path& path, const GrfTrace& trace);
GrfTrace read_grf(const std::filesystem::path& path);

// t,f1..f4,cy1..cy4,guard_force,total,cop_y,any_tile_contact,guard_contact
void write_roll_truth(const std::filesystem::path& path, const std::vector<RollTruthFrame>& truth);
std::vector<RollTruthFrame> read_roll_truth(const std::filesystem::path& path);

// t,f1..f4,total,z_mm,v_mm_s,alpha_rad,contact
void write_hop_truth(const std::filesystem::path& path, const std::vector<HopTruthFrame>& truth);
std::vector<HopTruthFrame> read_hop_truth(const std::filesystem::path& path);

} // namespace bubbletile
