#include "bubbletile/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bubbletile {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

bool try_parse_double(const std::string& raw, double& out) {
    const char* s = raw.c_str();
    char* end = nullptr;
    out = std::strtod(s, &end);
    if (end == s) return false;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    return *end == '\0';
}

double parse_double(const std::string& raw, const std::filesystem::path& path, int lineno) {
    double v = 0.0;
    if (!try_parse_double(raw, v)) {
        throw IoError(path.string() + ":" + std::to_string(lineno) +
                      ": not a number: " + raw);
    }
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw IoError("cannot write: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    return in;
}

std::string row_line(const std::vector<double>& row) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) line += ",";
        line += format_g9(row[i]);
    }
    return line;
}

} // namespace

std::string format_g9(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void write_table(const std::filesystem::path& path, const std::string& header,
                 const std::vector<std::vector<double>>& rows) {
    auto out = open_out(path);
    out << header << "\n";
    for (const auto& row : rows) out << row_line(row) << "\n";
    if (!out) throw IoError("write failed: " + path.string());
}

Table read_table(const std::filesystem::path& path) {
    auto in = open_in(path);
    Table table;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!have_header) {
            table.columns = split(line, ',');
            have_header = true;
            continue;
        }
        auto fields = split(line, ',');
        if (fields.size() != table.columns.size()) {
            throw IoError(path.string() + ":" + std::to_string(lineno) +
                          ": expected " + std::to_string(table.columns.size()) +
                          " fields, got " + std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_double(f, path, lineno));
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw IoError(path.string() + ": empty file");
    return table;
}

void write_indentation_run(const std::filesystem::path& path, const IndentationRun& run) {
    std::vector<std::vector<double>> rows;
    rows.reserve(run.samples.size());
    for (const auto& p : run.samples) rows.push_back({p.pressure_norm, p.force_n});
    write_table(path, "pressure_norm,force_n", rows);
}

IndentationRun read_indentation_run(const std::filesystem::path& path) {
    Table t = read_table(path);
    if (t.columns.size() != 2) throw IoError(path.string() + ": expected 2 columns");
    IndentationRun run;
    run.samples.reserve(t.rows.size());
    for (const auto& row : t.rows) run.samples.push_back({row[0], row[1]});
    return run;
}

void write_curve(const std::filesystem::path& path, const CalibrationCurve& curve) {
    write_table(path, "c3,c2,c1,c0,r2,scale",
                {{curve.c3, curve.c2, curve.c1, curve.c0, curve.r_squared, curve.scale}});
}

CalibrationCurve read_curve(const std::filesystem::path& path) {
    Table t = read_table(path);
    if (t.columns.size() != 6 || t.rows.size() != 1) {
        throw IoError(path.string() + ": expected one row of 6 curve values");
    }
    const auto& r = t.rows[0];
    return {r[0], r[1], r[2], r[3], r[4], r[5]};
}

void write_aggregate(const std::filesystem::path& path, const AggregateCurve& aggregate) {
    std::vector<std::vector<double>> rows;
    rows.reserve(aggregate.force_grid.size());
    for (size_t i = 0; i < aggregate.force_grid.size(); ++i) {
        rows.push_back({aggregate.force_grid[i], aggregate.mean_pressure[i],
                        aggregate.ci95[i], aggregate.std_across_runs[i]});
    }
    write_table(path, "force_n,mean_pressure,ci95,std_runs", rows);
}

void write_markers(const std::filesystem::path& path, const std::vector<MarkerPair>& markers) {
    std::vector<std::vector<double>> rows;
    rows.reserve(markers.size());
    for (const auto& m : markers) {
        rows.push_back({m.timestamp_s, m.m1.y_mm, m.m1.z_mm, m.m2.y_mm, m.m2.z_mm});
    }
    write_table(path, "t,y1,z1,y2,z2", rows);
}

std::vector<MarkerPair> read_markers(const std::filesystem::path& path) {
    Table t = read_table(path);
    if (t.columns.size() != 5) throw IoError(path.string() + ": expected 5 columns");
    std::vector<MarkerPair> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) out.push_back({r[0], {r[1], r[2]}, {r[3], r[4]}});
    return out;
}

void write_grid_frames(const std::filesystem::path& path, const std::vector<GridFrame>& frames) {
    auto out = open_out(path);
    out << "t,pitch,origin_y,origin_z\n";
    for (const auto& f : frames) {
        out << row_line({f.timestamp_s, f.cell_pitch_mm, f.origin_y_mm, f.origin_z_mm})
            << "\n";
        for (int i = 0; i < f.rows; ++i) {
            std::vector<double> row(f.values.begin() + static_cast<long>(i) * f.cols,
                                    f.values.begin() + static_cast<long>(i + 1) * f.cols);
            out << row_line(row) << "\n";
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<GridFrame> read_grid_frames(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<GridFrame> frames;
    std::string line;
    int lineno = 0;
    bool seen_header = false;
    std::vector<std::vector<double>> block;
    auto flush = [&]() {
        if (block.empty()) return;
        if (block[0].size() != 4 || block.size() < 2) {
            throw IoError(path.string() + ": malformed frame block before line " +
                          std::to_string(lineno));
        }
        GridFrame f;
        f.timestamp_s = block[0][0];
        f.cell_pitch_mm = block[0][1];
        f.origin_y_mm = block[0][2];
        f.origin_z_mm = block[0][3];
        f.rows = static_cast<int>(block.size()) - 1;
        f.cols = static_cast<int>(block[1].size());
        for (size_t i = 1; i < block.size(); ++i) {
            if (block[i].size() != static_cast<size_t>(f.cols)) {
                throw IoError(path.string() + ": ragged frame block before line " +
                              std::to_string(lineno));
            }
            f.values.insert(f.values.end(), block[i].begin(), block[i].end());
        }
        frames.push_back(std::move(f));
        block.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush();
            continue;
        }
        auto fields = split(line, ',');
        double probe = 0.0;
        if (!try_parse_double(fields[0], probe)) {
            if (seen_header) {
                throw IoError(path.string() + ":" + std::to_string(lineno) +
                              ": unexpected non-numeric row");
            }
            seen_header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_double(f, path, lineno));
        block.push_back(std::move(row));
    }
    flush();
    return frames;
}

void write_tile_samples(const std::filesystem::path& path,
                        const std::vector<PressureSample>& samples) {
    std::vector<std::vector<double>> rows;
    rows.reserve(samples.size());
    for (const auto& s : samples) {
        rows.push_back({s.timestamp_s, static_cast<double>(s.tile_id),
                        static_cast<double>(s.pressure_counts), s.pressure_kpa,
                        s.saturated ? 1.0 : 0.0});
    }
    write_table(path, "t,tile,counts,pressure_kpa,saturated", rows);
}

std::vector<PressureSample> read_tile_samples(const std::filesystem::path& path) {
    Table t = read_table(path);
    if (t.columns.size() != 5) throw IoError(path.string() + ": expected 5 columns");
    std::vector<PressureSample> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        PressureSample s;
        s.timestamp_s = r[0];
        s.tile_id = static_cast<int>(r[1]);
        s.pressure_counts = static_cast<int>(r[2]);
        s.pressure_kpa = r[3];
        s.saturated = r[4] != 0.0;
        out.push_back(s);
    }
    return out;
}

void write_grf(const std::filesystem::path& path, const GrfTrace& trace) {
    std::vector<std::vector<double>> rows;
    rows.reserve(trace.points.size());
    for (const auto& p : trace.points) {
        rows.push_back({p.timestamp_s, p.tile_force_n[0], p.tile_force_n[1],
                        p.tile_force_n[2], p.tile_force_n[3], p.total_force_n});
    }
    write_table(path, "t,f1,f2,f3,f4,total", rows);
}

GrfTrace read_grf(const std::filesystem::path& path) {
    Table t = read_table(path);
    if (t.columns.size() != 6) throw IoError(path.string() + ": expected 6 columns");
    GrfTrace trace;
    trace.points.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        GrfPoint p;
        p.timestamp_s = r[0];
        p.tile_force_n = {r[1], r[2], r[3], r[4]};
        p.total_force_n = r[5];
        trace.points.push_back(p);
    }
    return trace;
}

void write_roll_truth(const std::filesystem::path& path,
                      const std::vector<RollTruthFrame>& truth) {
    std::vector<std::vector<double>> rows;
    rows.reserve(truth.size());
    for (const auto& f : truth) {
        rows.push_back({f.timestamp_s, f.tile_force_n[0], f.tile_force_n[1],
                        f.tile_force_n[2], f.tile_force_n[3], f.tile_contact_y_mm[0],
                        f.tile_contact_y_mm[1], f.tile_contact_y_mm[2],
                        f.tile_contact_y_mm[3], f.guard_force_n, f.total_force_n,
                        f.cop_y_mm, f.any_tile_contact ? 1.0 : 0.0,
                        f.guard_contact ? 1.0 : 0.0});
    }
    write_table(path,
                "t,f1,f2,f3,f4,cy1,cy2,cy3,cy4,guard_force,total,cop_y,"
                "any_tile_contact,guard_contact",
                rows);
}

std::vector<RollTruthFrame> read_roll_truth(const std::filesystem::path& path) {
    Table t = read_table(path);
    if (t.columns.size() != 14) throw IoError(path.string() + ": expected 14 columns");
    std::vector<RollTruthFrame> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        RollTruthFrame f;
        f.timestamp_s = r[0];
        f.tile_force_n = {r[1], r[2], r[3], r[4]};
        f.tile_contact_y_mm = {r[5], r[6], r[7], r[8]};
        f.guard_force_n = r[9];
        f.total_force_n = r[10];
        f.cop_y_mm = r[11];
        f.any_tile_contact = r[12] != 0.0;
        f.guard_contact = r[13] != 0.0;
        out.push_back(f);
    }
    return out;
}

void write_hop_truth(const std::filesystem::path& path,
                     const std::vector<HopTruthFrame>& truth) {
    std::vector<std::vector<double>> rows;
    rows.reserve(truth.size());
    for (const auto& f : truth) {
        rows.push_back({f.timestamp_s, f.tile_force_n[0], f.tile_force_n[1],
                        f.tile_force_n[2], f.tile_force_n[3], f.total_force_n,
                        f.joint_z_mm, f.velocity_mm_s, f.alpha_rad,
                        f.contact ? 1.0 : 0.0});
    }
    write_table(path, "t,f1,f2,f3,f4,total,z_mm,v_mm_s,alpha_rad,contact", rows);
}

std::vector<HopTruthFrame> read_hop_truth(const std::filesystem::path& path) {
    Table t = read_table(path);
    if (t.columns.size() != 10) throw IoError(path.string() + ": expected 10 columns");
    std::vector<HopTruthFrame> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        HopTruthFrame f;
        f.timestamp_s = r[0];
        f.tile_force_n = {r[1], r[2], r[3], r[4]};
        f.total_force_n = r[5];
        f.joint_z_mm = r[6];
        f.velocity_mm_s = r[7];
        f.alpha_rad = r[8];
        f.contact = r[9] != 0.0;
        out.push_back(f);
    }
    return out;
}

} // namespace bubbletile
