#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bubbletile/errors.hpp"

namespace bubbletile {

// One checked quantity. pass is false iff a declared threshold is violated;
// metrics without thresholds are informational and always pass. ci95 is
// filled by cross-run aggregation (absent for single runs, rendered n/a).
struct Metric {
    std::string name;
    double value = 0.0;
    std::string unit;
    std::optional<double> min_threshold;
    std::optional<double> max_threshold;
    bool pass = true;
    std::optional<double> ci95;
};

Metric make_metric(const std::string& name, double value, const std::string& unit,
                   std::optional<double> min_threshold = std::nullopt,
                   std::optional<double> max_threshold = std::nullopt);

struct Report {
    std::vector<Metric> metrics;
    bool all_pass() const;
};

// report.json (machine) + report.txt (human) in dir.
void write_report(const std::filesystem::path& dir, const Report& report);
Report read_report(const std::filesystem::path& json_path);

} // namespace bubbletile
