#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "bubbletile/commands.hpp"
#include "bubbletile/config.hpp"
#include "bubbletile/csv.hpp"
#include "bubbletile/report.hpp"
#include "cli_common.hpp"

namespace fs = std::filesystem;

namespace bubbletile {

namespace {

std::string name_list(const std::set<std::string>& names) {
    std::string joined;
    for (const auto& name : names) {
        if (!joined.empty()) joined += ", ";
        joined += name;
    }
    return "{" + joined + "}";
}

// Sample std (n - 1) and the normal-approximation half width, the same
// convention the calibration aggregation uses.
double ci95_half_width(const std::vector<double>& values, double mean) {
    size_t n = values.size();
    if (n < 2) return 0.0;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return 1.96 * std::sqrt(ss / (double)(n - 1)) / std::sqrt((double)n);
}

// Averages one error trace across runs: rows joined on exact timestamp
// (seeded reruns share the frame clock bit for bit), timestamps missing from
// any run dropped (COP can be undefined on different frames per seed). A
// third input column is a flag and aggregates by AND. Returns the largest
// cross-run mean |error| over flagged rows: extremes do not average linearly,
// so the aggregate max-error metric must come from the averaged trace, the
// way a multi-experiment figure is read.
double average_trace(const std::vector<fs::path>& dirs, const std::string& file,
                     const fs::path& out_path, const std::string& out_header) {
    std::vector<Table> tables;
    tables.reserve(dirs.size());
    for (const auto& dir : dirs) tables.push_back(read_table(dir / file));

    std::vector<std::vector<double>> rows;
    std::map<double, std::pair<double, double>> first;  // t -> value, flag
    for (const auto& row : tables.front().rows) {
        first[row[0]] = {row[1], row.size() > 2 ? row[2] : 1.0};
    }
    double max_flagged_abs = 0.0;
    for (const auto& [t, seed_row] : first) {
        std::vector<double> values{seed_row.first};
        double flag = seed_row.second;
        bool everywhere = true;
        for (size_t d = 1; d < tables.size() && everywhere; ++d) {
            everywhere = false;
            for (const auto& row : tables[d].rows) {
                if (row[0] == t) {
                    values.push_back(row[1]);
                    if (row.size() > 2) flag = std::min(flag, row[2]);
                    everywhere = true;
                    break;
                }
            }
        }
        if (!everywhere) continue;
        double mean = 0.0;
        double mean_abs = 0.0;
        for (double v : values) {
            mean += v;
            mean_abs += std::fabs(v);
        }
        mean /= (double)values.size();
        mean_abs /= (double)values.size();
        if (flag > 0.0) max_flagged_abs = std::max(max_flagged_abs, mean_abs);
        rows.push_back({t, mean, mean_abs, ci95_half_width(values, mean), flag});
    }
    write_table(out_path, out_header, rows);
    return max_flagged_abs;
}

} // namespace

int cmd_report(const ReportOptions& options) {
    return guarded([&] {
        if (options.run_dirs.empty()) {
            throw ConfigError("report needs at least one run directory");
        }
        std::vector<fs::path> dirs(options.run_dirs.begin(), options.run_dirs.end());
        std::vector<Report> reports;
        reports.reserve(dirs.size());
        for (const auto& dir : dirs) {
            reports.push_back(read_report(dir / "report.json"));
        }

        std::set<std::string> reference_names;
        for (const auto& metric : reports.front().metrics) {
            reference_names.insert(metric.name);
        }
        for (size_t i = 1; i < reports.size(); ++i) {
            std::set<std::string> names;
            for (const auto& metric : reports[i].metrics) names.insert(metric.name);
            if (names != reference_names) {
                throw AggregationError(
                    "metric sets differ: " + dirs[i].string() + " has " +
                    name_list(names) + " but " + dirs.front().string() + " has " +
                    name_list(reference_names));
            }
        }

        Report aggregate;
        for (const auto& metric : reports.front().metrics) {
            std::vector<double> values;
            values.reserve(reports.size());
            for (const auto& report : reports) {
                for (const auto& other : report.metrics) {
                    if (other.name == metric.name) values.push_back(other.value);
                }
            }
            double mean = 0.0;
            for (double v : values) mean += v;
            mean /= (double)values.size();
            Metric merged = make_metric(metric.name, mean, metric.unit,
                                        metric.min_threshold, metric.max_threshold);
            if (values.size() > 1) merged.ci95 = ci95_half_width(values, mean);
            aggregate.metrics.push_back(merged);
        }

        fs::path out(options.out_dir);
        fs::create_directories(out);
        std::vector<std::string> outputs{"report.json", "report.txt"};
        auto everywhere = [&](const std::string& file) {
            return std::all_of(dirs.begin(), dirs.end(), [&](const fs::path& dir) {
                return fs::exists(dir / file);
            });
        };
        if (everywhere("cop_error.csv")) {
            double max_mean = average_trace(
                dirs, "cop_error.csv", out / "cop_error_mean.csv",
                "t,mean_err_mm,mean_abs_err_mm,ci95_mm,in_stance_all");
            outputs.push_back("cop_error_mean.csv");
            for (auto& metric : aggregate.metrics) {
                if (metric.name == "max_cop_error_mm") {
                    metric = make_metric(metric.name, max_mean, metric.unit,
                                         metric.min_threshold, metric.max_threshold);
                }
            }
        }
        if (everywhere("grf_error.csv")) {
            average_trace(dirs, "grf_error.csv", out / "grf_error_mean.csv",
                          "t,mean_err_n,mean_abs_err_n,ci95_n,defined_all");
            outputs.push_back("grf_error_mean.csv");
        }
        write_report(out, aggregate);

        Config inputs;
        for (size_t i = 0; i < dirs.size(); ++i) {
            inputs.set("run_" + std::to_string(i), dirs[i].string());
        }
        write_run_manifest(out, "report", inputs.hash(), 0, outputs);
        return aggregate.all_pass() ? 0 : 1;
    });
}

} // namespace bubbletile
