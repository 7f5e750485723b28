#include "bubbletile/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace bubbletile {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

Metric make_metric(const std::string& name, double value, const std::string& unit,
                   std::optional<double> min_threshold,
                   std::optional<double> max_threshold) {
    Metric m;
    m.name = name;
    m.value = value;
    m.unit = unit;
    m.min_threshold = min_threshold;
    m.max_threshold = max_threshold;
    m.pass = !(min_threshold && value < *min_threshold) &&
             !(max_threshold && value > *max_threshold);
    return m;
}

bool Report::all_pass() const {
    for (const auto& m : metrics) {
        if (!m.pass) return false;
    }
    return true;
}

void write_report(const std::filesystem::path& dir, const Report& report) {
    nlohmann::json j;
    j["all_pass"] = report.all_pass();
    j["metrics"] = nlohmann::json::array();
    for (const auto& m : report.metrics) {
        nlohmann::json jm;
        jm["name"] = m.name;
        jm["value"] = m.value;
        jm["unit"] = m.unit;
        jm["min_threshold"] =
            m.min_threshold ? nlohmann::json(*m.min_threshold) : nlohmann::json();
        jm["max_threshold"] =
            m.max_threshold ? nlohmann::json(*m.max_threshold) : nlohmann::json();
        jm["pass"] = m.pass;
        jm["ci95"] = m.ci95 ? nlohmann::json(*m.ci95) : nlohmann::json();
        j["metrics"].push_back(jm);
    }
    std::ofstream json_out(dir / "report.json");
    if (!json_out) throw IoError("cannot write " + (dir / "report.json").string());
    json_out << j.dump(2) << "\n";

    std::ofstream txt(dir / "report.txt");
    if (!txt) throw IoError("cannot write " + (dir / "report.txt").string());
    for (const auto& m : report.metrics) {
        txt << (m.pass ? "[PASS] " : "[FAIL] ") << m.name << " = " << num(m.value);
        if (!m.unit.empty()) txt << " " << m.unit;
        if (m.min_threshold) txt << "  min " << num(*m.min_threshold);
        if (m.max_threshold) txt << "  max " << num(*m.max_threshold);
        txt << "  ci95 " << (m.ci95 ? "+/-" + num(*m.ci95) : std::string("n/a"));
        txt << "\n";
    }
    txt << "overall: " << (report.all_pass() ? "PASS" : "FAIL") << "\n";
    if (!txt) throw IoError("failed writing " + (dir / "report.txt").string());
}

Report read_report(const std::filesystem::path& json_path) {
    std::ifstream in(json_path);
    if (!in) throw IoError("cannot read " + json_path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(json_path.string() + ": " + e.what());
    }
    Report report;
    try {
        for (const auto& jm : j.at("metrics")) {
            Metric m;
            m.name = jm.at("name").get<std::string>();
            m.value = jm.at("value").get<double>();
            m.unit = jm.value("unit", std::string());
            if (!jm.at("min_threshold").is_null()) {
                m.min_threshold = jm.at("min_threshold").get<double>();
            }
            if (!jm.at("max_threshold").is_null()) {
                m.max_threshold = jm.at("max_threshold").get<double>();
            }
            m.pass = jm.at("pass").get<bool>();
            if (!jm.at("ci95").is_null()) m.ci95 = jm.at("ci95").get<double>();
            report.metrics.push_back(m);
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(json_path.string() + ": " + e.what());
    }
    return report;
}

} // namespace bubbletile
