#include "bubbletile/manifest.hpp"

#include <fstream>

#include <json.hpp>

namespace bubbletile {

std::string library_version() { return "0.1.0"; }

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    nlohmann::json j;
    j["command"] = manifest.command;
    j["config_hash"] = manifest.config_hash;
    j["seed"] = manifest.seed;
    j["created_utc"] = manifest.created_utc;
    j["outputs"] = manifest.outputs;
    j["versions"] = manifest.versions;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + path.string());
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    RunManifest m;
    try {
        m.command = j.at("command").get<std::string>();
        m.config_hash = j.at("config_hash").get<std::string>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.created_utc = j.value("created_utc", std::string());
        m.outputs = j.value("outputs", std::vector<std::string>());
        m.versions = j.value("versions", std::map<std::string, std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    return m;
}

} // namespace bubbletile
