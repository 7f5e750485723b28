#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bubbletile/errors.hpp"

namespace bubbletile {

std::string library_version();

// What a run leaves behind so it can be reproduced: the command, the hash of
// the fully resolved config, the seed, and every file it wrote (paths
// relative to the run dir). created_utc is wall clock and excluded from the
// byte-identical rerun guarantee.
struct RunManifest {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string created_utc;
    std::vector<std::string> outputs;
    std::map<std::string, std::string> versions;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

} // namespace bubbletile
