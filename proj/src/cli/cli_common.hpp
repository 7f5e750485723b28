#pragma once

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

#include "bubbletile/errors.hpp"
#include "bubbletile/manifest.hpp"

namespace bubbletile {

inline std::string utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Wall clock lives only here; everything else in the manifest is a pure
// function of the inputs, which is what keeps reruns byte-identical.
inline void write_run_manifest(const std::filesystem::path& dir,
                               const std::string& command,
                               const std::string& config_hash, std::uint64_t seed,
                               const std::vector<std::string>& outputs) {
    RunManifest manifest;
    manifest.command = command;
    manifest.config_hash = config_hash;
    manifest.seed = seed;
    manifest.created_utc = utc_now();
    manifest.outputs = outputs;
    manifest.versions["bubbletile"] = library_version();
    write_manifest(dir / "manifest.json", manifest);
}

// Uniform error surface for every verb: library errors print one line to
// stderr and exit 1, so scripts can rely on status alone.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}

} // namespace bubbletile
