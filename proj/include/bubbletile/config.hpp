#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bubbletile/errors.hpp"

namespace bubbletile {

// Flat key/value configuration. Text format is one `key = value` per line,
// `#` starts a comment, blank lines ignored. Keys are free-form but by
// convention lower_snake_case; angle-valued keys end in _deg in files and are
// converted to radians by whoever consumes them.
//
// serialize() emits keys sorted, so the hash is stable under file reordering
// and comment changes.
class Config {
public:
    Config() = default;

    static Config parse(const std::string& text);
    static Config load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    std::string serialize() const;

    // FNV-1a 64 over the canonical serialization, as 16 hex digits.
    std::string hash() const;

    bool has(const std::string& key) const;
    std::vector<std::string> keys() const;

    void set(const std::string& key, const std::string& value);
    void set_double(const std::string& key, double value);
    void set_int(const std::string& key, std::int64_t value);
    void set_bool(const std::string& key, bool value);

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Values in `other` win.
    void merge(const Config& other);

private:
    std::map<std::string, std::string> values_;
};

} // namespace bubbletile
