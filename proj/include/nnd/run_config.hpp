// Flat key=value run configuration: one pair per line, '#' comments,
// namespaced keys (e.g. feel.rounds). Unknown and duplicate keys are errors
// so typos surface instead of silently using defaults.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>

namespace nnd {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RunConfig {
public:
    static RunConfig parse_file(const std::filesystem::path& path);
    static RunConfig parse_string(const std::string& text);

    // CLI-style override; replaces or adds the key.
    void set(const std::string& key, const std::string& value);

    // Throws listing every key not in `known`.
    void require_known_keys(const std::set<std::string>& known) const;

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const; // true/false/1/0

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace nnd
