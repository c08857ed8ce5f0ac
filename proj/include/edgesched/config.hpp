#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace edgesched {

/// Flat sectioned key/value text:
///
///   # comment
///   [section]
///   key = value
///
/// One section level, no nesting, '#' and ';' start comments.
class Config {
public:
    Config() = default;

    static Config parse(const std::string& text);
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& section, const std::string& key) const;

    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    // Whitespace-separated list value.
    std::vector<std::string> get_list(const std::string& section, const std::string& key) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

} // namespace edgesched
