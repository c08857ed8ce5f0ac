#include "edgesched/config.hpp"

#include <fstream>
#include <sstream>

#include "edgesched/errors.hpp"

namespace edgesched {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

Config Config::parse(const std::string& text) {
    Config config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos)
            line.erase(comment);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
            config.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        config.sections_[section][key] = trim(line.substr(eq + 1));
    }
    return config;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config " + path.string());
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse(text);
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s != sections_.end()) {
        const auto k = s->second.find(key);
        if (k != s->second.end())
            return k->second;
    }
    throw ConfigError("config is missing [" + section + "] " + key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    if (!has(section, key))
        return fallback;
    const std::string raw = get(section, key);
    try {
        std::size_t used = 0;
        const double value = std::stod(raw, &used);
        if (used != raw.size())
            throw std::invalid_argument(raw);
        return value;
    } catch (const std::exception&) {
        throw ConfigError("config value [" + section + "] " + key + " = '" + raw +
                          "' is not a number");
    }
}

std::int64_t Config::get_int(const std::string& section, const std::string& key,
                             std::int64_t fallback) const {
    if (!has(section, key))
        return fallback;
    const std::string raw = get(section, key);
    try {
        std::size_t used = 0;
        const std::int64_t value = std::stoll(raw, &used);
        if (used != raw.size())
            throw std::invalid_argument(raw);
        return value;
    } catch (const std::exception&) {
        throw ConfigError("config value [" + section + "] " + key + " = '" + raw +
                          "' is not an integer");
    }
}

std::vector<std::string> Config::get_list(const std::string& section,
                                          const std::string& key) const {
    std::istringstream in(get(section, key));
    std::vector<std::string> items;
    std::string item;
    while (in >> item)
        items.push_back(item);
    return items;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    sections_[section][key] = value;
}

} // namespace edgesched
