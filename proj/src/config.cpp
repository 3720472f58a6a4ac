#include "linsep/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace linsep {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_string(text.str());
}

ConfigFile ConfigFile::parse_string(const std::string& text) {
    ConfigFile config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config: malformed section at line " + std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key = value at line " + std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: empty key at line " + std::to_string(line_no));
        config.entries_[section.empty() ? key : section + "." + key] = value;
    }
    return config;
}

bool ConfigFile::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string ConfigFile::get_string(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw std::runtime_error("config: missing key '" + key + "'");
    return it->second;
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double ConfigFile::get_double(const std::string& key) const {
    const std::string raw = get_string(key);
    try {
        std::size_t used = 0;
        const double value = std::stod(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' is not a number: '" + raw + "'");
    }
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::int64_t ConfigFile::get_int(const std::string& key) const {
    const std::string raw = get_string(key);
    try {
        std::size_t used = 0;
        const std::int64_t value = std::stoll(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' is not an integer: '" + raw + "'");
    }
}

std::int64_t ConfigFile::get_int(const std::string& key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string raw = get_string(key);
    if (raw == "true" || raw == "1" || raw == "yes") return true;
    if (raw == "false" || raw == "0" || raw == "no") return false;
    throw std::runtime_error("config: key '" + key + "' is not a boolean: '" + raw + "'");
}

std::vector<std::int64_t> ConfigFile::get_int_list(const std::string& key) const {
    std::vector<std::int64_t> values;
    for (const auto& item : split_list(get_string(key))) {
        try {
            values.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw std::runtime_error("config: key '" + key + "' has a non-integer item: '" + item + "'");
        }
    }
    if (values.empty()) throw std::runtime_error("config: key '" + key + "' is an empty list");
    return values;
}

std::vector<std::int64_t> ConfigFile::get_int_list(const std::string& key,
                                                   const std::vector<std::int64_t>& fallback) const {
    return has(key) ? get_int_list(key) : fallback;
}

std::vector<double> ConfigFile::get_double_list(const std::string& key) const {
    std::vector<double> values;
    for (const auto& item : split_list(get_string(key))) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::runtime_error("config: key '" + key + "' has a non-numeric item: '" + item + "'");
        }
    }
    if (values.empty()) throw std::runtime_error("config: key '" + key + "' is an empty list");
    return values;
}

std::vector<double> ConfigFile::get_double_list(const std::string& key,
                                                const std::vector<double>& fallback) const {
    return has(key) ? get_double_list(key) : fallback;
}

}  // namespace linsep
