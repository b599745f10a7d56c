#include "padicfk/config.hpp"

#include "padicfk/io_util.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>

namespace padicfk {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::empty() { return Config{}; }

Config Config::from_file(const std::string& path, const std::vector<std::string>& allowed_keys) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::exception& e) {
        throw ConfigError("<file>", e.what());
    }
    return from_string(text, allowed_keys);
}

Config Config::from_string(const std::string& text, const std::vector<std::string>& allowed_keys) {
    Config cfg;
    size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++lineno;

        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("<line " + std::to_string(lineno) + ">", "expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("<line " + std::to_string(lineno) + ">", "empty key");
        if (key != "schema_version" &&
            std::find(allowed_keys.begin(), allowed_keys.end(), key) == allowed_keys.end())
            throw ConfigError(key, "unknown key");
        if (cfg.values_.count(key)) throw ConfigError(key, "duplicate key");
        cfg.values_[key] = value;
    }

    auto it = cfg.values_.find("schema_version");
    if (it == cfg.values_.end()) throw ConfigError("schema_version", "missing (expected 1)");
    if (trim(it->second) != "1") throw ConfigError("schema_version", "unsupported value '" + it->second + "' (expected 1)");
    return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

long long Config::get_int(const std::string& key, long long fallback, long long lo,
                          long long hi) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& s = it->second;
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw ConfigError(key, "not an integer: '" + s + "'");
    if (v < lo || v > hi)
        throw ConfigError(key, "value " + std::to_string(v) + " outside [" + std::to_string(lo) +
                                   ", " + std::to_string(hi) + "]");
    return v;
}

uint64_t Config::get_u64(const std::string& key, uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& s = it->second;
    if (s.empty() || s[0] == '-') throw ConfigError(key, "not an unsigned integer: '" + s + "'");
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw ConfigError(key, "not an unsigned integer: '" + s + "'");
    return v;
}

double Config::get_double(const std::string& key, double fallback, double lo, double hi) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& s = it->second;
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw ConfigError(key, "not a number: '" + s + "'");
    if (!(v >= lo && v <= hi))
        throw ConfigError(key, "value " + it->second + " outside [" + std::to_string(lo) + ", " +
                                   std::to_string(hi) + "]");
    return v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

} // namespace padicfk
