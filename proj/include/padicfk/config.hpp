#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace padicfk {

// Error tied to a specific config field; the CLI maps these to exit code 2
// with the field name in the message.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_, const std::string& message)
        : std::runtime_error("config field '" + field_ + "': " + message),
          field(std::move(field_)) {}
};

// key=value file with '#' comments and blank lines; requires schema_version=1.
// Keys are validated against the allowlist supplied by the caller.
class Config {
public:
    static Config from_file(const std::string& path, const std::vector<std::string>& allowed_keys);
    static Config from_string(const std::string& text, const std::vector<std::string>& allowed_keys);
    static Config empty();

    bool has(const std::string& key) const;
    // Getters parse strictly (whole token must consume) and report range
    // violations against the named field.
    long long get_int(const std::string& key, long long fallback, long long lo, long long hi) const;
    uint64_t get_u64(const std::string& key, uint64_t fallback) const;
    double get_double(const std::string& key, double fallback, double lo, double hi) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace padicfk
