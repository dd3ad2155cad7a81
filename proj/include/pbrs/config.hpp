#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace pbrs {

// Flat UTF-8 key=value configuration. '#' starts a comment; keys are
// namespaced with dots (env.name, potential.bias, run.seeds). Consumers
// validate against their known-key set: unknown keys are errors.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<long> get_long_list(const std::string& key) const;

    // Throws ConfigError naming the first key not in `known`.
    void require_known_keys(const std::set<std::string>& known) const;

    // Sorted "key=value" lines joined with "; " for provenance headers.
    std::string render() const;

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace pbrs
