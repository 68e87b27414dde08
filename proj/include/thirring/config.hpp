#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace thirring {

/// One `[section]` of a flat key-value config file. Keys are unique within a
/// section; values are kept as raw text and converted on access.
class KeyValueSection {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, bool value);

    bool contains(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    /// Comma-separated list of reals; empty when the key is absent.
    std::vector<double> get_double_list(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

/// Parsed config file. Lines are `key = value`; `#` and `;` start comments;
/// keys before the first `[section]` header land in the "" section.
class KeyValueConfig {
public:
    static KeyValueConfig parse(const std::string& text);
    static KeyValueConfig load(const std::string& path);

    bool has_section(const std::string& name) const;
    /// Empty section when absent.
    const KeyValueSection& section(const std::string& name) const;
    KeyValueSection& section_mut(const std::string& name);

    std::string serialize() const;

private:
    std::map<std::string, KeyValueSection> sections_;
};

/// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace thirring
