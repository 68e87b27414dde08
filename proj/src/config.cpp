#include "thirring/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "thirring/errors.hpp"

namespace thirring {

namespace {

std::string trim(std::string_view text) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    auto begin = std::find_if_not(text.begin(), text.end(), is_space);
    auto end = std::find_if_not(text.rbegin(), text.rend(), is_space).base();
    return begin < end ? std::string(begin, end) : std::string();
}

double parse_double(const std::string& key, const std::string& raw) {
    const std::string text = trim(raw);
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    // from_chars rejects a leading '+'.
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError("key '" + key + "': expected a number, got '" + raw + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

void KeyValueSection::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}

void KeyValueSection::set(const std::string& key, double value) {
    entries_[key] = format_double(value);
}

void KeyValueSection::set(const std::string& key, bool value) {
    entries_[key] = value ? "true" : "false";
}

bool KeyValueSection::contains(const std::string& key) const {
    return entries_.count(key) != 0;
}

std::optional<std::string> KeyValueSection::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

double KeyValueSection::get_double(const std::string& key, double fallback) const {
    auto raw = get(key);
    return raw ? parse_double(key, *raw) : fallback;
}

double KeyValueSection::require_double(const std::string& key) const {
    auto raw = get(key);
    if (!raw) {
        throw ConfigError("missing required key '" + key + "'");
    }
    return parse_double(key, *raw);
}

long long KeyValueSection::get_int(const std::string& key, long long fallback) const {
    auto raw = get(key);
    if (!raw) {
        return fallback;
    }
    const std::string text = trim(*raw);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + *raw + "'");
    }
    return value;
}

bool KeyValueSection::get_bool(const std::string& key, bool fallback) const {
    auto raw = get(key);
    if (!raw) {
        return fallback;
    }
    std::string text = trim(*raw);
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw ConfigError("key '" + key + "': expected a boolean, got '" + *raw + "'");
}

std::vector<double> KeyValueSection::get_double_list(const std::string& key) const {
    std::vector<double> values;
    auto raw = get(key);
    if (!raw) {
        return values;
    }
    std::stringstream stream(*raw);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!trim(item).empty()) {
            values.push_back(parse_double(key, item));
        }
    }
    return values;
}

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
    KeyValueConfig config;
    std::string current;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) {
            line.erase(comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
            }
            current = trim(std::string_view(line).substr(1, line.size() - 2));
            config.sections_[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        }
        config.sections_[current].set(key, trim(std::string_view(line).substr(eq + 1)));
    }
    return config;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

bool KeyValueConfig::has_section(const std::string& name) const {
    return sections_.count(name) != 0;
}

const KeyValueSection& KeyValueConfig::section(const std::string& name) const {
    static const KeyValueSection empty;
    auto it = sections_.find(name);
    return it == sections_.end() ? empty : it->second;
}

KeyValueSection& KeyValueConfig::section_mut(const std::string& name) {
    return sections_[name];
}

std::string KeyValueConfig::serialize() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, section] : sections_) {
        if (!first) {
            out << '\n';
        }
        first = false;
        if (!name.empty()) {
            out << '[' << name << "]\n";
        }
        for (const auto& [key, value] : section.entries()) {
            out << key << " = " << value << '\n';
        }
    }
    return out.str();
}

}  // namespace thirring
