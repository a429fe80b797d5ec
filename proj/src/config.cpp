#include "fracopt/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fracopt {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
            return false;
    return true;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    return parts;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::stringstream ss(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!valid_key(section))
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": invalid section name '" + section + "'");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        if (!valid_key(key))
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": invalid key '" + key +
                              "'");
        const std::string path_key = section.empty() ? key : section + "." + key;
        if (cfg.entries_.count(path_key))
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                              path_key + "'");
        cfg.entries_[path_key] = Entry{trim(line.substr(eq + 1)), line_no, false};
        cfg.order_.push_back(path_key);
    }
    return cfg;
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

const Config::Entry& Config::lookup(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError(key + ": required key is missing");
    it->second.consumed = true;
    return it->second;
}

void Config::type_error(const std::string& key, const Entry& e,
                        const std::string& expected) const {
    throw ConfigError(key + ": expected " + expected + ", got '" + e.value + "' (" + origin_ +
                      ":" + std::to_string(e.line) + ")");
}

std::string Config::get_string(const std::string& key) const { return lookup(key).value; }

std::string Config::get_string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    const Entry& e = lookup(key);
    try {
        std::size_t used = 0;
        const double v = std::stod(e.value, &used);
        if (used != e.value.size()) type_error(key, e, "a number");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        type_error(key, e, "a number");
    }
}

double Config::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    const Entry& e = lookup(key);
    int v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) type_error(key, e, "an integer");
    return v;
}

int Config::get_int_or(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    const Entry& e = lookup(key);
    std::vector<double> out;
    for (const std::string& item : split_list(e.value)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) type_error(key, e, "a comma-separated list of numbers");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            type_error(key, e, "a comma-separated list of numbers");
        }
    }
    return out;
}

std::vector<int> Config::get_int_list(const std::string& key) const {
    const Entry& e = lookup(key);
    std::vector<int> out;
    for (const std::string& item : split_list(e.value)) {
        int v = 0;
        const char* first = item.data();
        const char* last = first + item.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last)
            type_error(key, e, "a comma-separated list of integers");
        out.push_back(v);
    }
    return out;
}

void Config::require_fully_consumed() const {
    std::string unknown;
    for (const std::string& key : order_) {
        const Entry& e = entries_.at(key);
        if (!e.consumed) {
            if (!unknown.empty()) unknown += ", ";
            unknown += key + " (" + origin_ + ":" + std::to_string(e.line) + ")";
        }
    }
    if (!unknown.empty()) throw ConfigError("unknown key(s): " + unknown);
}

std::vector<std::pair<std::string, std::string>> Config::entries() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(order_.size());
    for (const std::string& key : order_) out.emplace_back(key, entries_.at(key).value);
    return out;
}

void Config::set(const std::string& key, const std::string& value) {
    if (!entries_.count(key)) order_.push_back(key);
    entries_[key] = Entry{value, 0, false};
}

}  // namespace fracopt
