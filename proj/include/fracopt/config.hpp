// Declarative run configuration: a small key-value file format with
// bracketed sections. Grammar (documented in the README):
//
//   # comment                  full-line or trailing
//   [section]                  keys below belong to "section."
//   key = value                scalar, or comma-separated list
//
// Keys are addressed as "section.key". Every key a command does not
// recognize is a hard error, reported with its field path and line number.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracopt {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<int> get_int_list(const std::string& key) const;

    // Throws ConfigError naming every key that was never consumed by a
    // typed getter; commands call this after reading their parameters.
    void require_fully_consumed() const;

    // Entries in file order, for report echoes.
    std::vector<std::pair<std::string, std::string>> entries() const;

    // Insert or overwrite a key programmatically (CLI flag overrides).
    void set(const std::string& key, const std::string& value);

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool consumed = false;
    };

    const Entry& lookup(const std::string& key) const;
    [[noreturn]] void type_error(const std::string& key, const Entry& e,
                                 const std::string& expected) const;

    std::string origin_;
    std::vector<std::string> order_;
    std::map<std::string, Entry> entries_;
};

}  // namespace fracopt
