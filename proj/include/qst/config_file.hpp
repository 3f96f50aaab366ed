#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace qst {

// Raised on malformed or inconsistent configuration input; carries the
// offending line and field for the diagnostics printed by the CLI.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, int line, const std::string& message)
        : std::runtime_error(message), field_(std::move(field)), line_(line) {}

    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    std::string field_;
    int line_;
};

// Flat "key = value" file with '#' comments and blank lines.
struct KeyValueFile {
    struct Entry {
        std::string value;
        int line = 0;
    };

    std::map<std::string, Entry> entries;

    static KeyValueFile parse_file(const std::string& path);
    static KeyValueFile parse_text(const std::string& text);  // line numbers from 1

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
};

}  // namespace qst
