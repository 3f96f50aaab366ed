#include "qst/config_file.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qst {

namespace {

std::string trim(const std::string& s) {
    const auto beg = s.find_first_not_of(" \t\r");
    if (beg == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(beg, end - beg + 1);
}

}  // namespace

KeyValueFile KeyValueFile::parse_text(const std::string& text) {
    KeyValueFile out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", lineno, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError("", lineno, "empty key");
        if (value.empty()) throw ConfigError(key, lineno, "empty value for key '" + key + "'");
        if (out.entries.count(key))
            throw ConfigError(key, lineno, "duplicate key '" + key + "'");
        out.entries[key] = Entry{value, lineno};
    }
    return out;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

std::string KeyValueFile::get_string(const std::string& key) const {
    return entries.at(key).value;
}

double KeyValueFile::get_double(const std::string& key) const {
    const Entry& e = entries.at(key);
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0')
        throw ConfigError(key, e.line, "value of '" + key + "' is not a number: " + e.value);
    return v;
}

int KeyValueFile::get_int(const std::string& key) const {
    const Entry& e = entries.at(key);
    char* end = nullptr;
    const long v = std::strtol(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0')
        throw ConfigError(key, e.line, "value of '" + key + "' is not an integer: " + e.value);
    return static_cast<int>(v);
}

}  // namespace qst
