// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/config_file.hpp"

#include <fstream>
#include <istream>

#include "mailclass/error.hpp"

namespace mailclass {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::map<std::string, std::string> read_key_values(std::istream& in) {
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_number) + ": expected 'key = value'");
        }
        auto key = trim(std::string_view(content).substr(0, eq));
        auto value = trim(std::string_view(content).substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_number) + ": empty key");
        if (!values.emplace(key, std::move(value)).second) {
            throw ConfigError("config line " + std::to_string(line_number) + ": duplicate key " + key);
        }
    }
    return values;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return read_key_values(in);
}

}  // namespace mailclass
