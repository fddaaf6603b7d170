// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace mailclass {

/// Plain-text settings: one "key = value" per line, '#' starts a comment,
/// keys match the long CLI flag names without dashes. Throws ConfigError on a
/// line without '=' or a repeated key.
std::map<std::string, std::string> read_key_values(std::istream& in);
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

}  // namespace mailclass
