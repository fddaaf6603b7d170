// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mailclass::text {

/// Collapses every run of Unicode white space (the White_Space property) into
/// a single ASCII space and trims both ends. Invalid UTF-8 bytes are copied through.
std::string normalize_whitespace(std::string_view utf8);

/// Per-code-point simple lowercase mapping of a UTF-8 string.
std::string to_lower(std::string_view utf8);

/// True when the string is well-formed UTF-8.
bool is_valid_utf8(std::string_view bytes);

/// Splits on ASCII tab characters, keeping empty fields.
std::vector<std::string_view> split_tabs(std::string_view line);

/// Joins with a single separator.
std::string join(const std::vector<std::string>& parts, std::string_view separator);

}  // namespace mailclass::text
