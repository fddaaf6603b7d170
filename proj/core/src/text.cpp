// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace mailclass::text {

namespace {

template <typename Fn>
void for_each_code_point(std::string_view s, Fn&& fn) {
    const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
    const auto length = static_cast<int32_t>(s.size());
    int32_t i = 0;
    while (i < length) {
        const int32_t start = i;
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        fn(c, s.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)));
    }
}

void append_code_point(std::string& out, UChar32 c) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    [[maybe_unused]] UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, c, error);
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

}  // namespace

std::string normalize_whitespace(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    bool pending_space = false;
    for_each_code_point(utf8, [&](UChar32 c, std::string_view raw) {
        if (c >= 0 && u_isUWhiteSpace(c)) {
            pending_space = !out.empty();
            return;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.append(raw);
    });
    return out;
}

std::string to_lower(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    for_each_code_point(utf8, [&](UChar32 c, std::string_view raw) {
        if (c < 0) {
            out.append(raw);
        } else {
            append_code_point(out, u_tolower(c));
        }
    });
    return out;
}

bool is_valid_utf8(std::string_view bytes) {
    bool ok = true;
    for_each_code_point(bytes, [&](UChar32 c, std::string_view) {
        if (c < 0) ok = false;
    });
    return ok;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::string join(const std::vector<std::string>& parts, std::string_view separator) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out.append(separator);
        out.append(parts[i]);
    }
    return out;
}

}  // namespace mailclass::text
