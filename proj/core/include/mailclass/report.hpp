// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mailclass/experiment.hpp"

namespace mailclass::report {

enum class ReportFormat { Tsv, Markdown, Json };

std::string_view to_string(ReportFormat format);
std::optional<ReportFormat> parse_format(std::string_view name);
std::string_view file_extension(ReportFormat format);

/// TSV and Markdown merge the NB and SVM rows of a dataset into one line:
/// Lemmatizer, POS-Tagger, NB precision/recall/F1, SVM precision/recall/F1,
/// at four decimals. JSON is the lossless row list.
/// Throws ConfigError when rows is empty.
void emit_report(std::ostream& out, const std::vector<experiment::ReportRow>& rows, ReportFormat format);
void emit_report(const std::filesystem::path& path, const std::vector<experiment::ReportRow>& rows,
                 ReportFormat format);

std::string rows_to_json(const std::vector<experiment::ReportRow>& rows);
std::vector<experiment::ReportRow> rows_from_json(std::string_view json);
std::vector<experiment::ReportRow> read_rows(const std::filesystem::path& path);

}  // namespace mailclass::report
