// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "mailclass/error.hpp"

namespace mailclass::report {

using experiment::Classifier;
using experiment::ReportRow;
using json = nlohmann::ordered_json;

namespace {

struct DatasetLine {
    filtergrid::FilterConfig filter;
    const ReportRow* nb = nullptr;
    const ReportRow* svm = nullptr;
};

std::vector<DatasetLine> merge(const std::vector<ReportRow>& rows) {
    std::vector<DatasetLine> lines;
    for (const auto& row : rows) {
        auto it = std::find_if(lines.begin(), lines.end(), [&](const DatasetLine& l) { return l.filter == row.filter(); });
        if (it == lines.end()) {
            lines.push_back({row.filter()});
            it = std::prev(lines.end());
        }
        (row.classifier == Classifier::NaiveBayes ? it->nb : it->svm) = &row;
    }
    return lines;
}

std::string fixed4(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

std::vector<std::string> cells(const DatasetLine& line) {
    std::vector<std::string> out{line.filter.lemmatize ? "Yes" : "No",
                                 std::string(filtergrid::to_string(line.filter.pos_filter))};
    for (const auto* row : {line.nb, line.svm}) {
        if (row) {
            out.push_back(fixed4(row->precision));
            out.push_back(fixed4(row->recall));
            out.push_back(fixed4(row->f1));
        } else {
            out.insert(out.end(), 3, "-");
        }
    }
    return out;
}

const std::vector<std::string> kHeader = {"Lemmatizer", "POS-Tagger", "NB Precision",  "NB Recall",
                                          "NB F1",      "SVM Precision", "SVM Recall", "SVM F1"};

void emit_tsv(std::ostream& out, const std::vector<DatasetLine>& lines) {
    auto write = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "\t" : "") << fields[i];
        out << '\n';
    };
    write(kHeader);
    for (const auto& line : lines) write(cells(line));
}

void emit_markdown(std::ostream& out, const std::vector<DatasetLine>& lines) {
    auto write = [&](const std::vector<std::string>& fields) {
        out << '|';
        for (const auto& field : fields) out << ' ' << field << " |";
        out << '\n';
    };
    write(kHeader);
    out << '|';
    for (std::size_t i = 0; i < kHeader.size(); ++i) out << (i < 2 ? "---|" : "---:|");
    out << '\n';
    for (const auto& line : lines) write(cells(line));
}

json row_to_json(const ReportRow& row) {
    json j;
    j["lemmatize"] = row.lemmatize;
    j["pos_filter"] = filtergrid::to_string(row.pos_filter);
    j["classifier"] = experiment::to_string(row.classifier);
    j["precision"] = row.precision;
    j["recall"] = row.recall;
    j["f1"] = row.f1;
    j["accuracy"] = row.accuracy;
    j["folds"] = row.folds;
    j["seed"] = row.seed;
    j["weighting"] = features::to_string(row.weighting);
    j["svm_c"] = row.svm_c;
    j["svm_tolerance"] = row.svm_tolerance;
    j["svm_max_epochs"] = row.svm_max_epochs;
    auto per_class = json::array();
    for (const auto& c : row.per_class) {
        per_class.push_back({{"class_id", c.class_id},
                             {"support", c.support},
                             {"precision", c.metrics.precision},
                             {"recall", c.metrics.recall},
                             {"f1", c.metrics.f1}});
    }
    // Pooled per-class breakdown; not part of the TSV and Markdown tables.
    j["per_class_extension"] = std::move(per_class);
    return j;
}

template <typename T>
T field(const nlohmann::json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end()) throw DataError(std::string("report row: missing field ") + name);
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw DataError(std::string("report row: bad value for ") + name);
    }
}

ReportRow row_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw DataError("report row: expected an object");
    ReportRow row;
    row.lemmatize = field<bool>(j, "lemmatize");
    const auto filter = filtergrid::parse_pos_filter(field<std::string>(j, "pos_filter"));
    if (!filter) throw DataError("report row: unknown pos_filter");
    row.pos_filter = *filter;
    const auto classifier = experiment::parse_classifier(field<std::string>(j, "classifier"));
    if (!classifier) throw DataError("report row: unknown classifier");
    row.classifier = *classifier;
    row.precision = field<double>(j, "precision");
    row.recall = field<double>(j, "recall");
    row.f1 = field<double>(j, "f1");
    row.accuracy = field<double>(j, "accuracy");
    row.folds = field<std::size_t>(j, "folds");
    row.seed = field<std::uint64_t>(j, "seed");
    const auto weighting = features::parse_weighting(field<std::string>(j, "weighting"));
    if (!weighting) throw DataError("report row: unknown weighting");
    row.weighting = *weighting;
    row.svm_c = field<double>(j, "svm_c");
    row.svm_tolerance = field<double>(j, "svm_tolerance");
    row.svm_max_epochs = field<int>(j, "svm_max_epochs");
    if (const auto it = j.find("per_class_extension"); it != j.end()) {
        for (const auto& c : *it) {
            row.per_class.push_back({field<std::string>(c, "class_id"), field<std::size_t>(c, "support"),
                                     {field<double>(c, "precision"), field<double>(c, "recall"), field<double>(c, "f1")}});
        }
    }
    return row;
}

}  // namespace

std::string_view to_string(ReportFormat format) {
    switch (format) {
        case ReportFormat::Tsv:
            return "tsv";
        case ReportFormat::Markdown:
            return "markdown";
        case ReportFormat::Json:
            return "json";
    }
    return "tsv";
}

std::optional<ReportFormat> parse_format(std::string_view name) {
    if (name == "tsv") return ReportFormat::Tsv;
    if (name == "markdown" || name == "md") return ReportFormat::Markdown;
    if (name == "json") return ReportFormat::Json;
    return std::nullopt;
}

std::string_view file_extension(ReportFormat format) {
    switch (format) {
        case ReportFormat::Tsv:
            return ".tsv";
        case ReportFormat::Markdown:
            return ".md";
        case ReportFormat::Json:
            return ".json";
    }
    return ".txt";
}

void emit_report(std::ostream& out, const std::vector<ReportRow>& rows, ReportFormat format) {
    if (rows.empty()) throw ConfigError("report: no rows to emit");
    switch (format) {
        case ReportFormat::Tsv:
            emit_tsv(out, merge(rows));
            break;
        case ReportFormat::Markdown:
            emit_markdown(out, merge(rows));
            break;
        case ReportFormat::Json:
            out << rows_to_json(rows) << '\n';
            break;
    }
    if (!out) throw IoError("error while writing report");
}

void emit_report(const std::filesystem::path& path, const std::vector<ReportRow>& rows, ReportFormat format) {
    if (rows.empty()) throw ConfigError("report: no rows to emit");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    emit_report(out, rows, format);
}

std::string rows_to_json(const std::vector<ReportRow>& rows) {
    auto array = json::array();
    for (const auto& row : rows) array.push_back(row_to_json(row));
    return array.dump(2);
}

std::vector<ReportRow> rows_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("report: invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw DataError("report: expected a JSON array of rows");
    std::vector<ReportRow> rows;
    for (const auto& item : doc) rows.push_back(row_from_json(item));
    return rows;
}

std::vector<ReportRow> read_rows(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return rows_from_json(buffer.str());
}

}  // namespace mailclass::report
