// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mailclass/annotation.hpp"
#include "mailclass/evaluation.hpp"
#include "mailclass/features.hpp"
#include "mailclass/filtergrid.hpp"
#include "mailclass/svm.hpp"

namespace mailclass::experiment {

enum class Classifier { NaiveBayes, Svm };

std::string_view to_string(Classifier classifier);  // "nb", "svm"
std::optional<Classifier> parse_classifier(std::string_view name);

struct ExperimentConfig {
    // Inputs: either an annotation file, or tickets + macros (optionally with a
    // fallback lexicon) that are labeled and fallback-annotated on the fly.
    std::filesystem::path tickets;
    std::filesystem::path macros;
    std::filesystem::path annotations;
    std::filesystem::path lexicon;
    std::filesystem::path tagset;
    std::filesystem::path out_dir;

    std::size_t folds = 10;
    std::uint64_t seed = 42;
    features::WeightingScheme nb_weighting = features::WeightingScheme::IdfWeighted;
    features::WeightingScheme svm_weighting = features::WeightingScheme::RawCount;
    svm::TrainConfig svm;
    unsigned threads = 0;  // 0: hardware concurrency

    void validate() const;
};

struct ReportRow {
    bool lemmatize = false;
    filtergrid::PosFilter pos_filter = filtergrid::PosFilter::All;
    Classifier classifier = Classifier::NaiveBayes;
    double precision = 0.0;  // fold mean of support-weighted macro values
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    std::size_t folds = 0;
    std::uint64_t seed = 0;
    features::WeightingScheme weighting = features::WeightingScheme::RawCount;
    double svm_c = 0.0;
    double svm_tolerance = 0.0;
    int svm_max_epochs = 0;
    /// Per-class metrics over confusion counts pooled across folds. Not part of
    /// the TSV and Markdown tables; emitted only in JSON.
    std::vector<eval::ClassReport> per_class;

    filtergrid::FilterConfig filter() const { return {lemmatize, pos_filter}; }
    bool operator==(const ReportRow&) const = default;
};

/// Leakage audit of one (filter config, fold) cell.
struct FoldAudit {
    filtergrid::FilterConfig config;
    std::size_t fold = 0;
    std::size_t vocab_size = 0;
    std::size_t leaked_terms = 0;     // vocabulary terms absent from every training document
    std::size_t test_only_terms = 0;  // distinct test terms dropped as out-of-vocabulary
};

struct GridResult {
    std::vector<ReportRow> rows;  // grid order, NB then SVM per config
    std::vector<FoldAudit> audits;
};

/// Loads the documents named by the config: the annotation file when set,
/// otherwise tickets + macros, labeled and fallback-annotated. Non-fatal input
/// diagnostics are appended to `warnings` when given.
std::vector<annotation::AnnotatedDocument> load_documents(const ExperimentConfig& config,
                                                          std::vector<std::string>* warnings = nullptr);

/// Throws DataError unless there are at least two classes, each with >= folds documents.
void check_corpus(const std::vector<annotation::AnnotatedDocument>& docs, std::size_t folds);

/// Cross-validates both classifiers on all 16 dataset variants. Vocabulary,
/// idf table and models are rebuilt from each training split.
GridResult run_grid(const std::vector<annotation::AnnotatedDocument>& docs, const ExperimentConfig& config);

/// One cell of the grid for one classifier.
ReportRow run_single(const std::vector<annotation::AnnotatedDocument>& docs, const filtergrid::FilterConfig& filter,
                     Classifier classifier, const ExperimentConfig& config,
                     std::vector<FoldAudit>* audits = nullptr);

/// Filtered dataset as TSV: doc_id, class_id, space-joined terms.
void write_filtered_dataset(const std::filesystem::path& path,
                            const std::vector<annotation::AnnotatedDocument>& docs,
                            const filtergrid::FilterConfig& filter);

/// Trains the classifier on every document of one dataset variant and returns its JSON dump.
std::string train_full_model_json(const std::vector<annotation::AnnotatedDocument>& docs,
                                  const filtergrid::FilterConfig& filter, Classifier classifier,
                                  const ExperimentConfig& config);

}  // namespace mailclass::experiment
