// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mailclass/features.hpp"

namespace mailclass::nb {

/// Multinomial Naive Bayes with add-one smoothing, stored in log space.
///
///   P(c)   = docs in c / docs
///   P(t|c) = (mass(t, c) + 1) / (mass(c) + |V|)
///
/// "mass" is the summed vector weight, so raw counts and tf-idf weights are
/// both accepted.
struct NbModel {
    std::vector<std::string> classes;
    std::vector<double> log_prior;              // per class
    std::vector<std::vector<double>> log_cond;  // [class][term]
    std::vector<double> class_mass;             // total term mass per class
    std::size_t vocab_size = 0;

    std::size_t class_index(const std::string& class_id) const;
};

/// Classes are taken in the given order; every class needs at least one example
/// and every label must be one of them.
NbModel train(std::span<const features::DocumentVector> docs, std::span<const std::string> labels,
              std::vector<std::string> classes);

/// Classes in lexicographic order of the labels present.
NbModel train(std::span<const features::DocumentVector> docs, std::span<const std::string> labels);

/// log P(c) + sum_t weight(t) * log P(t|c) for every class (normalizer omitted).
std::vector<double> log_scores(const NbModel& model, const features::DocumentVector& doc);

/// Normalized posterior view of log_scores.
std::vector<double> posterior(const NbModel& model, const features::DocumentVector& doc);

/// Index of the highest score; ties go to the lowest class index.
std::size_t predict_index(const NbModel& model, const features::DocumentVector& doc);
const std::string& predict(const NbModel& model, const features::DocumentVector& doc);

/// Classes, log-priors and per-class log-conditionals as JSON.
std::string to_json(const NbModel& model, const std::vector<std::string>* vocab_terms = nullptr);

}  // namespace mailclass::nb
