// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mailclass::eval {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
    std::size_t support() const { return tp + fn; }

    ConfusionCounts& operator+=(const ConfusionCounts& other) {
        tp += other.tp;
        fp += other.fp;
        fn += other.fn;
        tn += other.tn;
        return *this;
    }
    bool operator==(const ConfusionCounts&) const = default;
};

/// One-vs-rest contingency counts per class, aligned with `classes`.
/// Throws ConfigError on a length mismatch or a label outside `classes`.
std::vector<ConfusionCounts> confusion(std::span<const std::string> gold, std::span<const std::string> pred,
                                       std::span<const std::string> classes);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    bool operator==(const ClassMetrics&) const = default;
};

/// precision = tp/(tp+fp), recall = tp/(tp+fn), f1 = harmonic mean; every 0/0 is 0.
ClassMetrics class_metrics(const ConfusionCounts& counts);

struct Aggregates {
    double precision = 0.0;  // support-weighted macro
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;  // sum tp / documents
};

/// Support-weighted averages of per-class metrics plus micro accuracy.
/// Throws ConfigError when every support is zero.
Aggregates aggregate(std::span<const ConfusionCounts> per_class);

/// Same weighting over already-computed metrics; `supports` aligned with `metrics`.
ClassMetrics weighted_average(std::span<const ClassMetrics> metrics, std::span<const double> supports);

struct ClassReport {
    std::string class_id;
    std::size_t support = 0;
    ClassMetrics metrics;

    bool operator==(const ClassReport&) const = default;
};

struct MetricsReport {
    std::vector<ClassReport> per_class;
    Aggregates aggregates;
};

MetricsReport evaluate(std::span<const std::string> gold, std::span<const std::string> pred,
                       std::span<const std::string> classes);

struct Fold {
    std::vector<std::size_t> train;  // ascending
    std::vector<std::size_t> test;   // ascending
};

/// k folds whose test sets partition 0..n-1. Each class is shuffled with the
/// seed and dealt round-robin, continuing where the previous class stopped, so
/// per-class fold sizes differ by at most one. Throws DataError naming the
/// class when a class has fewer than k examples, ConfigError when k < 2.
std::vector<Fold> stratified_kfold(std::span<const std::string> labels, std::size_t k, std::uint64_t seed);

}  // namespace mailclass::eval
