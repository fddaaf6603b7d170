// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/evaluation.hpp"

#include <algorithm>
#include <map>

#include "mailclass/error.hpp"
#include "mailclass/rng.hpp"

namespace mailclass::eval {

std::vector<ConfusionCounts> confusion(std::span<const std::string> gold, std::span<const std::string> pred,
                                       std::span<const std::string> classes) {
    if (gold.size() != pred.size()) throw ConfigError("confusion: gold and predicted labels differ in length");
    std::map<std::string_view, std::size_t> slot;
    for (std::size_t c = 0; c < classes.size(); ++c) slot.emplace(classes[c], c);
    auto lookup = [&](const std::string& label) {
        const auto it = slot.find(label);
        if (it == slot.end()) throw ConfigError("confusion: unknown label " + label);
        return it->second;
    };

    std::vector<ConfusionCounts> counts(classes.size());
    for (std::size_t i = 0; i < gold.size(); ++i) {
        const auto g = lookup(gold[i]);
        const auto p = lookup(pred[i]);
        if (g == p) {
            ++counts[g].tp;
        } else {
            ++counts[g].fn;
            ++counts[p].fp;
        }
    }
    for (auto& c : counts) c.tn = gold.size() - c.tp - c.fp - c.fn;
    return counts;
}

ClassMetrics class_metrics(const ConfusionCounts& counts) {
    ClassMetrics m;
    const auto tp = static_cast<double>(counts.tp);
    if (counts.tp + counts.fp > 0) m.precision = tp / static_cast<double>(counts.tp + counts.fp);
    if (counts.tp + counts.fn > 0) m.recall = tp / static_cast<double>(counts.tp + counts.fn);
    // Harmonic mean of precision and recall, in the form 2tp / (2tp + fp + fn).
    if (counts.tp > 0) m.f1 = 2.0 * tp / static_cast<double>(2 * counts.tp + counts.fp + counts.fn);
    return m;
}

ClassMetrics weighted_average(std::span<const ClassMetrics> metrics, std::span<const double> supports) {
    if (metrics.size() != supports.size()) throw ConfigError("weighted average: metrics and supports differ in length");
    double total = 0.0;
    ClassMetrics sum;
    for (std::size_t c = 0; c < metrics.size(); ++c) {
        if (supports[c] < 0.0) throw ConfigError("weighted average: negative support");
        total += supports[c];
        sum.precision += supports[c] * metrics[c].precision;
        sum.recall += supports[c] * metrics[c].recall;
        sum.f1 += supports[c] * metrics[c].f1;
    }
    if (total <= 0.0) throw ConfigError("weighted average: every class has zero support");
    return {sum.precision / total, sum.recall / total, sum.f1 / total};
}

Aggregates aggregate(std::span<const ConfusionCounts> per_class) {
    std::vector<ClassMetrics> metrics;
    std::vector<double> supports;
    std::size_t tp = 0;
    for (const auto& counts : per_class) {
        metrics.push_back(class_metrics(counts));
        supports.push_back(static_cast<double>(counts.support()));
        tp += counts.tp;
    }
    const auto averaged = weighted_average(metrics, supports);
    const auto documents = per_class.front().total();
    return {averaged.precision, averaged.recall, averaged.f1,
            documents > 0 ? static_cast<double>(tp) / static_cast<double>(documents) : 0.0};
}

MetricsReport evaluate(std::span<const std::string> gold, std::span<const std::string> pred,
                       std::span<const std::string> classes) {
    const auto counts = confusion(gold, pred, classes);
    MetricsReport report;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        report.per_class.push_back({classes[c], counts[c].support(), class_metrics(counts[c])});
    }
    report.aggregates = aggregate(counts);
    return report;
}

std::vector<Fold> stratified_kfold(std::span<const std::string> labels, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw ConfigError("stratified k-fold: k must be at least 2");
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
    for (const auto& [cls, members] : by_class) {
        if (members.size() < k) {
            throw DataError("stratified k-fold: class " + cls + " has " + std::to_string(members.size()) +
                            " examples, fewer than k = " + std::to_string(k));
        }
    }

    DeterministicRng rng(seed);
    std::vector<Fold> folds(k);
    std::size_t next = 0;
    for (auto& [cls, members] : by_class) {
        rng.shuffle(std::span<std::size_t>(members));
        for (const auto index : members) {
            folds[next].test.push_back(index);
            next = (next + 1) % k;
        }
    }
    for (auto& fold : folds) {
        std::sort(fold.test.begin(), fold.test.end());
        std::vector<bool> in_test(labels.size(), false);
        for (const auto index : fold.test) in_test[index] = true;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!in_test[i]) fold.train.push_back(i);
        }
    }
    return folds;
}

}  // namespace mailclass::eval
