// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"
#include "mailclass/error.hpp"

namespace mailclass::nb {

std::size_t NbModel::class_index(const std::string& class_id) const {
    const auto it = std::find(classes.begin(), classes.end(), class_id);
    if (it == classes.end()) throw ConfigError("unknown class: " + class_id);
    return static_cast<std::size_t>(it - classes.begin());
}

NbModel train(std::span<const features::DocumentVector> docs, std::span<const std::string> labels,
              std::vector<std::string> classes) {
    if (docs.empty()) throw DataError("naive bayes: empty training set");
    if (docs.size() != labels.size()) throw ConfigError("naive bayes: documents and labels differ in length");
    if (classes.empty()) throw DataError("naive bayes: no classes declared");

    std::map<std::string, std::size_t> slot;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (!slot.emplace(classes[c], c).second) throw ConfigError("naive bayes: duplicate class " + classes[c]);
    }

    NbModel model;
    model.vocab_size = docs.front().dimension;
    model.classes = std::move(classes);
    const auto num_classes = model.classes.size();
    std::vector<std::size_t> doc_count(num_classes, 0);
    std::vector<std::vector<double>> mass(num_classes, std::vector<double>(model.vocab_size, 0.0));
    model.class_mass.assign(num_classes, 0.0);

    for (std::size_t i = 0; i < docs.size(); ++i) {
        const auto it = slot.find(labels[i]);
        if (it == slot.end()) throw ConfigError("naive bayes: label outside the declared classes: " + labels[i]);
        if (docs[i].dimension != model.vocab_size) throw ConfigError("naive bayes: documents use different vocabularies");
        const auto c = it->second;
        ++doc_count[c];
        for (const auto& [index, weight] : docs[i].entries) {
            mass[c][index] += weight;
            model.class_mass[c] += weight;
        }
    }

    const auto total_docs = static_cast<double>(docs.size());
    const auto vocab = static_cast<double>(model.vocab_size);
    model.log_prior.resize(num_classes);
    model.log_cond.resize(num_classes);
    for (std::size_t c = 0; c < num_classes; ++c) {
        if (doc_count[c] == 0) throw DataError("naive bayes: class " + model.classes[c] + " has no training examples");
        model.log_prior[c] = std::log(static_cast<double>(doc_count[c]) / total_docs);
        const double log_denominator = std::log(model.class_mass[c] + vocab);
        auto& row = model.log_cond[c];
        row.resize(model.vocab_size);
        for (std::size_t t = 0; t < model.vocab_size; ++t) row[t] = std::log(mass[c][t] + 1.0) - log_denominator;
    }
    return model;
}

NbModel train(std::span<const features::DocumentVector> docs, std::span<const std::string> labels) {
    const std::set<std::string> present(labels.begin(), labels.end());
    return train(docs, labels, std::vector<std::string>(present.begin(), present.end()));
}

std::vector<double> log_scores(const NbModel& model, const features::DocumentVector& doc) {
    if (doc.dimension != model.vocab_size) throw ConfigError("naive bayes: document vocabulary does not match the model");
    std::vector<double> scores(model.log_prior);
    for (std::size_t c = 0; c < scores.size(); ++c) {
        const auto& row = model.log_cond[c];
        for (const auto& [index, weight] : doc.entries) scores[c] += weight * row[index];
    }
    return scores;
}

std::vector<double> posterior(const NbModel& model, const features::DocumentVector& doc) {
    auto scores = log_scores(model, doc);
    const double top = *std::max_element(scores.begin(), scores.end());
    double sum = 0.0;
    for (auto& s : scores) {
        s = std::exp(s - top);
        sum += s;
    }
    for (auto& s : scores) s /= sum;
    return scores;
}

std::size_t predict_index(const NbModel& model, const features::DocumentVector& doc) {
    const auto scores = log_scores(model, doc);
    std::size_t best = 0;
    for (std::size_t c = 1; c < scores.size(); ++c) {
        if (scores[c] > scores[best]) best = c;
    }
    return best;
}

const std::string& predict(const NbModel& model, const features::DocumentVector& doc) {
    return model.classes[predict_index(model, doc)];
}

std::string to_json(const NbModel& model, const std::vector<std::string>* vocab_terms) {
    nlohmann::ordered_json doc;
    doc["type"] = "multinomial_naive_bayes";
    doc["smoothing"] = "add_one";
    doc["vocab_size"] = model.vocab_size;
    doc["classes"] = model.classes;
    doc["log_prior"] = model.log_prior;
    doc["class_mass"] = model.class_mass;
    auto conditionals = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        // Terms never seen in the class share the smoothed default.
        const double unseen = -std::log(model.class_mass[c] + static_cast<double>(model.vocab_size));
        nlohmann::ordered_json entry;
        entry["class"] = model.classes[c];
        entry["log_cond_unseen"] = unseen;
        auto terms = nlohmann::ordered_json::array();
        for (std::size_t t = 0; t < model.vocab_size; ++t) {
            if (model.log_cond[c][t] == unseen) continue;
            nlohmann::ordered_json term;
            term["index"] = t;
            if (vocab_terms) term["term"] = (*vocab_terms)[t];
            term["log_cond"] = model.log_cond[c][t];
            terms.push_back(std::move(term));
        }
        entry["terms"] = std::move(terms);
        conditionals.push_back(std::move(entry));
    }
    doc["log_cond"] = std::move(conditionals);
    return doc.dump(2);
}

}  // namespace mailclass::nb
