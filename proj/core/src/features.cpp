// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/features.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "mailclass/error.hpp"

namespace mailclass::features {

Vocabulary Vocabulary::build(std::span<const Terms> docs) {
    std::set<std::string, std::less<>> distinct;
    for (const auto& doc : docs) distinct.insert(doc.begin(), doc.end());
    Vocabulary vocab;
    vocab.terms_.assign(distinct.begin(), distinct.end());
    for (std::uint32_t i = 0; i < vocab.terms_.size(); ++i) vocab.index_.emplace(vocab.terms_[i], i);
    return vocab;
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view term) const {
    const auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string_view to_string(WeightingScheme scheme) {
    return scheme == WeightingScheme::RawCount ? "raw" : "idf";
}

std::optional<WeightingScheme> parse_weighting(std::string_view name) {
    if (name == "raw") return WeightingScheme::RawCount;
    if (name == "idf") return WeightingScheme::IdfWeighted;
    return std::nullopt;
}

double DocumentVector::get(std::uint32_t index) const {
    const auto it = std::lower_bound(entries.begin(), entries.end(), index,
                                     [](const auto& entry, std::uint32_t i) { return entry.first < i; });
    return it != entries.end() && it->first == index ? it->second : 0.0;
}

double DocumentVector::dot(std::span<const double> dense) const {
    double sum = 0.0;
    for (const auto& [index, weight] : entries) sum += weight * dense[index];
    return sum;
}

double DocumentVector::dot(const DocumentVector& other) const {
    double sum = 0.0;
    auto a = entries.begin();
    auto b = other.entries.begin();
    while (a != entries.end() && b != other.entries.end()) {
        if (a->first < b->first) {
            ++a;
        } else if (b->first < a->first) {
            ++b;
        } else {
            sum += a->second * b->second;
            ++a;
            ++b;
        }
    }
    return sum;
}

std::vector<double> DocumentVector::to_dense() const {
    std::vector<double> dense(dimension, 0.0);
    for (const auto& [index, weight] : entries) dense[index] = weight;
    return dense;
}

std::vector<std::size_t> document_frequencies(std::span<const Terms> docs, const Vocabulary& vocab) {
    std::vector<std::size_t> df(vocab.size(), 0);
    std::vector<std::uint32_t> seen;
    for (const auto& doc : docs) {
        seen.clear();
        for (const auto& term : doc) {
            if (const auto index = vocab.index_of(term)) seen.push_back(*index);
        }
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (const auto index : seen) ++df[index];
    }
    return df;
}

std::vector<double> compute_idf(std::span<const Terms> docs, const Vocabulary& vocab) {
    const auto df = document_frequencies(docs, vocab);
    const auto n = static_cast<double>(docs.size());
    std::vector<double> idf(vocab.size());
    for (std::size_t i = 0; i < df.size(); ++i) {
        if (df[i] == 0) throw InternalError("term '" + vocab.term(static_cast<std::uint32_t>(i)) + "' has df = 0");
        idf[i] = std::log(n / static_cast<double>(df[i]));
    }
    return idf;
}

DocumentVector vectorize(std::span<const std::string> terms, const Vocabulary& vocab, WeightingScheme scheme,
                         const std::vector<double>* idf) {
    if ((scheme == WeightingScheme::IdfWeighted) != (idf != nullptr)) {
        throw ConfigError("an idf table is required exactly when the scheme is idf-weighted");
    }
    if (idf && idf->size() != vocab.size()) throw ConfigError("idf table does not match the vocabulary");

    std::vector<std::uint32_t> indices;
    indices.reserve(terms.size());
    for (const auto& term : terms) {
        if (const auto index = vocab.index_of(term)) indices.push_back(*index);
    }
    std::sort(indices.begin(), indices.end());

    DocumentVector vec;
    vec.dimension = vocab.size();
    for (std::size_t i = 0; i < indices.size();) {
        std::size_t j = i;
        while (j < indices.size() && indices[j] == indices[i]) ++j;
        double weight = static_cast<double>(j - i);
        if (idf) weight *= (*idf)[indices[i]];
        if (weight != 0.0) vec.entries.emplace_back(indices[i], weight);
        i = j;
    }
    return vec;
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab, std::span<const std::size_t> df) {
    for (std::uint32_t i = 0; i < vocab.size(); ++i) {
        out << i << '\t' << vocab.term(i) << '\t' << (i < df.size() ? df[i] : 0) << '\n';
    }
}

}  // namespace mailclass::features
