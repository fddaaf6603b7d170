// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mailclass::features {

using Terms = std::vector<std::string>;

/// Dense term <-> index bijection, indices assigned in lexicographic term order.
class Vocabulary {
public:
    Vocabulary() = default;

    static Vocabulary build(std::span<const Terms> docs);

    std::optional<std::uint32_t> index_of(std::string_view term) const;
    const std::string& term(std::uint32_t index) const { return terms_.at(index); }
    const std::vector<std::string>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool contains(std::string_view term) const { return index_of(term).has_value(); }

    bool operator==(const Vocabulary& other) const { return terms_ == other.terms_; }

private:
    std::vector<std::string> terms_;
    std::map<std::string, std::uint32_t, std::less<>> index_;
};

enum class WeightingScheme { RawCount, IdfWeighted };

std::string_view to_string(WeightingScheme scheme);
std::optional<WeightingScheme> parse_weighting(std::string_view name);

/// Sparse non-negative vector; entries sorted by index, no explicit zeros.
struct DocumentVector {
    std::size_t dimension = 0;
    std::vector<std::pair<std::uint32_t, double>> entries;

    double get(std::uint32_t index) const;
    double dot(std::span<const double> dense) const;
    double dot(const DocumentVector& other) const;
    std::vector<double> to_dense() const;

    bool operator==(const DocumentVector&) const = default;
};

/// Number of documents containing each vocabulary term.
std::vector<std::size_t> document_frequencies(std::span<const Terms> docs, const Vocabulary& vocab);

/// idf(t) = ln(N / df(t)), unsmoothed. Throws InternalError if some term has df = 0.
std::vector<double> compute_idf(std::span<const Terms> docs, const Vocabulary& vocab);

/// Term counts (RAW_COUNT) or tf * idf (IDF_WEIGHTED); out-of-vocabulary terms
/// are dropped. idf must be given exactly when the scheme is IDF_WEIGHTED.
DocumentVector vectorize(std::span<const std::string> terms, const Vocabulary& vocab, WeightingScheme scheme,
                         const std::vector<double>* idf = nullptr);

/// "index TAB term TAB df" per line.
void write_vocabulary(std::ostream& out, const Vocabulary& vocab, std::span<const std::size_t> df);

}  // namespace mailclass::features
