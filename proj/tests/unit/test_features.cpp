// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "mailclass/error.hpp"
#include "mailclass/features.hpp"
#include "mailclass/rng.hpp"

using namespace mailclass;
using namespace mailclass::features;

namespace {

std::vector<Terms> random_docs(std::uint64_t seed, std::size_t n) {
    DeterministicRng rng(seed);
    std::vector<Terms> docs(n);
    for (auto& d : docs) {
        const auto len = rng.between(0, 12);
        for (std::int64_t i = 0; i < len; ++i) d.push_back("t" + std::to_string(rng.below(15)));
    }
    return docs;
}

}  // namespace

TEST(Vocabulary, LexicographicIndices) {
    const std::vector<Terms> docs = {{"b", "a"}, {"c", "a"}};
    const auto vocab = Vocabulary::build(docs);
    EXPECT_EQ(vocab.terms(), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(vocab.index_of("c"), 2u);
    EXPECT_FALSE(vocab.index_of("z").has_value());
    EXPECT_EQ(vocab.term(1), "b");
}

TEST(Vocabulary, IndexTermBijection) {
    const auto docs = random_docs(4, 30);
    const auto vocab = Vocabulary::build(docs);
    for (std::uint32_t i = 0; i < vocab.size(); ++i) EXPECT_EQ(vocab.index_of(vocab.term(i)), i);
    for (const auto& d : docs)
        for (const auto& t : d) EXPECT_TRUE(vocab.contains(t));
}

TEST(Vectorize, RawCounts) {
    const std::vector<Terms> docs = {{"a", "b", "c"}};
    const auto vocab = Vocabulary::build(docs);
    const Terms doc = {"a", "a", "b"};
    const auto v = vectorize(doc, vocab, WeightingScheme::RawCount);
    EXPECT_EQ(v.dimension, 3u);
    EXPECT_EQ(v.entries, (std::vector<std::pair<std::uint32_t, double>>{{0, 2.0}, {1, 1.0}}));
}

TEST(Vectorize, OutOfVocabularyTermsAreDropped) {
    const std::vector<Terms> docs = {{"a"}};
    const auto vocab = Vocabulary::build(docs);
    const Terms doc = {"zzz", "a", "yyy"};
    const auto v = vectorize(doc, vocab, WeightingScheme::RawCount);
    EXPECT_EQ(v.entries.size(), 1u);
    EXPECT_EQ(v.get(0), 1.0);
}

TEST(Vectorize, IdfMustMatchScheme) {
    const std::vector<Terms> docs = {{"a"}, {"b"}};
    const auto vocab = Vocabulary::build(docs);
    const auto idf = compute_idf(docs, vocab);
    EXPECT_THROW(vectorize(docs[0], vocab, WeightingScheme::IdfWeighted), ConfigError);
    EXPECT_THROW(vectorize(docs[0], vocab, WeightingScheme::RawCount, &idf), ConfigError);
}

TEST(Idf, UnsmoothedLogRatio) {
    const std::vector<Terms> docs = {{"a", "b"}, {"a"}, {"a", "c", "c"}, {"b"}};
    const auto vocab = Vocabulary::build(docs);
    EXPECT_EQ(document_frequencies(docs, vocab), (std::vector<std::size_t>{3, 2, 1}));
    const auto idf = compute_idf(docs, vocab);
    EXPECT_DOUBLE_EQ(idf[0], std::log(4.0 / 3.0));
    EXPECT_DOUBLE_EQ(idf[1], std::log(2.0));
    EXPECT_DOUBLE_EQ(idf[2], std::log(4.0));

    const auto v = vectorize(docs[2], vocab, WeightingScheme::IdfWeighted, &idf);
    EXPECT_DOUBLE_EQ(v.get(0), std::log(4.0 / 3.0));
    EXPECT_DOUBLE_EQ(v.get(2), 2.0 * std::log(4.0));
}

TEST(Idf, TermInEveryDocumentGetsNoEntry) {
    const std::vector<Terms> docs = {{"a", "b"}, {"a"}};
    const auto vocab = Vocabulary::build(docs);
    const auto idf = compute_idf(docs, vocab);
    const auto v = vectorize(docs[0], vocab, WeightingScheme::IdfWeighted, &idf);
    EXPECT_EQ(v.entries.size(), 1u);  // idf(a) = 0, no explicit zero stored
    EXPECT_EQ(v.get(0), 0.0);
}

TEST(Idf, UnseenVocabularyTermIsInternalError) {
    const std::vector<Terms> train = {{"a", "b"}};
    const std::vector<Terms> other = {{"a"}};
    EXPECT_THROW(compute_idf(other, Vocabulary::build(train)), InternalError);
}

TEST(VectorizeProperty, AdditiveOverConcatenation) {
    const auto docs = random_docs(8, 40);
    const auto vocab = Vocabulary::build(docs);
    for (std::size_t i = 0; i + 1 < docs.size(); ++i) {
        Terms joined = docs[i];
        joined.insert(joined.end(), docs[i + 1].begin(), docs[i + 1].end());
        const auto a = vectorize(docs[i], vocab, WeightingScheme::RawCount).to_dense();
        const auto b = vectorize(docs[i + 1], vocab, WeightingScheme::RawCount).to_dense();
        const auto ab = vectorize(joined, vocab, WeightingScheme::RawCount).to_dense();
        for (std::size_t k = 0; k < ab.size(); ++k) EXPECT_EQ(ab[k], a[k] + b[k]);
    }
}

TEST(VectorizeProperty, CountsSumToInVocabularyLength) {
    const auto docs = random_docs(9, 40);
    const std::vector<Terms> half(docs.begin(), docs.begin() + 20);
    const auto vocab = Vocabulary::build(half);
    for (const auto& d : docs) {
        const auto v = vectorize(d, vocab, WeightingScheme::RawCount);
        double total = 0.0;
        for (const auto& [idx, value] : v.entries) {
            EXPECT_GT(value, 0.0);
            total += value;
        }
        std::size_t in_vocab = 0;
        for (const auto& t : d) in_vocab += vocab.contains(t);
        EXPECT_EQ(total, static_cast<double>(in_vocab));
        for (std::size_t k = 1; k < v.entries.size(); ++k) EXPECT_LT(v.entries[k - 1].first, v.entries[k].first);
    }
}

TEST(DocumentVector, Dots) {
    DocumentVector a{4, {{0, 1.0}, {2, 3.0}}};
    DocumentVector b{4, {{2, 2.0}, {3, 5.0}}};
    EXPECT_EQ(a.dot(b), 6.0);
    const std::vector<double> dense = {1.0, 1.0, 1.0, 1.0};
    EXPECT_EQ(a.dot(dense), 4.0);
    EXPECT_EQ(a.to_dense(), (std::vector<double>{1.0, 0.0, 3.0, 0.0}));
}

TEST(Vocabulary, WriteListsIndexTermDf) {
    const std::vector<Terms> docs = {{"b", "a"}, {"a"}};
    const auto vocab = Vocabulary::build(docs);
    std::ostringstream out;
    write_vocabulary(out, vocab, document_frequencies(docs, vocab));
    EXPECT_EQ(out.str(), "0\ta\t2\n1\tb\t1\n");
}

TEST(Weighting, Names) {
    EXPECT_EQ(parse_weighting("idf"), WeightingScheme::IdfWeighted);
    EXPECT_EQ(parse_weighting("raw"), WeightingScheme::RawCount);
    EXPECT_FALSE(parse_weighting("tfidf").has_value());
}
