// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "mailclass/annotation.hpp"
#include "mailclass/filtergrid.hpp"
#include "mailclass/text.hpp"

using namespace mailclass;
using namespace mailclass::filtergrid;
using annotation::PosTag;

namespace {

const std::filesystem::path kData = MAILCLASS_TEST_DATA_DIR;

annotation::AnnotatedDocument sentence() {
    return annotation::read_annotations(kData / "sentence.tsv", annotation::TagsetMapping::mac_morpho())
        .documents.at(0);
}

annotation::AnnotatedDocument one_of_each() {
    annotation::AnnotatedDocument doc{"d", "c", {}};
    for (const auto tag : annotation::kAllPosTags) {
        const std::string name(annotation::to_string(tag));
        doc.tokens.push_back({"s_" + name, "l_" + name, tag});
    }
    return doc;
}

}  // namespace

TEST(Grid, SixteenConfigsInGridOrder) {
    const std::vector<std::pair<const char*, const char*>> expected = {
        {"No", "No"},
        {"No", "Verbs and nouns without participle"},
        {"No", "Verbs and nouns only"},
        {"No", "Verbs, nouns and adjectives"},
        {"No", "Verbs, nouns, adjectives and adverbs"},
        {"No", "Verbs, nouns and relative pronouns"},
        {"No", "Verbs, nouns and conjunctions"},
        {"No", "Verbs, nouns and adverbs"},
        {"Yes", "No"},
        {"Yes", "Verbs and nouns without participle"},
        {"Yes", "Verbs and nouns only"},
        {"Yes", "Verbs, nouns and adjectives"},
        {"Yes", "Verbs, nouns, adjectives and adverbs"},
        {"Yes", "Verbs, nouns and relative pronouns"},
        {"Yes", "Verbs, nouns and conjunctions"},
        {"Yes", "Verbs, nouns and adverbs"},
    };
    const auto configs = grid();
    ASSERT_EQ(configs.size(), expected.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        EXPECT_EQ(configs[i].lemmatize ? "Yes" : "No", std::string(expected[i].first)) << i;
        EXPECT_EQ(describe(configs[i].pos_filter), expected[i].second) << i;
    }
    std::set<std::string> names;
    for (const auto& c : configs) names.insert(config_name(c));
    EXPECT_EQ(names.size(), 16u);
}

TEST(Grid, FilterNamesRoundTrip) {
    for (const auto f : kAllPosFilters) EXPECT_EQ(parse_pos_filter(to_string(f)), f);
    EXPECT_EQ(to_string(PosFilter::VerbsNounsNoParticiple), "VERBS_NOUNS_NO_PARTICIPLE");
    EXPECT_EQ(config_name({true, PosFilter::VerbsNouns}), "lemma__VERBS_NOUNS");
    EXPECT_EQ(config_name({false, PosFilter::All}), "raw__ALL");
}

TEST(ApplyFilter, PosFilterExample) {
    EXPECT_EQ(text::join(apply_filter(sentence(), {false, PosFilter::VerbsNouns}), " "),
              "é inscrição programa bolsas");
}

TEST(ApplyFilter, LemmaProjection) {
    // Lemmatized sentence without POS filtering; tokens are stored lowercased
    // and the question mark never becomes a token.
    EXPECT_EQ(text::join(apply_filter(sentence(), {true, PosFilter::All}), " "),
              "onde ser o inscrever em programa de bolsa");
}

TEST(ApplyFilter, KeepSets) {
    const auto doc = one_of_each();
    auto kept = [&](PosFilter f) { return text::join(apply_filter(doc, {false, f}), " "); };
    EXPECT_EQ(kept(PosFilter::VerbsNounsNoParticiple), "s_VERB s_NOUN");
    EXPECT_EQ(kept(PosFilter::VerbsNouns), "s_VERB s_VERB_PARTICIPLE s_NOUN");
    EXPECT_EQ(kept(PosFilter::VerbsNounsAdj), "s_VERB s_VERB_PARTICIPLE s_NOUN s_ADJ");
    EXPECT_EQ(kept(PosFilter::VerbsNounsAdjAdv), "s_VERB s_VERB_PARTICIPLE s_NOUN s_ADJ s_ADV");
    EXPECT_EQ(kept(PosFilter::VerbsNounsRelPron), "s_VERB s_VERB_PARTICIPLE s_NOUN s_PRON_REL");
    EXPECT_EQ(kept(PosFilter::VerbsNounsConj), "s_VERB s_VERB_PARTICIPLE s_NOUN s_CONJ");
    EXPECT_EQ(kept(PosFilter::VerbsNounsAdv), "s_VERB s_VERB_PARTICIPLE s_NOUN s_ADV");
    EXPECT_EQ(apply_filter(doc, {false, PosFilter::All}).size(), doc.tokens.size());
}

TEST(ApplyFilter, OutputIsSubsequenceAndNeverLonger) {
    const auto doc = one_of_each();
    for (const auto& config : grid()) {
        const auto terms = apply_filter(doc, config);
        EXPECT_LE(terms.size(), doc.tokens.size());
        std::size_t j = 0;
        for (const auto& token : doc.tokens) {
            const auto& projected = config.lemmatize ? token.lemma : token.surface;
            if (j < terms.size() && terms[j] == projected) ++j;
        }
        EXPECT_EQ(j, terms.size()) << config_name(config);
    }
}

TEST(ApplyFilter, EveryFamilyFilterIsContainedInAll) {
    for (const auto tag : annotation::kAllPosTags) {
        for (const auto f : kAllPosFilters) {
            if (keeps(f, tag)) {
                EXPECT_TRUE(keeps(PosFilter::All, tag));
            }
        }
        EXPECT_EQ(keeps(PosFilter::VerbsNouns, tag), tag == PosTag::Verb || tag == PosTag::VerbParticiple ||
                                                         tag == PosTag::Noun);
    }
}
