// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/filtergrid.hpp"

namespace mailclass::filtergrid {

using annotation::PosTag;

namespace {

struct FilterInfo {
    std::string_view name;
    std::string_view description;
};

constexpr std::array<FilterInfo, 8> kFilters = {{
    {"ALL", "No"},
    {"VERBS_NOUNS_NO_PARTICIPLE", "Verbs and nouns without participle"},
    {"VERBS_NOUNS", "Verbs and nouns only"},
    {"VERBS_NOUNS_ADJ", "Verbs, nouns and adjectives"},
    {"VERBS_NOUNS_ADJ_ADV", "Verbs, nouns, adjectives and adverbs"},
    {"VERBS_NOUNS_RELPRON", "Verbs, nouns and relative pronouns"},
    {"VERBS_NOUNS_CONJ", "Verbs, nouns and conjunctions"},
    {"VERBS_NOUNS_ADV", "Verbs, nouns and adverbs"},
}};

}  // namespace

std::string_view to_string(PosFilter filter) {
    return kFilters[static_cast<std::size_t>(filter)].name;
}

std::string_view describe(PosFilter filter) {
    return kFilters[static_cast<std::size_t>(filter)].description;
}

std::optional<PosFilter> parse_pos_filter(std::string_view name) {
    for (std::size_t i = 0; i < kFilters.size(); ++i) {
        if (kFilters[i].name == name) return static_cast<PosFilter>(i);
    }
    return std::nullopt;
}

bool keeps(PosFilter filter, PosTag tag) {
    if (filter == PosFilter::All) return true;
    if (tag == PosTag::Verb || tag == PosTag::Noun) return true;
    switch (filter) {
        case PosFilter::VerbsNounsNoParticiple:
            return false;
        case PosFilter::VerbsNouns:
            return tag == PosTag::VerbParticiple;
        case PosFilter::VerbsNounsAdj:
            return tag == PosTag::VerbParticiple || tag == PosTag::Adj;
        case PosFilter::VerbsNounsAdjAdv:
            return tag == PosTag::VerbParticiple || tag == PosTag::Adj || tag == PosTag::Adv;
        case PosFilter::VerbsNounsRelPron:
            return tag == PosTag::VerbParticiple || tag == PosTag::PronRel;
        case PosFilter::VerbsNounsConj:
            return tag == PosTag::VerbParticiple || tag == PosTag::Conj;
        case PosFilter::VerbsNounsAdv:
            return tag == PosTag::VerbParticiple || tag == PosTag::Adv;
        case PosFilter::All:
            break;
    }
    return true;
}

std::string config_name(const FilterConfig& config) {
    return std::string(config.lemmatize ? "lemma__" : "raw__") + std::string(to_string(config.pos_filter));
}

std::vector<FilterConfig> grid() {
    std::vector<FilterConfig> configs;
    configs.reserve(2 * kAllPosFilters.size());
    for (const bool lemmatize : {false, true}) {
        for (const auto filter : kAllPosFilters) configs.push_back({lemmatize, filter});
    }
    return configs;
}

std::vector<std::string> apply_filter(const annotation::AnnotatedDocument& doc, const FilterConfig& config) {
    std::vector<std::string> terms;
    terms.reserve(doc.tokens.size());
    for (const auto& token : doc.tokens) {
        if (keeps(config.pos_filter, token.pos)) terms.push_back(config.lemmatize ? token.lemma : token.surface);
    }
    return terms;
}

}  // namespace mailclass::filtergrid
