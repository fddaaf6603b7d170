// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mailclass/annotation.hpp"

namespace mailclass::filtergrid {

/// POS keep-sets. Every VERBS_NOUNS_* variant builds on VERBS_NOUNS and so
/// keeps participles; only VERBS_NOUNS_NO_PARTICIPLE drops them.
enum class PosFilter {
    All,
    VerbsNounsNoParticiple,
    VerbsNouns,
    VerbsNounsAdj,
    VerbsNounsAdjAdv,
    VerbsNounsRelPron,
    VerbsNounsConj,
    VerbsNounsAdv,
};

inline constexpr std::array<PosFilter, 8> kAllPosFilters = {
    PosFilter::All,           PosFilter::VerbsNounsNoParticiple, PosFilter::VerbsNouns,
    PosFilter::VerbsNounsAdj, PosFilter::VerbsNounsAdjAdv,       PosFilter::VerbsNounsRelPron,
    PosFilter::VerbsNounsConj, PosFilter::VerbsNounsAdv};

std::string_view to_string(PosFilter filter);
std::optional<PosFilter> parse_pos_filter(std::string_view name);

/// Human-readable row label, e.g. "Verbs and nouns without participle".
std::string_view describe(PosFilter filter);

bool keeps(PosFilter filter, annotation::PosTag tag);

struct FilterConfig {
    bool lemmatize = false;
    PosFilter pos_filter = PosFilter::All;

    bool operator==(const FilterConfig&) const = default;
};

/// Stable identifier used for file names, e.g. "raw__VERBS_NOUNS" or "lemma__ALL".
std::string config_name(const FilterConfig& config);

/// The 16 dataset variants: unlemmatized block of 8, then lemmatized block of 8.
std::vector<FilterConfig> grid();

/// Drops tokens outside the keep-set and emits lemma or surface per token.
std::vector<std::string> apply_filter(const annotation::AnnotatedDocument& doc, const FilterConfig& config);

}  // namespace mailclass::filtergrid
