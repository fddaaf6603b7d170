// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mailclass/corpus.hpp"

namespace mailclass::annotation {

enum class PosTag { Verb, VerbParticiple, Noun, Adj, Adv, PronRel, Conj, Other };

inline constexpr std::array<PosTag, 8> kAllPosTags = {
    PosTag::Verb, PosTag::VerbParticiple, PosTag::Noun, PosTag::Adj,
    PosTag::Adv,  PosTag::PronRel,        PosTag::Conj, PosTag::Other};

/// Canonical spelling: VERB, VERB_PARTICIPLE, NOUN, ADJ, ADV, PRON_REL, CONJ, OTHER.
std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

struct AnnotatedToken {
    std::string surface;  // lowercased
    std::string lemma;    // lowercased
    PosTag pos = PosTag::Other;

    bool operator==(const AnnotatedToken&) const = default;
};

struct AnnotatedDocument {
    std::string doc_id;
    std::string class_id;
    std::vector<AnnotatedToken> tokens;

    bool operator==(const AnnotatedDocument&) const = default;
};

/// Maximal runs of Unicode letters and digits (combining marks stay attached),
/// lowercased, in source order.
std::vector<std::string> tokenize(std::string_view text);

/// External tag -> PosTag. Unknown tags resolve to OTHER.
class TagsetMapping {
public:
    /// Canonical names plus the Mac-Morpho tagset.
    static TagsetMapping mac_morpho();

    /// Reads "external_tag TAB POS_TAG" lines on top of the canonical names.
    static TagsetMapping from_file(const std::filesystem::path& path);

    void set(std::string external, PosTag tag);
    PosTag resolve(std::string_view external) const;

private:
    std::map<std::string, PosTag, std::less<>> table_;
};

struct ReadResult {
    std::vector<AnnotatedDocument> documents;
    std::vector<corpus::Diagnostic> diagnostics;
};

/// Reads the TSV annotation format:
///
///     #doc <doc_id> <class_id>
///     surface<TAB>lemma<TAB>tag
///     ...
///     (blank line)
///
/// Token lines with the wrong column count are skipped with a diagnostic.
/// A '#' line that is not a well-formed doc header, or a token line outside
/// any document, throws DataError.
ReadResult read_annotations(std::istream& in, const TagsetMapping& mapping = TagsetMapping::mac_morpho());
ReadResult read_annotations(const std::filesystem::path& path,
                            const TagsetMapping& mapping = TagsetMapping::mac_morpho());

void write_annotations(std::ostream& out, const std::vector<AnnotatedDocument>& docs);
void write_annotations(const std::filesystem::path& path, const std::vector<AnnotatedDocument>& docs);

/// surface -> (tag, lemma)
using Lexicon = std::map<std::string, std::pair<PosTag, std::string>, std::less<>>;

/// "surface TAB lemma TAB tag" lines; tags go through the default mapping.
Lexicon read_lexicon(const std::filesystem::path& path);

/// Test-only stand-in for an external lemmatizer and tagger: lexicon lookup,
/// then suffix rules ("-mente" adverb, vowel + "r" infinitive), then NOUN.
/// Lemma is the surface form unless the lexicon says otherwise.
AnnotatedDocument fallback_annotate(const std::vector<std::string>& tokens,
                                    const Lexicon* lexicon = nullptr,
                                    std::string doc_id = {},
                                    std::string class_id = {});

/// Tokenizes and fallback-annotates every example of a labeled corpus.
std::vector<AnnotatedDocument> fallback_annotate_corpus(const corpus::LabeledCorpus& corpus,
                                                        const Lexicon* lexicon = nullptr);

}  // namespace mailclass::annotation
