// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/annotation.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mailclass/error.hpp"
#include "mailclass/text.hpp"

namespace mailclass::annotation {

namespace {

constexpr std::array<std::string_view, 8> kTagNames = {"VERB", "VERB_PARTICIPLE", "NOUN", "ADJ",
                                                       "ADV",  "PRON_REL",        "CONJ", "OTHER"};

bool is_token_char(UChar32 c, bool in_token) {
    if (c < 0) return false;
    if (u_isalnum(c)) return true;
    if (!in_token) return false;
    const auto mask = U_GET_GC_MASK(c);
    return (mask & U_GC_M_MASK) != 0;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool looks_like_infinitive(std::string_view token) {
    static constexpr std::array<std::string_view, 14> kVowelR = {
        "ar", "er", "ir", "or", "ur", "ár", "ér", "ír", "ór", "úr", "âr", "êr", "ôr", "õr"};
    return std::any_of(kVowelR.begin(), kVowelR.end(),
                       [&](std::string_view suffix) { return token.size() > suffix.size() && ends_with(token, suffix); });
}

std::vector<std::string> split_whitespace(std::string_view line) {
    std::istringstream in{std::string(line)};
    std::vector<std::string> parts;
    std::string part;
    while (in >> part) parts.push_back(part);
    return parts;
}

bool has_whitespace(std::string_view s) {
    return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

}  // namespace

std::string_view to_string(PosTag tag) {
    return kTagNames[static_cast<std::size_t>(tag)];
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
    for (std::size_t i = 0; i < kTagNames.size(); ++i) {
        if (kTagNames[i] == name) return static_cast<PosTag>(i);
    }
    return std::nullopt;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    int32_t token_start = -1;
    auto flush = [&](int32_t end) {
        if (token_start >= 0) {
            tokens.push_back(text::to_lower(text.substr(static_cast<std::size_t>(token_start),
                                                        static_cast<std::size_t>(end - token_start))));
            token_start = -1;
        }
    };
    while (i < length) {
        const int32_t start = i;
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        if (is_token_char(c, token_start >= 0)) {
            if (token_start < 0) token_start = start;
        } else {
            flush(start);
        }
    }
    flush(length);
    return tokens;
}

TagsetMapping TagsetMapping::mac_morpho() {
    TagsetMapping mapping;
    mapping.set("V", PosTag::Verb);
    mapping.set("VAUX", PosTag::Verb);
    mapping.set("PCP", PosTag::VerbParticiple);
    mapping.set("N", PosTag::Noun);
    mapping.set("NPROP", PosTag::Noun);
    mapping.set("ADV-KS", PosTag::Adv);
    mapping.set("ADV-KS-REL", PosTag::Adv);
    mapping.set("PRO-KS-REL", PosTag::PronRel);
    mapping.set("KC", PosTag::Conj);
    mapping.set("KS", PosTag::Conj);
    return mapping;
}

TagsetMapping TagsetMapping::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    TagsetMapping mapping;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto fields = text::split_tabs(line);
        const auto tag = fields.size() == 2 ? parse_pos_tag(fields[1]) : std::nullopt;
        if (!tag || fields[0].empty()) {
            throw ConfigError(path.string() + ":" + std::to_string(line_number) +
                              ": expected 'external_tag<TAB>POS_TAG'");
        }
        mapping.set(std::string(fields[0]), *tag);
    }
    return mapping;
}

void TagsetMapping::set(std::string external, PosTag tag) {
    table_[std::move(external)] = tag;
}

PosTag TagsetMapping::resolve(std::string_view external) const {
    if (const auto it = table_.find(external); it != table_.end()) return it->second;
    if (const auto canonical = parse_pos_tag(external)) return *canonical;
    return PosTag::Other;
}

ReadResult read_annotations(std::istream& in, const TagsetMapping& mapping) {
    ReadResult result;
    std::string line;
    std::size_t line_number = 0;
    bool in_document = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            in_document = false;
            continue;
        }
        if (line.front() == '#') {
            const auto parts = split_whitespace(line);
            if (parts.size() != 3 || parts[0] != "#doc") {
                throw DataError("annotations line " + std::to_string(line_number) +
                                ": expected '#doc <doc_id> <class_id>'");
            }
            result.documents.push_back(AnnotatedDocument{parts[1], parts[2], {}});
            in_document = true;
            continue;
        }
        if (!in_document) {
            throw DataError("annotations line " + std::to_string(line_number) + ": token line outside a document");
        }
        const auto fields = text::split_tabs(line);
        if (fields.size() != 3) {
            result.diagnostics.push_back({line_number, "expected 3 tab-separated columns, found " +
                                                           std::to_string(fields.size())});
            continue;
        }
        if (fields[0].empty() || fields[1].empty()) {
            result.diagnostics.push_back({line_number, "empty surface or lemma"});
            continue;
        }
        result.documents.back().tokens.push_back(
            AnnotatedToken{text::to_lower(fields[0]), text::to_lower(fields[1]), mapping.resolve(fields[2])});
    }
    if (in.bad()) throw IoError("error while reading annotations");
    return result;
}

ReadResult read_annotations(const std::filesystem::path& path, const TagsetMapping& mapping) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_annotations(in, mapping);
}

void write_annotations(std::ostream& out, const std::vector<AnnotatedDocument>& docs) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto& doc = docs[d];
        if (doc.doc_id.empty() || doc.class_id.empty() || has_whitespace(doc.doc_id) || has_whitespace(doc.class_id)) {
            throw DataError("document ids and class ids must be non-empty and free of white space: '" + doc.doc_id +
                            "' / '" + doc.class_id + "'");
        }
        if (d > 0) out << '\n';
        out << "#doc " << doc.doc_id << ' ' << doc.class_id << '\n';
        for (const auto& token : doc.tokens) {
            out << token.surface << '\t' << token.lemma << '\t' << to_string(token.pos) << '\n';
        }
    }
    if (!out) throw IoError("error while writing annotations");
}

void write_annotations(const std::filesystem::path& path, const std::vector<AnnotatedDocument>& docs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    write_annotations(out, docs);
}

Lexicon read_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    const auto mapping = TagsetMapping::mac_morpho();
    Lexicon lexicon;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto fields = text::split_tabs(line);
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
            throw DataError(path.string() + ":" + std::to_string(line_number) +
                            ": expected 'surface<TAB>lemma<TAB>tag'");
        }
        lexicon[text::to_lower(fields[0])] = {mapping.resolve(fields[2]), text::to_lower(fields[1])};
    }
    return lexicon;
}

AnnotatedDocument fallback_annotate(const std::vector<std::string>& tokens, const Lexicon* lexicon,
                                    std::string doc_id, std::string class_id) {
    AnnotatedDocument doc{std::move(doc_id), std::move(class_id), {}};
    doc.tokens.reserve(tokens.size());
    for (const auto& surface : tokens) {
        if (lexicon) {
            if (const auto it = lexicon->find(surface); it != lexicon->end()) {
                doc.tokens.push_back({surface, it->second.second, it->second.first});
                continue;
            }
        }
        PosTag tag = PosTag::Noun;
        if (surface.size() > 5 && ends_with(surface, "mente")) {
            tag = PosTag::Adv;
        } else if (looks_like_infinitive(surface)) {
            tag = PosTag::Verb;
        }
        doc.tokens.push_back({surface, surface, tag});
    }
    return doc;
}

std::vector<AnnotatedDocument> fallback_annotate_corpus(const corpus::LabeledCorpus& corpus, const Lexicon* lexicon) {
    std::vector<AnnotatedDocument> docs;
    docs.reserve(corpus.examples.size());
    for (const auto& example : corpus.examples) {
        docs.push_back(fallback_annotate(tokenize(example.text), lexicon, example.ticket_id, example.class_id));
    }
    return docs;
}

}  // namespace mailclass::annotation
