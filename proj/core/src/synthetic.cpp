// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "mailclass/error.hpp"
#include "mailclass/rng.hpp"

namespace mailclass::synthetic {

using annotation::AnnotatedToken;
using annotation::PosTag;

namespace {

std::string numbered(const char* prefix, std::size_t n, const char* suffix = "") {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%03zu%s", prefix, n, suffix);
    return buf;
}

struct Lexicon {
    std::vector<AnnotatedToken> content;   // verbs and nouns, grouped per class block
    std::vector<AnnotatedToken> function;  // class-independent
    std::vector<std::size_t> block_start;  // content offsets, one past the end appended
    std::vector<double> function_cdf;      // Zipf weights 1/rank, cumulative
};

Lexicon make_lexicon(const CorpusSpec& spec) {
    // 60% of the surfaces are content terms; verbs contribute two surfaces per lemma.
    const std::size_t content_size = spec.vocab_size * 3 / 5;
    const std::size_t function_size = spec.vocab_size - content_size;
    if (content_size < 2 * spec.classes || function_size == 0) {
        throw ConfigError("synthetic corpus: vocabulary too small for the number of classes");
    }

    Lexicon lex;
    std::size_t verb = 0;
    std::size_t noun = 0;
    for (std::size_t c = 0; c < spec.classes; ++c) {
        lex.block_start.push_back(lex.content.size());
        const std::size_t block_end = content_size * (c + 1) / spec.classes;
        bool make_verb = true;
        while (lex.content.size() < block_end) {
            if (make_verb && lex.content.size() + 2 <= block_end) {
                const auto lemma = numbered("falar", verb);
                lex.content.push_back({numbered("falar", verb, "ei"), lemma, PosTag::Verb});
                lex.content.push_back({numbered("falar", verb, "ia"), lemma, PosTag::Verb});
                ++verb;
            } else {
                const auto lemma = numbered("bolsa", noun);
                lex.content.push_back({numbered("bolsa", noun, "s"), lemma, PosTag::Noun});
                ++noun;
            }
            make_verb = !make_verb;
        }
    }
    lex.block_start.push_back(lex.content.size());

    static constexpr PosTag kFunctionTags[] = {PosTag::VerbParticiple, PosTag::Adj,  PosTag::Adv,
                                               PosTag::PronRel,        PosTag::Conj, PosTag::Other};
    static constexpr const char* kFunctionPrefix[] = {"feito", "bonito", "ontem", "cujo", "porque", "de"};
    for (std::size_t i = 0; i < function_size; ++i) {
        const auto kind = i % std::size(kFunctionTags);
        auto surface = numbered(kFunctionPrefix[kind], i);
        lex.function.push_back({surface, surface, kFunctionTags[kind]});
    }
    double total = 0.0;
    for (std::size_t i = 0; i < function_size; ++i) {
        total += 1.0 / static_cast<double>(i + 1);
        lex.function_cdf.push_back(total);
    }
    for (auto& x : lex.function_cdf) x /= total;
    return lex;
}

}  // namespace

std::vector<annotation::AnnotatedDocument> generate(const CorpusSpec& spec) {
    if (spec.classes < 2 || spec.docs_per_class == 0) throw ConfigError("synthetic corpus: need >= 2 classes with documents");
    if (spec.min_tokens > spec.max_tokens) throw ConfigError("synthetic corpus: min_tokens > max_tokens");

    const auto lex = make_lexicon(spec);
    DeterministicRng rng(spec.seed);
    std::vector<annotation::AnnotatedDocument> docs;
    docs.reserve(spec.classes * spec.docs_per_class);
    for (std::size_t c = 0; c < spec.classes; ++c) {
        const auto block_begin = lex.block_start[c];
        const auto block_size = lex.block_start[c + 1] - block_begin;
        for (std::size_t d = 0; d < spec.docs_per_class; ++d) {
            annotation::AnnotatedDocument doc;
            doc.class_id = numbered("class", c);
            doc.doc_id = numbered("doc", c * spec.docs_per_class + d);
            const auto length = static_cast<std::size_t>(
                rng.between(static_cast<std::int64_t>(spec.min_tokens), static_cast<std::int64_t>(spec.max_tokens)));
            for (std::size_t t = 0; t < length; ++t) {
                if (rng.unit() < spec.noise_fraction) {
                    const auto it = std::lower_bound(lex.function_cdf.begin(), lex.function_cdf.end(), rng.unit());
                    const auto rank = std::min<std::size_t>(static_cast<std::size_t>(it - lex.function_cdf.begin()),
                                                            lex.function.size() - 1);
                    doc.tokens.push_back(lex.function[rank]);
                } else if (rng.unit() < spec.signature_fraction) {
                    doc.tokens.push_back(lex.content[block_begin + rng.below(block_size)]);
                } else {
                    doc.tokens.push_back(lex.content[rng.below(lex.content.size())]);
                }
            }
            docs.push_back(std::move(doc));
        }
    }
    return docs;
}

}  // namespace mailclass::synthetic
