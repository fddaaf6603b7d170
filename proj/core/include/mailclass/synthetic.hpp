// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mailclass/annotation.hpp"

namespace mailclass::synthetic {

/// Annotated corpus drawn from known class-conditional multinomials.
///
/// The vocabulary splits into content terms (verbs and nouns, each class
/// owning a disjoint block of preferred terms) and function terms (participles,
/// adjectives, adverbs, relative pronouns, conjunctions, other) drawn from one
/// Zipf distribution regardless of class. Verbs come in two inflected surfaces
/// sharing a lemma.
struct CorpusSpec {
    std::size_t classes = 8;
    std::size_t docs_per_class = 30;
    std::size_t vocab_size = 200;
    std::size_t min_tokens = 10;
    std::size_t max_tokens = 40;
    double noise_fraction = 0.6;       // probability a token is a function term
    double signature_fraction = 0.8;   // content tokens taken from the class's own block
    std::uint64_t seed = 42;
};

std::vector<annotation::AnnotatedDocument> generate(const CorpusSpec& spec);

}  // namespace mailclass::synthetic
