// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include <benchmark/benchmark.h>

#include "mailclass/evaluation.hpp"
#include "mailclass/experiment.hpp"
#include "mailclass/features.hpp"
#include "mailclass/naive_bayes.hpp"
#include "mailclass/svm.hpp"
#include "mailclass/synthetic.hpp"

using namespace mailclass;

namespace {

struct Data {
    std::vector<annotation::AnnotatedDocument> docs;
    std::vector<features::Terms> terms;
    std::vector<std::string> labels;
    features::Vocabulary vocab;
    std::vector<features::DocumentVector> xs;
};

const Data& data() {
    static const Data d = [] {
        Data out;
        out.docs = synthetic::generate(synthetic::CorpusSpec{});
        for (const auto& doc : out.docs) {
            out.terms.push_back(filtergrid::apply_filter(doc, {false, filtergrid::PosFilter::All}));
            out.labels.push_back(doc.class_id);
        }
        out.vocab = features::Vocabulary::build(out.terms);
        for (const auto& t : out.terms)
            out.xs.push_back(features::vectorize(t, out.vocab, features::WeightingScheme::RawCount));
        return out;
    }();
    return d;
}

void BM_Vectorize(benchmark::State& state) {
    const auto& d = data();
    const auto idf = features::compute_idf(d.terms, d.vocab);
    for (auto _ : state) {
        for (const auto& t : d.terms)
            benchmark::DoNotOptimize(features::vectorize(t, d.vocab, features::WeightingScheme::IdfWeighted, &idf));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.terms.size()));
}
BENCHMARK(BM_Vectorize);

void BM_NaiveBayesTrain(benchmark::State& state) {
    const auto& d = data();
    for (auto _ : state) benchmark::DoNotOptimize(nb::train(d.xs, d.labels));
}
BENCHMARK(BM_NaiveBayesTrain);

void BM_SvmTrainOvr(benchmark::State& state) {
    const auto& d = data();
    svm::TrainConfig config;
    config.c = static_cast<double>(state.range(0)) / 100.0;
    for (auto _ : state) benchmark::DoNotOptimize(svm::train_ovr(d.xs, d.labels, config));
}
BENCHMARK(BM_SvmTrainOvr)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_GridCell(benchmark::State& state) {
    const auto& d = data();
    experiment::ExperimentConfig config;
    config.threads = 1;
    const auto clf = state.range(0) ? experiment::Classifier::Svm : experiment::Classifier::NaiveBayes;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            experiment::run_single(d.docs, {true, filtergrid::PosFilter::VerbsNouns}, clf, config));
}
BENCHMARK(BM_GridCell)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
