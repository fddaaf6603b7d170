// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "mailclass/error.hpp"
#include "mailclass/experiment.hpp"
#include "mailclass/naive_bayes.hpp"
#include "mailclass/synthetic.hpp"

using namespace mailclass;
using namespace mailclass::experiment;

namespace {

const std::filesystem::path kData = MAILCLASS_TEST_DATA_DIR;

std::vector<annotation::AnnotatedDocument> small_corpus(std::uint64_t seed = 5) {
    synthetic::CorpusSpec spec;
    spec.classes = 4;
    spec.docs_per_class = 12;
    spec.vocab_size = 80;
    spec.seed = seed;
    return synthetic::generate(spec);
}

ExperimentConfig small_config() {
    ExperimentConfig config;
    config.folds = 4;
    config.seed = 3;
    config.threads = 2;
    return config;
}

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("mailclass_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(RunSingle, NaiveBayesRowIsFoldMeanOfIndependentReplay) {
    const auto docs = small_corpus();
    const auto config = small_config();
    const filtergrid::FilterConfig filter{false, filtergrid::PosFilter::VerbsNouns};
    const auto row = run_single(docs, filter, Classifier::NaiveBayes, config);

    std::vector<std::string> labels;
    std::vector<features::Terms> terms;
    for (const auto& d : docs) {
        labels.push_back(d.class_id);
        terms.push_back(filtergrid::apply_filter(d, filter));
    }
    const std::vector<std::string> classes = {"class000", "class001", "class002", "class003"};
    double f1_sum = 0.0, acc_sum = 0.0;
    const auto folds = eval::stratified_kfold(labels, config.folds, config.seed);
    for (const auto& fold : folds) {
        std::vector<features::Terms> train;
        std::vector<std::string> train_labels, gold, pred;
        for (const auto i : fold.train) {
            train.push_back(terms[i]);
            train_labels.push_back(labels[i]);
        }
        const auto vocab = features::Vocabulary::build(train);
        const auto idf = features::compute_idf(train, vocab);
        std::vector<features::DocumentVector> xs;
        for (const auto& t : train) xs.push_back(features::vectorize(t, vocab, features::WeightingScheme::IdfWeighted, &idf));
        const auto model = nb::train(xs, train_labels, classes);
        for (const auto i : fold.test) {
            gold.push_back(labels[i]);
            pred.push_back(nb::predict(model, features::vectorize(terms[i], vocab, features::WeightingScheme::IdfWeighted, &idf)));
        }
        const auto agg = eval::evaluate(gold, pred, classes).aggregates;
        f1_sum += agg.f1;
        acc_sum += agg.accuracy;
    }
    EXPECT_NEAR(row.f1, f1_sum / static_cast<double>(folds.size()), 1e-12);
    EXPECT_NEAR(row.accuracy, acc_sum / static_cast<double>(folds.size()), 1e-12);
    EXPECT_EQ(row.folds, config.folds);
    EXPECT_EQ(row.weighting, features::WeightingScheme::IdfWeighted);
    ASSERT_EQ(row.per_class.size(), 4u);
    std::size_t support = 0;
    for (const auto& c : row.per_class) support += c.support;
    EXPECT_EQ(support, docs.size());
}

TEST(RunGrid, ThirtyTwoRowsInGridOrderWithCleanAudits) {
    const auto docs = small_corpus();
    const auto result = run_grid(docs, small_config());
    ASSERT_EQ(result.rows.size(), 32u);
    const auto configs = filtergrid::grid();
    for (std::size_t i = 0; i < configs.size(); ++i) {
        EXPECT_EQ(result.rows[2 * i].filter(), configs[i]);
        EXPECT_EQ(result.rows[2 * i].classifier, Classifier::NaiveBayes);
        EXPECT_EQ(result.rows[2 * i + 1].filter(), configs[i]);
        EXPECT_EQ(result.rows[2 * i + 1].classifier, Classifier::Svm);
    }
    EXPECT_EQ(result.audits.size(), 16u * 4u);
    for (const auto& a : result.audits) EXPECT_EQ(a.leaked_terms, 0u) << filtergrid::config_name(a.config);
    for (const auto& r : result.rows) {
        for (const double v : {r.precision, r.recall, r.f1, r.accuracy}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(RunGrid, DeterministicAndThreadCountIndependent) {
    const auto docs = small_corpus();
    auto one = small_config();
    one.threads = 1;
    auto many = small_config();
    many.threads = 5;
    const auto a = run_grid(docs, one);
    const auto b = run_grid(docs, many);
    EXPECT_EQ(a.rows, b.rows);
}

TEST(RunGrid, AuditNoticesTestOnlyTerms) {
    auto docs = small_corpus();
    docs[0].tokens.push_back({"hapax_only_here", "hapax_only_here", annotation::PosTag::Noun});
    std::vector<FoldAudit> audits;
    run_single(docs, {false, filtergrid::PosFilter::All}, Classifier::NaiveBayes, small_config(), &audits);
    std::size_t with_test_only = 0;
    for (const auto& a : audits) {
        EXPECT_EQ(a.leaked_terms, 0u);
        with_test_only += a.test_only_terms > 0;
    }
    EXPECT_GE(with_test_only, 1u);
}

TEST(CheckCorpus, RejectsTooFewDocumentsOrClasses) {
    auto docs = small_corpus();
    EXPECT_NO_THROW(check_corpus(docs, 10));
    EXPECT_THROW(check_corpus(docs, 13), DataError);
    std::vector<annotation::AnnotatedDocument> one_class(docs.begin(), docs.begin() + 12);
    EXPECT_THROW(check_corpus(one_class, 2), DataError);
}

TEST(Config, Validation) {
    ExperimentConfig config;
    config.folds = 1;
    EXPECT_THROW(config.validate(), ConfigError);
    config = {};
    config.svm.c = -1;
    EXPECT_THROW(config.validate(), ConfigError);
    EXPECT_EQ(parse_classifier("nb"), Classifier::NaiveBayes);
    EXPECT_FALSE(parse_classifier("knn").has_value());
}

TEST(LoadDocuments, TicketsAndMacrosThroughFallbackAnnotation) {
    ExperimentConfig config;
    config.tickets = kData / "tickets.jsonl";
    config.macros = kData / "macros.json";
    config.folds = 2;
    std::vector<std::string> warnings;
    const auto docs = load_documents(config, &warnings);
    EXPECT_EQ(docs.size(), 11u);
    EXPECT_FALSE(warnings.empty());
    EXPECT_EQ(docs.front().doc_id, "T01");
    EXPECT_EQ(docs.front().class_id, "M_PRAZO");
    const auto row = run_single(docs, {false, filtergrid::PosFilter::All}, Classifier::NaiveBayes, config);
    EXPECT_EQ(row.folds, 2u);
}

TEST(LoadDocuments, AnnotationFileWins) {
    const auto dir = temp_dir("load");
    annotation::write_annotations(dir / "a.tsv", small_corpus());
    ExperimentConfig config;
    config.annotations = dir / "a.tsv";
    EXPECT_EQ(load_documents(config), small_corpus());
    config.annotations = dir / "missing.tsv";
    EXPECT_THROW(load_documents(config), IoError);
    EXPECT_THROW(load_documents(ExperimentConfig{}), ConfigError);
}

TEST(Artifacts, FilteredDatasetAndModelJson) {
    const auto dir = temp_dir("artifacts");
    const auto docs = small_corpus();
    write_filtered_dataset(dir / "d.tsv", docs, {true, filtergrid::PosFilter::VerbsNouns});
    std::ifstream in(dir / "d.tsv");
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 2);
    }
    EXPECT_EQ(lines, docs.size());
    const auto json = train_full_model_json(docs, {false, filtergrid::PosFilter::All}, Classifier::Svm, ExperimentConfig{});
    EXPECT_NE(json.find("one_vs_rest_linear_svm"), std::string::npos);
}
