// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <thread>

#include "mailclass/corpus.hpp"
#include "mailclass/error.hpp"
#include "mailclass/naive_bayes.hpp"
#include "mailclass/text.hpp"

namespace mailclass::experiment {

using features::DocumentVector;
using features::Terms;
using features::WeightingScheme;

namespace {

struct Dataset {
    std::vector<Terms> terms;
    std::vector<std::string> labels;
    std::vector<std::string> classes;  // lexicographic
};

Dataset filtered(const std::vector<annotation::AnnotatedDocument>& docs, const filtergrid::FilterConfig& filter) {
    Dataset data;
    data.terms.reserve(docs.size());
    data.labels.reserve(docs.size());
    std::set<std::string> classes;
    for (const auto& doc : docs) {
        data.terms.push_back(filtergrid::apply_filter(doc, filter));
        data.labels.push_back(doc.class_id);
        classes.insert(doc.class_id);
    }
    data.classes.assign(classes.begin(), classes.end());
    return data;
}

template <typename T>
std::vector<T> pick(const std::vector<T>& items, const std::vector<std::size_t>& indices) {
    std::vector<T> out;
    out.reserve(indices.size());
    for (const auto i : indices) out.push_back(items[i]);
    return out;
}

std::vector<DocumentVector> vectorize_all(const std::vector<Terms>& terms, const features::Vocabulary& vocab,
                                          WeightingScheme scheme, const std::vector<double>& idf) {
    std::vector<DocumentVector> out;
    out.reserve(terms.size());
    const auto* table = scheme == WeightingScheme::IdfWeighted ? &idf : nullptr;
    for (const auto& t : terms) out.push_back(features::vectorize(t, vocab, scheme, table));
    return out;
}

FoldAudit audit_fold(const filtergrid::FilterConfig& filter, std::size_t fold, const features::Vocabulary& vocab,
                     const std::vector<Terms>& train, const std::vector<Terms>& test) {
    std::set<std::string_view> train_terms;
    for (const auto& doc : train) train_terms.insert(doc.begin(), doc.end());
    std::set<std::string_view> test_exclusive;
    for (const auto& doc : test) {
        for (const auto& term : doc) {
            if (!train_terms.contains(term)) test_exclusive.insert(term);
        }
    }
    FoldAudit audit{filter, fold, vocab.size(), 0, test_exclusive.size()};
    for (const auto term : test_exclusive) {
        if (vocab.contains(term)) ++audit.leaked_terms;
    }
    return audit;
}

struct Accumulator {
    eval::Aggregates sum;
    std::vector<eval::ConfusionCounts> pooled;
    std::size_t folds = 0;

    void add(const std::vector<std::string>& gold, const std::vector<std::string>& pred,
             const std::vector<std::string>& classes) {
        const auto counts = eval::confusion(gold, pred, classes);
        const auto agg = eval::aggregate(counts);
        sum.precision += agg.precision;
        sum.recall += agg.recall;
        sum.f1 += agg.f1;
        sum.accuracy += agg.accuracy;
        if (pooled.empty()) pooled.resize(classes.size());
        for (std::size_t c = 0; c < counts.size(); ++c) pooled[c] += counts[c];
        ++folds;
    }

    ReportRow row(const filtergrid::FilterConfig& filter, Classifier classifier, const ExperimentConfig& config,
                  const std::vector<std::string>& classes) const {
        ReportRow r;
        r.lemmatize = filter.lemmatize;
        r.pos_filter = filter.pos_filter;
        r.classifier = classifier;
        const auto n = static_cast<double>(folds);
        r.precision = sum.precision / n;
        r.recall = sum.recall / n;
        r.f1 = sum.f1 / n;
        r.accuracy = sum.accuracy / n;
        r.folds = folds;
        r.seed = config.seed;
        r.weighting = classifier == Classifier::NaiveBayes ? config.nb_weighting : config.svm_weighting;
        r.svm_c = config.svm.c;
        r.svm_tolerance = config.svm.tolerance;
        r.svm_max_epochs = config.svm.max_epochs;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            r.per_class.push_back({classes[c], pooled[c].support(), eval::class_metrics(pooled[c])});
        }
        return r;
    }
};

struct CellResult {
    std::optional<ReportRow> nb;
    std::optional<ReportRow> svm;
    std::vector<FoldAudit> audits;
};

CellResult run_cell(const std::vector<annotation::AnnotatedDocument>& docs, const std::vector<eval::Fold>& folds,
                    const filtergrid::FilterConfig& filter, bool with_nb, bool with_svm,
                    const ExperimentConfig& config) {
    const auto data = filtered(docs, filter);
    const bool need_idf = (with_nb && config.nb_weighting == WeightingScheme::IdfWeighted) ||
                          (with_svm && config.svm_weighting == WeightingScheme::IdfWeighted);
    Accumulator nb_acc;
    Accumulator svm_acc;
    CellResult result;

    for (std::size_t f = 0; f < folds.size(); ++f) {
        const auto train_terms = pick(data.terms, folds[f].train);
        const auto test_terms = pick(data.terms, folds[f].test);
        const auto train_labels = pick(data.labels, folds[f].train);
        const auto test_labels = pick(data.labels, folds[f].test);

        const auto vocab = features::Vocabulary::build(train_terms);
        result.audits.push_back(audit_fold(filter, f, vocab, train_terms, test_terms));
        const auto idf = need_idf ? features::compute_idf(train_terms, vocab) : std::vector<double>{};

        if (with_nb) {
            const auto train_x = vectorize_all(train_terms, vocab, config.nb_weighting, idf);
            const auto test_x = vectorize_all(test_terms, vocab, config.nb_weighting, idf);
            const auto model = nb::train(train_x, train_labels, data.classes);
            std::vector<std::string> pred;
            pred.reserve(test_x.size());
            for (const auto& x : test_x) pred.push_back(nb::predict(model, x));
            nb_acc.add(test_labels, pred, data.classes);
        }
        if (with_svm) {
            const auto train_x = vectorize_all(train_terms, vocab, config.svm_weighting, idf);
            const auto test_x = vectorize_all(test_terms, vocab, config.svm_weighting, idf);
            const auto model = svm::train_ovr(train_x, train_labels, config.svm);
            std::vector<std::string> pred;
            pred.reserve(test_x.size());
            for (const auto& x : test_x) pred.push_back(svm::predict(model, x));
            svm_acc.add(test_labels, pred, data.classes);
        }
    }
    if (with_nb) result.nb = nb_acc.row(filter, Classifier::NaiveBayes, config, data.classes);
    if (with_svm) result.svm = svm_acc.row(filter, Classifier::Svm, config, data.classes);
    return result;
}

[[noreturn]] void rethrow_for_config(std::exception_ptr error, const filtergrid::FilterConfig& filter) {
    const auto prefix = "dataset " + filtergrid::config_name(filter) + ": ";
    try {
        std::rethrow_exception(error);
    } catch (const DataError& e) {
        throw DataError(prefix + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(prefix + e.what());
    } catch (const IoError& e) {
        throw IoError(prefix + e.what());
    } catch (const std::exception& e) {
        throw InternalError(prefix + e.what());
    }
}

std::vector<std::string> class_labels(const std::vector<annotation::AnnotatedDocument>& docs) {
    std::vector<std::string> labels;
    labels.reserve(docs.size());
    for (const auto& doc : docs) labels.push_back(doc.class_id);
    return labels;
}

}  // namespace

std::string_view to_string(Classifier classifier) {
    return classifier == Classifier::NaiveBayes ? "nb" : "svm";
}

std::optional<Classifier> parse_classifier(std::string_view name) {
    if (name == "nb") return Classifier::NaiveBayes;
    if (name == "svm") return Classifier::Svm;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    if (folds < 2) throw ConfigError("folds must be at least 2");
    svm.validate();
}

std::vector<annotation::AnnotatedDocument> load_documents(const ExperimentConfig& config,
                                                          std::vector<std::string>* warnings) {
    auto warn = [&](const std::string& source, const corpus::Diagnostic& d) {
        if (warnings) {
            warnings->push_back(source + (d.line > 0 ? ":" + std::to_string(d.line) : std::string()) + ": " +
                                d.message);
        }
    };

    if (!config.annotations.empty()) {
        const auto mapping = config.tagset.empty() ? annotation::TagsetMapping::mac_morpho()
                                                   : annotation::TagsetMapping::from_file(config.tagset);
        auto result = annotation::read_annotations(config.annotations, mapping);
        for (const auto& d : result.diagnostics) warn(config.annotations.string(), d);
        return std::move(result.documents);
    }
    if (config.tickets.empty() || config.macros.empty()) {
        throw ConfigError("either --annotations or both --tickets and --macros are required");
    }
    auto ingest = corpus::ingest_tickets(config.tickets);
    for (const auto& d : ingest.diagnostics) warn(config.tickets.string(), d);
    const auto macros = corpus::read_macros(config.macros);
    const auto build = corpus::build_corpus(ingest.tickets, macros);
    for (const auto& d : build.diagnostics) warn("corpus", d);

    std::optional<annotation::Lexicon> lexicon;
    if (!config.lexicon.empty()) lexicon = annotation::read_lexicon(config.lexicon);
    return annotation::fallback_annotate_corpus(build.corpus, lexicon ? &*lexicon : nullptr);
}

void check_corpus(const std::vector<annotation::AnnotatedDocument>& docs, std::size_t folds) {
    std::map<std::string, std::size_t> counts;
    for (const auto& doc : docs) ++counts[doc.class_id];
    if (counts.size() < 2) {
        throw DataError("corpus has " + std::to_string(counts.size()) + " class(es); at least 2 are required");
    }
    for (const auto& [cls, count] : counts) {
        if (count < folds) {
            throw DataError("class " + cls + " has " + std::to_string(count) + " documents, fewer than " +
                            std::to_string(folds) + " folds");
        }
    }
}

GridResult run_grid(const std::vector<annotation::AnnotatedDocument>& docs, const ExperimentConfig& config) {
    config.validate();
    check_corpus(docs, config.folds);
    const auto labels = class_labels(docs);
    const auto folds = eval::stratified_kfold(labels, config.folds, config.seed);
    const auto configs = filtergrid::grid();

    std::vector<CellResult> cells(configs.size());
    std::vector<std::exception_ptr> errors(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto i = next++; i < configs.size(); i = next++) {
            try {
                cells[i] = run_cell(docs, folds, configs[i], true, true, config);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    const auto thread_count = std::min<std::size_t>(config.threads > 0 ? config.threads : hardware, configs.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < thread_count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& thread : pool) thread.join();

    GridResult result;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (errors[i]) rethrow_for_config(errors[i], configs[i]);
        result.rows.push_back(std::move(*cells[i].nb));
        result.rows.push_back(std::move(*cells[i].svm));
        result.audits.insert(result.audits.end(), cells[i].audits.begin(), cells[i].audits.end());
    }
    return result;
}

ReportRow run_single(const std::vector<annotation::AnnotatedDocument>& docs, const filtergrid::FilterConfig& filter,
                     Classifier classifier, const ExperimentConfig& config, std::vector<FoldAudit>* audits) {
    config.validate();
    check_corpus(docs, config.folds);
    const auto folds = eval::stratified_kfold(class_labels(docs), config.folds, config.seed);
    CellResult cell;
    try {
        cell = run_cell(docs, folds, filter, classifier == Classifier::NaiveBayes, classifier == Classifier::Svm,
                        config);
    } catch (...) {
        rethrow_for_config(std::current_exception(), filter);
    }
    if (audits) audits->insert(audits->end(), cell.audits.begin(), cell.audits.end());
    return classifier == Classifier::NaiveBayes ? std::move(*cell.nb) : std::move(*cell.svm);
}

void write_filtered_dataset(const std::filesystem::path& path, const std::vector<annotation::AnnotatedDocument>& docs,
                            const filtergrid::FilterConfig& filter) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& doc : docs) {
        out << doc.doc_id << '\t' << doc.class_id << '\t' << text::join(filtergrid::apply_filter(doc, filter), " ")
            << '\n';
    }
    if (!out) throw IoError("error while writing " + path.string());
}

std::string train_full_model_json(const std::vector<annotation::AnnotatedDocument>& docs,
                                  const filtergrid::FilterConfig& filter, Classifier classifier,
                                  const ExperimentConfig& config) {
    const auto data = filtered(docs, filter);
    const auto vocab = features::Vocabulary::build(data.terms);
    const auto scheme = classifier == Classifier::NaiveBayes ? config.nb_weighting : config.svm_weighting;
    const auto idf = scheme == WeightingScheme::IdfWeighted ? features::compute_idf(data.terms, vocab)
                                                             : std::vector<double>{};
    const auto xs = vectorize_all(data.terms, vocab, scheme, idf);
    if (classifier == Classifier::NaiveBayes) return nb::to_json(nb::train(xs, data.labels, data.classes), &vocab.terms());
    return svm::to_json(svm::train_ovr(xs, data.labels, config.svm));
}

}  // namespace mailclass::experiment
