// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

// mailclass: corpus construction, annotation and the classification grid from
// the command line.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data or validation
// error, 3 internal failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mailclass/annotation.hpp"
#include "mailclass/config_file.hpp"
#include "mailclass/corpus.hpp"
#include "mailclass/error.hpp"
#include "mailclass/experiment.hpp"
#include "mailclass/filtergrid.hpp"
#include "mailclass/report.hpp"
#include "mailclass/synthetic.hpp"

namespace fs = std::filesystem;
using namespace mailclass;

namespace {

struct Options {
    std::string config_file;

    std::string tickets;
    std::string macros;
    std::string annotations;
    std::string lexicon;
    std::string tagset;
    std::string corpus;
    std::string input;
    std::string out;

    std::size_t folds = 10;
    std::uint64_t seed = 42;
    double svm_c = 1.0;
    double svm_tol = 1e-4;
    int svm_max_epochs = 200;
    std::string nb_weighting = "idf";
    std::string svm_weighting = "raw";
    std::vector<std::string> formats;
    unsigned threads = 0;
    bool save_models = false;

    bool lemmatize = false;
    std::string pos_filter = "ALL";
    std::string classifier = "svm";

    std::size_t synth_classes = 8;
    std::size_t synth_docs = 30;
};

struct Commands {
    CLI::App* corpus_build = nullptr;
    CLI::App* corpus_stats = nullptr;
    CLI::App* annotate_fallback = nullptr;
    CLI::App* annotate_synthetic = nullptr;
    CLI::App* run_grid = nullptr;
    CLI::App* run_single = nullptr;
    CLI::App* report_render = nullptr;
};

void add_config_option(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config_file, "Plain-text 'key = value' settings; command-line flags win")
        ->check(CLI::ExistingFile);
}

void add_input_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--tickets", o.tickets, "Tickets, one JSON object per line");
    cmd->add_option("--macros", o.macros, "Macros as a JSON array");
    cmd->add_option("--annotations", o.annotations, "Annotated documents (TSV with #doc headers)");
    cmd->add_option("--lexicon", o.lexicon, "Fallback lexicon: surface<TAB>lemma<TAB>tag");
    cmd->add_option("--tagset", o.tagset, "Tag mapping: external_tag<TAB>POS_TAG");
}

void add_experiment_options(CLI::App* cmd, Options& o) {
    add_config_option(cmd, o);
    add_input_options(cmd, o);
    cmd->add_option("--folds", o.folds, "Cross-validation folds")->check(CLI::Range(2, 1000000));
    cmd->add_option("--seed", o.seed, "Fold assignment seed");
    cmd->add_option("--svm-c", o.svm_c, "SVM penalty C");
    cmd->add_option("--svm-tol", o.svm_tol, "SVM stopping tolerance");
    cmd->add_option("--svm-max-epochs", o.svm_max_epochs, "SVM update budget in passes over the data");
    cmd->add_option("--nb-weighting", o.nb_weighting, "Naive Bayes features")->check(CLI::IsMember({"idf", "raw"}));
    cmd->add_option("--svm-weighting", o.svm_weighting, "SVM features")->check(CLI::IsMember({"idf", "raw"}));
    cmd->add_option("--out", o.out, "Output directory")->required();
    cmd->add_option("--format", o.formats, "Report formats (repeatable; default: all)")
        ->check(CLI::IsMember({"tsv", "markdown", "json"}));
    cmd->add_option("--threads", o.threads, "Worker threads for grid cells (0: all cores)");
    cmd->add_flag("--save-models", o.save_models, "Also write models trained on each full dataset");
}

void build_cli(CLI::App& app, Options& o, Commands& c) {
    app.require_subcommand(1);

    auto* corpus = app.add_subcommand("corpus", "Build the labeled corpus from tickets and macros");
    corpus->require_subcommand(1);
    c.corpus_build = corpus->add_subcommand("build", "Triage and label tickets; write corpus.jsonl and stats");
    add_config_option(c.corpus_build, o);
    c.corpus_build->add_option("--tickets", o.tickets, "Tickets, one JSON object per line")->required();
    c.corpus_build->add_option("--macros", o.macros, "Macros as a JSON array")->required();
    c.corpus_build->add_option("--out", o.out, "Output directory")->required();

    c.corpus_stats = corpus->add_subcommand("stats", "Print corpus statistics as JSON");
    add_config_option(c.corpus_stats, o);
    c.corpus_stats->add_option("--tickets", o.tickets, "Tickets, one JSON object per line");
    c.corpus_stats->add_option("--macros", o.macros, "Macros as a JSON array");
    c.corpus_stats->add_option("--corpus", o.corpus, "Labeled corpus export (JSONL)");

    auto* annotate = app.add_subcommand("annotate", "Produce annotation files");
    annotate->require_subcommand(1);
    c.annotate_fallback = annotate->add_subcommand("fallback", "Annotate a labeled corpus with the built-in heuristics");
    add_config_option(c.annotate_fallback, o);
    c.annotate_fallback->add_option("--corpus", o.corpus, "Labeled corpus export (JSONL)")->required();
    c.annotate_fallback->add_option("--lexicon", o.lexicon, "Lexicon: surface<TAB>lemma<TAB>tag");
    c.annotate_fallback->add_option("--out", o.out, "Annotation file to write")->required();

    c.annotate_synthetic = annotate->add_subcommand("synthetic", "Write a generated annotated corpus");
    c.annotate_synthetic->add_option("--seed", o.seed, "Generator seed");
    c.annotate_synthetic->add_option("--classes", o.synth_classes, "Number of classes");
    c.annotate_synthetic->add_option("--docs-per-class", o.synth_docs, "Documents per class");
    c.annotate_synthetic->add_option("--out", o.out, "Annotation file to write")->required();

    auto* run = app.add_subcommand("run", "Cross-validated classification experiments");
    run->require_subcommand(1);
    c.run_grid = run->add_subcommand("grid", "All 16 dataset variants with both classifiers");
    add_experiment_options(c.run_grid, o);
    c.run_single = run->add_subcommand("single", "One dataset variant with one classifier");
    add_experiment_options(c.run_single, o);
    c.run_single->add_flag("--lemmatize", o.lemmatize, "Use lemmas instead of surface forms");
    c.run_single->add_option("--pos-filter", o.pos_filter, "POS keep-set")
        ->check(CLI::IsMember({"ALL", "VERBS_NOUNS_NO_PARTICIPLE", "VERBS_NOUNS", "VERBS_NOUNS_ADJ",
                               "VERBS_NOUNS_ADJ_ADV", "VERBS_NOUNS_RELPRON", "VERBS_NOUNS_CONJ", "VERBS_NOUNS_ADV"}));
    c.run_single->add_option("--classifier", o.classifier, "Classifier")->check(CLI::IsMember({"nb", "svm"}));

    auto* report = app.add_subcommand("report", "Work with result files");
    report->require_subcommand(1);
    c.report_render = report->add_subcommand("render", "Render a JSON row list as TSV, Markdown or JSON");
    c.report_render->add_option("--input", o.input, "JSON rows written by 'run'")->required()->check(CLI::ExistingFile);
    c.report_render->add_option("--format", o.formats, "Output format")->check(CLI::IsMember({"tsv", "markdown", "json"}));
    c.report_render->add_option("--out", o.out, "Output file (default: stdout)");
}

CLI::App* active_leaf(CLI::App& app) {
    CLI::App* node = &app;
    while (true) {
        const auto subs = node->get_subcommands();
        if (subs.empty()) return node;
        node = subs.front();
    }
}

// Config-file entries become "--key=value" arguments for options the user did not pass.
std::vector<std::string> config_arguments(CLI::App* leaf, const std::string& path) {
    std::vector<std::string> extra;
    for (const auto& [key, value] : read_key_values(fs::path(path))) {
        if (key == "config") throw ConfigError("config file may not reference another config file");
        auto* option = leaf->get_option_no_throw("--" + key);
        if (!option) throw ConfigError("config file: unknown key '" + key + "'");
        if (option->count() == 0) extra.push_back("--" + key + "=" + value);
    }
    return extra;
}

experiment::ExperimentConfig experiment_config(const Options& o) {
    experiment::ExperimentConfig config;
    config.tickets = o.tickets;
    config.macros = o.macros;
    config.annotations = o.annotations;
    config.lexicon = o.lexicon;
    config.tagset = o.tagset;
    config.out_dir = o.out;
    config.folds = o.folds;
    config.seed = o.seed;
    config.nb_weighting = *features::parse_weighting(o.nb_weighting);
    config.svm_weighting = *features::parse_weighting(o.svm_weighting);
    config.svm.c = o.svm_c;
    config.svm.tolerance = o.svm_tol;
    config.svm.max_epochs = o.svm_max_epochs;
    config.svm.seed = o.seed;
    config.threads = o.threads;
    config.validate();
    return config;
}

std::vector<report::ReportFormat> formats_of(const Options& o) {
    if (o.formats.empty()) return {report::ReportFormat::Tsv, report::ReportFormat::Markdown, report::ReportFormat::Json};
    std::vector<report::ReportFormat> formats;
    for (const auto& name : o.formats) formats.push_back(*report::parse_format(name));
    return formats;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

void print_diagnostics(const std::string& source, const std::vector<corpus::Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        std::cerr << "warning: " << source;
        if (d.line > 0) std::cerr << ':' << d.line;
        std::cerr << ": " << d.message << '\n';
    }
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content << '\n')) throw IoError("cannot write " + path.string());
}

void check_audits(const std::vector<experiment::FoldAudit>& audits) {
    for (const auto& audit : audits) {
        if (audit.leaked_terms != 0) {
            throw InternalError("dataset " + filtergrid::config_name(audit.config) + " fold " +
                                std::to_string(audit.fold) + ": test-only terms in the training vocabulary");
        }
    }
}

int cmd_corpus_build(const Options& o) {
    auto ingest = corpus::ingest_tickets(fs::path(o.tickets));
    print_diagnostics(o.tickets, ingest.diagnostics);
    const auto macros = corpus::read_macros(fs::path(o.macros));
    const auto build = corpus::build_corpus(ingest.tickets, macros);
    print_diagnostics("corpus", build.diagnostics);
    fs::create_directories(o.out);
    corpus::write_labeled_corpus(fs::path(o.out) / "corpus.jsonl", build.corpus);
    write_text(fs::path(o.out) / "corpus_stats.json", corpus::stats_json(build));
    std::cout << corpus::stats_json(build) << '\n';
    return 0;
}

int cmd_corpus_stats(const Options& o) {
    if (!o.corpus.empty()) {
        const auto labeled = corpus::read_labeled_corpus(fs::path(o.corpus));
        corpus::CorpusBuild build;
        build.corpus = labeled;
        build.stats.labeled = labeled.examples.size();
        std::cout << corpus::stats_json(build) << '\n';
        return 0;
    }
    if (o.tickets.empty() || o.macros.empty()) throw ConfigError("either --corpus or both --tickets and --macros are required");
    auto ingest = corpus::ingest_tickets(fs::path(o.tickets));
    print_diagnostics(o.tickets, ingest.diagnostics);
    const auto build = corpus::build_corpus(ingest.tickets, corpus::read_macros(fs::path(o.macros)));
    std::cout << corpus::stats_json(build) << '\n';
    return 0;
}

int cmd_annotate_fallback(const Options& o) {
    const auto labeled = corpus::read_labeled_corpus(fs::path(o.corpus));
    std::optional<annotation::Lexicon> lexicon;
    if (!o.lexicon.empty()) lexicon = annotation::read_lexicon(o.lexicon);
    annotation::write_annotations(fs::path(o.out),
                                  annotation::fallback_annotate_corpus(labeled, lexicon ? &*lexicon : nullptr));
    return 0;
}

int cmd_annotate_synthetic(const Options& o) {
    synthetic::CorpusSpec spec;
    spec.seed = o.seed;
    spec.classes = o.synth_classes;
    spec.docs_per_class = o.synth_docs;
    annotation::write_annotations(fs::path(o.out), synthetic::generate(spec));
    return 0;
}

void write_reports(const Options& o, const std::vector<experiment::ReportRow>& rows, const std::string& stem) {
    for (const auto format : formats_of(o)) {
        report::emit_report(fs::path(o.out) / (stem + std::string(report::file_extension(format))), rows, format);
    }
    report::emit_report(std::cout, rows, report::ReportFormat::Markdown);
}

int cmd_run_grid(const Options& o) {
    const auto config = experiment_config(o);
    std::vector<std::string> warnings;
    const auto docs = experiment::load_documents(config, &warnings);
    print_warnings(warnings);
    const auto result = experiment::run_grid(docs, config);
    check_audits(result.audits);

    const fs::path out(o.out);
    fs::create_directories(out / "datasets");
    for (const auto& filter : filtergrid::grid()) {
        experiment::write_filtered_dataset(out / "datasets" / (filtergrid::config_name(filter) + ".tsv"), docs, filter);
        if (o.save_models) {
            fs::create_directories(out / "models");
            for (const auto classifier : {experiment::Classifier::NaiveBayes, experiment::Classifier::Svm}) {
                write_text(out / "models" /
                               (filtergrid::config_name(filter) + "__" + std::string(experiment::to_string(classifier)) +
                                ".json"),
                           experiment::train_full_model_json(docs, filter, classifier, config));
            }
        }
    }
    write_reports(o, result.rows, "report");
    return 0;
}

int cmd_run_single(const Options& o) {
    const auto config = experiment_config(o);
    const filtergrid::FilterConfig filter{o.lemmatize, *filtergrid::parse_pos_filter(o.pos_filter)};
    const auto classifier = *experiment::parse_classifier(o.classifier);
    std::vector<std::string> warnings;
    const auto docs = experiment::load_documents(config, &warnings);
    print_warnings(warnings);
    std::vector<experiment::FoldAudit> audits;
    const auto row = experiment::run_single(docs, filter, classifier, config, &audits);
    check_audits(audits);

    const fs::path out(o.out);
    const auto stem = filtergrid::config_name(filter) + "__" + std::string(experiment::to_string(classifier));
    fs::create_directories(out / "datasets");
    fs::create_directories(out / "models");
    experiment::write_filtered_dataset(out / "datasets" / (filtergrid::config_name(filter) + ".tsv"), docs, filter);
    write_text(out / "models" / (stem + ".json"), experiment::train_full_model_json(docs, filter, classifier, config));
    write_reports(o, {row}, "single__" + stem);
    return 0;
}

int cmd_report_render(const Options& o) {
    const auto rows = report::read_rows(fs::path(o.input));
    const auto format = o.formats.empty() ? report::ReportFormat::Markdown : *report::parse_format(o.formats.front());
    if (o.out.empty()) {
        report::emit_report(std::cout, rows, format);
    } else {
        report::emit_report(fs::path(o.out), rows, format);
    }
    return 0;
}

int dispatch(const Commands& c, CLI::App* leaf, const Options& o) {
    if (leaf == c.corpus_build) return cmd_corpus_build(o);
    if (leaf == c.corpus_stats) return cmd_corpus_stats(o);
    if (leaf == c.annotate_fallback) return cmd_annotate_fallback(o);
    if (leaf == c.annotate_synthetic) return cmd_annotate_synthetic(o);
    if (leaf == c.run_grid) return cmd_run_grid(o);
    if (leaf == c.run_single) return cmd_run_single(o);
    if (leaf == c.report_render) return cmd_report_render(o);
    throw InternalError("no handler for command " + leaf->get_name());
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const auto reversed = [](std::vector<std::string> v) {
        std::reverse(v.begin(), v.end());  // CLI11 consumes argument vectors from the back
        return v;
    };

    Options options;
    Commands commands;
    auto app = std::make_unique<CLI::App>("Email classification experiments: corpus, annotation, NB/SVM grid");
    build_cli(*app, options, commands);
    try {
        app->parse(reversed(args));
        auto* leaf = active_leaf(*app);
        if (const auto* config = leaf->get_option_no_throw("--config"); config && config->count() > 0) {
            const auto extra = config_arguments(leaf, options.config_file);
            std::size_t depth = 0;
            for (auto* node = leaf; node->get_parent() != nullptr; node = node->get_parent()) ++depth;
            // Subcommand names lead the argument list; settings from the file go right after them.
            std::vector<std::string> merged(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(depth));
            merged.insert(merged.end(), extra.begin(), extra.end());
            merged.insert(merged.end(), args.begin() + static_cast<std::ptrdiff_t>(depth), args.end());

            options = Options{};
            commands = Commands{};
            app = std::make_unique<CLI::App>("Email classification experiments: corpus, annotation, NB/SVM grid");
            build_cli(*app, options, commands);
            app->parse(reversed(merged));
            leaf = active_leaf(*app);
        }
        return dispatch(commands, leaf, options);
    } catch (const CLI::ParseError& e) {
        const int code = app->exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
