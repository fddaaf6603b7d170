// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mailclass::corpus {

enum class AuthorRole { Customer, Staff };

struct EmailMessage {
    int position = 1;  // 1-based within the ticket
    AuthorRole author_role = AuthorRole::Customer;
    std::string subject;
    std::string body;

    bool operator==(const EmailMessage&) const = default;
};

struct Ticket {
    std::string ticket_id;
    std::vector<EmailMessage> messages;

    bool operator==(const Ticket&) const = default;
};

/// A pre-written reply. The core is the part of the template staff never edit;
/// finding it inside a reply labels the ticket with this macro.
struct Macro {
    std::string macro_id;
    std::string category;
    std::string subject_label;
    std::string template_text;
    std::string core;
};

struct LabeledExample {
    std::string ticket_id;
    std::string class_id;  // macro_id
    std::string text;      // subject and body of the customer's question

    bool operator==(const LabeledExample&) const = default;
};

struct Diagnostic {
    std::size_t line = 0;  // 1-based; 0 when not tied to an input line
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

struct IngestResult {
    std::vector<Ticket> tickets;
    std::vector<Diagnostic> diagnostics;
};

/// Parses one JSON ticket per line. Blank lines are ignored; malformed lines
/// produce a diagnostic and are skipped.
IngestResult ingest_tickets(std::istream& in);
IngestResult ingest_tickets(const std::filesystem::path& path);

/// Parses the macro list (a single JSON array).
std::vector<Macro> read_macros(std::istream& in);
std::vector<Macro> read_macros(const std::filesystem::path& path);

struct TriageResult {
    std::vector<Ticket> kept;
    std::size_t dropped_count = 0;
};

/// Keeps tickets with two or three messages (question, reply, optional thanks).
TriageResult triage_tickets(std::vector<Ticket> tickets);

bool passes_triage(const Ticket& ticket);

struct CoreValidationReport {
    std::vector<std::string> empty_cores;         // macro ids
    std::vector<std::string> core_not_in_template;  // macro ids
    /// (i, j): normalized core of macro i occurs in core or template of macro j.
    std::vector<std::pair<std::size_t, std::size_t>> overlapping;

    bool clean() const {
        return empty_cores.empty() && core_not_in_template.empty() && overlapping.empty();
    }
    std::string describe(const std::vector<Macro>& macros) const;
};

CoreValidationReport validate_macro_cores(const std::vector<Macro>& macros);

enum class LabelStatus { Labeled, Unmatched, Ambiguous, EmptyQuestion };

struct LabelOutcome {
    LabelStatus status = LabelStatus::Unmatched;
    std::optional<LabeledExample> example;
    std::vector<std::string> matched_macros;  // all macros whose core was found
};

/// Question text of a ticket: subject and body of message 1 joined by one space
/// (the subject is omitted when empty).
std::string question_text(const Ticket& ticket);

/// Labels a triaged ticket by exact, case-sensitive, whitespace-normalized
/// occurrence of a macro core in the reply (message 2).
/// Throws PreconditionError when the ticket has fewer than two messages.
LabelOutcome label_ticket(const Ticket& ticket, const std::vector<Macro>& macros);

struct CorpusStats {
    std::size_t tickets_in = 0;
    std::size_t kept = 0;
    std::size_t labeled = 0;
    std::size_t ambiguous = 0;
    std::size_t unmatched = 0;
    std::size_t empty_question = 0;

    bool operator==(const CorpusStats&) const = default;
};

struct LabeledCorpus {
    std::vector<LabeledExample> examples;
    std::vector<std::string> classes;          // macro order, only classes with examples
    std::vector<std::size_t> class_counts;     // aligned with classes

    bool operator==(const LabeledCorpus&) const = default;
};

struct CorpusBuild {
    LabeledCorpus corpus;
    CorpusStats stats;
    std::vector<std::string> duplicate_ticket_ids;
    std::vector<std::string> ambiguous_ticket_ids;
    std::vector<Diagnostic> diagnostics;
};

/// Triage followed by labeling. Throws DataError when the macro cores do not
/// validate cleanly.
CorpusBuild build_corpus(const std::vector<Ticket>& tickets, const std::vector<Macro>& macros);

void write_labeled_corpus(std::ostream& out, const LabeledCorpus& corpus);
void write_labeled_corpus(const std::filesystem::path& path, const LabeledCorpus& corpus);

/// Reads the JSONL export back. Classes are listed in first-appearance order.
LabeledCorpus read_labeled_corpus(std::istream& in);
LabeledCorpus read_labeled_corpus(const std::filesystem::path& path);

std::string stats_json(const CorpusBuild& build);

}  // namespace mailclass::corpus
