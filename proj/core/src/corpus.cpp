// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/corpus.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mailclass/error.hpp"
#include "mailclass/text.hpp"

namespace mailclass::corpus {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

// Thrown while decoding one ticket line; becomes a diagnostic.
struct LineError {
    std::string message;
};

const json& require(const json& object, const char* field) {
    const auto it = object.find(field);
    if (it == object.end()) throw LineError{std::string("missing field: ") + field};
    return *it;
}

std::string require_string(const json& object, const char* field) {
    const auto& value = require(object, field);
    if (!value.is_string()) throw LineError{std::string("field ") + field + " must be a string"};
    return value.get<std::string>();
}

EmailMessage parse_message(const json& value, std::size_t index) {
    if (!value.is_object()) throw LineError{"message " + std::to_string(index + 1) + " is not an object"};
    EmailMessage message;
    const auto& position = require(value, "position");
    if (!position.is_number_integer()) throw LineError{"field position must be an integer"};
    message.position = position.get<int>();
    const auto role = require_string(value, "author_role");
    if (role == "customer") {
        message.author_role = AuthorRole::Customer;
    } else if (role == "staff") {
        message.author_role = AuthorRole::Staff;
    } else {
        throw LineError{"unknown author_role: " + role};
    }
    message.subject = require_string(value, "subject");
    message.body = require_string(value, "body");
    return message;
}

Ticket parse_ticket(std::string_view line) {
    json doc;
    try {
        doc = json::parse(line);
    } catch (const json::parse_error& e) {
        throw LineError{std::string("invalid JSON: ") + e.what()};
    }
    if (!doc.is_object()) throw LineError{"expected a JSON object"};

    Ticket ticket;
    ticket.ticket_id = require_string(doc, "ticket_id");
    const auto& messages = require(doc, "messages");
    if (!messages.is_array()) throw LineError{"field messages must be an array"};
    if (messages.empty()) throw LineError{"field messages must not be empty"};
    for (std::size_t i = 0; i < messages.size(); ++i) {
        ticket.messages.push_back(parse_message(messages[i], i));
    }
    for (std::size_t i = 0; i < ticket.messages.size(); ++i) {
        if (ticket.messages[i].position != static_cast<int>(i) + 1) {
            throw LineError{"message positions must run 1..n in order"};
        }
    }
    return ticket;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

LabelOutcome label_normalized(const Ticket& ticket, const std::vector<Macro>& macros,
                              const std::vector<std::string>& normalized_cores) {
    if (ticket.messages.size() < 2) {
        throw PreconditionError("ticket " + ticket.ticket_id + " has fewer than two messages");
    }
    const std::string reply = text::normalize_whitespace(ticket.messages[1].body);

    LabelOutcome outcome;
    for (std::size_t i = 0; i < macros.size(); ++i) {
        const auto& core = normalized_cores[i];
        if (!core.empty() && reply.find(core) != std::string::npos) {
            outcome.matched_macros.push_back(macros[i].macro_id);
        }
    }
    if (outcome.matched_macros.empty()) {
        outcome.status = LabelStatus::Unmatched;
    } else if (outcome.matched_macros.size() > 1) {
        outcome.status = LabelStatus::Ambiguous;
    } else {
        auto question = question_text(ticket);
        if (text::normalize_whitespace(question).empty()) {
            outcome.status = LabelStatus::EmptyQuestion;
        } else {
            outcome.status = LabelStatus::Labeled;
            outcome.example = LabeledExample{ticket.ticket_id, outcome.matched_macros.front(), std::move(question)};
        }
    }
    return outcome;
}

std::vector<std::string> normalized_cores(const std::vector<Macro>& macros) {
    std::vector<std::string> cores;
    cores.reserve(macros.size());
    for (const auto& macro : macros) cores.push_back(text::normalize_whitespace(macro.core));
    return cores;
}

}  // namespace

IngestResult ingest_tickets(std::istream& in) {
    IngestResult result;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) continue;
        try {
            auto ticket = parse_ticket(line);
            if (ticket.messages.front().author_role != AuthorRole::Customer) {
                result.diagnostics.push_back(
                    {line_number, "ticket " + ticket.ticket_id + ": first message is not from a customer"});
            }
            result.tickets.push_back(std::move(ticket));
        } catch (const LineError& e) {
            result.diagnostics.push_back({line_number, e.message});
        }
    }
    if (in.bad()) throw IoError("error while reading ticket stream");
    return result;
}

IngestResult ingest_tickets(const std::filesystem::path& path) {
    auto in = open_input(path);
    return ingest_tickets(in);
}

std::vector<Macro> read_macros(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("macros: invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw DataError("macros: expected a JSON array");
    std::vector<Macro> macros;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        try {
            if (!item.is_object()) throw LineError{"not an object"};
            macros.push_back(Macro{require_string(item, "macro_id"), require_string(item, "category"),
                                   require_string(item, "subject_label"), require_string(item, "template"),
                                   require_string(item, "core")});
        } catch (const LineError& e) {
            throw DataError("macros: entry " + std::to_string(i + 1) + ": " + e.message);
        }
    }
    return macros;
}

std::vector<Macro> read_macros(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_macros(in);
}

bool passes_triage(const Ticket& ticket) {
    return ticket.messages.size() == 2 || ticket.messages.size() == 3;
}

TriageResult triage_tickets(std::vector<Ticket> tickets) {
    TriageResult result;
    for (auto& ticket : tickets) {
        if (passes_triage(ticket)) {
            result.kept.push_back(std::move(ticket));
        } else {
            ++result.dropped_count;
        }
    }
    return result;
}

std::string CoreValidationReport::describe(const std::vector<Macro>& macros) const {
    std::ostringstream out;
    for (const auto& id : empty_cores) out << "macro " << id << ": empty core\n";
    for (const auto& id : core_not_in_template) out << "macro " << id << ": core does not occur in its template\n";
    for (const auto& [i, j] : overlapping) {
        out << "macro " << macros.at(i).macro_id << ": core occurs in macro " << macros.at(j).macro_id << "\n";
    }
    return out.str();
}

CoreValidationReport validate_macro_cores(const std::vector<Macro>& macros) {
    CoreValidationReport report;
    const auto cores = normalized_cores(macros);
    std::vector<std::string> templates;
    templates.reserve(macros.size());
    for (const auto& macro : macros) templates.push_back(text::normalize_whitespace(macro.template_text));

    for (std::size_t i = 0; i < macros.size(); ++i) {
        if (cores[i].empty()) {
            report.empty_cores.push_back(macros[i].macro_id);
        } else if (templates[i].find(cores[i]) == std::string::npos) {
            report.core_not_in_template.push_back(macros[i].macro_id);
        }
    }
    for (std::size_t i = 0; i < macros.size(); ++i) {
        if (cores[i].empty()) continue;
        for (std::size_t j = 0; j < macros.size(); ++j) {
            if (i == j) continue;
            if (cores[j].find(cores[i]) != std::string::npos || templates[j].find(cores[i]) != std::string::npos) {
                report.overlapping.emplace_back(i, j);
            }
        }
    }
    return report;
}

std::string question_text(const Ticket& ticket) {
    const auto& first = ticket.messages.at(0);
    if (first.subject.empty()) return first.body;
    if (first.body.empty()) return first.subject;
    return first.subject + " " + first.body;
}

LabelOutcome label_ticket(const Ticket& ticket, const std::vector<Macro>& macros) {
    return label_normalized(ticket, macros, normalized_cores(macros));
}

CorpusBuild build_corpus(const std::vector<Ticket>& tickets, const std::vector<Macro>& macros) {
    const auto report = validate_macro_cores(macros);
    if (!report.clean()) throw DataError("macro cores failed validation:\n" + report.describe(macros));

    CorpusBuild build;
    build.stats.tickets_in = tickets.size();

    std::map<std::string, std::size_t> seen;
    for (const auto& ticket : tickets) ++seen[ticket.ticket_id];
    std::set<std::string> reported;
    for (const auto& ticket : tickets) {
        if (seen[ticket.ticket_id] > 1 && reported.insert(ticket.ticket_id).second) {
            build.duplicate_ticket_ids.push_back(ticket.ticket_id);
            build.diagnostics.push_back({0, "duplicate ticket id: " + ticket.ticket_id + " (" +
                                                std::to_string(seen[ticket.ticket_id]) + " occurrences)"});
        }
    }

    const auto cores = normalized_cores(macros);
    std::map<std::string, std::size_t> counts;
    for (const auto& ticket : tickets) {
        if (!passes_triage(ticket)) continue;
        ++build.stats.kept;
        auto outcome = label_normalized(ticket, macros, cores);
        switch (outcome.status) {
            case LabelStatus::Labeled:
                ++build.stats.labeled;
                ++counts[outcome.example->class_id];
                build.corpus.examples.push_back(std::move(*outcome.example));
                break;
            case LabelStatus::Ambiguous:
                ++build.stats.ambiguous;
                build.ambiguous_ticket_ids.push_back(ticket.ticket_id);
                build.diagnostics.push_back({0, "ambiguous ticket " + ticket.ticket_id + ": " +
                                                    text::join(outcome.matched_macros, ", ")});
                break;
            case LabelStatus::Unmatched:
                ++build.stats.unmatched;
                break;
            case LabelStatus::EmptyQuestion:
                ++build.stats.empty_question;
                build.diagnostics.push_back({0, "ticket " + ticket.ticket_id + ": empty question text"});
                break;
        }
    }
    for (const auto& macro : macros) {
        const auto it = counts.find(macro.macro_id);
        if (it != counts.end() && it->second > 0) {
            build.corpus.classes.push_back(macro.macro_id);
            build.corpus.class_counts.push_back(it->second);
            counts.erase(it);  // duplicate macro ids count once
        }
    }
    return build;
}

void write_labeled_corpus(std::ostream& out, const LabeledCorpus& corpus) {
    for (const auto& example : corpus.examples) {
        ordered_json line;
        line["ticket_id"] = example.ticket_id;
        line["class_id"] = example.class_id;
        line["text"] = example.text;
        out << line.dump() << '\n';
    }
    if (!out) throw IoError("error while writing labeled corpus");
}

void write_labeled_corpus(const std::filesystem::path& path, const LabeledCorpus& corpus) {
    auto out = open_output(path);
    write_labeled_corpus(out, corpus);
}

LabeledCorpus read_labeled_corpus(std::istream& in) {
    LabeledCorpus corpus;
    std::map<std::string, std::size_t> class_slot;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (is_blank(line)) continue;
        try {
            const auto doc = json::parse(line);
            if (!doc.is_object()) throw LineError{"expected a JSON object"};
            LabeledExample example{require_string(doc, "ticket_id"), require_string(doc, "class_id"),
                                   require_string(doc, "text")};
            auto [it, inserted] = class_slot.emplace(example.class_id, corpus.classes.size());
            if (inserted) {
                corpus.classes.push_back(example.class_id);
                corpus.class_counts.push_back(0);
            }
            ++corpus.class_counts[it->second];
            corpus.examples.push_back(std::move(example));
        } catch (const LineError& e) {
            throw DataError("labeled corpus line " + std::to_string(line_number) + ": " + e.message);
        } catch (const json::parse_error& e) {
            throw DataError("labeled corpus line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    return corpus;
}

LabeledCorpus read_labeled_corpus(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_labeled_corpus(in);
}

std::string stats_json(const CorpusBuild& build) {
    ordered_json doc;
    doc["tickets_in"] = build.stats.tickets_in;
    doc["kept"] = build.stats.kept;
    doc["dropped"] = build.stats.tickets_in - build.stats.kept;
    doc["labeled"] = build.stats.labeled;
    doc["ambiguous"] = build.stats.ambiguous;
    doc["unmatched"] = build.stats.unmatched;
    doc["empty_question"] = build.stats.empty_question;
    auto classes = ordered_json::array();
    for (std::size_t i = 0; i < build.corpus.classes.size(); ++i) {
        classes.push_back({{"class_id", build.corpus.classes[i]}, {"count", build.corpus.class_counts[i]}});
    }
    doc["classes"] = std::move(classes);
    doc["duplicate_ticket_ids"] = build.duplicate_ticket_ids;
    doc["ambiguous_ticket_ids"] = build.ambiguous_ticket_ids;
    return doc.dump(2);
}

}  // namespace mailclass::corpus
