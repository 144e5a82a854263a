#pragma once

#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "vera/chat.hpp"
#include "vera/common.hpp"

namespace vera {

enum class Stage {
    requirement_check,
    context_edit,
    statement_split,
    relevancy_judge,
    adherence_judge,
    adherence_edit,
    answer_generation,
    answer_grading,
};

inline constexpr Stage kAllStages[] = {
    Stage::requirement_check, Stage::context_edit,    Stage::statement_split,
    Stage::relevancy_judge,   Stage::adherence_judge, Stage::adherence_edit,
    Stage::answer_generation, Stage::answer_grading,
};

inline const char* stage_name(Stage stage) {
    switch (stage) {
        case Stage::requirement_check: return "requirement_check";
        case Stage::context_edit: return "context_edit";
        case Stage::statement_split: return "statement_split";
        case Stage::relevancy_judge: return "relevancy_judge";
        case Stage::adherence_judge: return "adherence_judge";
        case Stage::adherence_edit: return "adherence_edit";
        case Stage::answer_generation: return "answer_generation";
        case Stage::answer_grading: return "answer_grading";
    }
    return "unknown";
}

inline Stage stage_from_name(const std::string& name) {
    for (Stage s : kAllStages)
        if (name == stage_name(s)) return s;
    throw Error(ErrorKind::invalid_argument, "unknown stage name: " + name);
}

inline const char* stage_output_schema(Stage stage) {
    switch (stage) {
        case Stage::requirement_check: return "boolean";
        case Stage::context_edit: return "edited_text";
        case Stage::statement_split: return "statement_list";
        case Stage::relevancy_judge: return "statement_labels";
        case Stage::adherence_judge: return "statement_labels";
        case Stage::adherence_edit: return "edit_decision";
        case Stage::answer_generation: return "free_text";
        case Stage::answer_grading: return "boolean";
    }
    return "unknown";
}

inline std::vector<std::string> required_placeholders(Stage stage) {
    switch (stage) {
        case Stage::requirement_check: return {"question"};
        case Stage::context_edit: return {"question", "context"};
        case Stage::statement_split: return {"response"};
        case Stage::relevancy_judge: return {"question", "statements"};
        case Stage::adherence_judge: return {"context", "statements"};
        case Stage::adherence_edit: return {"context", "statement"};
        case Stage::answer_generation: return {"question", "context_block"};
        case Stage::answer_grading: return {"question", "gold_answers", "response"};
    }
    return {};
}

// ============================================================================
// Templates and rendering
// ============================================================================

struct FewShotExample {
    std::map<std::string, std::string> inputs;
    std::string output;
};

struct PromptTemplate {
    Stage stage = Stage::requirement_check;
    std::string template_text;  // placeholders written {name}
    std::vector<FewShotExample> few_shot_examples;
    std::string output_schema;
};

inline std::set<std::string> placeholders_in(const std::string& text) {
    static const std::regex re(R"(\{([A-Za-z_][A-Za-z0-9_]*)\})");
    std::set<std::string> names;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
         it != std::sregex_iterator(); ++it)
        names.insert((*it)[1].str());
    return names;
}

inline std::string substitute(const std::string& template_text,
                              const std::map<std::string, std::string>& bindings) {
    static const std::regex re(R"(\{([A-Za-z_][A-Za-z0-9_]*)\})");
    std::string out;
    out.reserve(template_text.size());
    std::size_t last = 0;
    for (auto it = std::sregex_iterator(template_text.begin(), template_text.end(), re);
         it != std::sregex_iterator(); ++it) {
        const auto& match = *it;
        const std::string name = match[1].str();
        auto binding = bindings.find(name);
        if (binding == bindings.end())
            throw Error(ErrorKind::render, "missing binding for placeholder '" + name + "'");
        out.append(template_text, last, static_cast<std::size_t>(match.position()) - last);
        out += binding->second;
        last = static_cast<std::size_t>(match.position() + match.length());
    }
    out.append(template_text, last, std::string::npos);
    return out;
}

/// Few-shot rendering: each shipped example becomes a user/assistant pair,
/// then the live instance is appended as the final user message.
inline std::vector<ChatMessage> render(const PromptTemplate& tmpl,
                                       const std::map<std::string, std::string>& bindings) {
    std::vector<ChatMessage> messages;
    for (const auto& ex : tmpl.few_shot_examples) {
        messages.push_back({"user", substitute(tmpl.template_text, ex.inputs)});
        messages.push_back({"assistant", ex.output});
    }
    messages.push_back({"user", substitute(tmpl.template_text, bindings)});
    return messages;
}

// ============================================================================
// Structured verdicts
// ============================================================================

struct StatementLabel {
    int index = 0;
    std::string label;
    std::string rationale;

    bool operator==(const StatementLabel&) const = default;
};

struct EditDecision {
    enum class Action { rewrite, remove };
    Action action = Action::remove;
    std::string rewritten_text;

    bool operator==(const EditDecision&) const = default;
};

using VerdictPayload = std::variant<bool, std::string, std::vector<std::string>,
                                    std::vector<StatementLabel>, EditDecision>;

struct ParsedVerdict {
    Stage stage = Stage::requirement_check;
    VerdictPayload payload;
    std::string raw_text;
    int parse_attempts = 1;
};

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

// Case-insensitive search for "LABEL:" at the start of a line; returns the
// offset just past the colon, or npos.
inline std::size_t find_label(const std::string& text, const std::string& label) {
    const std::string lowered = to_lower(text);
    const std::string needle = to_lower(label) + ":";
    std::size_t pos = 0;
    while ((pos = lowered.find(needle, pos)) != std::string::npos) {
        if (pos == 0 || lowered[pos - 1] == '\n')
            return pos + needle.size();
        ++pos;
    }
    return std::string::npos;
}

inline bool parse_yes_no(const std::string& raw, const std::string& label) {
    std::size_t after = find_label(raw, label);
    std::string value;
    if (after != std::string::npos) {
        std::size_t eol = raw.find('\n', after);
        value = to_lower(trim(raw.substr(after, eol == std::string::npos ? std::string::npos
                                                                         : eol - after)));
    } else {
        value = to_lower(trim(raw));
    }
    if (value == "yes" || value == "true") return true;
    if (value == "no" || value == "false") return false;
    throw Error(ErrorKind::parse, "expected '" + label + ": yes|no', got: " + trim(raw));
}

inline std::vector<StatementLabel> parse_statement_labels(
    const std::string& raw, const std::set<std::string>& allowed) {
    static const std::regex line_re(R"(^\s*STATEMENT\s+(\d+)\s*:\s*([A-Za-z_]+)\s*(?:\|\s*(.*))?$)",
                                    std::regex::icase);
    std::vector<StatementLabel> labels;
    for (const auto& line : split_lines(raw)) {
        std::smatch m;
        if (!std::regex_match(line, m, line_re)) continue;
        StatementLabel sl;
        sl.index = std::stoi(m[1].str());
        sl.label = to_lower(m[2].str());
        sl.rationale = m[3].matched ? trim(m[3].str()) : "";
        if (allowed.find(sl.label) == allowed.end())
            throw Error(ErrorKind::parse,
                        "label '" + sl.label + "' for statement " + m[1].str() +
                            " is outside the allowed set");
        labels.push_back(std::move(sl));
    }
    if (labels.empty())
        throw Error(ErrorKind::parse, "no 'STATEMENT <n>: <label>' lines found");
    return labels;
}

}  // namespace detail

/// Extract the structured block from a raw judge reply, tolerating prose
/// around it, and validate it against the stage schema.
inline ParsedVerdict parse_verdict(Stage stage, const std::string& raw) {
    if (raw.empty()) throw Error(ErrorKind::parse, "empty judge output");
    ParsedVerdict verdict;
    verdict.stage = stage;
    verdict.raw_text = raw;
    switch (stage) {
        case Stage::requirement_check:
            verdict.payload = detail::parse_yes_no(raw, "ANSWER");
            break;
        case Stage::context_edit: {
            std::size_t after = detail::find_label(raw, "EDITED_CONTEXT");
            if (after == std::string::npos)
                throw Error(ErrorKind::parse, "missing EDITED_CONTEXT block");
            std::string text = trim(raw.substr(after));
            if (text == "NONE") text.clear();
            verdict.payload = std::move(text);
            break;
        }
        case Stage::statement_split: {
            static const std::regex item_re(R"(^\s*(\d+)[.)]\s+(.*\S)\s*$)");
            std::vector<std::string> statements;
            for (const auto& line : detail::split_lines(raw)) {
                std::smatch m;
                if (std::regex_match(line, m, item_re)) statements.push_back(m[2].str());
            }
            if (statements.empty())
                throw Error(ErrorKind::parse, "no numbered statements found");
            verdict.payload = std::move(statements);
            break;
        }
        case Stage::relevancy_judge:
            verdict.payload = detail::parse_statement_labels(raw, {"relevant", "irrelevant"});
            break;
        case Stage::adherence_judge:
            verdict.payload = detail::parse_statement_labels(
                raw, {"directly_derivable", "logically_inferable", "not_grounded"});
            break;
        case Stage::adherence_edit: {
            std::size_t after = detail::find_label(raw, "ACTION");
            if (after == std::string::npos) throw Error(ErrorKind::parse, "missing ACTION line");
            std::size_t eol = raw.find('\n', after);
            std::string action = to_lower(
                trim(raw.substr(after, eol == std::string::npos ? std::string::npos : eol - after)));
            EditDecision decision;
            if (action == "remove") {
                decision.action = EditDecision::Action::remove;
            } else if (action == "rewrite") {
                decision.action = EditDecision::Action::rewrite;
                std::size_t rewrite_at = detail::find_label(raw, "REWRITE");
                if (rewrite_at == std::string::npos)
                    throw Error(ErrorKind::parse, "ACTION rewrite without a REWRITE line");
                decision.rewritten_text = trim(raw.substr(rewrite_at));
                if (decision.rewritten_text.empty())
                    throw Error(ErrorKind::parse, "REWRITE line carries no text");
            } else {
                throw Error(ErrorKind::parse, "ACTION must be rewrite or remove, got '" + action + "'");
            }
            verdict.payload = std::move(decision);
            break;
        }
        case Stage::answer_generation:
            verdict.payload = rtrim(raw);
            break;
        case Stage::answer_grading: {
            std::size_t after = detail::find_label(raw, "GRADE");
            std::string value;
            if (after != std::string::npos) {
                std::size_t eol = raw.find('\n', after);
                std::string line = raw.substr(after, eol == std::string::npos ? std::string::npos
                                                                              : eol - after);
                value = to_lower(trim(line.substr(0, line.find('|'))));
            } else {
                value = to_lower(trim(raw));
            }
            if (value == "correct") verdict.payload = true;
            else if (value == "incorrect") verdict.payload = false;
            else throw Error(ErrorKind::parse, "expected 'GRADE: correct|incorrect', got: " + trim(raw));
            break;
        }
    }
    return verdict;
}

/// Canonical surface form of a payload; parse_verdict() of the result
/// yields an equal payload.
inline std::string payload_to_canonical_text(Stage stage, const VerdictPayload& payload) {
    switch (stage) {
        case Stage::requirement_check:
            return std::get<bool>(payload) ? "ANSWER: yes" : "ANSWER: no";
        case Stage::answer_grading:
            return std::get<bool>(payload) ? "GRADE: correct" : "GRADE: incorrect";
        case Stage::context_edit: {
            const auto& text = std::get<std::string>(payload);
            return "EDITED_CONTEXT:\n" + (text.empty() ? std::string("NONE") : text);
        }
        case Stage::answer_generation:
            return std::get<std::string>(payload);
        case Stage::statement_split: {
            std::string out;
            const auto& statements = std::get<std::vector<std::string>>(payload);
            for (std::size_t i = 0; i < statements.size(); ++i)
                out += std::to_string(i + 1) + ". " + statements[i] + "\n";
            return rtrim(out);
        }
        case Stage::relevancy_judge:
        case Stage::adherence_judge: {
            std::string out;
            for (const auto& sl : std::get<std::vector<StatementLabel>>(payload)) {
                out += "STATEMENT " + std::to_string(sl.index) + ": " + sl.label;
                if (!sl.rationale.empty()) out += " | " + sl.rationale;
                out += "\n";
            }
            return rtrim(out);
        }
        case Stage::adherence_edit: {
            const auto& d = std::get<EditDecision>(payload);
            if (d.action == EditDecision::Action::remove) return "ACTION: remove";
            return "ACTION: rewrite\nREWRITE: " + d.rewritten_text;
        }
    }
    return "";
}

// ============================================================================
// Template set: defaults, file i/o, hashing
// ============================================================================

inline ojson template_to_json(const PromptTemplate& tmpl) {
    ojson j;
    j["stage"] = stage_name(tmpl.stage);
    j["output_schema"] = tmpl.output_schema;
    j["template"] = tmpl.template_text;
    ojson examples = ojson::array();
    for (const auto& ex : tmpl.few_shot_examples) {
        ojson inputs;
        for (const auto& [k, v] : ex.inputs) inputs[k] = v;
        examples.push_back({{"inputs", std::move(inputs)}, {"output", ex.output}});
    }
    j["examples"] = std::move(examples);
    return j;
}

inline PromptTemplate template_from_json(const ojson& j) {
    PromptTemplate tmpl;
    tmpl.stage = stage_from_name(j.at("stage").get<std::string>());
    tmpl.output_schema = j.at("output_schema").get<std::string>();
    tmpl.template_text = j.at("template").get<std::string>();
    for (const auto& ex : j.at("examples")) {
        FewShotExample fse;
        for (const auto& [k, v] : ex.at("inputs").items()) fse.inputs[k] = v.get<std::string>();
        fse.output = ex.at("output").get<std::string>();
        tmpl.few_shot_examples.push_back(std::move(fse));
    }
    return tmpl;
}

inline void validate_template(const PromptTemplate& tmpl) {
    const std::string name = stage_name(tmpl.stage);
    if (tmpl.output_schema != stage_output_schema(tmpl.stage))
        throw Error(ErrorKind::invalid_config,
                    "template " + name + ": output_schema '" + tmpl.output_schema +
                        "' does not match expected '" + stage_output_schema(tmpl.stage) + "'");
    const auto present = placeholders_in(tmpl.template_text);
    for (const auto& required : required_placeholders(tmpl.stage))
        if (present.find(required) == present.end())
            throw Error(ErrorKind::invalid_config,
                        "template " + name + ": missing required placeholder {" + required + "}");
    for (std::size_t i = 0; i < tmpl.few_shot_examples.size(); ++i) {
        const auto& ex = tmpl.few_shot_examples[i];
        try {
            substitute(tmpl.template_text, ex.inputs);
            if (tmpl.stage != Stage::answer_generation) parse_verdict(tmpl.stage, ex.output);
        } catch (const Error& e) {
            throw Error(ErrorKind::invalid_config, "template " + name + ": example " +
                                                       std::to_string(i + 1) + " invalid: " +
                                                       e.what());
        }
    }
}

class TemplateSet {
public:
    const PromptTemplate& at(Stage stage) const {
        auto it = templates_.find(stage);
        if (it == templates_.end())
            throw Error(ErrorKind::invalid_config,
                        std::string("no template loaded for stage ") + stage_name(stage));
        return it->second;
    }

    void put(PromptTemplate tmpl) {
        validate_template(tmpl);
        templates_[tmpl.stage] = std::move(tmpl);
    }

    /// Stable hash of the whole set; recorded in every report so results
    /// are attributable to prompt versions.
    std::string set_hash() const {
        std::uint64_t h = fnv1a64("template-set");
        for (Stage stage : kAllStages) {
            auto it = templates_.find(stage);
            if (it == templates_.end()) continue;
            h = fnv1a64(stage_name(stage), h);
            h = fnv1a64(template_to_json(it->second).dump(), h);
        }
        return to_hex16(h);
    }

    void write_dir(const std::string& dir) const {
        for (Stage stage : kAllStages) {
            auto it = templates_.find(stage);
            if (it == templates_.end()) continue;
            write_text_file(dir + "/" + stage_name(stage) + ".json",
                            template_to_json(it->second).dump(2) + "\n");
        }
    }

    /// Expects one <stage>.json per stage in dir.
    static TemplateSet load_dir(const std::string& dir) {
        TemplateSet set;
        for (Stage stage : kAllStages) {
            const std::string path = dir + "/" + std::string(stage_name(stage)) + ".json";
            ojson j;
            try {
                j = ojson::parse(read_text_file(path));
            } catch (const Error&) {
                throw;
            } catch (const std::exception& e) {
                throw Error(ErrorKind::invalid_config,
                            "template file " + path + ": " + e.what());
            }
            PromptTemplate tmpl = template_from_json(j);
            if (tmpl.stage != stage)
                throw Error(ErrorKind::invalid_config,
                            "template file " + path + " declares stage '" +
                                stage_name(tmpl.stage) + "'");
            set.put(std::move(tmpl));
        }
        return set;
    }

    static TemplateSet builtin_defaults();

private:
    std::map<Stage, PromptTemplate> templates_;
};

// ----------------------------------------------------------------------------
// Shipped defaults. The paper behind this design publishes no prompt text;
// these templates are artifact-authored and meant to be edited in place.
// ----------------------------------------------------------------------------

inline TemplateSet TemplateSet::builtin_defaults() {
    TemplateSet set;

    {
        PromptTemplate t;
        t.stage = Stage::requirement_check;
        t.output_schema = stage_output_schema(t.stage);
        t.template_text =
            "Decide whether answering the question requires retrieving external documents, or "
            "whether a capable assistant can answer it reliably without them. Questions about "
            "specific facts, figures, events, or document contents are knowledge-intensive and "
            "need retrieval; greetings, small talk, arithmetic, and generic writing requests do "
            "not.\n"
            "\n"
            "Question: {question}\n"
            "\n"
            "Respond with exactly two lines:\n"
            "ANSWER: yes or no\n"
            "RATIONALE: one sentence";
        t.few_shot_examples = {
            {{{"question", "In which year did the Apollo 11 mission land on the Moon?"}},
             "ANSWER: yes\nRATIONALE: The landing year is a specific historical fact that should "
             "be grounded in sources."},
            {{{"question", "Write a short haiku about rain."}},
             "ANSWER: no\nRATIONALE: A writing request needs no external knowledge."},
            {{{"question", "What is 2 + 2?"}},
             "ANSWER: no\nRATIONALE: Simple arithmetic is answerable without retrieval."},
        };
        set.put(std::move(t));
    }

    {
        PromptTemplate t;
        t.stage = Stage::context_edit;
        t.output_schema = stage_output_schema(t.stage);
        t.template_text =
            "You are given a question and retrieved context. Delete every part of the context "
            "that would not help answer the question, and keep the useful parts word for word, "
            "without changing any other details or style. Do not add, reorder, or paraphrase "
            "anything. If nothing in the context helps answer the question, output NONE.\n"
            "\n"
            "Question: {question}\n"
            "\n"
            "Context:\n"
            "{context}\n"
            "\n"
            "Respond with the line EDITED_CONTEXT: followed by the kept text, or NONE.";
        t.few_shot_examples = {
            {{{"question", "What is the boiling point of water at sea level?"},
              {"context",
               "Water boils at 100 degrees Celsius at sea level. The town hall was repainted in "
               "1998. Atmospheric pressure affects the boiling point."}},
             "EDITED_CONTEXT:\nWater boils at 100 degrees Celsius at sea level. Atmospheric "
             "pressure affects the boiling point."},
            {{{"question", "Who won the 1998 chess championship?"},
              {"context",
               "The bakery on Main Street sells rye bread. Its owner retired in 2003."}},
             "EDITED_CONTEXT:\nNONE"},
        };
        set.put(std::move(t));
    }

    {
        PromptTemplate t;
        t.stage = Stage::statement_split;
        t.output_schema = stage_output_schema(t.stage);
        t.template_text =
            "Split the response into atomic statements: minimal self-contained factual claims, "
            "each understandable on its own. Resolve pronouns so every statement stands alone. "
            "Output a numbered list with one statement per line and nothing else.\n"
            "\n"
            "Response: {response}\n"
            "\n"
            "Respond with:\n"
            "1. first statement\n"
            "2. second statement";
        t.few_shot_examples = {
            {{{"response", "Paris is the capital of France and has 2.1 million residents."}},
             "1. Paris is the capital of France.\n2. Paris has 2.1 million residents."},
            {{{"response", "The Nile is the longest river in Africa."}},
             "1. The Nile is the longest river in Africa."},
        };
        set.put(std::move(t));
    }

    {
        PromptTemplate t;
        t.stage = Stage::relevancy_judge;
        t.output_schema = stage_output_schema(t.stage);
        t.template_text =
            "For each numbered statement, judge whether it is relevant to answering the "
            "question. A statement is relevant when it contributes information that helps "
            "answer the question; tangential or decorative content is irrelevant.\n"
            "\n"
            "Question: {question}\n"
            "\n"
            "Statements:\n"
            "{statements}\n"
            "\n"
            "Respond with one line per statement:\n"
            "STATEMENT <number>: relevant or irrelevant | short rationale";
        t.few_shot_examples = {
            {{{"question", "What is the capital of France?"},
              {"statements",
               "1. Paris is the capital of France.\n2. French cuisine is world famous."}},
             "STATEMENT 1: relevant | Directly answers the question.\n"
             "STATEMENT 2: irrelevant | Cuisine does not help identify the capital."},
            {{{"question", "When was the bridge built?"},
              {"statements", "1. The bridge was completed in 1932."}},
             "STATEMENT 1: relevant | States the completion year."},
        };
        set.put(std::move(t));
    }

    {
        PromptTemplate t;
        t.stage = Stage::adherence_judge;
        t.output_schema = stage_output_schema(t.stage);
        t.template_text =
            "For each numbered statement, reason step by step about whether the context "
            "supports it, then classify it as one of:\n"
            "- directly_derivable: stated in the context\n"
            "- logically_inferable: not stated outright, but a sound inference from the context\n"
            "- not_grounded: unsupported by, or contradicting, the context\n"
            "Treat semantically equivalent phrasing as supported.\n"
            "\n"
            "Context:\n"
            "{context}\n"
            "\n"
            "Statements:\n"
            "{statements}\n"
            "\n"
            "After your reasoning, respond with one line per statement:\n"
            "STATEMENT <number>: directly_derivable or logically_inferable or not_grounded | "
            "short rationale";
        t.few_shot_examples = {
            {{{"context",
               "The plant flowers in June. Its seeds need six weeks to ripen after flowering."},
              {"statements",
               "1. The plant flowers in June.\n2. Seeds ripen around late July.\n3. The plant "
               "is native to Chile."}},
             "STATEMENT 1: directly_derivable | Stated verbatim in the context.\n"
             "STATEMENT 2: logically_inferable | June flowering plus six weeks of ripening "
             "lands in late July.\n"
             "STATEMENT 3: not_grounded | The context says nothing about origin."},
        };
        set.put(std::move(t));
    }

    {
        PromptTemplate t;
        t.stage = Stage::adherence_edit;
        t.output_schema = stage_output_schema(t.stage);
        t.template_text =
            "The statement below is not grounded in the context. Decide whether the context "
            "supports a corrected version of it. If it does, rewrite the statement so it is "
            "fully supported while preserving its style; if it does not, remove it.\n"
            "\n"
            "Context:\n"
            "{context}\n"
            "\n"
            "Statement: {statement}\n"
            "\n"
            "Respond with either:\n"
            "ACTION: rewrite\n"
            "REWRITE: the corrected statement\n"
            "or:\n"
            "ACTION: remove";
        t.few_shot_examples = {
            {{{"context", "The tower is 324 metres tall."},
              {"statement", "The tower is 300 metres tall."}},
             "ACTION: rewrite\nREWRITE: The tower is 324 metres tall."},
            {{{"context", "The tower is 324 metres tall."},
              {"statement", "The tower was designed by a famous sculptor."}},
             "ACTION: remove"},
        };
        set.put(std::move(t));
    }

    {
        PromptTemplate t;
        t.stage = Stage::answer_generation;
        t.output_schema = stage_output_schema(t.stage);
        t.template_text =
            "Answer the question concisely and accurately.{context_block}\n"
            "\n"
            "Question: {question}";
        t.few_shot_examples = {
            {{{"question", "What metal is liquid at room temperature?"},
              {"context_block",
               "\n\nUse only the following context to answer:\nMercury is the only metal that "
               "is liquid at room temperature."}},
             "Mercury is liquid at room temperature."},
            {{{"question", "Name the largest planet in the solar system."},
              {"context_block", ""}},
             "Jupiter is the largest planet in the solar system."},
        };
        set.put(std::move(t));
    }

    {
        PromptTemplate t;
        t.stage = Stage::answer_grading;
        t.output_schema = stage_output_schema(t.stage);
        t.template_text =
            "Judge whether the response correctly answers the question, compared against the "
            "gold answers. Semantic equivalence counts as correct; contradicting or missing "
            "the answer counts as incorrect. If the gold answer set is empty the question is "
            "unanswerable: an explicit statement that it cannot be answered is correct, and "
            "any substantive answer is incorrect.\n"
            "\n"
            "Question: {question}\n"
            "Gold answers: {gold_answers}\n"
            "Response: {response}\n"
            "\n"
            "Respond with:\n"
            "GRADE: correct or incorrect | short rationale";
        t.few_shot_examples = {
            {{{"question", "What is the capital of France?"},
              {"gold_answers", "[\"Paris\"]"},
              {"response", "The capital of France is Paris."}},
             "GRADE: correct | Names the gold answer."},
            {{{"question", "What is the capital of France?"},
              {"gold_answers", "[\"Paris\"]"},
              {"response", "Lyon."}},
             "GRADE: incorrect | Contradicts the gold answer."},
        };
        set.put(std::move(t));
    }

    return set;
}

}  // namespace vera
