// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "geoverify/error.hpp"

namespace geoverify::dataset {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kKnowledgeTypeCount> kKnowledgeNames = {
    "Triangle", "SolidGeometry", "Quadrilateral", "Function", "PositionalRelationship",
    "Circle",   "GeometricFigures", "IntersectingParallelLines", "Other",
};

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string require_string(const json& record, const char* field, std::size_t line) {
    auto it = record.find(field);
    if (it == record.end()) throw DatasetError(line, field, "missing required field");
    if (!it->is_string()) throw DatasetError(line, field, "expected a string");
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& record, const char* field, std::size_t line) {
    auto it = record.find(field);
    if (it == record.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw DatasetError(line, field, "expected a string");
    return it->get<std::string>();
}

template <typename Enum, typename Parser>
Enum require_enum(const json& record, const char* field, std::size_t line, Parser parse) {
    auto text = require_string(record, field, line);
    auto value = parse(text);
    if (!value) throw DatasetError(line, field, "unknown value '" + text + "'");
    return *value;
}

bool require_bool(const json& record, const char* field, std::size_t line) {
    auto it = record.find(field);
    if (it == record.end()) throw DatasetError(line, field, "missing required field");
    if (!it->is_boolean()) throw DatasetError(line, field, "expected a boolean");
    return it->get<bool>();
}

const std::set<std::string> kProblemFields = {
    "id",           "prompt_context",   "question_text",    "image_ref",
    "tikz_source",  "question_type",    "knowledge_type",   "requires_aux",
    "reference_answer", "reference_proof", "reference_constructions", "split",
};

json parse_line(const std::string& line, std::size_t line_no) {
    try {
        return json::parse(line);
    } catch (const json::parse_error& e) {
        throw DatasetError(line_no, "", std::string("malformed record: ") + e.what());
    }
}

} // namespace

std::string_view to_string(QuestionType t) {
    return t == QuestionType::AnswerBased ? "AnswerBased" : "ProofBased";
}

std::string_view to_string(KnowledgeType t) { return kKnowledgeNames[static_cast<std::size_t>(t)]; }

std::string_view to_string(Split s) { return s == Split::Train ? "Train" : "Test"; }

std::optional<QuestionType> parse_question_type(std::string_view s) {
    if (s == "AnswerBased") return QuestionType::AnswerBased;
    if (s == "ProofBased") return QuestionType::ProofBased;
    return std::nullopt;
}

std::optional<KnowledgeType> parse_knowledge_type(std::string_view s) {
    for (std::size_t i = 0; i < kKnowledgeNames.size(); ++i)
        if (kKnowledgeNames[i] == s) return static_cast<KnowledgeType>(i);
    return std::nullopt;
}

std::optional<Split> parse_split(std::string_view s) {
    if (s == "Train") return Split::Train;
    if (s == "Test") return Split::Test;
    return std::nullopt;
}

void LengthStats::add(std::size_t tokens) {
    if (count == 0) {
        min = max = tokens;
    } else {
        min = std::min(min, tokens);
        max = std::max(max, tokens);
    }
    ++count;
    sum_ += static_cast<double>(tokens);
    mean = sum_ / static_cast<double>(count);
}

std::size_t count_tokens(std::string_view text) {
    std::size_t n = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++n;
        }
    }
    return n;
}

void validate(const GeometryProblem& p, std::size_t line) {
    if (p.id.empty()) throw DatasetError(line, "id", "must be nonempty");
    if (count_tokens(p.question_text) == 0)
        throw DatasetError(line, "question_text", "must contain at least one token");
    if (p.question_type == QuestionType::AnswerBased && is_blank(p.reference_answer))
        throw DatasetError(line, "reference_answer", "required for AnswerBased questions");
    if (p.question_type == QuestionType::ProofBased && is_blank(p.reference_proof))
        throw DatasetError(line, "reference_proof", "required for ProofBased questions");
    bool has_constructions = !is_blank(p.reference_constructions);
    if (p.requires_aux && !has_constructions)
        throw DatasetError(line, "reference_constructions", "required when requires_aux is true");
    if (!p.requires_aux && has_constructions)
        throw DatasetError(line, "reference_constructions", "must be empty when requires_aux is false");
}

GeometryProblem problem_from_json(const json& record, std::size_t line) {
    if (!record.is_object()) throw DatasetError(line, "", "record must be an object");
    for (const auto& [key, _] : record.items())
        if (!kProblemFields.contains(key)) throw DatasetError(line, key, "unknown field");

    GeometryProblem p;
    p.id = require_string(record, "id", line);
    p.prompt_context = optional_string(record, "prompt_context", line).value_or("");
    p.question_text = require_string(record, "question_text", line);
    p.image_ref = optional_string(record, "image_ref", line);
    p.tikz_source = optional_string(record, "tikz_source", line);
    p.question_type = require_enum<QuestionType>(record, "question_type", line, parse_question_type);
    p.knowledge_type = require_enum<KnowledgeType>(record, "knowledge_type", line, parse_knowledge_type);
    p.requires_aux = require_bool(record, "requires_aux", line);
    p.reference_answer = optional_string(record, "reference_answer", line).value_or("");
    p.reference_proof = optional_string(record, "reference_proof", line).value_or("");
    p.reference_constructions = optional_string(record, "reference_constructions", line).value_or("");
    p.split = require_enum<Split>(record, "split", line, parse_split);
    validate(p, line);
    return p;
}

json problem_to_json(const GeometryProblem& p) {
    json j;
    j["id"] = p.id;
    j["prompt_context"] = p.prompt_context;
    j["question_text"] = p.question_text;
    if (p.image_ref) j["image_ref"] = *p.image_ref;
    if (p.tikz_source) j["tikz_source"] = *p.tikz_source;
    j["question_type"] = to_string(p.question_type);
    j["knowledge_type"] = to_string(p.knowledge_type);
    j["requires_aux"] = p.requires_aux;
    if (!p.reference_answer.empty()) j["reference_answer"] = p.reference_answer;
    if (!p.reference_proof.empty()) j["reference_proof"] = p.reference_proof;
    if (!p.reference_constructions.empty()) j["reference_constructions"] = p.reference_constructions;
    j["split"] = to_string(p.split);
    return j;
}

std::vector<GeometryProblem> parse_dataset(std::istream& in) {
    std::vector<GeometryProblem> problems;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        auto problem = problem_from_json(parse_line(line, line_no), line_no);
        if (!seen.insert(problem.id).second)
            throw DatasetError(line_no, "id", "duplicate id '" + problem.id + "'");
        problems.push_back(std::move(problem));
    }
    return problems;
}

std::vector<GeometryProblem> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError(0, "", "cannot open dataset file " + path.string());
    return parse_dataset(in);
}

void write_dataset(std::ostream& out, const std::vector<GeometryProblem>& problems) {
    for (const auto& p : problems) out << problem_to_json(p).dump() << '\n';
}

void save_dataset(const std::filesystem::path& path, const std::vector<GeometryProblem>& problems) {
    std::ofstream out(path);
    if (!out) throw DatasetError(0, "", "cannot write dataset file " + path.string());
    write_dataset(out, problems);
}

MultiPartProblem multipart_from_json(const json& record, std::size_t line) {
    if (!record.is_object()) throw DatasetError(line, "", "record must be an object");
    MultiPartProblem mp;
    mp.id = require_string(record, "id", line);
    mp.shared_prompt = optional_string(record, "shared_prompt", line).value_or("");
    mp.question_type = require_enum<QuestionType>(record, "question_type", line, parse_question_type);
    mp.knowledge_type = require_enum<KnowledgeType>(record, "knowledge_type", line, parse_knowledge_type);
    mp.split = require_enum<Split>(record, "split", line, parse_split);
    mp.image_ref = optional_string(record, "image_ref", line);

    auto parts = record.find("parts");
    if (parts == record.end() || !parts->is_array() || parts->empty())
        throw DatasetError(line, "parts", "must be a nonempty array");
    for (const auto& part : *parts) {
        MultiPartProblem::Part p;
        p.question_text = require_string(part, "question_text", line);
        p.reference = require_string(part, "reference", line);
        auto dep = part.find("depends_on_previous");
        if (dep != part.end()) {
            if (!dep->is_boolean()) throw DatasetError(line, "depends_on_previous", "expected a boolean");
            p.depends_on_previous = dep->get<bool>();
        }
        p.reference_constructions = optional_string(part, "reference_constructions", line).value_or("");
        mp.parts.push_back(std::move(p));
    }
    return mp;
}

std::vector<MultiPartProblem> load_multipart(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError(0, "", "cannot open file " + path.string());
    std::vector<MultiPartProblem> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        out.push_back(multipart_from_json(parse_line(line, line_no), line_no));
    }
    return out;
}

std::vector<GeometryProblem> split_multipart(const MultiPartProblem& mp) {
    if (mp.parts.empty()) throw DatasetError(0, "parts", "multi-part problem '" + mp.id + "' has no parts");
    if (mp.parts.front().depends_on_previous)
        throw DatasetError(0, "depends_on_previous",
                           "part 1 of '" + mp.id + "' depends on a nonexistent earlier part");

    std::vector<GeometryProblem> out;
    out.reserve(mp.parts.size());
    for (std::size_t i = 0; i < mp.parts.size(); ++i) {
        const auto& part = mp.parts[i];
        GeometryProblem p;
        p.id = mp.id + "_" + std::to_string(i + 1);
        p.question_text = mp.shared_prompt.empty() ? part.question_text
                                                   : mp.shared_prompt + "\n" + part.question_text;
        if (part.depends_on_previous) {
            std::string context;
            for (std::size_t j = 0; j < i; ++j) {
                if (!context.empty()) context += '\n';
                context += "Conclusion of part " + std::to_string(j + 1) + ": " + mp.parts[j].reference;
            }
            p.prompt_context = std::move(context);
        }
        p.image_ref = mp.image_ref;
        p.question_type = mp.question_type;
        p.knowledge_type = mp.knowledge_type;
        p.split = mp.split;
        if (mp.question_type == QuestionType::AnswerBased)
            p.reference_answer = part.reference;
        else
            p.reference_proof = part.reference;
        p.reference_constructions = part.reference_constructions;
        p.requires_aux = !is_blank(part.reference_constructions);
        validate(p);
        out.push_back(std::move(p));
    }
    return out;
}

std::size_t DatasetStats::count_where(std::optional<QuestionType> qt, std::optional<bool> aux,
                                      std::optional<KnowledgeType> kt, std::optional<Split> split) const {
    std::size_t n = 0;
    for (const auto& [key, count] : counts) {
        if (qt && key.question_type != *qt) continue;
        if (aux && key.requires_aux != *aux) continue;
        if (kt && key.knowledge_type != *kt) continue;
        if (split && key.split != *split) continue;
        n += count;
    }
    return n;
}

DatasetStats compute_stats(const std::vector<GeometryProblem>& problems) {
    DatasetStats stats;
    stats.empty_input = problems.empty();
    for (const auto& p : problems) {
        ++stats.counts[{p.question_type, p.requires_aux, p.knowledge_type, p.split}];
        ++stats.total;
        std::size_t col = p.requires_aux ? 1 : 0;
        stats.question_tokens[col].add(count_tokens(p.question_text));
        stats.answer_tokens[col].add(count_tokens(p.reference_text()));
        stats.code_tokens[col].add(count_tokens(p.reference_constructions));
    }
    return stats;
}

namespace {

json length_json(const LengthStats& s) {
    return {{"count", s.count}, {"min", s.min}, {"max", s.max}, {"mean", s.mean}};
}

} // namespace

json DatasetStats::to_json() const {
    json j;
    j["total"] = total;
    j["empty_input"] = empty_input;
    json cells = json::array();
    for (const auto& [key, count] : counts) {
        cells.push_back({{"question_type", to_string(key.question_type)},
                         {"requires_aux", key.requires_aux},
                         {"knowledge_type", to_string(key.knowledge_type)},
                         {"split", to_string(key.split)},
                         {"count", count}});
    }
    j["counts"] = std::move(cells);
    const char* columns[] = {"no_aux", "aux"};
    for (std::size_t col = 0; col < 2; ++col) {
        j["tokens"][columns[col]] = {{"question", length_json(question_tokens[col])},
                                     {"answer", length_json(answer_tokens[col])},
                                     {"code", length_json(code_tokens[col])}};
    }
    return j;
}

std::string DatasetStats::to_text() const {
    std::ostringstream out;
    if (empty_input) out << "warning: empty dataset\n";
    auto row = [&](std::string_view label, std::size_t aux, std::size_t no_aux) {
        out << std::left << std::setw(32) << label << std::right << std::setw(10) << aux
            << std::setw(14) << no_aux << '\n';
    };
    out << std::left << std::setw(32) << "Statistic" << std::right << std::setw(10) << "Aux"
        << std::setw(14) << "No aux" << '\n';
    row("Total samples", count_where({}, true, {}, {}), count_where({}, false, {}, {}));
    row("Training samples", count_where({}, true, {}, Split::Train), count_where({}, false, {}, Split::Train));
    row("Testing samples", count_where({}, true, {}, Split::Test), count_where({}, false, {}, Split::Test));
    row("Answer-based questions", count_where(QuestionType::AnswerBased, true, {}, {}),
        count_where(QuestionType::AnswerBased, false, {}, {}));
    row("Proof-based questions", count_where(QuestionType::ProofBased, true, {}, {}),
        count_where(QuestionType::ProofBased, false, {}, {}));
    for (std::size_t i = 0; i < kKnowledgeTypeCount; ++i) {
        auto kt = static_cast<KnowledgeType>(i);
        row(to_string(kt), count_where({}, true, kt, {}), count_where({}, false, kt, {}));
    }
    auto lengths = [&](std::string_view title, const std::array<LengthStats, 2>& s) {
        out << title << " length (tokens)\n";
        row("  Minimum", s[1].min, s[0].min);
        row("  Maximum", s[1].max, s[0].max);
        out << std::left << std::setw(32) << "  Average" << std::right << std::fixed << std::setprecision(2)
            << std::setw(10) << s[1].mean << std::setw(14) << s[0].mean << '\n';
    };
    lengths("Question", question_tokens);
    lengths("Answer", answer_tokens);
    lengths("Code", code_tokens);
    return out.str();
}

const GeometryProblem* find_problem(const std::vector<GeometryProblem>& problems, std::string_view id) {
    auto it = std::find_if(problems.begin(), problems.end(), [&](const auto& p) { return p.id == id; });
    return it == problems.end() ? nullptr : &*it;
}

} // namespace geoverify::dataset
