// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace geoverify::dataset {

enum class QuestionType { AnswerBased, ProofBased };

// Eight named categories plus a catch-all for categories added by later
// dataset revisions.
enum class KnowledgeType {
    Triangle,
    SolidGeometry,
    Quadrilateral,
    Function,
    PositionalRelationship,
    Circle,
    GeometricFigures,
    IntersectingParallelLines,
    Other,
};

inline constexpr std::size_t kKnowledgeTypeCount = 9;

enum class Split { Train, Test };

std::string_view to_string(QuestionType t);
std::string_view to_string(KnowledgeType t);
std::string_view to_string(Split s);
std::optional<QuestionType> parse_question_type(std::string_view s);
std::optional<KnowledgeType> parse_knowledge_type(std::string_view s);
std::optional<Split> parse_split(std::string_view s);

struct GeometryProblem {
    std::string id;
    std::string prompt_context;
    std::string question_text;
    std::optional<std::string> image_ref;
    std::optional<std::string> tikz_source;
    QuestionType question_type = QuestionType::AnswerBased;
    KnowledgeType knowledge_type = KnowledgeType::Other;
    bool requires_aux = false;
    std::string reference_answer;
    std::string reference_proof;
    std::string reference_constructions;
    Split split = Split::Train;

    /// Reference answer for answer-based problems, reference proof otherwise.
    const std::string& reference_text() const {
        return question_type == QuestionType::AnswerBased ? reference_answer : reference_proof;
    }

    bool operator==(const GeometryProblem&) const = default;
};

struct MultiPartProblem {
    struct Part {
        std::string question_text;
        std::string reference;  // answer or proof, depending on question_type
        bool depends_on_previous = false;
        std::string reference_constructions;
    };

    std::string id;
    std::string shared_prompt;
    QuestionType question_type = QuestionType::AnswerBased;
    KnowledgeType knowledge_type = KnowledgeType::Other;
    Split split = Split::Train;
    std::optional<std::string> image_ref;
    std::vector<Part> parts;
};

struct LengthStats {
    std::size_t count = 0;
    std::size_t min = 0;
    std::size_t max = 0;
    double mean = 0.0;

    void add(std::size_t tokens);
    bool operator==(const LengthStats&) const = default;

private:
    double sum_ = 0.0;
};

/// Counts keyed by (question type, requires_aux, knowledge type, split), plus
/// token length summaries for question, answer and construction code split by
/// the auxiliary-line column.
struct DatasetStats {
    struct Key {
        QuestionType question_type;
        bool requires_aux;
        KnowledgeType knowledge_type;
        Split split;
        auto operator<=>(const Key&) const = default;
    };

    std::map<Key, std::size_t> counts;
    std::size_t total = 0;
    bool empty_input = false;

    // Index 0: no auxiliary line, index 1: auxiliary line.
    std::array<LengthStats, 2> question_tokens;
    std::array<LengthStats, 2> answer_tokens;
    std::array<LengthStats, 2> code_tokens;

    std::size_t count_where(std::optional<QuestionType> qt, std::optional<bool> aux,
                            std::optional<KnowledgeType> kt, std::optional<Split> split) const;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

std::size_t count_tokens(std::string_view text);

/// Throws DatasetError naming the offending field.
void validate(const GeometryProblem& problem, std::size_t line = 0);

GeometryProblem problem_from_json(const nlohmann::json& record, std::size_t line = 0);
nlohmann::json problem_to_json(const GeometryProblem& problem);

std::vector<GeometryProblem> parse_dataset(std::istream& in);
std::vector<GeometryProblem> load_dataset(const std::filesystem::path& path);
void write_dataset(std::ostream& out, const std::vector<GeometryProblem>& problems);
void save_dataset(const std::filesystem::path& path, const std::vector<GeometryProblem>& problems);

MultiPartProblem multipart_from_json(const nlohmann::json& record, std::size_t line = 0);
std::vector<MultiPartProblem> load_multipart(const std::filesystem::path& path);

std::vector<GeometryProblem> split_multipart(const MultiPartProblem& problem);

DatasetStats compute_stats(const std::vector<GeometryProblem>& problems);

const GeometryProblem* find_problem(const std::vector<GeometryProblem>& problems, std::string_view id);

} // namespace geoverify::dataset
