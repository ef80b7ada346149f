// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geoverify/dataset.hpp"
#include "geoverify/judge.hpp"
#include "geoverify/scoring.hpp"

namespace geoverify::evaluation {

/// One model output to grade.
struct SolutionEntry {
    std::string problem_id;
    std::string output;
};

/// One JSON object per line: {"problem_id": ..., "output": ...}.
std::vector<SolutionEntry> read_solutions(std::istream& in);
std::vector<SolutionEntry> load_solutions(const std::filesystem::path& path);
void write_solutions(std::ostream& out, const std::vector<SolutionEntry>& entries);

struct Cell {
    std::size_t count = 0;
    double score_sum = 0.0;  // number correct for answers, summed rubric scores for proofs

    /// Percentage, or nothing for an empty cell.
    std::optional<double> accuracy() const;
    void add(double score) {
        ++count;
        score_sum += score;
    }
};

struct EvalReport {
    /// Indexed [question type][requires_aux].
    std::array<std::array<Cell, 2>, 2> cells{};

    const Cell& cell(dataset::QuestionType type, bool aux) const {
        return cells[static_cast<std::size_t>(type)][aux ? 1 : 0];
    }
    Cell& cell(dataset::QuestionType type, bool aux) { return cells[static_cast<std::size_t>(type)][aux ? 1 : 0]; }
    Cell by_type(dataset::QuestionType type) const;
    Cell overall() const;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// Grades every entry: answer-based outputs through the answer grader with
/// judge fallback, proof-based outputs through the judge rubric. Throws
/// ValidationError for an id that is unknown or outside the test split.
EvalReport evaluate(const std::vector<dataset::GeometryProblem>& problems, const std::vector<SolutionEntry>& entries,
                    const reward::ScoringConfig& config, const judge::Gateway* gateway);

} // namespace geoverify::evaluation
