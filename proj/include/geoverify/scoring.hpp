// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "geoverify/answer.hpp"
#include "geoverify/construction.hpp"
#include "geoverify/dataset.hpp"
#include "geoverify/judge.hpp"
#include "geoverify/reward.hpp"
#include "geoverify/solution.hpp"

namespace geoverify::reward {

struct ScoringConfig {
    RewardWeights weights;
    solution::FormatTags tags;
    construction::MatchOptions match;
};

enum class AccuracySource { AnswerGrader, AnswerJudge, ProofJudge };

struct ScoredSolution {
    solution::ParsedSolution parsed;
    construction::LenientParse candidate_constructions;
    AccuracySource acc_source = AccuracySource::AnswerGrader;
    std::optional<answer::AnswerValue> candidate_answer;
    std::optional<answer::AnswerValue> reference_answer;
    std::optional<judge::ProofVerdict> verdict;
    RewardBreakdown reward;

    nlohmann::json to_json() const;
};

/// Runs the full verification pipeline for one raw model output: template
/// check, construction matching, answer grading (or proof judging) and the
/// weighted combination.
class Scorer {
public:
    /// `judge` may be null when only answer-based problems are scored; a
    /// proof-based problem then raises ValidationError.
    Scorer(ScoringConfig config, const judge::Gateway* judge) : config_(std::move(config)), judge_(judge) {}

    ScoredSolution score(const dataset::GeometryProblem& problem, std::string_view raw) const;

    /// acc in [0, 1] only.
    double accuracy(const dataset::GeometryProblem& problem, const solution::ParsedSolution& parsed) const;

    int aux_reward(const dataset::GeometryProblem& problem, const solution::ParsedSolution& parsed) const;

    const ScoringConfig& config() const { return config_; }

private:
    struct Accuracy {
        double acc;
        AccuracySource source;
        std::optional<answer::AnswerValue> candidate;
        std::optional<answer::AnswerValue> reference;
        std::optional<judge::ProofVerdict> verdict;
    };
    Accuracy evaluate(const dataset::GeometryProblem& problem, const solution::ParsedSolution& parsed) const;

    ScoringConfig config_;
    const judge::Gateway* judge_;
};

} // namespace geoverify::reward
