// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/scoring.hpp"

#include <json.hpp>

#include "geoverify/error.hpp"

namespace geoverify::reward {

using nlohmann::json;

namespace {

std::string_view to_string(AccuracySource s) {
    switch (s) {
    case AccuracySource::AnswerGrader: return "answer_grader";
    case AccuracySource::AnswerJudge: return "answer_judge";
    case AccuracySource::ProofJudge: return "proof_judge";
    }
    return "?";
}

} // namespace

json ScoredSolution::to_json() const {
    json j;
    j["format_ok"] = parsed.format_ok;
    if (!parsed.format_ok) j["format_diagnostic"] = parsed.diagnostic;
    j["constructions"] = candidate_constructions.set.render();
    if (candidate_constructions.parse_failed) j["constructions_error"] = candidate_constructions.error;
    j["acc_source"] = to_string(acc_source);
    if (candidate_answer) j["candidate_answer"] = candidate_answer->describe();
    if (reference_answer) j["reference_answer"] = reference_answer->describe();
    if (verdict) j["verdict"] = verdict->to_json();
    j["reward"] = reward.to_json();
    return j;
}

Scorer::Accuracy Scorer::evaluate(const dataset::GeometryProblem& problem,
                                  const solution::ParsedSolution& parsed) const {
    if (problem.question_type == dataset::QuestionType::ProofBased) {
        if (!judge_) throw ValidationError("proof-based problem '" + problem.id + "' needs a judge");
        auto verdict = judge_->judge_proof(problem, parsed);
        return {verdict.score, AccuracySource::ProofJudge, {}, {}, verdict};
    }
    auto reference = answer::parse_answer(problem.reference_answer);
    if (!parsed.final_answer) return {0.0, AccuracySource::AnswerGrader, {}, reference, {}};
    auto candidate = answer::parse_answer(*parsed.final_answer);
    int grade = answer::grade_answer(candidate, reference);
    if (grade == 0 && judge_ && answer::needs_judge(candidate, reference))
        return {static_cast<double>(judge_->judge_answer(problem, parsed)), AccuracySource::AnswerJudge, candidate,
                reference, {}};
    return {static_cast<double>(grade), AccuracySource::AnswerGrader, candidate, reference, {}};
}

double Scorer::accuracy(const dataset::GeometryProblem& problem, const solution::ParsedSolution& parsed) const {
    return evaluate(problem, parsed).acc;
}

int Scorer::aux_reward(const dataset::GeometryProblem& problem, const solution::ParsedSolution& parsed) const {
    auto candidate = construction::parse_constructions_lenient(parsed.constructions_source);
    construction::ConstructionSet reference;
    if (problem.requires_aux) reference = construction::parse_constructions(problem.reference_constructions);
    return construction::match_aux(candidate.set, reference, config_.match);
}

ScoredSolution Scorer::score(const dataset::GeometryProblem& problem, std::string_view raw) const {
    ScoredSolution out;
    out.parsed = solution::parse_solution(raw, config_.tags);
    out.candidate_constructions = construction::parse_constructions_lenient(out.parsed.constructions_source);

    construction::ConstructionSet reference;
    if (problem.requires_aux) reference = construction::parse_constructions(problem.reference_constructions);
    int f_aux = construction::match_aux(out.candidate_constructions.set, reference, config_.match);
    int f_fmt = solution::format_reward(out.parsed);

    auto acc = evaluate(problem, out.parsed);
    out.acc_source = acc.source;
    out.candidate_answer = std::move(acc.candidate);
    out.reference_answer = std::move(acc.reference);
    out.verdict = std::move(acc.verdict);
    out.reward = composite_reward(problem, out.parsed, config_.weights, acc.acc, f_aux, f_fmt);
    return out;
}

} // namespace geoverify::reward
