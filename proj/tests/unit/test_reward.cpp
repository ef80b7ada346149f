// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "geoverify/error.hpp"
#include "geoverify/reward.hpp"
#include "geoverify/scoring.hpp"
#include "geoverify/solution.hpp"

using namespace geoverify;
using namespace geoverify::reward;

namespace {

dataset::GeometryProblem answer_problem(bool aux) {
    dataset::GeometryProblem p;
    p.id = aux ? "aux" : "plain";
    p.question_text = "Find BE.";
    p.reference_answer = "2√3";
    p.requires_aux = aux;
    if (aux) p.reference_constructions = "point O := intersect(line(A,C), line(B,D))\nconnect(O,E)";
    return p;
}

} // namespace

TEST_CASE("correctness reward examples") {
    CHECK(correctness_reward(1.0, true, 0.2) == 1.0);
    CHECK(correctness_reward(0.1, false, 0.2) == 0.0);
    CHECK(correctness_reward(0.6, true, 0.2) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_THROWS_AS(correctness_reward(1.1, true, 0.2), ValidationError);
    CHECK_THROWS_AS(correctness_reward(-0.1, true, 0.2), ValidationError);
    CHECK_THROWS_AS(correctness_reward(0.5, true, -0.1), ValidationError);
}

TEST_CASE("composite examples with default weights") {
    RewardWeights w;
    CHECK(w.alpha == 0.6);
    CHECK(w.beta == 0.3);
    CHECK(w.gamma == 0.1);
    CHECK(w.lambda == 0.2);
    auto p = answer_problem(false);
    solution::ParsedSolution parsed;

    auto all = composite_reward(p, parsed, w, 1, 1, 1);
    CHECK(all.f_corr == 1.0);
    CHECK(all.total == doctest::Approx(1.0).epsilon(1e-15));

    auto no_aux = composite_reward(p, parsed, w, 1, 0, 1);
    CHECK(no_aux.f_corr == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(no_aux.total == doctest::Approx(0.58).epsilon(1e-15));

    CHECK(composite_reward(p, parsed, w, 0, 0, 0).total == 0.0);
    CHECK_THROWS_AS(composite_reward(p, parsed, w, 1, 2, 1), ValidationError);
    CHECK_THROWS_AS(composite_reward(p, parsed, w, 1, 1, -1), ValidationError);
}

TEST_CASE("weight validation and normalization") {
    CHECK_THROWS_AS((RewardWeights{0, 0, 0, 0.2}.validate()), ValidationError);
    CHECK_THROWS_AS((RewardWeights{-1, 1, 1, 0.2}.validate()), ValidationError);
    CHECK_THROWS_AS((RewardWeights{1, 1, 1, -0.2}.validate()), ValidationError);
    CHECK_THROWS_AS((RewardWeights{std::nan(""), 1, 1, 0.2}.validate()), ValidationError);
    auto n = RewardWeights{6, 3, 1, 0.5}.normalized();
    CHECK(n.sum() == doctest::Approx(1.0));
    CHECK(n.alpha == doctest::Approx(0.6));
    CHECK(n.lambda == 0.5);
}

TEST_CASE("total stays within [0, alpha + beta + gamma]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    auto p = answer_problem(false);
    solution::ParsedSolution parsed;
    for (int i = 0; i < 5000; ++i) {
        RewardWeights w{u(rng) * 2, u(rng) * 2, u(rng) * 2, u(rng)};
        auto r = composite_reward(p, parsed, w, u(rng), static_cast<int>(rng() % 2), static_cast<int>(rng() % 2));
        CHECK(r.total >= 0.0);
        CHECK(r.total <= w.sum() + 1e-12);
    }
}

TEST_CASE("scorer runs the whole pipeline") {
    Scorer scorer({}, nullptr);
    auto aux = answer_problem(true);

    auto perfect = scorer.score(
        aux, solution::compose_solution("reason", "sqrt(12)", "point P := intersect(line(B,D), line(C,A))\nconnect(E,P)"));
    CHECK(perfect.reward.acc == 1.0);
    CHECK(perfect.reward.f_aux == 1);
    CHECK(perfect.reward.f_fmt == 1);
    CHECK(perfect.reward.total == doctest::Approx(1.0));

    auto no_lines = scorer.score(aux, solution::compose_solution("reason", "2√3"));
    CHECK(no_lines.reward.f_aux == 0);
    CHECK(no_lines.reward.total == doctest::Approx(0.58));

    // Bad wrapper: components are scored independently.
    auto unwrapped = scorer.score(aux, "The answer is 2√3");
    CHECK(unwrapped.reward.f_fmt == 0);

    // Problems without reference constructions reward an empty candidate set.
    auto plain = answer_problem(false);
    CHECK(scorer.score(plain, solution::compose_solution("r", "2√3")).reward.f_aux == 1);
    CHECK(scorer.score(plain, solution::compose_solution("r", "2√3", "connect(A,B)")).reward.f_aux == 0);
    // Unparseable text counts as no constructions at all.
    CHECK(scorer.score(plain, solution::compose_solution("r", "2√3", "connect(A,")).reward.f_aux == 1);
    CHECK(scorer.score(aux, solution::compose_solution("r", "2√3", "connect(A,")).reward.f_aux == 0);

    dataset::GeometryProblem proof;
    proof.id = "pr";
    proof.question_text = "Prove it.";
    proof.question_type = dataset::QuestionType::ProofBased;
    proof.reference_proof = "Because.";
    CHECK_THROWS_AS(scorer.score(proof, solution::compose_solution("r", "Because.")), ValidationError);
}

TEST_CASE("proof accuracy comes from the judge and text answers fall back to it") {
    auto mock = std::make_shared<judge::MockJudge>(4);
    judge::Gateway gateway(mock);
    Scorer scorer({}, &gateway);

    dataset::GeometryProblem proof;
    proof.id = "pr";
    proof.question_text = "Prove it.";
    proof.question_type = dataset::QuestionType::ProofBased;
    proof.reference_proof = "Because.";
    auto raw = solution::compose_solution("r", "My proof.");
    mock->pin_verdict(proof.id, raw, judge::make_verdict(0.5, 1, 1, 1, 1));
    auto s = scorer.score(proof, raw);
    CHECK(s.acc_source == AccuracySource::ProofJudge);
    CHECK(s.reward.acc == doctest::Approx(0.85));
    CHECK(s.reward.f_corr == doctest::Approx(1.0));

    dataset::GeometryProblem text;
    text.id = "tx";
    text.question_text = "Which relation holds?";
    text.reference_answer = "the lines are parallel";
    auto said = solution::compose_solution("r", "they are parallel to each other");
    mock->pin_answer(text.id, said, 1);
    auto t = scorer.score(text, said);
    CHECK(t.acc_source == AccuracySource::AnswerJudge);
    CHECK(t.reward.acc == 1.0);
}
