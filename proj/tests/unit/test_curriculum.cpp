// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <sstream>

#include "geoverify/curriculum.hpp"
#include "geoverify/error.hpp"

using namespace geoverify;
using namespace geoverify::curriculum;

namespace {

SamplingRecord record(const std::string& id, std::size_t k, std::size_t correct) {
    SamplingRecord r{id, std::vector<int>(k, 0), {}};
    for (std::size_t i = 0; i < correct; ++i) r.deltas[i] = 1;
    return r;
}

std::vector<std::string> ids(const CurriculumPlan& plan) {
    std::vector<std::string> out;
    for (const auto& e : plan.order) out.push_back(e.problem_id);
    return out;
}

} // namespace

TEST_CASE("difficulty examples") {
    CHECK(difficulty(record("a", 8, 6)) == 0.25);
    CHECK(difficulty(record("a", 8, 0)) == 1.0);
    CHECK(difficulty(record("a", 8, 8)) == 0.0);
    CHECK_THROWS_AS(difficulty(record("a", 0, 0)), ValidationError);
    SamplingRecord bad{"b", {0, 2}, {}};
    CHECK_THROWS_AS(difficulty(bad), ValidationError);
}

TEST_CASE("difficulty lies on the 1/K grid") {
    for (std::size_t k = 1; k <= 32; ++k)
        for (std::size_t s = 0; s <= k; ++s) {
            double d = difficulty(record("x", k, s));
            double scaled = d * static_cast<double>(k);
            CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-12));
        }
}

TEST_CASE("plan examples") {
    auto plan = build_plan({record("A", 4, 2), record("B", 4, 3), record("C", 4, 1)});
    CHECK(ids(plan) == std::vector<std::string>{"B", "A", "C"});

    auto filtered = build_plan({record("A", 4, 4), record("B", 4, 2), record("C", 4, 0)});
    CHECK(ids(filtered) == std::vector<std::string>{"B"});
    REQUIRE(filtered.excluded.size() == 2);
    CHECK(filtered.count(Exclusion::Trivial) == 1);
    CHECK(filtered.count(Exclusion::Unsolvable) == 1);
    for (const auto& e : filtered.excluded)
        CHECK(e.reason == (e.problem_id == "A" ? Exclusion::Trivial : Exclusion::Unsolvable));

    auto tie = build_plan({record("E", 8, 4), record("D", 8, 4)});
    CHECK(ids(tie) == std::vector<std::string>{"D", "E"});

    CHECK_THROWS_AS(build_plan({record("A", 4, 1), record("A", 4, 2)}), ValidationError);
}

TEST_CASE("wider filters") {
    PlanOptions opts{0.25, 0.75};
    auto plan = build_plan({record("A", 4, 3), record("B", 4, 2), record("C", 4, 1)}, opts);
    CHECK(ids(plan) == std::vector<std::string>{"B"});
}

TEST_CASE("delta thresholds") {
    CHECK(delta(1.0, dataset::QuestionType::AnswerBased) == 1);
    CHECK(delta(0.99, dataset::QuestionType::AnswerBased) == 0);
    CHECK(delta(0.7, dataset::QuestionType::ProofBased) == 1);
    CHECK(delta(0.69, dataset::QuestionType::ProofBased) == 0);
    CHECK(delta(0.5, dataset::QuestionType::ProofBased, {1.0, 0.5}) == 1);
}

TEST_CASE("plans are sorted permutations and deterministic") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<SamplingRecord> records;
        for (int i = 0; i < 25; ++i) {
            std::size_t k = 1 + rng() % 10;
            records.push_back(record("p" + std::to_string(rng() % 1000) + "_" + std::to_string(i), k, rng() % (k + 1)));
        }
        auto plan = build_plan(records);
        CHECK(plan.order.size() + plan.excluded.size() == records.size());
        for (std::size_t i = 1; i < plan.order.size(); ++i) {
            const auto& a = plan.order[i - 1];
            const auto& b = plan.order[i];
            CHECK((a.difficulty < b.difficulty || (a.difficulty == b.difficulty && a.problem_id < b.problem_id)));
        }
        std::shuffle(records.begin(), records.end(), rng);
        CHECK(build_plan(records) == plan);
    }
}

TEST_CASE("record and plan files round trip") {
    std::vector<SamplingRecord> records{record("a", 8, 3), record("b", 8, 8), record("c", 2, 0)};
    records[0].candidates = std::vector<std::string>(8, "text");
    std::stringstream buf;
    write_records(buf, records);
    auto back = read_records(buf);
    REQUIRE(back.size() == 3);
    CHECK(back[0].deltas == records[0].deltas);
    CHECK(back[0].candidates == records[0].candidates);

    auto plan = build_plan(records);
    std::stringstream pbuf;
    write_plan(pbuf, plan);
    CHECK(read_plan(pbuf) == plan);

    std::istringstream bad(R"({"problem_id": "x", "deltas": [0, 3]})");
    CHECK_THROWS(read_records(bad));
}
