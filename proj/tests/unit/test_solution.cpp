// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "geoverify/solution.hpp"
#include "testing.hpp"

using namespace geoverify::solution;
namespace gt = geoverify::testing;

TEST_CASE("well-formed response") {
    auto p = parse_solution("<think>use midline</think><answer>30°</answer>");
    CHECK(p.format_ok);
    CHECK(p.final_answer == "30°");
    CHECK(p.think_block == "use midline");
    CHECK(p.constructions_source.empty());
    CHECK(p.diagnostic.empty());
    CHECK(format_reward(p) == 1);
}

TEST_CASE("leading text breaks the wrapper") {
    auto p = parse_solution("Sure! <think>x</think><answer>y</answer>");
    CHECK_FALSE(p.format_ok);
    CHECK_FALSE(p.diagnostic.empty());
    CHECK(format_reward(p) == 0);
}

TEST_CASE("construction fence is extracted") {
    auto p = parse_solution("<think>first\n[aux]\nconnect(O,E)\n[/aux]\nthen</think><answer>5</answer>");
    CHECK(p.format_ok);
    CHECK(p.constructions_source == "connect(O,E)");
}

TEST_CASE("empty input scores zero") {
    CHECK(format_reward(parse_solution("")) == 0);
    CHECK(format_reward(parse_solution("\n")) == 0);
}

TEST_CASE("custom tags") {
    FormatTags tags;
    tags.think_open = "<reasoning>";
    tags.think_close = "</reasoning>";
    auto raw = compose_solution("why", "42", "connect(A,B)", tags);
    auto p = parse_solution(raw, tags);
    CHECK(p.format_ok);
    CHECK(p.final_answer == "42");
    CHECK(p.constructions_source == "connect(A,B)");
    CHECK_FALSE(parse_solution(raw).format_ok);
}

TEST_CASE("golden fixture") {
    for (const auto& c : gt::read_jsonl("format_golden.jsonl")) {
        CAPTURE(c.at("name").get<std::string>());
        auto p = parse_solution(c.at("raw").get<std::string>());
        CHECK(p.format_ok == c.at("format_ok").get<bool>());
        if (c.contains("constructions")) CHECK(p.constructions_source == c.at("constructions").get<std::string>());
    }
}

TEST_CASE("parse never throws and format_reward stays binary") {
    std::mt19937_64 rng(5);
    const std::string alphabet = "<>/thinkansw[]aux\n ";
    for (int i = 0; i < 2000; ++i) {
        std::string s;
        auto n = rng() % 40;
        for (std::size_t k = 0; k < n; ++k) s += alphabet[rng() % alphabet.size()];
        if (i % 3 == 0) s = compose_solution(s, s);
        ParsedSolution p;
        CHECK_NOTHROW(p = parse_solution(s));
        int r = format_reward(p);
        CHECK((r == 0 || r == 1));
        CHECK(r == (p.format_ok ? 1 : 0));
        if (p.format_ok) CHECK(parse_solution(render_solution(p)) == p);
    }
}

TEST_CASE("compose, parse, render round trip") {
    for (const char* aux : {"", "connect(A,B)", "point M := midpoint(A,B)\nconnect(M,C)"}) {
        for (bool newline : {false, true}) {
            auto raw = compose_solution("reason", "answer", aux);
            if (newline) raw += "\n";
            auto p = parse_solution(raw);
            REQUIRE(p.format_ok);
            CHECK(p.trailing_newline == newline);
            CHECK(p.constructions_source == aux);
            CHECK(render_solution(p) == raw);
        }
    }
}
