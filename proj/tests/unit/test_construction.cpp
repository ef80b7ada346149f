// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "geoverify/construction.hpp"
#include "testing.hpp"

using namespace geoverify::construction;
namespace gt = geoverify::testing;

TEST_CASE("connect endpoints are sorted") {
    auto set = parse_constructions("connect(O, E)");
    REQUIRE(set.statements.size() == 1);
    CHECK(set.statements[0].kind == Kind::Connect);
    CHECK(std::get<std::string>(set.statements[0].args[0]) == "E");
    CHECK(std::get<std::string>(set.statements[0].args[1]) == "O");
    CHECK(set.introduced_points.empty());
}

TEST_CASE("diagonal intersection then a connection") {
    auto set = parse_constructions("point O := intersect(line(A,C), line(B,D))\nconnect(O,E)");
    CHECK(set.statements.size() == 2);
    CHECK(set.introduced_points == std::vector<std::string>{"O"});
}

TEST_CASE("duplicates collapse after canonicalization") {
    CHECK(parse_constructions("connect(A,B)\nconnect(B,A)").statements.size() == 1);
    CHECK(parse_constructions("point P := intersect(line(B,A), line(C,D))\nconnect(P,A)")
              == parse_constructions("point P := intersect(line(D,C), line(A,B))\nconnect(A,P)"));
}

TEST_CASE("comments, blank lines and spacing are ignored") {
    auto a = parse_constructions("connect(A,B)\nparallel(C, line(A,B))");
    auto b = parse_constructions("-- first\n\n  connect ( A , B )   -- tail\n\tparallel(C,line( B ,A))\n");
    CHECK(a == b);
}

TEST_CASE("parse errors") {
    auto code_of = [](const char* src) {
        try {
            parse_constructions(src);
        } catch (const ParseError& e) {
            return e.code();
        }
        FAIL("no error for " << src);
        return ParseError::Code::Syntax;
    };
    CHECK(code_of("connect(A,B") == ParseError::Code::Syntax);
    CHECK(code_of("draw(A,B)") == ParseError::Code::Syntax);
    CHECK(code_of("connect(A,A)") == ParseError::Code::Arity);
    CHECK(code_of("point M := midpoint(A,A)") == ParseError::Code::Arity);
    CHECK(code_of("point P := intersect(line(A,B), line(B,A))") == ParseError::Code::Arity);
    CHECK(code_of("point P\npoint P") == ParseError::Code::Redeclaration);
    CHECK(code_of("connect(P,A)\npoint P") == ParseError::Code::UndeclaredFreshPoint);
    CHECK(code_of("connect(1A,B)") == ParseError::Code::Syntax);

    try {
        parse_constructions("connect(A,B)\n  connect(A B)");
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("lenient parse turns failures into an empty set") {
    auto bad = parse_constructions_lenient("connect(A,");
    CHECK(bad.parse_failed);
    CHECK(bad.set.empty());
    CHECK_FALSE(bad.error.empty());
    CHECK(match_aux(bad.set, ConstructionSet{}) == 1);
    CHECK(match_aux(bad.set, parse_constructions("connect(A,B)")) == 0);
}

TEST_CASE("canonical_rename") {
    auto set = parse_constructions("point O := midpoint(A,B)\nconnect(O,C)");
    auto renamed = canonical_rename(set);
    CHECK(renamed.introduced_points == std::vector<std::string>{"X1"});
    CHECK(renamed.render().find("O") == std::string::npos);

    auto m = parse_constructions("point M := foot(A, line(B,C))\nconnect(M,D)");
    auto n = parse_constructions("point N := foot(A, line(C,B))\nconnect(D,N)");
    CHECK(canonical_rename(m) == canonical_rename(n));

    auto three = parse_constructions(
        "point P := midpoint(A,B)\npoint Q := intersect(line(P,C), line(A,D))\nconnect(Q,B)\n"
        "point R := foot(Q, line(P,C))\nconnect(R,P)");
    auto once = canonical_rename(three);
    CHECK(canonical_rename(three) == once);
    CHECK(canonical_rename(once) == once);
    CHECK(once.introduced_points.size() == 3);

    // A diagram point already called X1 is left alone.
    auto clash = canonical_rename(parse_constructions("point P := midpoint(X1,B)"));
    CHECK(clash.render().find("X1") != std::string::npos);
    CHECK(clash.introduced_points.size() == 1);
    CHECK(clash.introduced_points[0] != "X1");
}

TEST_CASE("match_aux examples") {
    auto ref = parse_constructions("point O := intersect(line(A,C), line(B,D))\nconnect(O,E)");
    CHECK_THROWS_AS(parse_constructions("connect(E,O)\npoint O := intersect(line(B,D), line(C,A))"), ParseError);
    CHECK(match_aux(parse_constructions("point O := intersect(line(B,D), line(C,A))\nconnect(E,O)"), ref) == 1);
    CHECK(match_aux(parse_constructions("point O := intersect(line(A,C), line(B,D))"), ref) == 0);

    auto extra = parse_constructions("point O := intersect(line(A,C), line(B,D))\nconnect(O,E)\nconnect(A,B)");
    CHECK(match_aux(extra, ref) == 0);
    CHECK(match_aux(extra, ref, MatchOptions{true}) == 1);
    CHECK(match_aux(ref, extra, MatchOptions{true}) == 0);
    CHECK(match_aux(ConstructionSet{}, ConstructionSet{}) == 1);
}

TEST_CASE("superset matching searches fresh-point mappings") {
    auto ref = parse_constructions("point M := midpoint(A,B)\nconnect(M,C)");
    auto cand = parse_constructions("point Z := midpoint(A,D)\npoint M := midpoint(A,B)\nconnect(C,M)");
    CHECK(match_aux(cand, ref, MatchOptions{true}) == 1);
    CHECK(match_aux(cand, ref) == 0);
}

TEST_CASE("render then parse is the identity") {
    gt::ConstructionGen gen(21);
    for (int i = 0; i < 300; ++i) {
        auto prog = gen.program(1, 8, 4);
        auto set = parse_constructions(gen.render(prog, gen.names(prog.fresh, true), gen.order(prog, true), true));
        auto again = parse_constructions(set.render());
        CHECK(again == set);
    }
}

TEST_CASE("match_aux is reflexive, symmetric and rename invariant") {
    gt::ConstructionGen gen(22);
    for (int i = 0; i < 300; ++i) {
        auto p = gen.program(0, 6, 3);
        auto q = i % 3 ? p : gen.program(0, 6, 3);
        auto a = parse_constructions(gen.render(p, gen.names(p.fresh, true), gen.order(p, true), true));
        auto b = parse_constructions(gen.render(q, gen.names(q.fresh, true), gen.order(q, true), true));
        CHECK(match_aux(a, a) == 1);
        CHECK(match_aux(a, b) == match_aux(b, a));
        CHECK(match_aux(canonical_rename(a), b) == match_aux(a, b));
    }
}
