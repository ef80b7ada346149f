// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geoverify/error.hpp"

// Auxiliary-construction statements. One statement per line; `--` starts a
// comment.
//
//   stmt  := "point" IDENT [":=" locus]
//          | "connect(" IDENT "," IDENT ")"
//          | "parallel(" IDENT "," line ")"
//          | "perpendicular(" IDENT "," line ")"
//          | "extend(" IDENT "," IDENT "," IDENT ")"
//   locus := "intersect(" line "," line ")" | "midpoint(" IDENT "," IDENT ")"
//          | "foot(" IDENT "," line ")"
//   line  := "line(" IDENT "," IDENT ")"
//
// Points introduced with `point` are fresh; every other identifier names a
// point given by the diagram.
namespace geoverify::construction {

enum class Kind {
    DeclarePoint,
    Connect,
    ExtendTo,
    ParallelThrough,
    PerpendicularFrom,
    Midpoint,
    IntersectionOf,
    FootOfPerpendicular,
};

std::string_view to_string(Kind kind);

/// Line through two distinct points; endpoints kept sorted.
struct LineRef {
    std::string a;
    std::string b;

    std::string render() const;
    bool operator==(const LineRef&) const = default;
};

using Argument = std::variant<std::string, LineRef>;

// Argument layout per kind:
//   DeclarePoint        [P]
//   Connect             [A, B]            endpoints sorted
//   ExtendTo            [A, B, P]         ordered: extend ray A->B to P
//   ParallelThrough     [P, line]
//   PerpendicularFrom   [P, line]
//   Midpoint            [A, B, P]         endpoints sorted, P declared
//   IntersectionOf      [line, line, P]   lines sorted by rendering, P declared
//   FootOfPerpendicular [A, line, P]      P declared
struct Statement {
    Kind kind;
    std::vector<Argument> args;

    std::string render() const;
    /// Sorts the unordered argument pairs for this kind.
    void canonicalize();

    bool operator==(const Statement&) const = default;
};

bool operator<(const Statement& lhs, const Statement& rhs);

struct ConstructionSet {
    /// Canonical statements, sorted by rendering, no duplicates.
    std::vector<Statement> statements;
    /// Fresh points in first-use order.
    std::vector<std::string> introduced_points;

    bool empty() const noexcept { return statements.empty(); }
    std::string render() const;

    bool operator==(const ConstructionSet&) const = default;
};

class ParseError : public Error {
public:
    enum class Code { Syntax, UndeclaredFreshPoint, Redeclaration, Arity };

    ParseError(Code code, std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          code_(code), line_(line), column_(column) {}

    Code code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    Code code_;
    std::size_t line_;
    std::size_t column_;
};

/// Throws ParseError.
ConstructionSet parse_constructions(std::string_view source);

/// Outcome of parsing untrusted text: failures yield an empty set.
struct LenientParse {
    ConstructionSet set;
    bool parse_failed = false;
    std::string error;
};

LenientParse parse_constructions_lenient(std::string_view source);

/// Renames fresh points to X1, X2, ... so that sets equal up to the choice
/// of fresh-point names become identical. Names that collide with a
/// diagram-given point are skipped.
ConstructionSet canonical_rename(const ConstructionSet& set);

struct MatchOptions {
    /// Accept a candidate that contains every reference statement plus
    /// extras. Off by default.
    bool allow_superset = false;
};

/// 1 iff the canonical statement sets are equal (or, with allow_superset,
/// the candidate covers the reference under some fresh-point mapping).
int match_aux(const ConstructionSet& candidate, const ConstructionSet& reference,
              const MatchOptions& options = {});

} // namespace geoverify::construction
