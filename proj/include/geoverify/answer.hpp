// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace geoverify::answer {

enum class Form { Numeric, Expression, Choice, Text };

std::string_view to_string(Form form);

struct AnswerValue {
    Form form = Form::Text;
    long double numeric_value = 0.0L;  // meaningful for Numeric and Expression
    bool has_degree = false;
    bool has_pi = false;
    std::string normalized_text;

    bool numeric_like() const { return form == Form::Numeric || form == Form::Expression; }
    std::string describe() const;
};

/// Never fails: anything outside the expression grammar becomes Choice or
/// Text.
///
/// Expressions accept integers, decimals, a/b, sqrt(x), √x, pi/π, a degree
/// mark (°, ^\circ), + - × ÷ * / ^, parentheses and implicit multiplication
/// (2√3, 3π). `$` delimiters, \boxed{}, \text{}, \frac{}{} and \sqrt{} are
/// unwrapped. A single leading `lhs =` is dropped when the right side parses.
AnswerValue parse_answer(std::string_view text);

inline constexpr long double kRelativeTolerance = 1e-9L;

int grade_answer(const AnswerValue& candidate, const AnswerValue& reference);

/// True when the deterministic grade is 0 and at least one side is free
/// text, i.e. an external judge may still accept the pair.
bool needs_judge(const AnswerValue& candidate, const AnswerValue& reference);

} // namespace geoverify::answer
