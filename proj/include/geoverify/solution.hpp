// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace geoverify::solution {

/// Literal delimiters of the response template.
struct FormatTags {
    std::string think_open = "<think>";
    std::string think_close = "</think>";
    std::string answer_open = "<answer>";
    std::string answer_close = "</answer>";
    std::string aux_open = "[aux]";
    std::string aux_close = "[/aux]";
};

struct ParsedSolution {
    std::string raw;
    std::optional<std::string> think_block;
    std::optional<std::string> answer_block;
    std::string constructions_source;
    std::optional<std::string> final_answer;
    bool format_ok = false;
    bool trailing_newline = false;
    std::string diagnostic;  // empty when format_ok

    bool operator==(const ParsedSolution&) const = default;
};

/// Never throws; template violations set format_ok = false with a reason.
///
/// Accepted shape, byte for byte:
///   <think>THINK</think><answer>ANSWER</answer>[\n]
/// THINK may hold one construction fence whose delimiters sit on their own
/// lines:
///   [aux]\nSOURCE\n[/aux]
ParsedSolution parse_solution(std::string_view raw, const FormatTags& tags = {});

int format_reward(const ParsedSolution& parsed);

/// Inverse of parse_solution for well-formed solutions.
std::string render_solution(const ParsedSolution& parsed, const FormatTags& tags = {});

/// Builds a well-formed response from its parts.
std::string compose_solution(std::string_view think, std::string_view answer,
                             std::string_view constructions = {}, const FormatTags& tags = {});

} // namespace geoverify::solution
