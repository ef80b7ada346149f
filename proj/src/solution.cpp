// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/solution.hpp"

namespace geoverify::solution {

namespace {

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return 0;
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string_view::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

// Content between the first `open` and the following `close`, if both exist.
std::optional<std::string> between(std::string_view text, std::string_view open, std::string_view close) {
    auto start = text.find(open);
    if (start == std::string_view::npos) return std::nullopt;
    start += open.size();
    auto end = text.find(close, start);
    if (end == std::string_view::npos) return std::nullopt;
    return std::string(text.substr(start, end - start));
}

struct FenceResult {
    std::string source;
    std::string problem;  // empty when the fence (or its absence) is well formed
};

FenceResult extract_fence(std::string_view think, const FormatTags& tags) {
    std::size_t opens = count_occurrences(think, tags.aux_open);
    std::size_t closes = count_occurrences(think, tags.aux_close);
    if (opens == 0 && closes == 0) return {};
    if (opens != 1 || closes != 1) return {{}, "construction fence must appear exactly once"};

    auto open = think.find(tags.aux_open);
    auto close = think.find(tags.aux_close);
    if (close < open) return {{}, "construction fence closed before it is opened"};

    bool open_line = (open == 0 || think[open - 1] == '\n') &&
                     open + tags.aux_open.size() < think.size() && think[open + tags.aux_open.size()] == '\n';
    std::size_t close_end = close + tags.aux_close.size();
    bool close_line = close > 0 && think[close - 1] == '\n' && (close_end == think.size() || think[close_end] == '\n');
    if (!open_line || !close_line) return {{}, "construction fence delimiters must be on their own lines"};

    std::size_t body_begin = open + tags.aux_open.size() + 1;
    std::size_t body_end = close - 1;
    if (body_end < body_begin) return {{}, {}};
    return {std::string(think.substr(body_begin, body_end - body_begin)), {}};
}

} // namespace

ParsedSolution parse_solution(std::string_view raw, const FormatTags& tags) {
    ParsedSolution out;
    out.raw = std::string(raw);

    // Best-effort extraction, used even when the template is violated.
    out.think_block = between(raw, tags.think_open, tags.think_close);
    out.answer_block = between(raw, tags.answer_open, tags.answer_close);
    out.final_answer = out.answer_block;
    if (out.think_block) out.constructions_source = extract_fence(*out.think_block, tags).source;

    auto reject = [&](std::string reason) {
        out.format_ok = false;
        out.diagnostic = std::move(reason);
        return out;
    };

    std::string_view body = raw;
    if (!body.empty() && body.back() == '\n') {
        body.remove_suffix(1);
        out.trailing_newline = true;
    }
    if (body.empty()) return reject("empty output");
    if (!body.starts_with(tags.think_open)) return reject("output must start with " + tags.think_open);
    if (!body.ends_with(tags.answer_close)) return reject("output must end with " + tags.answer_close);

    for (const std::string* tag : {&tags.think_open, &tags.think_close, &tags.answer_open, &tags.answer_close})
        if (count_occurrences(body, *tag) != 1) return reject("tag " + *tag + " must appear exactly once");

    std::size_t think_close = body.find(tags.think_close);
    std::size_t answer_open = body.find(tags.answer_open);
    if (think_close > answer_open) return reject("think block must precede the answer block");
    if (answer_open != think_close + tags.think_close.size())
        return reject("no text allowed between " + tags.think_close + " and " + tags.answer_open);

    auto fence = extract_fence(*out.think_block, tags);
    if (!fence.problem.empty()) return reject(fence.problem);

    out.format_ok = true;
    return out;
}

int format_reward(const ParsedSolution& parsed) { return parsed.format_ok ? 1 : 0; }

std::string render_solution(const ParsedSolution& parsed, const FormatTags& tags) {
    std::string out = tags.think_open + parsed.think_block.value_or("") + tags.think_close + tags.answer_open +
                      parsed.answer_block.value_or("") + tags.answer_close;
    if (parsed.trailing_newline) out += '\n';
    return out;
}

std::string compose_solution(std::string_view think, std::string_view answer, std::string_view constructions,
                             const FormatTags& tags) {
    std::string body(think);
    if (!constructions.empty()) {
        if (!body.empty() && body.back() != '\n') body += '\n';
        body += tags.aux_open + "\n" + std::string(constructions) + "\n" + tags.aux_close;
    }
    return tags.think_open + body + tags.think_close + tags.answer_open + std::string(answer) + tags.answer_close;
}

} // namespace geoverify::solution
