// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/judge.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "geoverify/answer.hpp"
#include "geoverify/hash.hpp"

namespace geoverify::judge {

using nlohmann::json;

namespace {

constexpr std::string_view kAnswerPrompt =
    R"(Now you are playing the role of a strict grading teacher. Your task is to review and score the students' answers based on the standard answers. Throughout the grading process, you need to be familiar with the following key points:

- Grading is only based on the final answers given by the students to determine their correctness, and it does not require checking whether the intermediate solution steps are correct.

- First, extract the final answer from the students' solutions and display it in the analysis results. Then, judge whether the answer is correct.

- Based on your analysis results, give the score. When presenting the scoring basis, you should describe it in segments according to the logic of the analysis. The summary of the scoring basis should be placed at the end, and it can be in the following format: "In conclusion, the student's answer should receive x points" (x represents the specific score of the student).

- Based on your analysis, give the score and display it in a code block in "JSON" format.

Scoring ranges: 1 point if the answer is correct or mathematically equivalent, 0 otherwise.

Output format:

[Grading Basis]:
[Total Score]: float
[JSON]:{
"score": float
})";

constexpr std::string_view kProofPrompt =
    R"(Your task is to evaluate the quality of the proof based on five criteria and give a score between 0 and 1: logical validity (30%), completeness (20%), correctness (20%), construction of auxiliary lines (20%), and clarity (10%).

Instructions:
1. Analyze the proof step by step.

2. For each criterion:

- Logical Validity: Check if each step follows logically from the previous one. Flag any logical errors.

- Completeness: Verify if all necessary cases and steps are included to prove the theorem.

- Correctness: Confirm if the final conclusion is correct.

- Construction of auxiliary lines: Determine whether auxiliary lines have been successfully constructed and provide the corresponding Lean4 code for the image.

- Clarity: Assess if the proof is clear, unambiguous, and well-explained.

3. Assign a sub-score (0 to 1) for each criterion and compute the total score using the weights: (0.3 × validity) + (0.2 × completeness) + (0.2 × correctness) + (0.2 × construction) + (0.1 × clarity).

4. Provide a brief explanation (2-3 sentences) summarizing any errors or issues and justifying the score.

Final output format:

[JSON]:
{
"score": float,
"validity": float,
"completeness": float,
"correctness": float,
"construction": float,
"clarity": float,
"explanation": str
})";

const char* const kSubScores[] = {"validity", "completeness", "correctness", "construction", "clarity"};

std::string question_block(const dataset::GeometryProblem& problem) {
    if (problem.prompt_context.empty()) return problem.question_text;
    return problem.prompt_context + "\n" + problem.question_text;
}

// Balanced {...} starting at `open`, honoring JSON string escapes.
std::optional<std::size_t> object_end(std::string_view text, std::size_t open) {
    std::size_t depth = 0;
    bool in_string = false;
    for (std::size_t i = open; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == '{') ++depth;
        else if (c == '}' && --depth == 0) return i + 1;
    }
    return std::nullopt;
}

std::optional<json> parse_object_at(std::string_view text, std::size_t open) {
    auto end = object_end(text, open);
    if (!end) return std::nullopt;
    auto parsed = json::parse(text.substr(open, *end - open), nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) return std::nullopt;
    return parsed;
}

double require_number(const json& block, const char* field) {
    auto it = block.find(field);
    if (it == block.end()) throw JudgeError(JudgeError::Code::Malformed, std::string("verdict missing '") + field + "'");
    if (!it->is_number()) throw JudgeError(JudgeError::Code::Malformed, std::string("verdict field '") + field + "' is not a number");
    return it->get<double>();
}

std::string format_number(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

std::string normalize_proof(std::string_view text) {
    std::string out;
    bool space = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            space = !out.empty();
            continue;
        }
        if (space) out += ' ';
        space = false;
        out += static_cast<char>(c);
    }
    return out;
}

struct Url {
    std::string base;  // scheme://host[:port]
    std::string path;
};

Url split_url(const std::string& url) {
    auto scheme = url.find("://");
    if (scheme == std::string::npos) throw JudgeError(JudgeError::Code::Transport, "judge URL lacks a scheme: " + url);
    auto slash = url.find('/', scheme + 3);
    if (slash == std::string::npos) return {url, "/"};
    return {url.substr(0, slash), url.substr(slash)};
}

} // namespace

json ProofVerdict::to_json() const {
    json j{{"score", score},
           {"validity", validity},
           {"completeness", completeness},
           {"correctness", correctness},
           {"construction", construction},
           {"clarity", clarity},
           {"explanation", explanation},
           {"score_overridden", score_overridden}};
    if (reported_score) j["reported_score"] = *reported_score;
    return j;
}

double rubric_score(double validity, double completeness, double correctness, double construction, double clarity) {
    return RubricWeights::validity * validity + RubricWeights::completeness * completeness +
           RubricWeights::correctness * correctness + RubricWeights::construction * construction +
           RubricWeights::clarity * clarity;
}

ProofVerdict make_verdict(double validity, double completeness, double correctness, double construction,
                          double clarity, std::optional<double> reported_score, std::string explanation) {
    const double values[] = {validity, completeness, correctness, construction, clarity};
    for (std::size_t i = 0; i < 5; ++i) {
        if (!(values[i] >= 0.0 && values[i] <= 1.0))
            throw JudgeError(JudgeError::Code::OutOfRange,
                             std::string("sub-score '") + kSubScores[i] + "' = " + format_number(values[i]) +
                                 " outside [0, 1]");
    }
    ProofVerdict v{validity, completeness, correctness, construction, clarity,
                   rubric_score(validity, completeness, correctness, construction, clarity),
                   std::move(explanation), reported_score, false};
    if (reported_score && std::fabs(*reported_score - v.score) > kScoreOverrideTolerance) v.score_overridden = true;
    return v;
}

std::string render_prompt(Template prompt_template, const dataset::GeometryProblem& problem,
                          const solution::ParsedSolution& solution) {
    using dataset::QuestionType;
    bool answer_template = prompt_template == Template::AnswerGrading;
    if (answer_template != (problem.question_type == QuestionType::AnswerBased))
        throw JudgeError(JudgeError::Code::TemplateMismatch,
                         "template does not match question type of problem '" + problem.id + "'");

    std::string out;
    if (answer_template) {
        out += kAnswerPrompt;
        out += "\n\n[Question]:\n" + question_block(problem);
        out += "\n\n[Standard Answer]:\n" + problem.reference_answer;
        out += "\n\n[Student Solution]:\n" + solution.raw;
    } else {
        out += kProofPrompt;
        out += "\n\n[Question]:\n" + question_block(problem);
        out += "\n\n[Reference Proof]:\n" + problem.reference_proof;
        if (!problem.reference_constructions.empty())
            out += "\n\n[Reference Auxiliary Constructions]:\n" + problem.reference_constructions;
        out += "\n\n[Student Proof]:\n" + solution.raw;
    }
    out += '\n';
    return out;
}

JudgeRequest make_request(Template prompt_template, const dataset::GeometryProblem& problem,
                          const solution::ParsedSolution& solution) {
    JudgeRequest r;
    r.prompt_template = prompt_template;
    r.rendered_prompt = render_prompt(prompt_template, problem, solution);
    r.problem_id = problem.id;
    r.candidate = solution.raw;
    r.reference = problem.reference_text();
    r.reference_constructions = problem.reference_constructions;
    return r;
}

std::optional<json> extract_verdict_block(std::string_view reply) {
    constexpr std::string_view marker = "[JSON]:";
    if (auto at = reply.rfind(marker); at != std::string_view::npos) {
        auto open = reply.find('{', at + marker.size());
        if (open != std::string_view::npos)
            if (auto parsed = parse_object_at(reply, open)) return parsed;
    }
    std::optional<json> last;
    for (std::size_t i = 0; i < reply.size(); ++i) {
        if (reply[i] != '{') continue;
        auto end = object_end(reply, i);
        if (!end) break;
        if (auto parsed = parse_object_at(reply, i)) last = std::move(parsed);
        i = *end - 1;
    }
    return last;
}

ProofVerdict parse_proof_verdict(std::string_view reply) {
    auto block = extract_verdict_block(reply);
    if (!block) throw JudgeError(JudgeError::Code::Malformed, "reply has no structured verdict block");
    double reported = require_number(*block, "score");
    double sub[5];
    for (std::size_t i = 0; i < 5; ++i) sub[i] = require_number(*block, kSubScores[i]);
    std::string explanation;
    if (auto it = block->find("explanation"); it != block->end() && it->is_string()) explanation = *it;
    return make_verdict(sub[0], sub[1], sub[2], sub[3], sub[4], reported, std::move(explanation));
}

int parse_answer_verdict(std::string_view reply) {
    auto block = extract_verdict_block(reply);
    if (!block) throw JudgeError(JudgeError::Code::Malformed, "reply has no structured verdict block");
    double score = require_number(*block, "score");
    if (std::fabs(score - 1.0) <= kScoreOverrideTolerance) return 1;
    if (std::fabs(score) <= kScoreOverrideTolerance) return 0;
    throw JudgeError(JudgeError::Code::OutOfRange, "answer score " + format_number(score) + " is neither 0 nor 1");
}

// ---------------------------------------------------------------------------
// HTTP transport
// ---------------------------------------------------------------------------

void EndpointProfile::apply_environment() {
    auto fill = [](std::string& field, const char* var) {
        if (!field.empty()) return;
        if (const char* v = std::getenv(var)) field = v;
    };
    fill(url, "GEOINT_JUDGE_URL");
    fill(api_key, "GEOINT_JUDGE_KEY");
    fill(model, "GEOINT_JUDGE_MODEL");
}

json chat_request_body(const EndpointProfile& profile, const std::string& prompt) {
    return {{"model", profile.model},
            {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
            {"temperature", 0}};
}

std::string chat_reply_content(const json& response) {
    try {
        const auto& content = response.at("choices").at(0).at("message").at("content");
        if (!content.is_string()) throw JudgeError(JudgeError::Code::Transport, "reply content is not text");
        return content.get<std::string>();
    } catch (const json::exception& e) {
        throw JudgeError(JudgeError::Code::Transport, std::string("unexpected chat-completion response: ") + e.what());
    }
}

HttpTransport::HttpTransport(EndpointProfile profile) : profile_(std::move(profile)) {
    profile_.apply_environment();
    if (profile_.url.empty())
        throw JudgeError(JudgeError::Code::Transport,
                         "no URL configured for judge profile '" + profile_.name + "' (set GEOINT_JUDGE_URL)");
}

std::string HttpTransport::complete(const JudgeRequest& request) {
    auto [base, path] = split_url(profile_.url);
    httplib::Client client(base);
    client.set_connection_timeout(profile_.timeout_seconds);
    client.set_read_timeout(profile_.timeout_seconds);
    httplib::Headers headers;
    if (!profile_.api_key.empty()) headers.emplace("Authorization", "Bearer " + profile_.api_key);

    auto body = chat_request_body(profile_, request.rendered_prompt).dump();
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) throw JudgeError(JudgeError::Code::Transport, "judge request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw JudgeError(JudgeError::Code::Transport, "judge returned HTTP " + std::to_string(res->status));
    auto parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) throw JudgeError(JudgeError::Code::Transport, "judge response is not JSON");
    return chat_reply_content(parsed);
}

// ---------------------------------------------------------------------------
// Mock judge
// ---------------------------------------------------------------------------

void MockJudge::pin(const std::string& problem_id, const std::string& solution_text, std::vector<std::string> replies) {
    std::lock_guard lock(mutex_);
    pinned_[{problem_id, solution_text}] = std::move(replies);
}

void MockJudge::pin_verdict(const std::string& problem_id, const std::string& solution_text,
                            const ProofVerdict& verdict) {
    json j{{"score", verdict.score},
           {"validity", verdict.validity},
           {"completeness", verdict.completeness},
           {"correctness", verdict.correctness},
           {"construction", verdict.construction},
           {"clarity", verdict.clarity},
           {"explanation", verdict.explanation}};
    pin(problem_id, solution_text, {"[JSON]:\n" + j.dump()});
}

void MockJudge::pin_answer(const std::string& problem_id, const std::string& solution_text, int score) {
    pin(problem_id, solution_text, {"[JSON]:{\"score\": " + std::string(score ? "1.0" : "0.0") + "}"});
}

std::size_t MockJudge::load_pins(std::istream& in) {
    std::string line;
    std::size_t line_no = 0, count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw ValidationError("pins line " + std::to_string(line_no) + ": malformed record");
        try {
            auto id = j.at("problem_id").get<std::string>();
            auto output = j.at("output").get<std::string>();
            if (auto v = j.find("verdict"); v != j.end()) {
                pin_verdict(id, output,
                            make_verdict(v->at("validity").get<double>(), v->at("completeness").get<double>(),
                                         v->at("correctness").get<double>(), v->at("construction").get<double>(),
                                         v->at("clarity").get<double>(), {}, v->value("explanation", "")));
            } else {
                pin_answer(id, output, j.at("score").get<int>());
            }
        } catch (const json::exception& e) {
            throw ValidationError("pins line " + std::to_string(line_no) + ": " + e.what());
        } catch (const JudgeError& e) {
            throw ValidationError("pins line " + std::to_string(line_no) + ": " + e.what());
        }
        ++count;
    }
    return count;
}

std::size_t MockJudge::calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
}

std::string MockJudge::complete(const JudgeRequest& request) {
    {
        std::lock_guard lock(mutex_);
        ++calls_;
        if (auto it = pinned_.find({request.problem_id, request.candidate}); it != pinned_.end()) {
            const auto& replies = it->second;
            if (replies.empty()) return {};
            auto idx = std::min<std::size_t>(static_cast<std::size_t>(std::max(request.attempt, 0)), replies.size() - 1);
            return replies[idx];
        }
    }
    return request.prompt_template == Template::ProofGrading ? proof_reply(request) : answer_reply(request);
}

std::string MockJudge::proof_reply(const JudgeRequest& request) const {
    auto parsed = solution::parse_solution(request.candidate);
    std::string proof = parsed.answer_block.value_or(request.candidate);
    double sub[5];
    std::string explanation;
    if (normalize_proof(proof) == normalize_proof(request.reference)) {
        for (double& s : sub) s = 1.0;
        explanation = "Matches the reference proof.";
    } else {
        std::uint64_t h = keyed_hash(seed_, {request.problem_id, request.candidate});
        for (double& s : sub) {
            s = static_cast<double>(h % 5) / 4.0;
            h = splitmix64(h);
        }
        explanation = "Mock verdict derived from the solution hash.";
    }
    json j{{"score", rubric_score(sub[0], sub[1], sub[2], sub[3], sub[4])},
           {"validity", sub[0]},
           {"completeness", sub[1]},
           {"correctness", sub[2]},
           {"construction", sub[3]},
           {"clarity", sub[4]},
           {"explanation", explanation}};
    return "[Analysis]: offline mock judge.\n[JSON]:\n```json\n" + j.dump(2) + "\n```\n";
}

std::string MockJudge::answer_reply(const JudgeRequest& request) const {
    auto parsed = solution::parse_solution(request.candidate);
    auto candidate = answer::parse_answer(parsed.final_answer.value_or(request.candidate));
    auto reference = answer::parse_answer(request.reference);
    int score = answer::grade_answer(candidate, reference);
    return "[Grading Basis]: offline mock judge.\n[Total Score]: " + std::to_string(score) +
           "\n[JSON]:{\n\"score\": " + (score ? "1.0" : "0.0") + "\n}\n";
}

// ---------------------------------------------------------------------------
// Gateway
// ---------------------------------------------------------------------------

template <typename Parse>
auto Gateway::with_retries(JudgeRequest request, Parse parse) const {
    int attempts = 1 + std::max(options_.max_retries, 0);
    for (int attempt = 0;; ++attempt) {
        request.attempt = attempt;
        std::string reply = transport_->complete(request);
        try {
            return parse(reply);
        } catch (const JudgeError& e) {
            if (e.code() != JudgeError::Code::Malformed || attempt + 1 >= attempts) {
                if (e.code() == JudgeError::Code::Malformed)
                    throw JudgeError(e.code(), "malformed verdict after " + std::to_string(attempt + 1) +
                                                   " attempt(s) for '" + request.problem_id + "': " + e.what());
                throw;
            }
        }
    }
}

ProofVerdict Gateway::judge_proof(const dataset::GeometryProblem& problem,
                                  const solution::ParsedSolution& solution) const {
    return with_retries(make_request(Template::ProofGrading, problem, solution),
                        [](const std::string& reply) { return parse_proof_verdict(reply); });
}

int Gateway::judge_answer(const dataset::GeometryProblem& problem, const solution::ParsedSolution& solution) const {
    return with_retries(make_request(Template::AnswerGrading, problem, solution),
                        [](const std::string& reply) { return parse_answer_verdict(reply); });
}

std::vector<Gateway::ProofOutcome> Gateway::judge_proofs(const std::vector<ProofJob>& jobs) const {
    std::vector<ProofOutcome> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                results[i] = judge_proof(*jobs[i].problem, *jobs[i].solution);
            } catch (...) {
                results[i] = std::current_exception();
            }
        }
    };
    std::size_t workers = std::min(std::max<std::size_t>(options_.max_concurrency, 1), jobs.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

} // namespace geoverify::judge
