// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "geoverify/dataset.hpp"
#include "geoverify/error.hpp"
#include "geoverify/solution.hpp"

namespace geoverify::judge {

enum class Template { AnswerGrading, ProofGrading };

/// Rubric weights: validity 0.3, completeness 0.2, correctness 0.2,
/// construction 0.2, clarity 0.1.
struct RubricWeights {
    static constexpr double validity = 0.3;
    static constexpr double completeness = 0.2;
    static constexpr double correctness = 0.2;
    static constexpr double construction = 0.2;
    static constexpr double clarity = 0.1;
};

inline constexpr double kScoreOverrideTolerance = 0.01;

struct ProofVerdict {
    double validity = 0.0;
    double completeness = 0.0;
    double correctness = 0.0;
    double construction = 0.0;
    double clarity = 0.0;
    double score = 0.0;  // always the recomputed weighted sum
    std::string explanation;
    std::optional<double> reported_score;
    bool score_overridden = false;

    nlohmann::json to_json() const;
};

double rubric_score(double validity, double completeness, double correctness, double construction, double clarity);

/// Recomputes the weighted score; flags a reported score that disagrees by
/// more than kScoreOverrideTolerance. Throws JudgeError(OutOfRange) when a
/// sub-score leaves [0, 1].
ProofVerdict make_verdict(double validity, double completeness, double correctness, double construction,
                          double clarity, std::optional<double> reported_score = {}, std::string explanation = {});

class JudgeError : public Error {
public:
    enum class Code { Transport, Malformed, OutOfRange, TemplateMismatch };

    JudgeError(Code code, const std::string& message) : Error(message), code_(code) {}
    Code code() const noexcept { return code_; }

private:
    Code code_;
};

struct JudgeRequest {
    Template prompt_template = Template::AnswerGrading;
    std::string rendered_prompt;
    std::string problem_id;
    int attempt = 0;
    // Material substituted into the prompt, kept for offline judges.
    std::string candidate;
    std::string reference;
    std::string reference_constructions;
};

/// Throws JudgeError(TemplateMismatch) when the template does not fit the
/// problem's question type.
std::string render_prompt(Template prompt_template, const dataset::GeometryProblem& problem,
                          const solution::ParsedSolution& solution);

JudgeRequest make_request(Template prompt_template, const dataset::GeometryProblem& problem,
                          const solution::ParsedSolution& solution);

/// JSON object from the reply's final structured block: the object following
/// the last `[JSON]:` marker, else the last balanced object in the text.
std::optional<nlohmann::json> extract_verdict_block(std::string_view reply);

ProofVerdict parse_proof_verdict(std::string_view reply);
int parse_answer_verdict(std::string_view reply);

/// Anything that turns a grading request into a reply text.
class Transport {
public:
    virtual ~Transport() = default;
    virtual std::string complete(const JudgeRequest& request) = 0;
};

struct EndpointProfile {
    std::string name;
    std::string url;  // full chat-completions URL
    std::string model;
    std::string api_key;
    int timeout_seconds = 120;

    /// Fills unset fields from GEOINT_JUDGE_URL / _KEY / _MODEL.
    void apply_environment();
};

/// Body: {"model", "messages": [{"role": "user", "content"}], "temperature": 0}.
nlohmann::json chat_request_body(const EndpointProfile& profile, const std::string& prompt);

/// Reply text from a chat-completion response body.
std::string chat_reply_content(const nlohmann::json& response);

class HttpTransport : public Transport {
public:
    explicit HttpTransport(EndpointProfile profile);
    std::string complete(const JudgeRequest& request) override;

private:
    EndpointProfile profile_;
};

/// Offline judge. Answer requests are graded by normalized comparison;
/// proof requests score 1 across the board when the candidate proof equals
/// the reference, otherwise sub-scores come from a keyed hash of the
/// (problem id, solution text) pair. Pinned replies override both.
class MockJudge : public Transport {
public:
    explicit MockJudge(std::uint64_t seed = 0) : seed_(seed) {}

    /// Replies returned in order for successive attempts; the last one
    /// repeats.
    void pin(const std::string& problem_id, const std::string& solution_text, std::vector<std::string> replies);
    void pin_verdict(const std::string& problem_id, const std::string& solution_text, const ProofVerdict& verdict);
    void pin_answer(const std::string& problem_id, const std::string& solution_text, int score);

    /// Pins from a JSONL file: {"problem_id", "output", "verdict": {five
    /// sub-scores}} or {"problem_id", "output", "score": 0|1}. Returns the
    /// number of pins read.
    std::size_t load_pins(std::istream& in);

    std::string complete(const JudgeRequest& request) override;

    std::size_t calls() const;

private:
    std::string proof_reply(const JudgeRequest& request) const;
    std::string answer_reply(const JudgeRequest& request) const;

    std::uint64_t seed_;
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> pinned_;
    mutable std::mutex mutex_;
    std::size_t calls_ = 0;
};

struct GatewayOptions {
    int max_retries = 2;
    std::size_t max_concurrency = 4;
};

class Gateway {
public:
    Gateway(std::shared_ptr<Transport> transport, GatewayOptions options = {})
        : transport_(std::move(transport)), options_(options) {}

    ProofVerdict judge_proof(const dataset::GeometryProblem& problem, const solution::ParsedSolution& solution) const;
    int judge_answer(const dataset::GeometryProblem& problem, const solution::ParsedSolution& solution) const;

    struct ProofJob {
        const dataset::GeometryProblem* problem;
        const solution::ParsedSolution* solution;
    };
    using ProofOutcome = std::variant<ProofVerdict, std::exception_ptr>;

    /// Runs jobs with at most max_concurrency requests in flight; results
    /// are in job order.
    std::vector<ProofOutcome> judge_proofs(const std::vector<ProofJob>& jobs) const;

    const GatewayOptions& options() const { return options_; }

private:
    template <typename Parse>
    auto with_retries(JudgeRequest request, Parse parse) const;

    std::shared_ptr<Transport> transport_;
    GatewayOptions options_;
};

} // namespace geoverify::judge
