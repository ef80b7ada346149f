// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/evaluation.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "geoverify/error.hpp"

namespace geoverify::evaluation {

using nlohmann::json;

std::vector<SolutionEntry> read_solutions(std::istream& in) {
    std::vector<SolutionEntry> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw ValidationError("solutions line " + std::to_string(line_no) + ": malformed record");
        try {
            out.push_back({j.at("problem_id").get<std::string>(), j.at("output").get<std::string>()});
        } catch (const json::exception& e) {
            throw ValidationError("solutions line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<SolutionEntry> load_solutions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open solutions file " + path.string());
    return read_solutions(in);
}

void write_solutions(std::ostream& out, const std::vector<SolutionEntry>& entries) {
    for (const auto& e : entries) out << json{{"problem_id", e.problem_id}, {"output", e.output}}.dump() << '\n';
}

std::optional<double> Cell::accuracy() const {
    if (count == 0) return std::nullopt;
    return 100.0 * score_sum / static_cast<double>(count);
}

Cell EvalReport::by_type(dataset::QuestionType type) const {
    const auto& row = cells[static_cast<std::size_t>(type)];
    return {row[0].count + row[1].count, row[0].score_sum + row[1].score_sum};
}

Cell EvalReport::overall() const {
    auto a = by_type(dataset::QuestionType::AnswerBased);
    auto p = by_type(dataset::QuestionType::ProofBased);
    return {a.count + p.count, a.score_sum + p.score_sum};
}

namespace {

constexpr dataset::QuestionType kTypes[] = {dataset::QuestionType::AnswerBased, dataset::QuestionType::ProofBased};

json cell_json(const Cell& c) {
    json j{{"count", c.count}, {"score_sum", c.score_sum}};
    if (auto a = c.accuracy()) j["accuracy"] = *a;
    else j["accuracy"] = nullptr;
    return j;
}

std::string cell_text(const Cell& c) {
    std::ostringstream out;
    if (auto a = c.accuracy()) {
        out << std::fixed << std::setprecision(2) << *a << "% (" << std::setprecision(2) << c.score_sum << "/"
            << c.count << ")";
    } else {
        out << "no data";
    }
    return out.str();
}

} // namespace

json EvalReport::to_json() const {
    json j;
    for (auto t : kTypes) {
        std::string name(dataset::to_string(t));
        j[name]["no_aux"] = cell_json(cell(t, false));
        j[name]["aux"] = cell_json(cell(t, true));
        j[name]["all"] = cell_json(by_type(t));
    }
    j["overall"] = cell_json(overall());
    return j;
}

std::string EvalReport::to_text() const {
    std::ostringstream out;
    out << std::left << std::setw(14) << "question_type" << std::setw(26) << "no_aux" << std::setw(26) << "aux"
        << "all" << '\n';
    for (auto t : kTypes) {
        out << std::left << std::setw(14) << dataset::to_string(t) << std::setw(26) << cell_text(cell(t, false))
            << std::setw(26) << cell_text(cell(t, true)) << cell_text(by_type(t)) << '\n';
    }
    out << std::left << std::setw(14) << "overall" << cell_text(overall()) << '\n';
    return out.str();
}

EvalReport evaluate(const std::vector<dataset::GeometryProblem>& problems, const std::vector<SolutionEntry>& entries,
                    const reward::ScoringConfig& config, const judge::Gateway* gateway) {
    std::vector<const dataset::GeometryProblem*> targets;
    std::vector<solution::ParsedSolution> parsed;
    targets.reserve(entries.size());
    parsed.reserve(entries.size());
    for (const auto& e : entries) {
        const auto* p = dataset::find_problem(problems, e.problem_id);
        if (!p) throw ValidationError("unknown problem id '" + e.problem_id + "'");
        if (p->split != dataset::Split::Test)
            throw ValidationError("problem '" + e.problem_id + "' is not in the test split");
        if (p->question_type == dataset::QuestionType::ProofBased && !gateway)
            throw ValidationError("proof-based problem '" + e.problem_id + "' needs a judge");
        targets.push_back(p);
        parsed.push_back(solution::parse_solution(e.output, config.tags));
    }

    // Proofs go out together so the gateway can keep several requests in flight.
    std::vector<judge::Gateway::ProofJob> jobs;
    std::vector<std::size_t> job_index;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i]->question_type != dataset::QuestionType::ProofBased) continue;
        jobs.push_back({targets[i], &parsed[i]});
        job_index.push_back(i);
    }
    std::vector<double> scores(targets.size(), 0.0);
    if (!jobs.empty()) {
        auto outcomes = gateway->judge_proofs(jobs);
        for (std::size_t j = 0; j < outcomes.size(); ++j) {
            if (auto* err = std::get_if<std::exception_ptr>(&outcomes[j])) std::rethrow_exception(*err);
            scores[job_index[j]] = std::get<judge::ProofVerdict>(outcomes[j]).score;
        }
    }

    reward::Scorer scorer(config, gateway);
    EvalReport report;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& p = *targets[i];
        if (p.question_type == dataset::QuestionType::AnswerBased) scores[i] = scorer.accuracy(p, parsed[i]);
        report.cell(p.question_type, p.requires_aux).add(scores[i]);
    }
    return report;
}

} // namespace geoverify::evaluation
