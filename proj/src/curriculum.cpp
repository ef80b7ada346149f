// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/curriculum.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "geoverify/error.hpp"

namespace geoverify::curriculum {

using nlohmann::json;

int delta(double acc, dataset::QuestionType type, const DeltaThresholds& thresholds) {
    double cutoff = type == dataset::QuestionType::AnswerBased ? thresholds.answer : thresholds.proof;
    return acc >= cutoff ? 1 : 0;
}

double difficulty(const SamplingRecord& record) {
    const std::size_t k = record.k();
    if (k == 0) throw ValidationError("sampling record for '" + record.problem_id + "' has no candidates");
    std::size_t correct = 0;
    for (int d : record.deltas) {
        if (d != 0 && d != 1) throw ValidationError("indicator values must be 0 or 1");
        correct += static_cast<std::size_t>(d);
    }
    // (K - correct) / K is the correctly rounded value of 1 - correct / K.
    return static_cast<double>(k - correct) / static_cast<double>(k);
}

std::string_view to_string(Exclusion reason) { return reason == Exclusion::Trivial ? "trivial" : "unsolvable"; }

std::size_t CurriculumPlan::count(Exclusion reason) const {
    return static_cast<std::size_t>(
        std::count_if(excluded.begin(), excluded.end(), [&](const auto& e) { return e.reason == reason; }));
}

CurriculumPlan build_plan(const std::vector<SamplingRecord>& records, const PlanOptions& options) {
    CurriculumPlan plan;
    std::unordered_set<std::string> seen;
    for (const auto& r : records) {
        if (!seen.insert(r.problem_id).second)
            throw ValidationError("duplicate problem id '" + r.problem_id + "' in sampling records");
        double d = difficulty(r);
        if (d <= options.trivial_at_most)
            plan.excluded.push_back({r.problem_id, d, Exclusion::Trivial});
        else if (d >= options.unsolvable_at_least)
            plan.excluded.push_back({r.problem_id, d, Exclusion::Unsolvable});
        else
            plan.order.push_back({r.problem_id, d});
    }
    auto by_difficulty = [](const auto& a, const auto& b) {
        return a.difficulty != b.difficulty ? a.difficulty < b.difficulty : a.problem_id < b.problem_id;
    };
    std::sort(plan.order.begin(), plan.order.end(), by_difficulty);
    std::sort(plan.excluded.begin(), plan.excluded.end(), by_difficulty);
    return plan;
}

std::vector<SamplingRecord> read_records(std::istream& in) {
    std::vector<SamplingRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw ValidationError("records line " + std::to_string(line_no) + ": malformed record");
        try {
            SamplingRecord r;
            r.problem_id = j.at("problem_id").get<std::string>();
            r.deltas = j.at("deltas").get<std::vector<int>>();
            if (auto c = j.find("candidates"); c != j.end()) r.candidates = c->get<std::vector<std::string>>();
            for (int d : r.deltas)
                if (d != 0 && d != 1) throw ValidationError("deltas must be 0 or 1");
            if (!r.candidates.empty() && r.candidates.size() != r.deltas.size())
                throw ValidationError("candidates and deltas differ in length");
            out.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw ValidationError("records line " + std::to_string(line_no) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("records line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<SamplingRecord> load_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open records file " + path.string());
    return read_records(in);
}

void write_records(std::ostream& out, const std::vector<SamplingRecord>& records) {
    for (const auto& r : records) {
        json j{{"problem_id", r.problem_id}, {"deltas", r.deltas}};
        if (!r.candidates.empty()) j["candidates"] = r.candidates;
        out << j.dump() << '\n';
    }
}

void write_plan(std::ostream& out, const CurriculumPlan& plan) {
    for (const auto& e : plan.order) out << json{{"problem_id", e.problem_id}, {"difficulty", e.difficulty}}.dump() << '\n';
    for (const auto& e : plan.excluded)
        out << json{{"problem_id", e.problem_id}, {"difficulty", e.difficulty}, {"excluded", to_string(e.reason)}}.dump()
            << '\n';
}

CurriculumPlan read_plan(std::istream& in) {
    CurriculumPlan plan;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw ValidationError("malformed plan line: " + line);
        try {
            auto id = j.at("problem_id").get<std::string>();
            double d = j.at("difficulty").get<double>();
            if (auto ex = j.find("excluded"); ex != j.end()) {
                auto reason = ex->get<std::string>();
                if (reason != "trivial" && reason != "unsolvable")
                    throw ValidationError("unknown exclusion reason '" + reason + "'");
                plan.excluded.push_back({id, d, reason == "trivial" ? Exclusion::Trivial : Exclusion::Unsolvable});
            } else {
                plan.order.push_back({id, d});
            }
        } catch (const json::exception& e) {
            throw ValidationError(std::string("malformed plan line: ") + e.what());
        }
    }
    return plan;
}

void save_plan(const std::filesystem::path& path, const CurriculumPlan& plan) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write plan file " + path.string());
    write_plan(out, plan);
}

CurriculumPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open plan file " + path.string());
    return read_plan(in);
}

} // namespace geoverify::curriculum
