// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <map>
#include <optional>

#include "geoverify/answer.hpp"
#include "geoverify/config.hpp"
#include "geoverify/construction.hpp"
#include "geoverify/curriculum.hpp"
#include "geoverify/dataset.hpp"
#include "geoverify/error.hpp"
#include "geoverify/evaluation.hpp"
#include "geoverify/judge.hpp"
#include "geoverify/policy.hpp"
#include "geoverify/reward.hpp"
#include "geoverify/scoring.hpp"
#include "geoverify/solution.hpp"

namespace py = pybind11;
using namespace geoverify;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
py::object to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::object& o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

dataset::GeometryProblem problem_from(const py::object& o) { return dataset::problem_from_json(from_python(o)); }

reward::ScoringConfig scoring_from(std::optional<std::string> config_path) {
    if (!config_path) return {};
    return config::load_config(*config_path).scoring;
}

} // namespace

PYBIND11_MODULE(_geoverify, m) {
    m.doc() = "Verification rewards for geometry solutions";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    m.def("load_dataset", [](const std::string& path) {
        py::list out;
        for (const auto& p : dataset::load_dataset(path)) out.append(to_python(dataset::problem_to_json(p)));
        return out;
    }, py::arg("path"));

    m.def("dataset_stats", [](const std::string& path) {
        return to_python(dataset::compute_stats(dataset::load_dataset(path)).to_json());
    }, py::arg("path"));

    m.def("parse_solution", [](const std::string& raw) {
        auto p = solution::parse_solution(raw);
        py::dict d;
        d["format_ok"] = p.format_ok;
        d["think"] = p.think_block;
        d["answer"] = p.answer_block;
        d["constructions"] = p.constructions_source;
        d["diagnostic"] = p.diagnostic;
        return d;
    }, py::arg("raw"));

    m.def("format_reward", [](const std::string& raw) {
        return solution::format_reward(solution::parse_solution(raw));
    }, py::arg("raw"));

    m.def("compose_solution", [](const std::string& think, const std::string& answer, const std::string& aux) {
        return solution::compose_solution(think, answer, aux);
    }, py::arg("think"), py::arg("answer"), py::arg("constructions") = "");

    m.def("grade_answer", [](const std::string& candidate, const std::string& reference) {
        return answer::grade_answer(answer::parse_answer(candidate), answer::parse_answer(reference));
    }, py::arg("candidate"), py::arg("reference"));

    m.def("canonical_constructions", [](const std::string& source) {
        return construction::canonical_rename(construction::parse_constructions(source)).render();
    }, py::arg("source"));

    m.def("match_aux", [](const std::string& candidate, const std::string& reference, bool superset) {
        auto c = construction::parse_constructions_lenient(candidate);
        return construction::match_aux(c.set, construction::parse_constructions(reference),
                                       construction::MatchOptions{superset});
    }, py::arg("candidate"), py::arg("reference"), py::arg("allow_superset") = false);

    m.def("correctness_reward", &reward::correctness_reward, py::arg("acc"), py::arg("aux_correct"),
          py::arg("lam") = 0.2);

    m.def("composite_reward", [](double acc, int f_aux, int f_fmt, double alpha, double beta, double gamma,
                                 double lam) {
        reward::RewardWeights w{alpha, beta, gamma, lam};
        return reward::composite_reward(dataset::GeometryProblem{}, solution::ParsedSolution{}, w, acc, f_aux, f_fmt).total;
    }, py::arg("acc"), py::arg("f_aux"), py::arg("f_fmt"), py::arg("alpha") = 0.6, py::arg("beta") = 0.3,
          py::arg("gamma") = 0.1, py::arg("lam") = 0.2);

    m.def("rubric_score", &judge::rubric_score, py::arg("validity"), py::arg("completeness"), py::arg("correctness"),
          py::arg("construction"), py::arg("clarity"));

    m.def("score", [](const py::object& problem, const std::string& raw, std::uint64_t judge_seed,
                      std::optional<std::string> config_path) {
        judge::Gateway gateway(std::make_shared<judge::MockJudge>(judge_seed));
        reward::Scorer scorer(scoring_from(config_path), &gateway);
        return to_python(scorer.score(problem_from(problem), raw).to_json());
    }, py::arg("problem"), py::arg("raw"), py::arg("judge_seed") = 0, py::arg("config") = py::none());

    m.def("difficulty", [](const std::vector<int>& deltas) {
        return curriculum::difficulty({"", deltas, {}});
    }, py::arg("deltas"));

    m.def("build_plan", [](const std::map<std::string, std::vector<int>>& records) {
        std::vector<curriculum::SamplingRecord> rs;
        for (const auto& [id, deltas] : records) rs.push_back({id, deltas, {}});
        auto plan = curriculum::build_plan(rs);
        py::list order, excluded;
        for (const auto& e : plan.order) order.append(py::make_tuple(e.problem_id, e.difficulty));
        for (const auto& e : plan.excluded)
            excluded.append(py::make_tuple(e.problem_id, std::string(curriculum::to_string(e.reason))));
        return py::make_tuple(order, excluded);
    }, py::arg("records"));

    m.def("group_advantages", [](const std::vector<double>& rewards, double eps) {
        return policy::group_advantages(rewards, eps).values;
    }, py::arg("rewards"), py::arg("epsilon") = 1e-8);

    m.def("solution_features", [](const std::string& text) { return policy::solution_features(text); },
          py::arg("text"));

    m.def("train", [](const std::string& dataset_path, const std::string& pools_path, std::uint64_t seed) {
        auto problems = dataset::load_dataset(dataset_path);
        auto pools = policy::load_pools(pools_path);
        reward::Scorer scorer({}, nullptr);
        policy::TrainerConfig cfg;
        cfg.seed = seed;
        auto set = policy::prepare_training_set(problems, pools, scorer, cfg);
        auto result = policy::run_training(set, std::nullopt, cfg);
        py::dict d;
        d["weights"] = result.state.weights;
        d["expected_reward"] = policy::mean_expected_reward(result.state.weights, set);
        d["max_reward"] = policy::max_achievable_reward(set);
        d["report"] = to_python(result.report.to_json());
        return d;
    }, py::arg("dataset"), py::arg("pools"), py::arg("seed") = 0);

    m.def("evaluate", [](const std::string& dataset_path, const std::string& solutions_path,
                         std::optional<std::string> pins_path, std::uint64_t judge_seed) {
        auto mock = std::make_shared<judge::MockJudge>(judge_seed);
        if (pins_path) {
            std::ifstream in(*pins_path);
            if (!in) throw ConfigError("cannot open pins file " + *pins_path);
            mock->load_pins(in);
        }
        judge::Gateway gateway(mock);
        auto report = evaluation::evaluate(dataset::load_dataset(dataset_path),
                                           evaluation::load_solutions(solutions_path), {}, &gateway);
        return to_python(report.to_json());
    }, py::arg("dataset"), py::arg("solutions"), py::arg("pins") = py::none(), py::arg("judge_seed") = 0);
}
