// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "geoverify/answer.hpp"
#include "geoverify/config.hpp"
#include "geoverify/construction.hpp"
#include "geoverify/curriculum.hpp"
#include "geoverify/dataset.hpp"
#include "geoverify/error.hpp"
#include "geoverify/evaluation.hpp"
#include "geoverify/judge.hpp"
#include "geoverify/policy.hpp"
#include "geoverify/scoring.hpp"

namespace geoverify::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << text;
}

struct StageError : Error {
    StageError(const std::string& stage, const std::string& cause)
        : Error("stage '" + stage + "' failed: " + cause) {}
};

template <typename F>
auto stage(const std::string& name, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool quiet = false;

    config::RunConfig config;
    std::optional<std::size_t> refresh_every;

    void load() {
        if (!config_path.empty()) config = config::load_config(config_path);
        if (seed) config.set_seed(*seed);
        if (refresh_every) config.trainer.refresh_every = *refresh_every;
    }

    fs::path dataset(const std::string& flag) const {
        fs::path p = flag.empty() ? config.dataset_path : fs::path(flag);
        if (p.empty()) throw ConfigError("no dataset given (use --dataset or dataset.path)");
        return p;
    }
    fs::path pools(const std::string& flag) const {
        fs::path p = flag.empty() ? config.pools_path : fs::path(flag);
        if (p.empty()) throw ConfigError("no pool file given (use --pools or dataset.pools)");
        return p;
    }
    void info(const std::string& text) const {
        if (!quiet) out << text;
    }
};

// Training inputs kept alive together; the training set points into `problems`.
struct TrainingInputs {
    std::vector<dataset::GeometryProblem> problems;
    std::shared_ptr<judge::Gateway> gateway;
    std::unique_ptr<reward::Scorer> scorer;
    policy::TrainingSet set;
};

std::unique_ptr<TrainingInputs> prepare(const Context& ctx, const fs::path& dataset_path, const fs::path& pools_path) {
    auto in = std::make_unique<TrainingInputs>();
    in->problems = dataset::load_dataset(dataset_path);
    auto pools = policy::load_pools(pools_path, ctx.config.scoring.tags);
    in->gateway = config::make_gateway(ctx.config.judge, ctx.config.judge.reward_judge);
    in->scorer = std::make_unique<reward::Scorer>(ctx.config.scoring, in->gateway.get());
    in->set = policy::prepare_training_set(in->problems, pools, *in->scorer, ctx.config.trainer);
    return in;
}

void write_report(const Context& ctx, const std::string& path, const policy::TrainingReport& report) {
    if (!path.empty()) write_file(path, report.to_json().dump(2) + "\n");
    ctx.info(report.to_text());
}

std::string plan_text(const curriculum::CurriculumPlan& plan) {
    std::ostringstream s;
    curriculum::write_plan(s, plan);
    return s.str();
}

std::string records_text(const std::vector<curriculum::SamplingRecord>& records) {
    std::ostringstream s;
    curriculum::write_records(s, records);
    return s.str();
}

std::string state_text(const policy::PolicyState& state) { return state.to_json().dump() + "\n"; }

// Highest-probability candidate per test-split pool, ties to the lower index.
std::vector<evaluation::SolutionEntry> greedy_solutions(const std::vector<dataset::GeometryProblem>& problems,
                                                        const std::vector<policy::CandidatePool>& pools,
                                                        const policy::PolicyState& state) {
    std::vector<evaluation::SolutionEntry> out;
    for (const auto& pool : pools) {
        const auto* p = dataset::find_problem(problems, pool.problem_id);
        if (!p || p->split != dataset::Split::Test) continue;
        auto probs = policy::policy_distribution(state, pool);
        auto best = static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
        out.push_back({pool.problem_id, pool.candidates[best].text});
    }
    return out;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Context ctx{out, err, {}, {}, false, {}, {}};

    CLI::App app{"Verification rewards, curriculum scheduling and policy training for geometry reasoning"};
    app.name("geoverify");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", ctx.config_path, "Key-value config file")->check(CLI::ExistingFile);
    app.add_option("--seed", ctx.seed, "Override the config seed");
    app.add_flag("--quiet", ctx.quiet, "Only print command results");

    std::string path, out_path, dataset_flag, pools_flag, report_path, state_path, plan_path;
    std::string candidate, reference, problem_id, solution_path, records_path;
    bool as_json = false, superset = false;

    auto* validate = app.add_subcommand("validate", "Check a dataset file");
    validate->add_option("path", path, "Dataset file")->required();

    auto* split = app.add_subcommand("split", "Expand multi-part problems into single problems");
    split->add_option("path", path, "Multi-part problem file")->required();
    split->add_option("--out", out_path, "Output dataset file")->required();

    auto* stats = app.add_subcommand("stats", "Dataset counts and token lengths");
    stats->add_option("path", path, "Dataset file")->required();
    stats->add_flag("--json", as_json);

    auto* grade = app.add_subcommand("grade-answer", "Compare a final answer against a reference");
    grade->add_option("--candidate", candidate)->required();
    grade->add_option("--reference", reference)->required();

    auto* match = app.add_subcommand("match-aux", "Compare two construction files");
    match->add_option("--candidate", candidate, "Candidate construction file")->required()->check(CLI::ExistingFile);
    match->add_option("--reference", reference, "Reference construction file")->required()->check(CLI::ExistingFile);
    match->add_flag("--superset", superset, "Accept extra candidate statements");

    auto* score = app.add_subcommand("score", "Reward breakdown for one solution");
    auto* judge_proof = app.add_subcommand("judge-proof", "Rubric verdict for one proof");
    for (auto* sub : {score, judge_proof}) {
        sub->add_option("--problem", problem_id)->required();
        sub->add_option("--solution", solution_path, "Raw model output file")->required()->check(CLI::ExistingFile);
        sub->add_option("--dataset", dataset_flag);
    }
    score->add_flag("--json", as_json);

    auto* schedule = app.add_subcommand("schedule", "Curriculum plan from sampling records");
    schedule->add_option("--records", records_path)->required()->check(CLI::ExistingFile);
    schedule->add_option("--out", out_path)->required();

    auto* sft = app.add_subcommand("sft", "Supervised phase");
    auto* rl = app.add_subcommand("rl", "Reinforcement phase");
    auto* train = app.add_subcommand("train", "Supervised then reinforcement phase");
    for (auto* sub : {sft, rl, train}) {
        sub->add_option("--dataset", dataset_flag);
        sub->add_option("--pools", pools_flag);
        sub->add_option("--report", report_path, "Per-epoch report (JSON)");
        sub->add_option("--out", out_path, "Final policy state");
    }
    rl->add_option("--state", state_path, "Starting policy state")->check(CLI::ExistingFile);
    for (auto* sub : {rl, train}) sub->add_option("--plan", plan_path, "Curriculum plan")->check(CLI::ExistingFile);

    auto* eval = app.add_subcommand("eval", "Accuracy report for a solutions file");
    eval->add_option("--solutions", solution_path)->required()->check(CLI::ExistingFile);
    eval->add_option("--dataset", dataset_flag);
    eval->add_option("--out", out_path, "Report file (JSON)");
    eval->add_flag("--json", as_json);

    auto* pipeline = app.add_subcommand("pipeline", "validate, sft, sampling, schedule, rl and eval in order");
    for (auto* sub : {rl, train, pipeline})
        sub->add_option("--refresh-every", ctx.refresh_every, "Rebuild the curriculum every N RL epochs (0: never)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        ctx.load();
        const auto& cfg = ctx.config;

        if (*validate) {
            auto problems = dataset::load_dataset(path);
            out << "ok: " << problems.size() << " problems\n";
        } else if (*split) {
            std::vector<dataset::GeometryProblem> all;
            for (const auto& mp : dataset::load_multipart(path)) {
                auto parts = dataset::split_multipart(mp);
                all.insert(all.end(), parts.begin(), parts.end());
            }
            dataset::save_dataset(out_path, all);
            ctx.info("wrote " + std::to_string(all.size()) + " problems to " + out_path + "\n");
        } else if (*stats) {
            auto s = dataset::compute_stats(dataset::load_dataset(path));
            out << (as_json ? s.to_json().dump(2) + "\n" : s.to_text());
        } else if (*grade) {
            auto c = answer::parse_answer(candidate);
            auto r = answer::parse_answer(reference);
            out << answer::grade_answer(c, r) << '\n';
            ctx.info("candidate: " + c.describe() + "\nreference: " + r.describe() + "\n");
        } else if (*match) {
            auto c = construction::parse_constructions_lenient(read_file(candidate));
            auto r = construction::parse_constructions(read_file(reference));
            auto opts = cfg.scoring.match;
            opts.allow_superset = opts.allow_superset || superset;
            out << construction::match_aux(c.set, r, opts) << '\n';
            if (c.parse_failed) ctx.info("candidate parse error: " + c.error + "\n");
            ctx.info("candidate:\n" + construction::canonical_rename(c.set).render() + "reference:\n" +
                     construction::canonical_rename(r).render());
        } else if (*score || *judge_proof) {
            auto problems = dataset::load_dataset(ctx.dataset(dataset_flag));
            const auto* p = dataset::find_problem(problems, problem_id);
            if (!p) throw ValidationError("unknown problem id '" + problem_id + "'");
            std::string raw = read_file(solution_path);
            if (*score) {
                auto gw = p->question_type == dataset::QuestionType::ProofBased
                              ? config::make_gateway(cfg.judge, cfg.judge.reward_judge)
                              : nullptr;
                reward::Scorer scorer(cfg.scoring, gw.get());
                auto s = scorer.score(*p, raw);
                out << (as_json ? s.to_json().dump(2) + "\n" : s.reward.to_text());
            } else {
                auto gw = config::make_gateway(cfg.judge, cfg.judge.eval_judge);
                auto verdict = gw->judge_proof(*p, solution::parse_solution(raw, cfg.scoring.tags));
                out << verdict.to_json().dump(2) << '\n';
            }
        } else if (*schedule) {
            auto plan = curriculum::build_plan(curriculum::load_records(records_path), cfg.trainer.plan_options);
            curriculum::save_plan(out_path, plan);
            ctx.info("scheduled " + std::to_string(plan.order.size()) + ", excluded " +
                     std::to_string(plan.excluded.size()) + "\n");
        } else if (*sft || *rl || *train) {
            auto in = prepare(ctx, ctx.dataset(dataset_flag), ctx.pools(pools_flag));
            policy::PolicyState final_state;
            policy::TrainingReport report;
            std::optional<curriculum::CurriculumPlan> plan;
            if (!plan_path.empty()) plan = curriculum::load_plan(plan_path);
            if (*train) {
                auto result = policy::run_training(in->set, plan, cfg.trainer);
                final_state = std::move(result.state);
                report = std::move(result.report);
            } else {
                policy::Trainer trainer(in->set, cfg.trainer);
                std::size_t dim = in->set.pools.empty() ? policy::kFeatureDim : in->set.pools.front().dim();
                auto start = state_path.empty() ? policy::PolicyState::zeros(dim, cfg.seed)
                                                : policy::load_state(state_path);
                if (*sft) {
                    final_state = trainer.sft_phase(start, report);
                } else {
                    if (!plan) {
                        report.records = trainer.rejection_sample(start);
                        plan = curriculum::build_plan(report.records, cfg.trainer.plan_options);
                    }
                    report.plan = *plan;
                    final_state = trainer.rl_phase(start, *plan, start, report);
                }
            }
            if (!out_path.empty()) policy::save_state(out_path, final_state);
            write_report(ctx, report_path, report);
        } else if (*eval) {
            auto problems = dataset::load_dataset(ctx.dataset(dataset_flag));
            auto entries = evaluation::load_solutions(solution_path);
            auto gw = config::make_gateway(cfg.judge, cfg.judge.eval_judge);
            auto report = evaluation::evaluate(problems, entries, cfg.scoring, gw.get());
            if (!out_path.empty()) write_file(out_path, report.to_json().dump(2) + "\n");
            out << (as_json ? report.to_json().dump(2) + "\n" : report.to_text());
        } else if (*pipeline) {
            const fs::path dir = cfg.output_dir;
            auto problems = stage("validate", [&] {
                cfg.check();
                if (cfg.dataset_path.empty()) throw ConfigError("dataset.path is not set");
                if (cfg.pools_path.empty()) throw ConfigError("dataset.pools is not set");
                auto ps = dataset::load_dataset(cfg.dataset_path);
                fs::create_directories(dir);
                write_file(dir / "validate.txt", "ok: " + std::to_string(ps.size()) + " problems\n");
                return ps;
            });
            auto pools = stage("validate", [&] { return policy::load_pools(cfg.pools_path, cfg.scoring.tags); });
            auto gateway = stage("validate", [&] { return config::make_gateway(cfg.judge, cfg.judge.reward_judge); });
            reward::Scorer scorer(cfg.scoring, gateway.get());
            auto set = stage("validate", [&] { return policy::prepare_training_set(problems, pools, scorer, cfg.trainer); });
            policy::Trainer trainer(set, cfg.trainer);
            policy::TrainingReport report;

            std::size_t dim = set.pools.empty() ? policy::kFeatureDim : set.pools.front().dim();
            auto sft_state = stage("sft", [&] {
                auto s = trainer.sft_phase(policy::PolicyState::zeros(dim, cfg.seed), report);
                write_file(dir / "sft_state.json", state_text(s));
                return s;
            });
            report.records = stage("rejection-sampling", [&] {
                auto r = trainer.rejection_sample(sft_state);
                write_file(dir / "records.jsonl", records_text(r));
                return r;
            });
            report.plan = stage("schedule", [&] {
                auto plan = curriculum::build_plan(report.records, cfg.trainer.plan_options);
                write_file(dir / "plan.jsonl", plan_text(plan));
                return plan;
            });
            auto final_state = stage("rl", [&] {
                auto s = trainer.rl_phase(sft_state, report.plan, sft_state, report);
                write_file(dir / "policy_state.json", state_text(s));
                write_file(dir / "train_report.json", report.to_json().dump(2) + "\n");
                return s;
            });
            auto eval_report = stage("eval", [&] {
                auto entries = cfg.solutions_path.empty() ? greedy_solutions(problems, pools, final_state)
                                                          : evaluation::load_solutions(cfg.solutions_path);
                std::ostringstream sol;
                evaluation::write_solutions(sol, entries);
                write_file(dir / "eval_solutions.jsonl", sol.str());
                auto eval_gateway = config::make_gateway(cfg.judge, cfg.judge.eval_judge);
                auto r = evaluation::evaluate(problems, entries, cfg.scoring, eval_gateway.get());
                write_file(dir / "eval_report.json", r.to_json().dump(2) + "\n");
                write_file(dir / "eval_report.txt", r.to_text());
                return r;
            });
            ctx.info(report.to_text());
            out << eval_report.to_text();
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace geoverify::cli
