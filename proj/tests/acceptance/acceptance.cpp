// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks, one line of output per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "geoverify/answer.hpp"
#include "geoverify/construction.hpp"
#include "geoverify/curriculum.hpp"
#include "geoverify/dataset.hpp"
#include "geoverify/evaluation.hpp"
#include "geoverify/judge.hpp"
#include "geoverify/policy.hpp"
#include "geoverify/reward.hpp"
#include "geoverify/scoring.hpp"
#include "geoverify/solution.hpp"
#include "../support/testing.hpp"

using namespace geoverify;
namespace gt = geoverify::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

dataset::GeometryProblem answer_problem() {
    dataset::GeometryProblem p;
    p.id = "p";
    p.question_text = "q";
    p.reference_answer = "1";
    return p;
}

// ---------------------------------------------------------------------------

Outcome ac1_correctness_reward() {
    Outcome o;
    auto t0 = Clock::now();
    const double lambdas[] = {0.0, 0.1, 0.2, 0.5};
    for (int k = 0; k <= 10; ++k) {
        double acc = k / 10.0;
        for (double lam : lambdas) {
            double up = acc + lam > 1.0 ? 1.0 : acc + lam;
            double down = acc - lam < 0.0 ? 0.0 : acc - lam;
            if (reward::correctness_reward(acc, true, lam) != up) o.fail("grid mismatch (aux correct) at acc=" + fmt(acc));
            if (reward::correctness_reward(acc, false, lam) != down) o.fail("grid mismatch (aux wrong) at acc=" + fmt(acc));
        }
    }
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        double a = u(rng), b = u(rng), lam = i % 4 == 0 ? 0.0 : u(rng);
        if (a > b) std::swap(a, b);
        for (bool aux : {true, false})
            if (reward::correctness_reward(a, aux, lam) > reward::correctness_reward(b, aux, lam))
                o.fail("not monotone in acc");
        double hi = reward::correctness_reward(a, true, lam), lo = reward::correctness_reward(a, false, lam);
        if (lam > 0.0 && !(hi > lo)) o.fail("aux dominance not strict at acc=" + fmt(a) + " lambda=" + fmt(lam));
        if (lam == 0.0 && (hi != a || lo != a)) o.fail("lambda=0 does not reduce to acc");
    }
    double t = seconds_since(t0);
    if (t >= 1.0) o.fail("runtime " + fmt(t) + " s");
    if (o.pass) o.detail = "88 grid points, 10000 random samples, " + std::to_string(static_cast<int>(t * 1000)) + " ms";
    return o;
}

Outcome ac2_composite_linearity() {
    Outcome o;
    auto problem = answer_problem();
    solution::ParsedSolution parsed;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        reward::RewardWeights w{u(rng) * 3, u(rng) * 3, u(rng) * 3, u(rng) * 0.6};
        if (i % 2) w = w.normalized();
        double acc = i % 7 == 0 ? std::round(u(rng)) : u(rng);
        int f_aux = static_cast<int>(rng() % 2), f_fmt = static_cast<int>(rng() % 2);
        auto r = reward::composite_reward(problem, parsed, w, acc, f_aux, f_fmt);
        double f_corr = f_aux ? std::min(1.0, acc + w.lambda) : std::max(0.0, acc - w.lambda);
        double expect = w.alpha * f_corr + w.beta * f_aux + w.gamma * f_fmt;
        worst = std::max(worst, std::abs(r.total - expect));
        if (std::abs(r.total - expect) > 1e-12) o.fail("total off by " + fmt(r.total - expect));
        if (i % 2 && (r.total < 0.0 || r.total > 1.0)) o.fail("normalized total outside [0,1]: " + fmt(r.total));
    }
    if (o.pass) o.detail = "10000 triples, max deviation " + fmt(worst);
    return o;
}

Outcome ac3_proof_rubric() {
    Outcome o;
    struct Case {
        double s[5];
        double expect;
    } cases[] = {{{0.5, 1, 1, 1, 1}, 0.85}, {{1, 1, 1, 1, 1}, 1.0}, {{0, 0, 0, 0, 0}, 0.0}};

    dataset::GeometryProblem p;
    p.id = "rubric";
    p.question_text = "Prove it.";
    p.question_type = dataset::QuestionType::ProofBased;
    p.reference_proof = "Because.";
    auto mock = std::make_shared<judge::MockJudge>(3);
    judge::Gateway gateway(mock);

    int n = 0;
    for (const auto& c : cases) {
        auto v = judge::make_verdict(c.s[0], c.s[1], c.s[2], c.s[3], c.s[4]);
        if (std::abs(v.score - c.expect) > 1e-9) o.fail("make_verdict gave " + fmt(v.score));

        std::string raw = solution::compose_solution("t", "attempt " + std::to_string(n++));
        mock->pin_verdict(p.id, raw, v);
        auto judged = gateway.judge_proof(p, solution::parse_solution(raw));
        if (std::abs(judged.score - c.expect) > 1e-9) o.fail("gateway verdict gave " + fmt(judged.score));

        // Reported score disagreeing by more than 0.01 is replaced.
        std::ostringstream reply;
        reply << "[JSON]: {\"score\": " << (c.expect > 0.5 ? 0.1 : 0.9) << ", \"validity\": " << c.s[0]
              << ", \"completeness\": " << c.s[1] << ", \"correctness\": " << c.s[2]
              << ", \"construction\": " << c.s[3] << ", \"clarity\": " << c.s[4] << ", \"explanation\": \"x\"}";
        auto parsed = judge::parse_proof_verdict(reply.str());
        if (std::abs(parsed.score - c.expect) > 1e-9 || !parsed.score_overridden) o.fail("override not applied");
    }
    if (o.pass) o.detail = "0.85 / 1.0 / 0.0 via direct, gateway and reply parsing";
    return o;
}

Outcome ac4_difficulty_and_plan() {
    Outcome o;
    for (std::size_t k = 1; k <= 16; ++k) {
        for (std::size_t s = 0; s <= k; ++s) {
            curriculum::SamplingRecord r{"x", std::vector<int>(k, 0), {}};
            std::fill(r.deltas.begin(), r.deltas.begin() + static_cast<long>(s), 1);
            double d = curriculum::difficulty(r);
            double exact = static_cast<double>(k - s) / static_cast<double>(k);
            double naive = 1.0 - static_cast<double>(s) / static_cast<double>(k);
            if (d != exact || std::abs(d - naive) > 0x1p-52)
                o.fail("d(K=" + std::to_string(k) + ", s=" + std::to_string(s) + ") = " + fmt(d));
        }
    }

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 1 + rng() % 30;
        std::vector<curriculum::SamplingRecord> records;
        struct Row {
            std::string id;
            std::size_t k, s;
        };
        std::vector<Row> rows;
        std::set<std::string> ids;
        while (records.size() < n) {
            std::string id(1 + rng() % 3, 'a');
            for (auto& ch : id) ch = static_cast<char>('a' + rng() % 6);
            if (!ids.insert(id).second) continue;
            std::size_t k = 1 + rng() % 16, s = rng() % (k + 1);
            curriculum::SamplingRecord r{id, std::vector<int>(k, 0), {}};
            for (std::size_t j = 0; j < s; ++j) r.deltas[j] = 1;
            std::shuffle(r.deltas.begin(), r.deltas.end(), rng);
            records.push_back(r);
            rows.push_back({id, k, s});
        }
        auto plan = curriculum::build_plan(records);

        // Independent oracle: exact rational comparison of (k - s) / k.
        std::vector<Row> keep;
        std::size_t trivial = 0, unsolvable = 0;
        for (const auto& r : rows) {
            if (r.s == r.k) ++trivial;
            else if (r.s == 0) ++unsolvable;
            else keep.push_back(r);
        }
        std::sort(keep.begin(), keep.end(), [](const Row& a, const Row& b) {
            auto lhs = (a.k - a.s) * b.k, rhs = (b.k - b.s) * a.k;
            return lhs != rhs ? lhs < rhs : a.id < b.id;
        });
        if (plan.order.size() != keep.size()) {
            o.fail("plan size mismatch");
            continue;
        }
        for (std::size_t i = 0; i < keep.size(); ++i)
            if (plan.order[i].problem_id != keep[i].id) o.fail("order differs from oracle at trial " + std::to_string(trial));
        if (plan.count(curriculum::Exclusion::Trivial) != trivial ||
            plan.count(curriculum::Exclusion::Unsolvable) != unsolvable)
            o.fail("exclusion counts differ");
        for (const auto& e : plan.order)
            if (e.difficulty == 0.0 || e.difficulty == 1.0) o.fail("d=0 or d=1 left in plan");
        if (!(curriculum::build_plan(records) == plan)) o.fail("plan not deterministic");
    }
    if (o.pass) o.detail = "136 (K, s) pairs exact; 1000 random plans match the oracle";
    return o;
}

Outcome ac5_construction_matching() {
    Outcome o;
    auto t0 = Clock::now();
    gt::ConstructionGen gen(5);
    std::size_t flips = 0;
    for (int i = 0; i < 1000; ++i) {
        auto prog = gen.program(1, 7, 3);
        auto base_names = gen.names(prog.fresh, false);
        auto base_text = gen.render(prog, base_names, gen.order(prog, false), false);
        construction::ConstructionSet reference;
        try {
            reference = construction::parse_constructions(base_text);
        } catch (const std::exception& e) {
            o.fail(std::string("generated program rejected: ") + e.what() + "\n" + base_text);
            continue;
        }

        auto variant = gen.render(prog, gen.names(prog.fresh, true), gen.order(prog, true), true);
        auto parsed = construction::parse_constructions_lenient(variant);
        if (parsed.parse_failed) o.fail("variant rejected: " + parsed.error + "\n" + variant);
        if (construction::match_aux(parsed.set, reference) != 1)
            o.fail("permuted/renamed/noisy variant did not match:\n" + base_text + "---\n" + variant);

        // Drop one statement that nothing else depends on.
        std::vector<std::size_t> droppable;
        for (std::size_t j = 0; j < prog.stmts.size(); ++j) {
            const auto& s = prog.stmts[j];
            bool used = false;
            if (s.declares >= 0)
                for (const auto& t : prog.stmts)
                    for (const auto& p : t.pts) used = used || p == "#" + std::to_string(s.declares);
            if (!used) droppable.push_back(j);
        }
        if (!droppable.empty()) {
            auto dropped = prog;
            dropped.stmts.erase(dropped.stmts.begin() + static_cast<long>(droppable[gen.rng()() % droppable.size()]));
            auto text = gen.render(dropped, gen.names(prog.fresh, true), gen.order(dropped, true), true);
            if (construction::match_aux(construction::parse_constructions_lenient(text).set, reference) != 0)
                o.fail("dropping a statement still matched:\n" + base_text + "---\n" + text);
            ++flips;
        }

        auto added = prog;
        auto extra = gen.extra_statement(prog);
        if (extra.declares >= 0) ++added.fresh;
        added.stmts.push_back(extra);
        auto text = gen.render(added, gen.names(added.fresh, true), gen.order(added, true), true);
        if (construction::match_aux(construction::parse_constructions_lenient(text).set, reference) != 0)
            o.fail("adding a statement still matched:\n" + base_text + "---\n" + text);
        ++flips;
    }
    double t = seconds_since(t0);
    if (t >= 5.0) o.fail("runtime " + fmt(t) + " s");
    if (o.pass)
        o.detail = "1000 sets, " + std::to_string(flips) + " single-statement edits, " +
                   std::to_string(static_cast<int>(t * 1000)) + " ms";
    return o;
}

Outcome ac6_format_reward() {
    Outcome o;
    auto cases = gt::read_jsonl("format_golden.jsonl");
    if (cases.size() != 50) o.fail("expected 50 cases, found " + std::to_string(cases.size()));
    std::size_t ok = 0;
    for (const auto& c : cases) {
        auto name = c.at("name").get<std::string>();
        auto parsed = solution::parse_solution(c.at("raw").get<std::string>());
        int label = c.at("format_ok").get<bool>() ? 1 : 0;
        if (solution::format_reward(parsed) != label) o.fail("case " + name + ": " + parsed.diagnostic);
        if (c.contains("constructions") && parsed.constructions_source != c.at("constructions").get<std::string>())
            o.fail("case " + name + ": constructions '" + parsed.constructions_source + "'");
        if (parsed.format_ok) {
            ++ok;
            if (!(solution::parse_solution(solution::render_solution(parsed)) == parsed))
                o.fail("case " + name + ": render/parse not identity");
        }
    }
    if (o.pass) o.detail = "50/50 labels agree; round trip on " + std::to_string(ok) + " well-formed cases";
    return o;
}

double norm(const std::vector<double>& v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    double scale = std::max(norm(a), norm(b));
    return scale < 1e-10 ? norm(d) : norm(d) / scale;
}

template <typename F>
std::vector<double> central_difference(std::vector<double> w, F f, double h = 1e-5) {
    std::vector<double> g(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        double keep = w[i];
        w[i] = keep + h;
        double up = f(w);
        w[i] = keep - h;
        double down = f(w);
        w[i] = keep;
        g[i] = (up - down) / (2 * h);
    }
    return g;
}

policy::CandidatePool random_pool(std::mt19937_64& rng, std::size_t d, std::size_t n) {
    std::normal_distribution<double> z(0.0, 1.0);
    policy::CandidatePool pool;
    pool.problem_id = "g";
    for (std::size_t j = 0; j < n; ++j) {
        policy::Candidate c;
        c.text = "c" + std::to_string(j);
        for (std::size_t i = 0; i < d; ++i) c.features.push_back(z(rng));
        pool.candidates.push_back(c);
    }
    pool.reference_index = rng() % n;
    return pool;
}

Outcome ac7_gradient_checks() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> z(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_sft = 0.0, worst_grpo = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        std::size_t d = 1 + rng() % 8, n = 2 + rng() % 4, g = 2 + rng() % 3;
        auto pool = random_pool(rng, d, n);
        std::vector<double> w(d);
        for (auto& x : w) x = 0.5 * z(rng);

        auto ga = policy::sft_gradient(w, pool);
        auto gn = central_difference(w, [&](const std::vector<double>& v) { return policy::sft_loss(v, pool); });
        double e = relative_error(ga, gn);
        worst_sft = std::max(worst_sft, e);
        if (e >= 1e-5) o.fail("SFT instance " + std::to_string(inst) + " error " + fmt(e));

        policy::GrpoConfig cfg;
        cfg.clip_ratio = 0.2;
        if (inst % 2) cfg.kl_coefficient = 0.05 + u(rng);
        std::vector<double> ref(d);
        for (auto& x : ref) x = 0.5 * z(rng);

        // Behavior log-probs come from nearby weights, so ratios spread around
        // 1 and some terms clip. Instances too close to a clip kink are redrawn.
        for (int attempt = 0;; ++attempt) {
            std::vector<double> old = w;
            for (auto& x : old) x += 0.3 * z(rng);
            auto old_p = policy::policy_distribution(old, pool);
            auto cur_p = policy::policy_distribution(w, pool);
            policy::Rollout r;
            for (std::size_t k = 0; k < g; ++k) {
                std::size_t a = rng() % n;
                r.actions.push_back(a);
                r.old_log_probs.push_back(std::log(old_p[a]));
                r.rewards.push_back(u(rng));
            }
            bool near_kink = false;
            for (std::size_t k = 0; k < g; ++k) {
                double ratio = cur_p[r.actions[k]] / old_p[r.actions[k]];
                near_kink = near_kink || std::abs(ratio - 1.2) < 1e-3 || std::abs(ratio - 0.8) < 1e-3;
            }
            if (near_kink && attempt < 20) continue;
            auto adv = policy::group_advantages(r.rewards, cfg.advantage_epsilon).values;
            std::span<const double> refw = cfg.kl_coefficient > 0 ? std::span<const double>(ref) : std::span<const double>{};
            auto ga2 = policy::grpo_gradient(w, pool, r, adv, cfg, refw);
            auto gn2 = central_difference(
                w, [&](const std::vector<double>& v) { return policy::grpo_objective(v, pool, r, adv, cfg, refw); });
            double e2 = relative_error(ga2, gn2);
            worst_grpo = std::max(worst_grpo, e2);
            if (e2 >= 1e-5) o.fail("GRPO instance " + std::to_string(inst) + " error " + fmt(e2));
            break;
        }
    }
    if (o.pass) o.detail = "100 instances, worst relative error SFT " + fmt(worst_sft) + ", GRPO " + fmt(worst_grpo);
    return o;
}

Outcome ac8_group_properties() {
    Outcome o;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> z(0.0, 1.0);
    std::size_t scaled = 0;
    for (int i = 0; i < 1000; ++i) {
        std::size_t g = 2 + rng() % 15;
        std::vector<double> r(g);
        for (auto& x : r) x = i % 5 == 0 ? std::round(u(rng)) : u(rng);
        auto adv = policy::group_advantages(r, 1e-8);
        if (!adv.degenerate) {
            double sum = std::accumulate(adv.values.begin(), adv.values.end(), 0.0);
            if (std::abs(sum) > 1e-9) o.fail("advantages sum to " + fmt(sum));
        }

        // Scale invariance of the advantages and of the resulting update.
        double c = 0.5 + u(rng) * 99.5;
        if (adv.stddev >= 0.05) {
            ++scaled;
            std::vector<double> rc(r);
            for (auto& x : rc) x *= c;
            auto advc = policy::group_advantages(rc, 1e-8);
            for (std::size_t k = 0; k < g; ++k)
                if (std::abs(advc.values[k] - adv.values[k]) > 1e-6 * std::max(1.0, std::abs(adv.values[k])))
                    o.fail("advantage changed under scaling by " + fmt(c));

            auto pool = random_pool(rng, 4, 3);
            auto state = policy::PolicyState::zeros(4);
            for (auto& x : state.weights) x = 0.3 * z(rng);
            auto probs = policy::policy_distribution(state, pool);
            policy::Rollout ro, roc;
            for (std::size_t k = 0; k < g; ++k) {
                std::size_t a = rng() % 3;
                ro.actions.push_back(a);
                ro.old_log_probs.push_back(std::log(probs[a]));
            }
            roc = ro;
            ro.rewards = r;
            roc.rewards = rc;
            policy::GrpoConfig cfg;
            auto s1 = policy::grpo_step(state, pool, ro, cfg).state;
            auto s2 = policy::grpo_step(state, pool, roc, cfg).state;
            for (std::size_t k = 0; k < 4; ++k)
                if (std::abs(s1.weights[k] - s2.weights[k]) > 1e-6 * std::max(1.0, std::abs(s1.weights[k])))
                    o.fail("update changed under reward scaling");
        }

        // Equal rewards leave the state untouched.
        auto pool = random_pool(rng, 3, 3);
        auto state = policy::PolicyState::zeros(3);
        for (auto& x : state.weights) x = z(rng);
        policy::Rollout flat;
        double v = u(rng);
        for (std::size_t k = 0; k < g; ++k) {
            flat.actions.push_back(k % 3);
            flat.old_log_probs.push_back(std::log(policy::policy_distribution(state, pool)[k % 3]));
            flat.rewards.push_back(v);
        }
        policy::GrpoConfig cfg;
        cfg.kl_coefficient = i % 2 ? 0.1 : 0.0;
        auto step = policy::grpo_step(state, pool, flat, cfg, state.weights);
        if (!(step.state == state) || !step.diagnostics.degenerate) o.fail("equal rewards changed the state");
    }
    if (o.pass) o.detail = "1000 groups, " + std::to_string(scaled) + " scaling checks";
    return o;
}

Outcome ac9_end_to_end() {
    Outcome o;
    auto t0 = Clock::now();
    auto problems = dataset::load_dataset(gt::data_path("synthetic_problems.jsonl"));
    auto pools = policy::load_pools(gt::data_path("synthetic_pools.jsonl"));
    auto best = gt::read_json("synthetic_best.json");
    reward::Scorer scorer({}, nullptr);

    policy::TrainerConfig cfg;
    cfg.seed = 2026;
    auto set = policy::prepare_training_set(problems, pools, scorer, cfg);
    if (set.pools.size() != 50) o.fail("expected 50 training pools, got " + std::to_string(set.pools.size()));
    std::size_t with_reference = 0;
    for (std::size_t i = 0; i < set.pools.size(); ++i) {
        const auto& rw = set.scores[i].rewards;
        auto top = static_cast<std::size_t>(std::max_element(rw.begin(), rw.end()) - rw.begin());
        if (std::count(rw.begin(), rw.end(), rw[top]) != 1 || top != best.at(set.pools[i].problem_id).get<std::size_t>())
            o.fail("pool " + set.pools[i].problem_id + " lacks a unique best candidate");
        if (set.pools[i].reference_index) ++with_reference;
    }
    if (with_reference != 25) o.fail("expected 25 pools with references");

    // Brute-force oracle: always pick the best candidate.
    double r_max = 0.0;
    for (const auto& s : set.scores) {
        double m = 0.0;
        for (double r : s.rewards) m = std::max(m, r);
        r_max += m;
    }
    r_max /= static_cast<double>(set.scores.size());

    auto a = policy::run_training(set, std::nullopt, cfg);
    auto b = policy::run_training(set, std::nullopt, cfg);
    double sft_reward = policy::mean_expected_reward(a.sft_state.weights, set);
    double final_reward = policy::mean_expected_reward(a.state.weights, set);
    if (!(a.state == b.state) || a.report.to_json() != b.report.to_json()) o.fail("runs with the same seed differ");
    if (final_reward < 0.9 * r_max) o.fail("expected reward " + fmt(final_reward) + " < 0.9 * " + fmt(r_max));
    if (a.report.plan.order.empty()) o.fail("curriculum left nothing for the RL phase");
    double t = seconds_since(t0);
    if (t >= 60.0) o.fail("runtime " + fmt(t) + " s");
    if (o.pass) {
        std::ostringstream s;
        s.precision(4);
        s << "expected reward " << final_reward << " (after SFT " << sft_reward << ") vs r_max " << r_max << ", "
          << a.report.plan.order.size() << " scheduled, " << static_cast<int>(t * 1000) << " ms";
        o.detail = s.str();
    }
    return o;
}

Outcome ac10_evaluation_report() {
    Outcome o;
    auto problems = dataset::load_dataset(gt::data_path("eval_problems.jsonl"));
    auto entries = evaluation::load_solutions(gt::data_path("eval_solutions.jsonl"));
    auto mock = std::make_shared<judge::MockJudge>(0);
    std::ifstream pins(gt::data_path("eval_pins.jsonl"));
    mock->load_pins(pins);
    judge::Gateway gateway(mock);
    auto report = evaluation::evaluate(problems, entries, {}, &gateway);
    auto expected = gt::read_json("eval_expected.json");
    auto actual = report.to_json();

    auto check = [&](const nlohmann::json& want, const nlohmann::json& got, const std::string& where) {
        if (got.at("count") != want.at("count")) o.fail(where + " count " + got.at("count").dump());
        if (std::abs(got.at("score_sum").get<double>() - want.at("score_sum").get<double>()) > 1e-9)
            o.fail(where + " score_sum " + got.at("score_sum").dump());
        if (std::abs(got.at("accuracy").get<double>() - want.at("accuracy").get<double>()) > 1e-9)
            o.fail(where + " accuracy " + got.at("accuracy").dump());
    };
    for (const char* type : {"AnswerBased", "ProofBased"})
        for (const char* col : {"no_aux", "aux"}) check(expected[type][col], actual[type][col], std::string(type) + "/" + col);
    check(expected["overall"], actual["overall"], "overall");
    if (mock->calls() == 0) o.fail("proofs were not sent to the mock judge");
    if (o.pass) o.detail = "40 solutions, 4 cells and overall match the hand tallies";
    return o;
}

Outcome ac11_answer_grader() {
    Outcome o;
    auto cases = gt::read_jsonl("answer_golden.jsonl");
    if (cases.size() != 30) o.fail("expected 30 pairs");
    std::size_t reflexive = 0;
    for (const auto& c : cases) {
        auto cand = c.at("candidate").get<std::string>(), ref = c.at("reference").get<std::string>();
        int got = answer::grade_answer(answer::parse_answer(cand), answer::parse_answer(ref));
        if (got != c.at("label").get<int>()) o.fail("'" + cand + "' vs '" + ref + "' graded " + std::to_string(got));
        for (const auto& x : {cand, ref}) {
            auto v = answer::parse_answer(x);
            if (answer::grade_answer(v, v) != 1) o.fail("'" + x + "' is not reflexive");
            ++reflexive;
        }
    }
    if (o.pass) o.detail = "30/30 labels agree; " + std::to_string(reflexive) + " reflexivity checks";
    return o;
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"AC1  correctness reward", ac1_correctness_reward},
        {"AC2  composite reward linearity", ac2_composite_linearity},
        {"AC3  proof rubric aggregation", ac3_proof_rubric},
        {"AC4  difficulty and curriculum order", ac4_difficulty_and_plan},
        {"AC5  construction matching invariances", ac5_construction_matching},
        {"AC6  format reward golden set", ac6_format_reward},
        {"AC7  SFT and GRPO gradient checks", ac7_gradient_checks},
        {"AC8  GRPO group properties", ac8_group_properties},
        {"AC9  desk-scale convergence", ac9_end_to_end},
        {"AC10 evaluation report", ac10_evaluation_report},
        {"AC11 answer grader golden set", ac11_answer_grader},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
