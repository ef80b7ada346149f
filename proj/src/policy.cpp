// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/policy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "geoverify/answer.hpp"
#include "geoverify/error.hpp"
#include "geoverify/hash.hpp"
#include "geoverify/scoring.hpp"

namespace geoverify::policy {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Features
// ---------------------------------------------------------------------------

Vector solution_features(std::string_view text, const solution::FormatTags& tags) {
    Vector phi(kFeatureDim, 0.0);
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) {
            std::uint64_t h = fnv1a64(text.substr(i, j - i));
            phi[h % kHashBuckets] += (h >> 63) ? -1.0 : 1.0;
        }
        i = j;
    }
    double norm = 0.0;
    for (std::size_t b = 0; b < kHashBuckets; ++b) norm += phi[b] * phi[b];
    if (norm > 0.0) {
        norm = std::sqrt(norm);
        for (std::size_t b = 0; b < kHashBuckets; ++b) phi[b] /= norm;
    }

    auto parsed = solution::parse_solution(text, tags);
    phi[kHashBuckets] = parsed.format_ok ? 1.0 : 0.0;
    phi[kHashBuckets + 1] = parsed.constructions_source.empty() ? 0.0 : 1.0;
    bool answer_ok = parsed.final_answer && answer::parse_answer(*parsed.final_answer).form != answer::Form::Text;
    phi[kHashBuckets + 2] = answer_ok ? 1.0 : 0.0;
    return phi;
}

// ---------------------------------------------------------------------------
// Pools and state
// ---------------------------------------------------------------------------

void CandidatePool::validate() const {
    if (candidates.size() < 2)
        throw ValidationError("pool '" + problem_id + "' needs at least two candidates");
    const std::size_t d = dim();
    for (const auto& c : candidates) {
        if (c.features.size() != d)
            throw ValidationError("pool '" + problem_id + "' mixes feature dimensions");
        for (double v : c.features)
            if (!std::isfinite(v)) throw ValidationError("pool '" + problem_id + "' has a non-finite feature");
    }
    if (reference_index && *reference_index >= candidates.size())
        throw ValidationError("pool '" + problem_id + "' reference_index out of range");
}

CandidatePool make_pool(std::string problem_id, const std::vector<std::string>& texts,
                        std::optional<std::size_t> reference_index, const solution::FormatTags& tags) {
    CandidatePool pool;
    pool.problem_id = std::move(problem_id);
    pool.reference_index = reference_index;
    pool.candidates.reserve(texts.size());
    for (const auto& t : texts) pool.candidates.push_back({t, solution_features(t, tags)});
    pool.validate();
    return pool;
}

std::vector<CandidatePool> read_pools(std::istream& in, const solution::FormatTags& tags) {
    std::vector<CandidatePool> pools;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw ValidationError("pool line " + std::to_string(line_no) + ": malformed record");
        try {
            std::optional<std::size_t> ref;
            if (auto it = j.find("reference_index"); it != j.end() && !it->is_null()) ref = it->get<std::size_t>();
            pools.push_back(make_pool(j.at("problem_id").get<std::string>(),
                                      j.at("candidates").get<std::vector<std::string>>(), ref, tags));
        } catch (const json::exception& e) {
            throw ValidationError("pool line " + std::to_string(line_no) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("pool line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return pools;
}

std::vector<CandidatePool> load_pools(const std::filesystem::path& path, const solution::FormatTags& tags) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open pool file " + path.string());
    return read_pools(in, tags);
}

void write_pools(std::ostream& out, const std::vector<CandidatePool>& pools) {
    for (const auto& p : pools) {
        json j{{"problem_id", p.problem_id}, {"candidates", json::array()}};
        for (const auto& c : p.candidates) j["candidates"].push_back(c.text);
        if (p.reference_index) j["reference_index"] = *p.reference_index;
        out << j.dump() << '\n';
    }
}

std::string_view to_string(OptimizerKind kind) { return kind == OptimizerKind::Adagrad ? "adagrad" : "sgd"; }

std::optional<OptimizerKind> parse_optimizer(std::string_view name) {
    if (name == "adagrad") return OptimizerKind::Adagrad;
    if (name == "sgd") return OptimizerKind::Sgd;
    return std::nullopt;
}

PolicyState PolicyState::zeros(std::size_t dim, std::uint64_t seed) {
    return {Vector(dim, 0.0), 0, seed, Vector(dim, 0.0)};
}

json PolicyState::to_json() const {
    return {{"weights", weights}, {"step_count", step_count}, {"rng_seed", rng_seed}, {"grad_sq_sum", grad_sq_sum}};
}

PolicyState PolicyState::from_json(const json& j) {
    try {
        PolicyState s;
        s.weights = j.at("weights").get<Vector>();
        s.step_count = j.at("step_count").get<std::size_t>();
        s.rng_seed = j.at("rng_seed").get<std::uint64_t>();
        s.grad_sq_sum = j.at("grad_sq_sum").get<Vector>();
        if (s.grad_sq_sum.size() != s.weights.size()) throw ValidationError("optimizer state size mismatch");
        return s;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed policy state: ") + e.what());
    }
}

void save_state(const std::filesystem::path& path, const PolicyState& state) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write state file " + path.string());
    out << state.to_json().dump() << '\n';
}

PolicyState load_state(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open state file " + path.string());
    auto j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ValidationError("state file is not JSON: " + path.string());
    return PolicyState::from_json(j);
}

void apply_update(PolicyState& state, std::span<const double> direction, double learning_rate, OptimizerKind kind) {
    constexpr double kAdagradFloor = 1e-10;
    for (std::size_t i = 0; i < state.weights.size(); ++i) {
        double g = direction[i];
        if (kind == OptimizerKind::Adagrad) {
            state.grad_sq_sum[i] += g * g;
            state.weights[i] += learning_rate * g / (std::sqrt(state.grad_sq_sum[i]) + kAdagradFloor);
        } else {
            state.weights[i] += learning_rate * g;
        }
    }
    ++state.step_count;
}

// ---------------------------------------------------------------------------
// Policy
// ---------------------------------------------------------------------------

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// log-softmax of the candidate scores.
Vector log_policy(std::span<const double> weights, const CandidatePool& pool) {
    Vector z = candidate_scores(weights, pool);
    double m = *std::max_element(z.begin(), z.end());
    double s = 0.0;
    for (double v : z) s += std::exp(v - m);
    double lse = m + std::log(s);
    for (double& v : z) v -= lse;
    return z;
}

// Pulls a gradient with respect to candidate scores back to the weights.
Vector to_weight_space(std::span<const double> dscores, const CandidatePool& pool) {
    Vector g(pool.dim(), 0.0);
    for (std::size_t j = 0; j < pool.candidates.size(); ++j) {
        if (dscores[j] == 0.0) continue;
        const auto& phi = pool.candidates[j].features;
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += dscores[j] * phi[i];
    }
    return g;
}

double kl_divergence(std::span<const double> logp, std::span<const double> logq) {
    double kl = 0.0;
    for (std::size_t j = 0; j < logp.size(); ++j) kl += std::exp(logp[j]) * (logp[j] - logq[j]);
    return kl;
}

bool is_clipped(double ratio, double advantage, double eps) {
    return (ratio > 1.0 + eps && advantage > 0.0) || (ratio < 1.0 - eps && advantage < 0.0);
}

void check_rollout(const Rollout& rollout, const CandidatePool& pool, std::span<const double> advantages) {
    if (rollout.old_log_probs.size() != rollout.size() || advantages.size() != rollout.size())
        throw ValidationError("rollout arrays differ in length");
    for (auto a : rollout.actions)
        if (a >= pool.candidates.size()) throw ValidationError("rollout action outside the pool");
}

} // namespace

Vector candidate_scores(std::span<const double> weights, const CandidatePool& pool) {
    Vector z;
    z.reserve(pool.candidates.size());
    for (const auto& c : pool.candidates) {
        if (c.features.size() != weights.size())
            throw ValidationError("feature dimension " + std::to_string(c.features.size()) +
                                  " does not match weight dimension " + std::to_string(weights.size()));
        double s = dot(weights, c.features);
        if (!std::isfinite(s)) throw ValidationError("non-finite candidate score in pool '" + pool.problem_id + "'");
        z.push_back(s);
    }
    if (z.empty()) throw ValidationError("pool '" + pool.problem_id + "' is empty");
    return z;
}

Vector policy_distribution(std::span<const double> weights, const CandidatePool& pool) {
    Vector p = candidate_scores(weights, pool);
    double m = *std::max_element(p.begin(), p.end());
    double s = 0.0;
    for (double& v : p) {
        v = std::exp(v - m);
        s += v;
    }
    for (double& v : p) v /= s;
    return p;
}

double expected_reward(std::span<const double> weights, const CandidatePool& pool, std::span<const double> rewards) {
    auto p = policy_distribution(weights, pool);
    return dot(p, rewards);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::categorical(std::span<const double> probabilities) {
    double u = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        acc += probabilities[i];
        if (u < acc) return i;
    }
    return probabilities.size() - 1;
}

// ---------------------------------------------------------------------------
// SFT
// ---------------------------------------------------------------------------

double sft_loss(std::span<const double> weights, const CandidatePool& pool) {
    if (!pool.reference_index) throw ValidationError("pool '" + pool.problem_id + "' has no reference solution");
    return -log_policy(weights, pool)[*pool.reference_index];
}

Vector sft_gradient(std::span<const double> weights, const CandidatePool& pool) {
    if (!pool.reference_index) throw ValidationError("pool '" + pool.problem_id + "' has no reference solution");
    Vector dz = policy_distribution(weights, pool);
    dz[*pool.reference_index] -= 1.0;
    return to_weight_space(dz, pool);
}

SftResult sft_step(const PolicyState& state, const CandidatePool& pool, double learning_rate, OptimizerKind optimizer) {
    SftResult out{state, sft_loss(state.weights, pool)};
    if (learning_rate == 0.0) return out;
    Vector g = sft_gradient(state.weights, pool);
    for (double& v : g) v = -v;
    apply_update(out.state, g, learning_rate, optimizer);
    return out;
}

// ---------------------------------------------------------------------------
// GRPO
// ---------------------------------------------------------------------------

void GrpoConfig::validate() const {
    if (group_size < 2) throw ValidationError("GRPO group size must be at least 2");
    if (!(clip_ratio > 0.0)) throw ValidationError("GRPO clip ratio must be positive");
    if (!(learning_rate > 0.0)) throw ValidationError("GRPO learning rate must be positive");
    if (!(kl_coefficient >= 0.0)) throw ValidationError("KL coefficient must be nonnegative");
    if (!(advantage_epsilon >= 0.0)) throw ValidationError("advantage epsilon must be nonnegative");
    if (inner_steps == 0) throw ValidationError("GRPO needs at least one inner step");
}

Rollout sample_rollout(std::span<const double> weights, const CandidatePool& pool,
                       std::span<const double> candidate_rewards, std::size_t group_size, Rng& rng) {
    if (candidate_rewards.size() != pool.candidates.size())
        throw ValidationError("reward count does not match pool size for '" + pool.problem_id + "'");
    Vector logp = log_policy(weights, pool);
    Vector p(logp.size());
    std::transform(logp.begin(), logp.end(), p.begin(), [](double v) { return std::exp(v); });
    Rollout r;
    for (std::size_t k = 0; k < group_size; ++k) {
        std::size_t a = rng.categorical(p);
        r.actions.push_back(a);
        r.old_log_probs.push_back(logp[a]);
        r.rewards.push_back(candidate_rewards[a]);
    }
    return r;
}

Advantages group_advantages(std::span<const double> rewards, double epsilon) {
    Advantages out;
    const double n = static_cast<double>(rewards.size());
    if (rewards.empty()) return out;
    out.mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
    double var = 0.0;
    for (double r : rewards) var += (r - out.mean) * (r - out.mean);
    out.stddev = std::sqrt(var / n);
    out.values.assign(rewards.size(), 0.0);
    if (out.stddev <= epsilon) {
        out.degenerate = true;
        return out;
    }
    for (std::size_t k = 0; k < rewards.size(); ++k) out.values[k] = (rewards[k] - out.mean) / (out.stddev + epsilon);
    return out;
}

double grpo_objective(std::span<const double> weights, const CandidatePool& pool, const Rollout& rollout,
                      std::span<const double> advantages, const GrpoConfig& config,
                      std::span<const double> reference_weights) {
    check_rollout(rollout, pool, advantages);
    Vector logp = log_policy(weights, pool);
    const double eps = config.clip_ratio;
    double total = 0.0;
    for (std::size_t k = 0; k < rollout.size(); ++k) {
        double ratio = std::exp(logp[rollout.actions[k]] - rollout.old_log_probs[k]);
        double a = advantages[k];
        total += std::min(ratio * a, std::clamp(ratio, 1.0 - eps, 1.0 + eps) * a);
    }
    double objective = total / static_cast<double>(rollout.size());
    if (config.kl_coefficient > 0.0 && !reference_weights.empty())
        objective -= config.kl_coefficient * kl_divergence(logp, log_policy(reference_weights, pool));
    return objective;
}

Vector grpo_gradient(std::span<const double> weights, const CandidatePool& pool, const Rollout& rollout,
                     std::span<const double> advantages, const GrpoConfig& config,
                     std::span<const double> reference_weights) {
    check_rollout(rollout, pool, advantages);
    Vector logp = log_policy(weights, pool);
    const std::size_t n = logp.size();
    Vector p(n);
    std::transform(logp.begin(), logp.end(), p.begin(), [](double v) { return std::exp(v); });

    // d/dz_j log p_a = [a == j] - p_j
    Vector dz(n, 0.0);
    const double inv_g = 1.0 / static_cast<double>(rollout.size());
    for (std::size_t k = 0; k < rollout.size(); ++k) {
        double ratio = std::exp(logp[rollout.actions[k]] - rollout.old_log_probs[k]);
        double a = advantages[k];
        if (a == 0.0 || is_clipped(ratio, a, config.clip_ratio)) continue;
        double c = a * ratio * inv_g;
        dz[rollout.actions[k]] += c;
        for (std::size_t j = 0; j < n; ++j) dz[j] -= c * p[j];
    }
    if (config.kl_coefficient > 0.0 && !reference_weights.empty()) {
        Vector logq = log_policy(reference_weights, pool);
        double kl = kl_divergence(logp, logq);
        for (std::size_t j = 0; j < n; ++j) dz[j] -= config.kl_coefficient * p[j] * (logp[j] - logq[j] - kl);
    }
    return to_weight_space(dz, pool);
}

GrpoStepResult grpo_step(const PolicyState& state, const CandidatePool& pool, const Rollout& rollout,
                         const GrpoConfig& config, std::span<const double> reference_weights) {
    config.validate();
    if (rollout.size() < 2) throw ValidationError("GRPO needs at least two rollouts per group");

    GrpoStepResult out{state, {}};
    auto adv = group_advantages(rollout.rewards, config.advantage_epsilon);
    auto& diag = out.diagnostics;
    diag.mean_reward = adv.mean;
    diag.advantages = adv.values;
    diag.degenerate = adv.degenerate;
    diag.objective = grpo_objective(state.weights, pool, rollout, adv.values, config, reference_weights);
    if (adv.degenerate) return out;

    std::size_t clipped = 0;
    for (std::size_t step = 0; step < config.inner_steps; ++step) {
        Vector logp = log_policy(out.state.weights, pool);
        for (std::size_t k = 0; k < rollout.size(); ++k) {
            double ratio = std::exp(logp[rollout.actions[k]] - rollout.old_log_probs[k]);
            if (is_clipped(ratio, adv.values[k], config.clip_ratio)) ++clipped;
        }
        Vector g = grpo_gradient(out.state.weights, pool, rollout, adv.values, config, reference_weights);
        apply_update(out.state, g, config.learning_rate, config.optimizer);
    }
    diag.clip_fraction = static_cast<double>(clipped) / static_cast<double>(rollout.size() * config.inner_steps);
    return out;
}

// ---------------------------------------------------------------------------
// Training loop
// ---------------------------------------------------------------------------

void TrainerConfig::validate() const {
    grpo.validate();
    if (!(sft_learning_rate >= 0.0)) throw ValidationError("SFT learning rate must be nonnegative");
    if (sampling_k == 0) throw ValidationError("rejection sampling needs K >= 1");
}

const CandidatePool* TrainingSet::pool_for(std::string_view problem_id) const {
    auto i = index_of(problem_id);
    return i == std::string_view::npos ? nullptr : &pools[i];
}

std::size_t TrainingSet::index_of(std::string_view problem_id) const {
    for (std::size_t i = 0; i < pools.size(); ++i)
        if (pools[i].problem_id == problem_id) return i;
    return std::string_view::npos;
}

TrainingSet prepare_training_set(const std::vector<dataset::GeometryProblem>& problems,
                                 const std::vector<CandidatePool>& pools, const reward::Scorer& scorer,
                                 const TrainerConfig& config, bool train_split_only) {
    TrainingSet set;
    for (const auto& pool : pools) {
        const auto* problem = dataset::find_problem(problems, pool.problem_id);
        if (!problem) throw ValidationError("pool references unknown problem '" + pool.problem_id + "'");
        if (train_split_only && problem->split != dataset::Split::Train) continue;
        pool.validate();
        PoolScores scores;
        for (const auto& c : pool.candidates) {
            auto scored = scorer.score(*problem, c.text);
            scores.rewards.push_back(scored.reward.total);
            scores.deltas.push_back(curriculum::delta(scored.reward.acc, problem->question_type, config.thresholds));
        }
        set.problems.push_back(problem);
        set.pools.push_back(pool);
        set.scores.push_back(std::move(scores));
    }
    return set;
}

double mean_expected_reward(std::span<const double> weights, const TrainingSet& set) {
    if (set.pools.empty()) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < set.pools.size(); ++i)
        total += expected_reward(weights, set.pools[i], set.scores[i].rewards);
    return total / static_cast<double>(set.pools.size());
}

double max_achievable_reward(const TrainingSet& set) {
    if (set.pools.empty()) return 0.0;
    double total = 0.0;
    for (const auto& s : set.scores) total += *std::max_element(s.rewards.begin(), s.rewards.end());
    return total / static_cast<double>(set.pools.size());
}

Trainer::Trainer(const TrainingSet& set, TrainerConfig config)
    : set_(set), config_(std::move(config)), rng_(config_.seed) {
    config_.validate();
}

PolicyState Trainer::sft_phase(PolicyState state, TrainingReport& report) {
    for (std::size_t epoch = 0; epoch < config_.sft_epochs; ++epoch) {
        EpochReport e;
        e.phase = "sft";
        e.epoch = epoch + 1;
        std::size_t steps = 0;
        for (const auto& pool : set_.pools) {
            if (!pool.reference_index) continue;
            auto step = sft_step(state, pool, config_.sft_learning_rate, config_.grpo.optimizer);
            state = std::move(step.state);
            e.mean_loss += step.loss;
            ++steps;
        }
        if (steps) e.mean_loss /= static_cast<double>(steps);
        e.groups = steps;
        e.expected_reward = mean_expected_reward(state.weights, set_);
        report.epochs.push_back(std::move(e));
    }
    return state;
}

std::vector<curriculum::SamplingRecord> Trainer::rejection_sample(const PolicyState& state) {
    std::vector<curriculum::SamplingRecord> records;
    records.reserve(set_.pools.size());
    for (std::size_t i = 0; i < set_.pools.size(); ++i) {
        const auto& pool = set_.pools[i];
        auto p = policy_distribution(state.weights, pool);
        curriculum::SamplingRecord r;
        r.problem_id = pool.problem_id;
        for (std::size_t k = 0; k < config_.sampling_k; ++k) {
            auto a = rng_.categorical(p);
            r.deltas.push_back(set_.scores[i].deltas[a]);
            r.candidates.push_back(pool.candidates[a].text);
        }
        records.push_back(std::move(r));
    }
    return records;
}

PolicyState Trainer::rl_phase(PolicyState state, curriculum::CurriculumPlan plan, const PolicyState& reference,
                              TrainingReport& report) {
    for (const auto& entry : plan.order)
        if (set_.index_of(entry.problem_id) == std::string_view::npos)
            throw ValidationError("no candidate pool for scheduled problem '" + entry.problem_id + "'");

    // Accumulators restart with the first RL step, so an empty schedule
    // returns the incoming state untouched.
    bool fresh_accumulators = false;
    std::span<const double> ref_weights =
        config_.grpo.kl_coefficient > 0.0 ? std::span<const double>(reference.weights) : std::span<const double>{};

    for (std::size_t epoch = 0; epoch < config_.grpo.epochs; ++epoch) {
        if (config_.refresh_every > 0 && epoch > 0 && epoch % config_.refresh_every == 0) {
            report.records = rejection_sample(state);
            plan = curriculum::build_plan(report.records, config_.plan_options);
            report.plan = plan;
        }
        EpochReport e;
        e.phase = "rl";
        e.epoch = epoch + 1;
        e.scheduled = plan.order.size();
        e.excluded_trivial = plan.count(curriculum::Exclusion::Trivial);
        e.excluded_unsolvable = plan.count(curriculum::Exclusion::Unsolvable);
        for (const auto& entry : plan.order) {
            std::size_t i = set_.index_of(entry.problem_id);
            const auto& pool = set_.pools[i];
            auto rollout = sample_rollout(state.weights, pool, set_.scores[i].rewards, config_.grpo.group_size, rng_);
            if (!fresh_accumulators) {
                std::fill(state.grad_sq_sum.begin(), state.grad_sq_sum.end(), 0.0);
                fresh_accumulators = true;
            }
            auto step = grpo_step(state, pool, rollout, config_.grpo, ref_weights);
            state = std::move(step.state);
            e.mean_sampled_reward += step.diagnostics.mean_reward;
            e.clip_fraction += step.diagnostics.clip_fraction;
            e.degenerate_groups += step.diagnostics.degenerate ? 1 : 0;
            ++e.groups;
        }
        if (e.groups) {
            e.mean_sampled_reward /= static_cast<double>(e.groups);
            e.clip_fraction /= static_cast<double>(e.groups);
        }
        e.expected_reward = mean_expected_reward(state.weights, set_);
        report.epochs.push_back(std::move(e));
    }
    return state;
}

TrainingResult run_training(const TrainingSet& set, const std::optional<curriculum::CurriculumPlan>& schedule,
                            const TrainerConfig& config) {
    Trainer trainer(set, config);
    TrainingResult result;
    std::size_t dim = set.pools.empty() ? kFeatureDim : set.pools.front().dim();
    auto initial = PolicyState::zeros(dim, config.seed);

    result.sft_state = trainer.sft_phase(initial, result.report);
    if (schedule) {
        result.report.plan = *schedule;
    } else {
        result.report.records = trainer.rejection_sample(result.sft_state);
        result.report.plan = curriculum::build_plan(result.report.records, config.plan_options);
    }
    result.state = trainer.rl_phase(result.sft_state, result.report.plan, result.sft_state, result.report);
    return result;
}

json TrainingReport::to_json() const {
    json epochs_json = json::array();
    for (const auto& e : epochs) {
        epochs_json.push_back({{"phase", e.phase},
                               {"epoch", e.epoch},
                               {"mean_loss", e.mean_loss},
                               {"mean_sampled_reward", e.mean_sampled_reward},
                               {"expected_reward", e.expected_reward},
                               {"clip_fraction", e.clip_fraction},
                               {"groups", e.groups},
                               {"degenerate_groups", e.degenerate_groups},
                               {"scheduled", e.scheduled},
                               {"excluded_trivial", e.excluded_trivial},
                               {"excluded_unsolvable", e.excluded_unsolvable}});
    }
    return {{"epochs", epochs_json},
            {"scheduled", plan.order.size()},
            {"excluded_trivial", plan.count(curriculum::Exclusion::Trivial)},
            {"excluded_unsolvable", plan.count(curriculum::Exclusion::Unsolvable)}};
}

std::string TrainingReport::to_text() const {
    std::ostringstream out;
    out << std::left << std::setw(6) << "phase" << std::right << std::setw(6) << "epoch" << std::setw(10) << "loss"
        << std::setw(12) << "sampled_R" << std::setw(12) << "expected_R" << std::setw(8) << "clip" << std::setw(8)
        << "groups" << '\n';
    out << std::fixed << std::setprecision(4);
    for (const auto& e : epochs) {
        out << std::left << std::setw(6) << e.phase << std::right << std::setw(6) << e.epoch << std::setw(10)
            << e.mean_loss << std::setw(12) << e.mean_sampled_reward << std::setw(12) << e.expected_reward
            << std::setw(8) << e.clip_fraction << std::setw(8) << e.groups << '\n';
    }
    out << "curriculum: " << plan.order.size() << " scheduled, " << plan.count(curriculum::Exclusion::Trivial)
        << " trivial, " << plan.count(curriculum::Exclusion::Unsolvable) << " unsolvable\n";
    return out.str();
}

} // namespace geoverify::policy
