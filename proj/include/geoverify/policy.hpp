// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geoverify/curriculum.hpp"
#include "geoverify/dataset.hpp"
#include "geoverify/solution.hpp"

namespace geoverify::reward {
class Scorer;
}

namespace geoverify::policy {

using Vector = std::vector<double>;

// ---------------------------------------------------------------------------
// Features
// ---------------------------------------------------------------------------

inline constexpr std::size_t kHashBuckets = 256;
/// Hashed bag of tokens plus format_ok, has_constructions and
/// answer-parse-success indicators.
inline constexpr std::size_t kFeatureDim = kHashBuckets + 3;

/// Whitespace tokens hashed with FNV-1a into kHashBuckets buckets; bit 63 of
/// the hash picks the sign. The bag part is scaled to unit L2 norm. The
/// three trailing coordinates are 0/1 indicators.
Vector solution_features(std::string_view text, const solution::FormatTags& tags = {});

// ---------------------------------------------------------------------------
// Pools and state
// ---------------------------------------------------------------------------

struct Candidate {
    std::string text;
    Vector features;
};

struct CandidatePool {
    std::string problem_id;
    std::vector<Candidate> candidates;
    std::optional<std::size_t> reference_index;

    std::size_t dim() const { return candidates.empty() ? 0 : candidates.front().features.size(); }
    /// Throws ValidationError.
    void validate() const;
};

/// Builds a pool from candidate texts, computing features.
CandidatePool make_pool(std::string problem_id, const std::vector<std::string>& texts,
                        std::optional<std::size_t> reference_index = {}, const solution::FormatTags& tags = {});

/// Pool file: one JSON object per line with problem_id, candidates (texts)
/// and an optional reference_index.
std::vector<CandidatePool> read_pools(std::istream& in, const solution::FormatTags& tags = {});
std::vector<CandidatePool> load_pools(const std::filesystem::path& path, const solution::FormatTags& tags = {});
void write_pools(std::ostream& out, const std::vector<CandidatePool>& pools);

enum class OptimizerKind { Adagrad, Sgd };

std::string_view to_string(OptimizerKind kind);
std::optional<OptimizerKind> parse_optimizer(std::string_view name);

struct PolicyState {
    Vector weights;
    std::size_t step_count = 0;
    std::uint64_t rng_seed = 0;
    Vector grad_sq_sum;  // per-coordinate accumulated squared gradients

    static PolicyState zeros(std::size_t dim, std::uint64_t seed = 0);

    nlohmann::json to_json() const;
    static PolicyState from_json(const nlohmann::json& j);
    bool operator==(const PolicyState&) const = default;
};

void save_state(const std::filesystem::path& path, const PolicyState& state);
PolicyState load_state(const std::filesystem::path& path);

/// Applies one optimizer step along `direction` (already signed: +gradient
/// for ascent, -gradient for descent).
void apply_update(PolicyState& state, std::span<const double> direction, double learning_rate, OptimizerKind kind);

// ---------------------------------------------------------------------------
// Policy
// ---------------------------------------------------------------------------

/// Per-candidate scores w . phi. Throws ValidationError on dimension mismatch
/// or a non-finite score.
Vector candidate_scores(std::span<const double> weights, const CandidatePool& pool);

/// Softmax of candidate_scores.
Vector policy_distribution(std::span<const double> weights, const CandidatePool& pool);
inline Vector policy_distribution(const PolicyState& state, const CandidatePool& pool) {
    return policy_distribution(state.weights, pool);
}

double expected_reward(std::span<const double> weights, const CandidatePool& pool, std::span<const double> rewards);

/// Deterministic random source shared by all sampling in a training run.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform in [0, 1) from the top 53 bits.
    double uniform();
    std::size_t categorical(std::span<const double> probabilities);

private:
    std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// SFT
// ---------------------------------------------------------------------------

/// -log pi(reference | pool).
double sft_loss(std::span<const double> weights, const CandidatePool& pool);
/// sum_j (pi_j - onehot_j) phi_j.
Vector sft_gradient(std::span<const double> weights, const CandidatePool& pool);

struct SftResult {
    PolicyState state;
    double loss = 0.0;  // before the step
};

/// A zero learning rate leaves the state untouched.
SftResult sft_step(const PolicyState& state, const CandidatePool& pool, double learning_rate,
                   OptimizerKind optimizer = OptimizerKind::Adagrad);

// ---------------------------------------------------------------------------
// GRPO
// ---------------------------------------------------------------------------

struct GrpoConfig {
    std::size_t group_size = 8;
    double clip_ratio = 0.2;
    double learning_rate = 1e-2;
    double kl_coefficient = 0.0;
    std::size_t epochs = 10;
    double advantage_epsilon = 1e-8;
    OptimizerKind optimizer = OptimizerKind::Adagrad;
    /// Ascent steps taken on each sampled group; later steps see ratios away
    /// from 1 and may clip.
    std::size_t inner_steps = 1;

    /// Throws ValidationError.
    void validate() const;
};

/// G sampled candidates with their behavior log-probabilities and rewards.
struct Rollout {
    std::vector<std::size_t> actions;
    Vector old_log_probs;
    Vector rewards;

    std::size_t size() const { return actions.size(); }
};

Rollout sample_rollout(std::span<const double> weights, const CandidatePool& pool,
                       std::span<const double> candidate_rewards, std::size_t group_size, Rng& rng);

struct Advantages {
    Vector values;
    double mean = 0.0;
    double stddev = 0.0;  // population
    bool degenerate = false;  // stddev <= epsilon; values are all zero
};

/// (r_k - mean) / (std + epsilon) with the population standard deviation.
Advantages group_advantages(std::span<const double> rewards, double epsilon);

/// Clipped surrogate averaged over the group, minus kl_coefficient times
/// KL(pi_w || pi_ref) over the pool when reference weights are given.
double grpo_objective(std::span<const double> weights, const CandidatePool& pool, const Rollout& rollout,
                      std::span<const double> advantages, const GrpoConfig& config,
                      std::span<const double> reference_weights = {});

Vector grpo_gradient(std::span<const double> weights, const CandidatePool& pool, const Rollout& rollout,
                     std::span<const double> advantages, const GrpoConfig& config,
                     std::span<const double> reference_weights = {});

struct GrpoDiagnostics {
    double mean_reward = 0.0;
    Vector advantages;
    double clip_fraction = 0.0;
    bool degenerate = false;
    double objective = 0.0;
};

struct GrpoStepResult {
    PolicyState state;
    GrpoDiagnostics diagnostics;
};

/// config.inner_steps ascent steps on the clipped surrogate. Throws ValidationError when the
/// group has fewer than two rollouts. A degenerate group (all rewards equal)
/// returns the state unchanged.
GrpoStepResult grpo_step(const PolicyState& state, const CandidatePool& pool, const Rollout& rollout,
                         const GrpoConfig& config, std::span<const double> reference_weights = {});

// ---------------------------------------------------------------------------
// Training loop
// ---------------------------------------------------------------------------

struct TrainerConfig {
    GrpoConfig grpo;
    double sft_learning_rate = 0.1;
    std::size_t sft_epochs = 3;
    std::size_t sampling_k = 8;
    curriculum::DeltaThresholds thresholds;
    curriculum::PlanOptions plan_options;
    /// Rebuild the curriculum from fresh samples every N RL epochs; 0 keeps
    /// the first plan.
    std::size_t refresh_every = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Reward and correctness of every candidate in a pool.
struct PoolScores {
    Vector rewards;
    std::vector<int> deltas;
};

struct EpochReport {
    std::string phase;  // "sft" or "rl"
    std::size_t epoch = 0;
    double mean_loss = 0.0;
    double mean_sampled_reward = 0.0;
    double expected_reward = 0.0;
    double clip_fraction = 0.0;
    std::size_t groups = 0;
    std::size_t degenerate_groups = 0;
    std::size_t scheduled = 0;
    std::size_t excluded_trivial = 0;
    std::size_t excluded_unsolvable = 0;
};

struct TrainingReport {
    std::vector<EpochReport> epochs;
    std::vector<curriculum::SamplingRecord> records;
    curriculum::CurriculumPlan plan;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

struct TrainingResult {
    PolicyState sft_state;
    PolicyState state;
    TrainingReport report;
};

/// Pre-scored training inputs, one per pool, aligned with `pools`.
struct TrainingSet {
    std::vector<const dataset::GeometryProblem*> problems;
    std::vector<CandidatePool> pools;
    std::vector<PoolScores> scores;

    const CandidatePool* pool_for(std::string_view problem_id) const;
    std::size_t index_of(std::string_view problem_id) const;  // npos when absent
};

/// Scores every candidate of every pool whose problem is in the training
/// split. Throws ValidationError for a pool without a matching problem.
TrainingSet prepare_training_set(const std::vector<dataset::GeometryProblem>& problems,
                                 const std::vector<CandidatePool>& pools, const reward::Scorer& scorer,
                                 const TrainerConfig& config, bool train_split_only = true);

/// Mean over pools of the exact expected reward under `weights`.
double mean_expected_reward(std::span<const double> weights, const TrainingSet& set);
/// Mean over pools of the best candidate reward.
double max_achievable_reward(const TrainingSet& set);

class Trainer {
public:
    Trainer(const TrainingSet& set, TrainerConfig config);

    /// SFT over pools that carry a reference index.
    PolicyState sft_phase(PolicyState state, TrainingReport& report);

    /// K candidates per pool sampled from `state`, labeled by the scorer's
    /// correctness indicator.
    std::vector<curriculum::SamplingRecord> rejection_sample(const PolicyState& state);

    /// GRPO over the plan; KL is measured against `reference`.
    PolicyState rl_phase(PolicyState state, curriculum::CurriculumPlan plan, const PolicyState& reference,
                         TrainingReport& report);

    Rng& rng() { return rng_; }

private:
    const TrainingSet& set_;
    TrainerConfig config_;
    Rng rng_;
};

/// SFT, then (when `schedule` is absent) rejection sampling and curriculum
/// construction, then GRPO in curriculum order. Fully determined by the
/// inputs and config.seed. Throws ValidationError when a scheduled problem
/// has no pool.
TrainingResult run_training(const TrainingSet& set, const std::optional<curriculum::CurriculumPlan>& schedule,
                            const TrainerConfig& config);

} // namespace geoverify::policy
