// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "geoverify/dataset.hpp"
#include "geoverify/solution.hpp"

namespace geoverify::reward {

struct RewardWeights {
    double alpha = 0.6;   // correctness
    double beta = 0.3;    // auxiliary constructions
    double gamma = 0.1;   // format
    double lambda = 0.2;  // correctness boost/penalty from the auxiliary outcome

    /// Throws ValidationError.
    void validate() const;
    double sum() const { return alpha + beta + gamma; }
    /// alpha, beta, gamma rescaled to sum to 1; lambda unchanged.
    RewardWeights normalized() const;
};

struct RewardBreakdown {
    double acc = 0.0;
    bool aux_correct = false;
    double f_corr = 0.0;
    int f_aux = 0;
    int f_fmt = 0;
    double total = 0.0;
    RewardWeights weights;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// min(1, acc + lambda) when the constructions are right, max(0, acc - lambda)
/// otherwise. Throws ValidationError for acc outside [0, 1] or lambda < 0.
double correctness_reward(double acc, bool aux_correct, double lambda);

/// Combines precomputed component scores. `problem` and `parsed` are
/// accepted for context; the auxiliary outcome for problems without
/// reference constructions must already reflect matching against the empty
/// set.
RewardBreakdown composite_reward(const dataset::GeometryProblem& problem, const solution::ParsedSolution& parsed,
                                 const RewardWeights& weights, double acc, int f_aux, int f_fmt);

} // namespace geoverify::reward
