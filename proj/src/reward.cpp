// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/reward.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "geoverify/error.hpp"

namespace geoverify::reward {

void RewardWeights::validate() const {
    for (auto [name, v] : {std::pair{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"lambda", lambda}}) {
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError(std::string("reward weight ") + name + " must be a finite nonnegative number");
    }
    if (!(sum() > 0.0)) throw ValidationError("reward weights alpha + beta + gamma must be positive");
}

RewardWeights RewardWeights::normalized() const {
    validate();
    double s = sum();
    return {alpha / s, beta / s, gamma / s, lambda};
}

double correctness_reward(double acc, bool aux_correct, double lambda) {
    if (!(acc >= 0.0 && acc <= 1.0)) throw ValidationError("acc must lie in [0, 1]");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be a finite nonnegative number");
    return aux_correct ? std::min(1.0, acc + lambda) : std::max(0.0, acc - lambda);
}

RewardBreakdown composite_reward(const dataset::GeometryProblem& /*problem*/, const solution::ParsedSolution& /*parsed*/,
                                 const RewardWeights& weights, double acc, int f_aux, int f_fmt) {
    weights.validate();
    if (f_aux != 0 && f_aux != 1) throw ValidationError("f_aux must be 0 or 1");
    if (f_fmt != 0 && f_fmt != 1) throw ValidationError("f_fmt must be 0 or 1");
    RewardBreakdown b;
    b.acc = acc;
    b.aux_correct = f_aux == 1;
    b.f_corr = correctness_reward(acc, b.aux_correct, weights.lambda);
    b.f_aux = f_aux;
    b.f_fmt = f_fmt;
    b.total = weights.alpha * b.f_corr + weights.beta * f_aux + weights.gamma * f_fmt;
    // Weights that sum to one only up to rounding can push the total a few ulps past 1.
    if (std::abs(weights.sum() - 1.0) < 1e-12) b.total = std::min(b.total, 1.0);
    b.weights = weights;
    return b;
}

nlohmann::json RewardBreakdown::to_json() const {
    return {{"acc", acc},
            {"aux_correct", aux_correct},
            {"f_corr", f_corr},
            {"f_aux", f_aux},
            {"f_fmt", f_fmt},
            {"total", total},
            {"weights",
             {{"alpha", weights.alpha}, {"beta", weights.beta}, {"gamma", weights.gamma}, {"lambda", weights.lambda}}}};
}

std::string RewardBreakdown::to_text() const {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << "acc          " << acc << '\n'
        << "aux_correct  " << (aux_correct ? "yes" : "no") << '\n'
        << "F_corr       " << f_corr << '\n'
        << "F_aux        " << f_aux << '\n'
        << "F_fmt        " << f_fmt << '\n'
        << "R            " << total << '\n'
        << "weights      alpha=" << weights.alpha << " beta=" << weights.beta << " gamma=" << weights.gamma
        << " lambda=" << weights.lambda << '\n';
    return out.str();
}

} // namespace geoverify::reward
