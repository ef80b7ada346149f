// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>

#include "geoverify/judge.hpp"
#include "geoverify/policy.hpp"
#include "geoverify/scoring.hpp"

namespace geoverify::config {

/// Flat `key = value` pairs. `#` starts a comment line; keys are dotted.
using KeyValues = std::map<std::string, std::string>;

/// Throws ConfigError on a malformed line or a repeated key.
KeyValues parse_key_values(std::istream& in);

enum class JudgeMode { Mock, Http };

struct JudgeSettings {
    JudgeMode mode = JudgeMode::Mock;
    std::uint64_t mock_seed = 0;
    std::filesystem::path mock_pins;  // optional pinned replies for the mock judge
    judge::EndpointProfile reward_judge{"reward_judge", "", "", "", 120};
    judge::EndpointProfile eval_judge{"eval_judge", "", "", "", 120};
    judge::GatewayOptions gateway;
};

struct RunConfig {
    reward::ScoringConfig scoring;
    JudgeSettings judge;
    policy::TrainerConfig trainer;

    std::filesystem::path dataset_path;
    std::filesystem::path pools_path;
    std::filesystem::path solutions_path;  // optional, used by the pipeline's eval stage
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 0;

    /// Throws ConfigError for unknown keys or unparsable values. Relative
    /// paths are resolved against `base_dir`.
    static RunConfig from_key_values(const KeyValues& values, const std::filesystem::path& base_dir = {});

    /// Propagates `seed` into the trainer and the mock judge.
    void set_seed(std::uint64_t value);

    /// Throws ConfigError when a configured input path does not exist or the
    /// reward weights are invalid.
    void check() const;
};

RunConfig load_config(const std::filesystem::path& path);

/// Gateway for the given profile; the mock judge ignores the profile.
std::shared_ptr<judge::Gateway> make_gateway(const JudgeSettings& settings, const judge::EndpointProfile& profile);

} // namespace geoverify::config
