// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>

#include "geoverify/error.hpp"

namespace geoverify::config {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) throw ConfigError(key + ": expected a number, got '" + v + "'");
    return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError(key + ": expected a nonnegative integer, got '" + v + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::string unquote(const std::string& v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;
}

} // namespace

KeyValues parse_key_values(std::istream& in) {
    KeyValues out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = unquote(trim(t.substr(eq + 1)));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        if (!out.emplace(key, value).second)
            throw ConfigError("config line " + std::to_string(line_no) + ": key '" + key + "' set twice");
    }
    return out;
}

RunConfig RunConfig::from_key_values(const KeyValues& values, const std::filesystem::path& base_dir) {
    RunConfig c;
    auto path = [&](const std::string& v) {
        std::filesystem::path p(v);
        return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
    };
    auto profile = [&](judge::EndpointProfile& prof, const std::string& field, const std::string& key,
                       const std::string& v) {
        if (field == "url") prof.url = v;
        else if (field == "model") prof.model = v;
        else if (field == "api_key") prof.api_key = v;
        else if (field == "timeout") prof.timeout_seconds = static_cast<int>(to_uint(key, v));
        else return false;
        return true;
    };

    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters{
        {"reward.alpha", [&](auto& k, auto& v) { c.scoring.weights.alpha = to_double(k, v); }},
        {"reward.beta", [&](auto& k, auto& v) { c.scoring.weights.beta = to_double(k, v); }},
        {"reward.gamma", [&](auto& k, auto& v) { c.scoring.weights.gamma = to_double(k, v); }},
        {"reward.lambda", [&](auto& k, auto& v) { c.scoring.weights.lambda = to_double(k, v); }},
        {"format.think_open", [&](auto&, auto& v) { c.scoring.tags.think_open = v; }},
        {"format.think_close", [&](auto&, auto& v) { c.scoring.tags.think_close = v; }},
        {"format.answer_open", [&](auto&, auto& v) { c.scoring.tags.answer_open = v; }},
        {"format.answer_close", [&](auto&, auto& v) { c.scoring.tags.answer_close = v; }},
        {"format.aux_open", [&](auto&, auto& v) { c.scoring.tags.aux_open = v; }},
        {"format.aux_close", [&](auto&, auto& v) { c.scoring.tags.aux_close = v; }},
        {"match.allow_superset", [&](auto& k, auto& v) { c.scoring.match.allow_superset = to_bool(k, v); }},
        {"judge.mode",
         [&](auto& k, auto& v) {
             if (v == "mock") c.judge.mode = JudgeMode::Mock;
             else if (v == "http") c.judge.mode = JudgeMode::Http;
             else throw ConfigError(k + ": expected mock or http, got '" + v + "'");
         }},
        {"judge.mock_seed", [&](auto& k, auto& v) { c.judge.mock_seed = to_uint(k, v); }},
        {"judge.mock_pins", [&](auto&, auto& v) { c.judge.mock_pins = path(v); }},
        {"judge.max_retries", [&](auto& k, auto& v) { c.judge.gateway.max_retries = static_cast<int>(to_uint(k, v)); }},
        {"judge.concurrency", [&](auto& k, auto& v) { c.judge.gateway.max_concurrency = to_uint(k, v); }},
        {"curriculum.samples", [&](auto& k, auto& v) { c.trainer.sampling_k = to_uint(k, v); }},
        {"curriculum.answer_threshold", [&](auto& k, auto& v) { c.trainer.thresholds.answer = to_double(k, v); }},
        {"curriculum.proof_threshold", [&](auto& k, auto& v) { c.trainer.thresholds.proof = to_double(k, v); }},
        {"curriculum.trivial_at_most",
         [&](auto& k, auto& v) { c.trainer.plan_options.trivial_at_most = to_double(k, v); }},
        {"curriculum.unsolvable_at_least",
         [&](auto& k, auto& v) { c.trainer.plan_options.unsolvable_at_least = to_double(k, v); }},
        {"curriculum.refresh_every", [&](auto& k, auto& v) { c.trainer.refresh_every = to_uint(k, v); }},
        {"trainer.group_size", [&](auto& k, auto& v) { c.trainer.grpo.group_size = to_uint(k, v); }},
        {"trainer.clip_ratio", [&](auto& k, auto& v) { c.trainer.grpo.clip_ratio = to_double(k, v); }},
        {"trainer.learning_rate", [&](auto& k, auto& v) { c.trainer.grpo.learning_rate = to_double(k, v); }},
        {"trainer.kl_coefficient", [&](auto& k, auto& v) { c.trainer.grpo.kl_coefficient = to_double(k, v); }},
        {"trainer.epochs", [&](auto& k, auto& v) { c.trainer.grpo.epochs = to_uint(k, v); }},
        {"trainer.advantage_epsilon", [&](auto& k, auto& v) { c.trainer.grpo.advantage_epsilon = to_double(k, v); }},
        {"trainer.inner_steps", [&](auto& k, auto& v) { c.trainer.grpo.inner_steps = to_uint(k, v); }},
        {"trainer.optimizer",
         [&](auto& k, auto& v) {
             auto o = policy::parse_optimizer(v);
             if (!o) throw ConfigError(k + ": expected adagrad or sgd, got '" + v + "'");
             c.trainer.grpo.optimizer = *o;
         }},
        {"trainer.sft_learning_rate", [&](auto& k, auto& v) { c.trainer.sft_learning_rate = to_double(k, v); }},
        {"trainer.sft_epochs", [&](auto& k, auto& v) { c.trainer.sft_epochs = to_uint(k, v); }},
        {"dataset.path", [&](auto&, auto& v) { c.dataset_path = path(v); }},
        {"dataset.pools", [&](auto&, auto& v) { c.pools_path = path(v); }},
        {"dataset.solutions", [&](auto&, auto& v) { c.solutions_path = path(v); }},
        {"output.dir", [&](auto&, auto& v) { c.output_dir = path(v); }},
        {"seed", [&](auto& k, auto& v) { c.set_seed(to_uint(k, v)); }},
    };

    for (const auto& [key, value] : values) {
        if (auto it = setters.find(key); it != setters.end()) {
            it->second(key, value);
            continue;
        }
        const std::string rj = "judge.reward_judge.", ej = "judge.eval_judge.";
        bool ok = false;
        if (key.starts_with(rj)) ok = profile(c.judge.reward_judge, key.substr(rj.size()), key, value);
        else if (key.starts_with(ej)) ok = profile(c.judge.eval_judge, key.substr(ej.size()), key, value);
        if (!ok) throw ConfigError("unknown config key '" + key + "'");
    }
    return c;
}

void RunConfig::set_seed(std::uint64_t value) {
    seed = value;
    trainer.seed = value;
    judge.mock_seed = value;
}

void RunConfig::check() const {
    try {
        scoring.weights.validate();
        trainer.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
    for (const auto* p : {&dataset_path, &pools_path, &solutions_path, &judge.mock_pins})
        if (!p->empty() && !std::filesystem::exists(*p)) throw ConfigError("path does not exist: " + p->string());
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return RunConfig::from_key_values(parse_key_values(in), path.parent_path());
}

std::shared_ptr<judge::Gateway> make_gateway(const JudgeSettings& settings, const judge::EndpointProfile& profile) {
    std::shared_ptr<judge::Transport> transport;
    if (settings.mode == JudgeMode::Mock) {
        auto mock = std::make_shared<judge::MockJudge>(settings.mock_seed);
        if (!settings.mock_pins.empty()) {
            std::ifstream in(settings.mock_pins);
            if (!in) throw ConfigError("cannot open judge pins file " + settings.mock_pins.string());
            mock->load_pins(in);
        }
        transport = std::move(mock);
    } else {
        auto p = profile;
        p.apply_environment();
        if (p.url.empty()) throw ConfigError("judge profile '" + p.name + "' has no URL");
        transport = std::make_shared<judge::HttpTransport>(std::move(p));
    }
    return std::make_shared<judge::Gateway>(std::move(transport), settings.gateway);
}

} // namespace geoverify::config
