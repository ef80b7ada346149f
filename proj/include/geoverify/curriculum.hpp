// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "geoverify/dataset.hpp"

namespace geoverify::curriculum {

/// K sampled candidates for one problem and whether each was judged correct.
struct SamplingRecord {
    std::string problem_id;
    std::vector<int> deltas;               // 0 or 1 per candidate
    std::vector<std::string> candidates;   // optional, parallel to deltas

    std::size_t k() const { return deltas.size(); }
};

/// Correctness cutoffs used to turn an accuracy into a 0/1 indicator.
struct DeltaThresholds {
    double answer = 1.0;
    double proof = 0.7;
};

int delta(double acc, dataset::QuestionType type, const DeltaThresholds& thresholds = {});

/// 1 - (number correct) / K. Throws ValidationError when K = 0.
double difficulty(const SamplingRecord& record);

enum class Exclusion { Trivial, Unsolvable };

std::string_view to_string(Exclusion reason);

struct PlanEntry {
    std::string problem_id;
    double difficulty = 0.0;
    bool operator==(const PlanEntry&) const = default;
};

struct ExcludedEntry {
    std::string problem_id;
    double difficulty = 0.0;
    Exclusion reason = Exclusion::Trivial;
    bool operator==(const ExcludedEntry&) const = default;
};

struct CurriculumPlan {
    std::vector<PlanEntry> order;  // ascending difficulty, ties by id
    std::vector<ExcludedEntry> excluded;

    std::size_t count(Exclusion reason) const;
    bool operator==(const CurriculumPlan&) const = default;
};

struct PlanOptions {
    /// Problems with d <= trivial_at_most are dropped as trivial.
    double trivial_at_most = 0.0;
    /// Problems with d >= unsolvable_at_least are dropped as unsolvable.
    double unsolvable_at_least = 1.0;
};

/// Throws ValidationError on duplicate problem ids or an empty record.
CurriculumPlan build_plan(const std::vector<SamplingRecord>& records, const PlanOptions& options = {});

std::vector<SamplingRecord> read_records(std::istream& in);
std::vector<SamplingRecord> load_records(const std::filesystem::path& path);
void write_records(std::ostream& out, const std::vector<SamplingRecord>& records);

/// One JSON object per line: ordered entries first, then exclusions.
void write_plan(std::ostream& out, const CurriculumPlan& plan);
CurriculumPlan read_plan(std::istream& in);
void save_plan(const std::filesystem::path& path, const CurriculumPlan& plan);
CurriculumPlan load_plan(const std::filesystem::path& path);

} // namespace geoverify::curriculum
