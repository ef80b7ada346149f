# Copyright (c) 2026, The geoverify Authors
# SPDX-License-Identifier: Apache-2.0

"""Verification rewards, curriculum scheduling and a small policy trainer for geometry solutions."""

from ._geoverify import (
    Error,
    build_plan,
    canonical_constructions,
    compose_solution,
    composite_reward,
    correctness_reward,
    dataset_stats,
    difficulty,
    evaluate,
    format_reward,
    grade_answer,
    group_advantages,
    load_dataset,
    match_aux,
    parse_solution,
    rubric_score,
    score,
    solution_features,
    train,
)

__all__ = [
    "Error",
    "build_plan",
    "canonical_constructions",
    "compose_solution",
    "composite_reward",
    "correctness_reward",
    "dataset_stats",
    "difficulty",
    "evaluate",
    "format_reward",
    "grade_answer",
    "group_advantages",
    "load_dataset",
    "match_aux",
    "parse_solution",
    "rubric_score",
    "score",
    "solution_features",
    "train",
]
