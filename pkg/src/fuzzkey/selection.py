"""Feature relevance scoring and ranked selection.

Two relevance definitions coexist:

* ``inference`` (default): per instance, fuzzify the value, fire the rules
  and take the defuzzified centroid; the feature score is the mean over
  instances.
* ``sum``: the plain sum of membership degrees.  Under any uniform
  partition the degrees sum to 1 for every value, so this mode ranks all
  features equally there; it only discriminates on non-uniform partitions.

Ranking is deterministic: scores descend, ties break on the lower feature
id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ContractViolationError
from .fuzzy import (
    DefuzzConfig,
    FuzzyPartition,
    MembershipVector,
    RuleBase,
    defuzzify_centroid,
    evaluate_rules,
    fuzzify,
)

MODE_INFERENCE = "inference"
MODE_SUM = "sum"


@dataclass(frozen=True)
class RelevanceScore:
    feature_id: int
    score: float
    mode: str = MODE_INFERENCE


@dataclass(frozen=True)
class SelectionResult:
    """Ranked features plus the selected subset.

    ``ranked`` pairs every feature id with its score, best first;
    ``selected`` is always a prefix of the ranking.  Exactly one of ``k``
    and ``tau`` is set, matching the selection mode used.
    """

    ranked: tuple[tuple[int, float], ...]
    selected: tuple[int, ...]
    mode: str = MODE_INFERENCE
    k: int | None = None
    tau: float | None = None


def relevance_inference(
    values: Sequence[float],
    partition: FuzzyPartition,
    rules: RuleBase | None = None,
    defuzz: DefuzzConfig | None = None,
) -> float:
    """Mean defuzzified centroid of a feature's per-instance values."""
    if len(values) == 0:
        raise ContractViolationError("relevance needs at least one instance value")
    if rules is None:
        rules = RuleBase.identity(partition.n_sets)
    if defuzz is None:
        defuzz = DefuzzConfig.uniform(partition.n_sets)
    crisp = [
        defuzzify_centroid(evaluate_rules(fuzzify(float(v), partition), rules), defuzz)
        for v in values
    ]
    return math.fsum(crisp) / len(crisp)


def relevance_sum(mv: MembershipVector | Sequence[float]) -> float:
    """Sum of membership degrees of a single fuzzified value."""
    return math.fsum(mv)


def score_feature(
    values: Sequence[float],
    partition: FuzzyPartition,
    rules: RuleBase | None = None,
    defuzz: DefuzzConfig | None = None,
    mode: str = MODE_INFERENCE,
) -> float:
    """Per-feature score: mean over instances in either relevance mode."""
    if mode == MODE_INFERENCE:
        return relevance_inference(values, partition, rules, defuzz)
    if mode == MODE_SUM:
        if len(values) == 0:
            raise ContractViolationError("relevance needs at least one instance value")
        sums = [relevance_sum(fuzzify(float(v), partition)) for v in values]
        return math.fsum(sums) / len(sums)
    raise ContractViolationError(f"unknown relevance mode {mode!r}")


def score_features(
    columns: Iterable[Sequence[float]],
    partition: FuzzyPartition,
    rules: RuleBase | None = None,
    defuzz: DefuzzConfig | None = None,
    mode: str = MODE_INFERENCE,
) -> list[RelevanceScore]:
    """Score one column of instance values per feature."""
    return [
        RelevanceScore(feature_id=i, score=score_feature(col, partition, rules, defuzz, mode), mode=mode)
        for i, col in enumerate(columns)
    ]


def rank_scores(scores: Sequence[RelevanceScore]) -> tuple[tuple[int, float], ...]:
    """Sort by score descending, ties by ascending feature id."""
    ordered = sorted(scores, key=lambda s: (-s.score, s.feature_id))
    return tuple((s.feature_id, s.score) for s in ordered)


def select_topk(scores: Sequence[RelevanceScore], k: int) -> SelectionResult:
    """Keep the first ``min(k, n)`` features of the ranking."""
    if not isinstance(k, int) or k < 0:
        raise ContractViolationError(f"k must be a nonnegative integer, got {k!r}")
    ranked = rank_scores(scores)
    selected = tuple(fid for fid, _ in ranked[: min(k, len(ranked))])
    mode = scores[0].mode if scores else MODE_INFERENCE
    return SelectionResult(ranked=ranked, selected=selected, mode=mode, k=k)


def select_threshold(scores: Sequence[RelevanceScore], tau: float) -> SelectionResult:
    """Keep every feature whose score reaches ``tau``."""
    if not math.isfinite(tau) or tau < 0:
        raise ContractViolationError(f"tau must be a finite nonnegative value, got {tau!r}")
    ranked = rank_scores(scores)
    selected = tuple(fid for fid, score in ranked if score >= tau)
    mode = scores[0].mode if scores else MODE_INFERENCE
    return SelectionResult(ranked=ranked, selected=selected, mode=mode, tau=float(tau))
