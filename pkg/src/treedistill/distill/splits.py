"""Candidate split generation and split scoring.

Splits are binary, single-feature tests: equality on a categorical value or
an inclusive 'less or equal' threshold on a numeric feature. Scores are
Shannon information gain in bits, optionally damped by the information
content of the concept a feature maps to.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from ..data.constraints import NodeConstraint
from ..data.schema import Categorical, FeatureSchema, Instance

__all__ = [
    "Split",
    "LabeledExample",
    "evaluate_split",
    "candidate_splits",
    "entropy_bits",
    "info_gain",
    "modified_gain",
    "ScoredSplit",
    "score_node",
]

LabeledExample = tuple[Instance, str]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class Split:
    feature: str
    op: str  # "eq" (categorical equality) or "le" (numeric <=, inclusive)
    value: object

    def describe(self) -> str:
        symbol = "=" if self.op == "eq" else "<="
        return f"{self.feature} {symbol} {self.value}"


def evaluate_split(split: Split, instance: Instance, feature_pos: int) -> bool:
    value = instance[feature_pos]
    if split.op == "eq":
        return value == split.value
    return value <= split.value


def candidate_splits(
    examples: Sequence[LabeledExample],
    schema: FeatureSchema,
    constraint: NodeConstraint,
    max_numeric_thresholds: int = 32,
) -> list[Split]:
    """All admissible splits at a node, in canonical order (schema feature
    order, then declared value order / ascending threshold).

    Categorical: one equality test per constraint-allowed value that occurs
    in the node examples; skipped entirely when only one value remains (its
    false branch would be unsatisfiable). Numeric: thresholds at midpoints
    of consecutive distinct observed values, evenly subsampled by index when
    they exceed the cap.
    """
    if not examples:
        raise ValueError("candidate_splits requires a non-empty example set")
    splits: list[Split] = []
    for pos, feature in enumerate(schema.features):
        cell = constraint.cells[pos]
        if isinstance(feature.kind, Categorical):
            if len(cell) < 2:
                continue
            present = {x[pos] for x, _ in examples}
            for value in feature.kind.values:
                if value in cell and value in present:
                    splits.append(Split(feature.name, "eq", value))
        else:
            lo, hi = cell
            distinct = sorted({x[pos] for x, _ in examples})
            mids = [
                (a + b) / 2.0 for a, b in zip(distinct, distinct[1:])
            ]
            mids = [t for t in mids if lo < t < hi]
            if len(mids) > max_numeric_thresholds:
                idx = np.round(
                    np.linspace(0, len(mids) - 1, max_numeric_thresholds)
                ).astype(int)
                mids = [mids[i] for i in idx]
            splits.extend(Split(feature.name, "le", t) for t in mids)
    return splits


def entropy_bits(labels: Sequence[str]) -> float:
    n = len(labels)
    if n == 0:
        return 0.0
    h = 0.0
    for count in Counter(labels).values():
        p = count / n
        h -= p * math.log(p)
    return h / _LN2


def info_gain(split: Split, examples: Sequence[LabeledExample], schema: FeatureSchema) -> float:
    """Shannon entropy gain of the binary partition, in bits. An empty
    branch contributes zero, so a non-partitioning split gains nothing."""
    pos = schema.feature_index(split.feature)
    true_labels = []
    false_labels = []
    for instance, label in examples:
        (true_labels if evaluate_split(split, instance, pos) else false_labels).append(label)
    n = len(examples)
    parent = entropy_bits([label for _, label in examples])
    children = sum(
        len(part) / n * entropy_bits(part) for part in (true_labels, false_labels) if part
    )
    return max(parent - children, 0.0)


def modified_gain(
    split: Split, examples: Sequence[LabeledExample], schema: FeatureSchema, ic: float
) -> float:
    """Information gain damped by information content: (1 - ic) * gain when
    0 < ic < 1, else exactly 0 (features outside the ontology, or with
    maximal information content, never score)."""
    if not (0.0 < ic < 1.0):
        return 0.0
    return (1.0 - ic) * info_gain(split, examples, schema)


@dataclass(frozen=True)
class ScoredSplit:
    split: Optional[Split]
    score: float
    raw_gain: float
    fallback_used: bool = False


def score_node(
    examples: Sequence[LabeledExample],
    schema: FeatureSchema,
    constraint: NodeConstraint,
    mode: str,
    ic_table: Mapping[str, float] | None = None,
    max_numeric_thresholds: int = 32,
    zero_gain_fallback: bool = True,
) -> ScoredSplit:
    """Pick the best candidate split under the requested mode.

    Ties break toward higher raw gain, then earlier schema feature, then
    declared value order / lower threshold (the candidate enumeration order).
    In ontology mode, when every candidate scores zero and the fallback is
    enabled, candidates are re-ranked by plain gain and the fallback is
    reported so it can be recorded in provenance.
    """
    if mode not in ("plain", "ontology"):
        raise ValueError(f"unknown scoring mode {mode!r}")
    candidates = candidate_splits(examples, schema, constraint, max_numeric_thresholds)
    if not candidates:
        return ScoredSplit(None, 0.0, 0.0)
    table = ic_table or {}

    scored: list[tuple[Split, float, float]] = []
    for split in candidates:
        raw = info_gain(split, examples, schema)
        if mode == "plain":
            score = raw
        else:
            ic = table.get(split.feature, 0.0)
            score = (1.0 - ic) * raw if 0.0 < ic < 1.0 else 0.0
        scored.append((split, score, raw))

    fallback = mode == "ontology" and zero_gain_fallback and all(s == 0.0 for _, s, _ in scored)
    best_key = None
    best_split, best_score, best_raw = None, 0.0, 0.0
    for split, score, raw in scored:
        if fallback:
            key, effective = (raw,), raw
        else:
            key, effective = (score, raw), score
        if best_key is None or key > best_key:
            best_key, best_split, best_score, best_raw = key, split, effective, raw
    return ScoredSplit(split=best_split, score=best_score, raw_gain=best_raw, fallback_used=fallback)
