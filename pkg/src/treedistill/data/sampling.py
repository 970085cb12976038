"""Per-node marginal estimation and constrained instance sampling.

Features are modeled independently: categorical features as add-one
smoothed frequency tables (so constrained renormalization never divides by
zero), numeric features as the observed value pool perturbed with Gaussian
noise at a Silverman-rule bandwidth. This matches per-feature constraint
enforcement; joint structure is deliberately not modeled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..errors import UnsatisfiableConstraintError
from .constraints import NodeConstraint
from .schema import Categorical, FeatureSchema, Instance

__all__ = [
    "CategoricalMarginal",
    "NumericMarginal",
    "Marginals",
    "estimate_marginals",
    "draw_instance",
]

_BANDWIDTH_FLOOR_SCALE = 1e-6
_MAX_REJECTION_DRAWS = 1000


@dataclass(frozen=True)
class CategoricalMarginal:
    values: tuple[str, ...]  # declared order
    counts: tuple[int, ...]
    total: int

    def smoothed(self, value: str) -> float:
        # Add-one smoothing over the declared value list.
        i = self.values.index(value)
        return (self.counts[i] + 1) / (self.total + len(self.values))


@dataclass(frozen=True)
class NumericMarginal:
    pool: np.ndarray
    bandwidth: float


Marginal = Union[CategoricalMarginal, NumericMarginal]


@dataclass(frozen=True)
class Marginals:
    schema: FeatureSchema
    per_feature: tuple[Marginal, ...]


def _silverman_bandwidth(pool: np.ndarray, lo: float, hi: float) -> float:
    floor = _BANDWIDTH_FLOOR_SCALE * (hi - lo)
    m = len(pool)
    if m < 2:
        return floor
    sigma = float(np.std(pool, ddof=1))
    q75, q25 = np.percentile(pool, [75, 25])
    spread = min(sigma, (q75 - q25) / 1.34)
    h = 0.9 * spread * m ** (-1 / 5)
    if not math.isfinite(h) or h <= 0:
        return floor
    return max(h, floor)


def estimate_marginals(examples: Sequence[Instance], schema: FeatureSchema) -> Marginals:
    if not examples:
        raise ValueError("cannot estimate marginals from an empty example set")
    per_feature: list[Marginal] = []
    for i, feature in enumerate(schema.features):
        column = [x[i] for x in examples]
        if isinstance(feature.kind, Categorical):
            counts = tuple(sum(1 for v in column if v == val) for val in feature.kind.values)
            per_feature.append(
                CategoricalMarginal(values=feature.kind.values, counts=counts, total=len(column))
            )
        else:
            pool = np.asarray(column, dtype=float)
            h = _silverman_bandwidth(pool, feature.kind.lo, feature.kind.hi)
            per_feature.append(NumericMarginal(pool=pool, bandwidth=h))
    return Marginals(schema=schema, per_feature=tuple(per_feature))


def _draw_categorical(
    marginal: CategoricalMarginal, allowed: frozenset, rng: np.random.Generator
) -> str:
    candidates = [v for v in marginal.values if v in allowed]
    if not candidates:
        raise UnsatisfiableConstraintError("no categorical values admitted")
    weights = np.array([marginal.smoothed(v) for v in candidates])
    weights /= weights.sum()
    u = rng.random()
    acc = 0.0
    for value, w in zip(candidates, weights):
        acc += w
        if u <= acc:
            return value
    return candidates[-1]  # guard against float round-off


def _draw_numeric(
    marginal: NumericMarginal,
    interval: tuple[float, float],
    bounds: tuple[float, float],
    rng: np.random.Generator,
) -> float:
    lo, hi = interval
    fmin, fmax = bounds
    upper = min(hi, fmax)
    satisfiable = upper >= fmin if fmin > lo else upper > lo
    if not satisfiable:
        raise UnsatisfiableConstraintError(
            f"interval ({lo}, {hi}] does not meet the feature range [{fmin}, {fmax}]"
        )
    pool, h = marginal.pool, marginal.bandwidth
    for _ in range(_MAX_REJECTION_DRAWS):
        v = float(pool[rng.integers(0, len(pool))] + rng.normal(0.0, h))
        if lo < v <= hi and fmin <= v <= fmax:
            return v
    # Rejection failed (constraint mass far from the pool): fall back to a
    # uniform draw over the admissible interval.
    base = max(lo, fmin)
    return float(base + (upper - base) * (1.0 - rng.random()))


def draw_instance(
    marginals: Marginals, constraint: NodeConstraint, rng: np.random.Generator
) -> Instance:
    """Sample one instance, each feature independently from its marginal
    restricted to the constraint. Deterministic given the generator state."""
    schema = marginals.schema
    values = []
    for feature, marginal, cell in zip(schema.features, marginals.per_feature, constraint.cells):
        if isinstance(feature.kind, Categorical):
            values.append(_draw_categorical(marginal, cell, rng))
        else:
            values.append(
                _draw_numeric(marginal, cell, (feature.kind.lo, feature.kind.hi), rng)
            )
    return tuple(values)
