"""Per-feature path constraints.

A node constraint restricts every feature independently: categorical
features to an allowed value set, numeric features to a half-open interval
(lo, hi]. The conjunction of branch outcomes along a root-to-node path is
represented by refining cells one split at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from ..errors import UnsatisfiableConstraintError
from .schema import Categorical, FeatureSchema, Instance

if TYPE_CHECKING:  # pragma: no cover
    from ..distill.splits import Split

__all__ = ["NodeConstraint", "unconstrained", "refine_constraint"]

Cell = Union[frozenset, tuple]  # frozenset of values | (lo, hi) with lo exclusive


@dataclass(frozen=True)
class NodeConstraint:
    schema: FeatureSchema
    cells: tuple[Cell, ...]

    def satisfies(self, instance: Instance) -> bool:
        for value, cell, feature in zip(instance, self.cells, self.schema.features):
            if isinstance(feature.kind, Categorical):
                if value not in cell:
                    return False
            else:
                lo, hi = cell
                if not (lo < value <= hi):
                    return False
        return True

    def cell_for(self, feature_name: str) -> Cell:
        return self.cells[self.schema.feature_index(feature_name)]


def unconstrained(schema: FeatureSchema) -> NodeConstraint:
    cells: list[Cell] = []
    for f in schema.features:
        if isinstance(f.kind, Categorical):
            cells.append(frozenset(f.kind.values))
        else:
            cells.append((-math.inf, math.inf))
    return NodeConstraint(schema=schema, cells=tuple(cells))


def refine_constraint(constraint: NodeConstraint, split: "Split", branch: bool) -> NodeConstraint:
    """Conjoin one branch outcome onto the constraint.

    Categorical equality pins (branch true) or removes (branch false) the
    tested value; a numeric test tightens the interval at the threshold. A
    contradiction (empty set / empty interval) raises, and the caller must
    prune that branch.
    """
    schema = constraint.schema
    pos = schema.feature_index(split.feature)
    cell = constraint.cells[pos]
    if split.op == "eq":
        allowed = cell & {split.value} if branch else cell - {split.value}
        if not allowed:
            raise UnsatisfiableConstraintError(
                f"{split.feature}: no categorical values remain on the "
                f"{'true' if branch else 'false'} branch of = {split.value!r}"
            )
        new_cell: Cell = frozenset(allowed)
    else:
        lo, hi = cell
        if branch:
            lo, hi = lo, min(hi, split.value)
        else:
            lo, hi = max(lo, split.value), hi
        if not (lo < hi):
            raise UnsatisfiableConstraintError(
                f"{split.feature}: interval ({lo}, {hi}] is empty"
            )
        new_cell = (lo, hi)
    cells = list(constraint.cells)
    cells[pos] = new_cell
    return NodeConstraint(schema=schema, cells=tuple(cells))
