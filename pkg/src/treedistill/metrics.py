"""Surrogate-tree quality measures.

Accuracy compares tree predictions with ground-truth labels; fidelity
compares them with the oracle being explained (the measure that matters for
an explanation). Syntactic complexity combines leaf count n and the total
number of branch edges b on all root-to-leaf paths:

    U = alpha * n / k + (1 - alpha) * b / k**2,  k = 5.

Size categories bucket trees by internal-node count: small 0-10, medium
11-20, large 21-30, anything beyond is oversize.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .data.dataset import LabeledDataset
from .distill.tree import DecisionTree, classify_with_tree
from .oracle.base import Oracle

__all__ = [
    "accuracy",
    "fidelity",
    "syntactic_complexity",
    "size_category",
    "MetricsReport",
    "evaluate",
]

COMPLEXITY_K = 5.0
DEFAULT_ALPHA = 0.5

_SIZE_BUCKETS = ((10, "small"), (20, "medium"), (30, "large"))


def accuracy(tree: DecisionTree, test: LabeledDataset) -> float:
    """Fraction of test instances the tree labels like the ground truth."""
    if len(test) == 0:
        raise ValueError("empty test set")
    tree.ensure_compatible(test.schema)
    hits = sum(
        1
        for instance, label in zip(test.instances, test.labels)
        if classify_with_tree(tree, instance, test.schema) == label
    )
    return hits / len(test)


def fidelity(tree: DecisionTree, oracle: Oracle, test: LabeledDataset) -> float:
    """Fraction of test instances on which the tree agrees with the oracle;
    ground-truth labels play no role."""
    if len(test) == 0:
        raise ValueError("empty test set")
    tree.ensure_compatible(test.schema)
    oracle.ensure_compatible(test.schema)
    oracle_labels = oracle.predict_many(test.instances)
    hits = sum(
        1
        for instance, label in zip(test.instances, oracle_labels)
        if classify_with_tree(tree, instance, test.schema) == label
    )
    return hits / len(test)


def syntactic_complexity(tree: DecisionTree, alpha: float = DEFAULT_ALPHA) -> float:
    if not (0.0 <= alpha <= 1.0):
        raise ValueError("alpha must lie in [0, 1]")
    n, b = tree.n_leaves, tree.b_total
    return alpha * n / COMPLEXITY_K + (1.0 - alpha) * b / COMPLEXITY_K**2


def size_category(tree: DecisionTree) -> str:
    for upper, name in _SIZE_BUCKETS:
        if tree.n_internal <= upper:
            return name
    return "oversize"


@dataclass
class MetricsReport:
    accuracy: float
    fidelity: Optional[float]
    syntactic_complexity: float
    size_category: str
    n_leaves: int
    n_internal: int
    b_total: int
    alpha: float

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "fidelity": self.fidelity,
            "syntactic_complexity": self.syntactic_complexity,
            "size_category": self.size_category,
            "n_leaves": self.n_leaves,
            "n_internal": self.n_internal,
            "b_total": self.b_total,
            "alpha": self.alpha,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"accuracy: {self.accuracy:.4f}"]
        if self.fidelity is not None:
            lines.append(f"fidelity: {self.fidelity:.4f}")
        lines += [
            f"syntactic_complexity: {self.syntactic_complexity:.4f}",
            f"size_category: {self.size_category}",
            f"n_leaves: {self.n_leaves}",
            f"n_internal: {self.n_internal}",
            f"b_total: {self.b_total}",
            f"alpha: {self.alpha}",
        ]
        return "\n".join(lines) + "\n"


def evaluate(
    tree: DecisionTree,
    test: LabeledDataset,
    oracle: Optional[Oracle] = None,
    alpha: float = DEFAULT_ALPHA,
) -> MetricsReport:
    return MetricsReport(
        accuracy=accuracy(tree, test),
        fidelity=fidelity(tree, oracle, test) if oracle is not None else None,
        syntactic_complexity=syntactic_complexity(tree, alpha),
        size_category=size_category(tree),
        n_leaves=tree.n_leaves,
        n_internal=tree.n_internal,
        b_total=tree.b_total,
        alpha=alpha,
    )
