"""Surrogate-tree extraction and the direct-induction baseline."""

from .extract import DistillConfig, OntologyContext, direct_induce, extract
from .splits import (
    ScoredSplit,
    Split,
    candidate_splits,
    entropy_bits,
    evaluate_split,
    info_gain,
    modified_gain,
    score_node,
)
from .tree import DecisionTree, Internal, Leaf, TreeNode, classify_with_tree

__all__ = [
    "Split",
    "ScoredSplit",
    "candidate_splits",
    "entropy_bits",
    "evaluate_split",
    "info_gain",
    "modified_gain",
    "score_node",
    "Leaf",
    "Internal",
    "TreeNode",
    "DecisionTree",
    "classify_with_tree",
    "DistillConfig",
    "OntologyContext",
    "extract",
    "direct_induce",
]
