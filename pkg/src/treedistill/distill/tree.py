"""Extracted decision trees: structure, traversal, serialization, DOT."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from ..data.schema import FeatureSchema, Instance
from ..errors import SchemaMismatchError, TreeFormatError
from .splits import Split, evaluate_split

__all__ = ["Leaf", "Internal", "TreeNode", "DecisionTree", "classify_with_tree"]

TREE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Leaf:
    label: str
    support: int
    purity: float


@dataclass(frozen=True)
class Internal:
    split: Split
    true_child: "TreeNode"
    false_child: "TreeNode"


TreeNode = Union[Leaf, Internal]


def _count_leaves(node: TreeNode) -> int:
    if isinstance(node, Leaf):
        return 1
    return _count_leaves(node.true_child) + _count_leaves(node.false_child)


def _count_internal(node: TreeNode) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + _count_internal(node.true_child) + _count_internal(node.false_child)


def _sum_leaf_depths(node: TreeNode, depth: int = 0) -> int:
    if isinstance(node, Leaf):
        return depth
    return _sum_leaf_depths(node.true_child, depth + 1) + _sum_leaf_depths(
        node.false_child, depth + 1
    )


@dataclass(frozen=True)
class DecisionTree:
    root: TreeNode
    schema_fingerprint: str
    n_leaves: int
    n_internal: int
    b_total: int  # total branch edges over all root-to-leaf paths
    provenance: dict = field(compare=False)

    @classmethod
    def build(cls, root: TreeNode, schema_fingerprint: str, provenance: dict) -> "DecisionTree":
        return cls(
            root=root,
            schema_fingerprint=schema_fingerprint,
            n_leaves=_count_leaves(root),
            n_internal=_count_internal(root),
            b_total=_sum_leaf_depths(root),
            provenance=provenance,
        )

    def recount(self) -> tuple[int, int, int]:
        """Recompute (n_leaves, n_internal, b_total) by traversal."""
        return _count_leaves(self.root), _count_internal(self.root), _sum_leaf_depths(self.root)

    def ensure_compatible(self, schema: FeatureSchema) -> None:
        if schema.fingerprint() != self.schema_fingerprint:
            raise SchemaMismatchError(
                "tree was extracted against a different schema "
                f"(tree {self.schema_fingerprint[:12]}.., data {schema.fingerprint()[:12]}..)"
            )

    # --- serialization ----------------------------------------------------

    def to_document(self) -> dict:
        return {
            "format": "treedistill-tree",
            "format_version": TREE_FORMAT_VERSION,
            "schema_fingerprint": self.schema_fingerprint,
            "provenance": self.provenance,
            "n_leaves": self.n_leaves,
            "n_internal": self.n_internal,
            "b_total": self.b_total,
            "root": _node_to_dict(self.root),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_document(cls, doc: dict) -> "DecisionTree":
        try:
            if doc["format"] != "treedistill-tree":
                raise TreeFormatError(f"not a tree document: format={doc.get('format')!r}")
            tree = cls(
                root=_node_from_dict(doc["root"]),
                schema_fingerprint=doc["schema_fingerprint"],
                n_leaves=doc["n_leaves"],
                n_internal=doc["n_internal"],
                b_total=doc["b_total"],
                provenance=doc["provenance"],
            )
        except (KeyError, TypeError) as exc:
            raise TreeFormatError(f"malformed tree document: {exc}") from exc
        counted = tree.recount()
        if counted != (tree.n_leaves, tree.n_internal, tree.b_total):
            raise TreeFormatError(
                f"structural counts {counted} disagree with the document header"
            )
        return tree

    @classmethod
    def from_json(cls, text: str) -> "DecisionTree":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TreeFormatError(f"not valid JSON: {exc}") from exc
        return cls.from_document(doc)

    @classmethod
    def load(cls, path: str) -> "DecisionTree":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    # --- rendering ----------------------------------------------------------

    def to_dot(self) -> str:
        """DOT digraph: split nodes as boxes labeled with their test, edges
        labeled true/false, leaves labeled 'class (support, purity)'."""
        lines = ["digraph tree {", '  node [shape=box, fontname="Helvetica"];']
        counter = [0]

        def emit(node: TreeNode) -> str:
            name = f"n{counter[0]}"
            counter[0] += 1
            if isinstance(node, Leaf):
                label = (
                    f"{_dot_escape(node.label)}\\n"
                    f"(support {node.support}, purity {node.purity:.2f})"
                )
                lines.append(f'  {name} [shape=oval, label="{label}"];')
            else:
                lines.append(f'  {name} [label="{_dot_escape(node.split.describe())}"];')
                t = emit(node.true_child)
                f = emit(node.false_child)
                lines.append(f'  {name} -> {t} [label="true"];')
                lines.append(f'  {name} -> {f} [label="false"];')
            return name

        emit(self.root)
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _node_to_dict(node: TreeNode) -> dict:
    if isinstance(node, Leaf):
        return {
            "type": "leaf",
            "label": node.label,
            "support": node.support,
            "purity": node.purity,
        }
    return {
        "type": "split",
        "feature": node.split.feature,
        "test": {"op": node.split.op, "value": node.split.value},
        "true": _node_to_dict(node.true_child),
        "false": _node_to_dict(node.false_child),
    }


def _node_from_dict(doc: dict) -> TreeNode:
    kind = doc.get("type")
    if kind == "leaf":
        return Leaf(label=doc["label"], support=int(doc["support"]), purity=float(doc["purity"]))
    if kind == "split":
        op = doc["test"]["op"]
        if op not in ("eq", "le"):
            raise TreeFormatError(f"unknown split op {op!r}")
        value = doc["test"]["value"]
        split = Split(doc["feature"], op, float(value) if op == "le" else value)
        return Internal(
            split=split,
            true_child=_node_from_dict(doc["true"]),
            false_child=_node_from_dict(doc["false"]),
        )
    raise TreeFormatError(f"unknown node type {kind!r}")


def classify_with_tree(tree: DecisionTree, instance: Instance, schema: FeatureSchema) -> str:
    """Root-to-leaf traversal; total and deterministic. The numeric test is
    inclusive: value == threshold takes the true branch."""
    tree.ensure_compatible(schema)
    return _walk(tree.root, instance, schema)


def _walk(node: TreeNode, instance: Instance, schema: FeatureSchema) -> str:
    while isinstance(node, Internal):
        pos = schema.feature_index(node.split.feature)
        node = node.true_child if evaluate_split(node.split, instance, pos) else node.false_child
    return node.label
