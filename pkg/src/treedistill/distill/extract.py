"""Best-first surrogate-tree extraction from a black-box oracle.

The loop keeps a priority queue of open nodes. Popping a node tops its
example set up to ``s_min`` instances drawn under the node's path constraint
and labeled by the oracle, picks the best split, and attaches the children;
each impure child is enqueued with priority -(reach * best-gain), so large,
uncertain regions are expanded first. Growth stops when the queue empties or
the internal-node budget is reached; whatever is still queued stays a
majority-label leaf.

``direct_induce`` reuses the same machinery on the ground-truth labels with
no oracle and no sampling, as the direct-induction baseline.
"""

from __future__ import annotations

import hashlib
import heapq
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..data.constraints import NodeConstraint, refine_constraint, unconstrained
from ..data.dataset import LabeledDataset
from ..data.sampling import Marginals, draw_instance, estimate_marginals
from ..data.schema import FeatureSchema
from ..errors import UnsatisfiableConstraintError
from ..ontology import Atom, SubsumptionIndex
from ..oracle.base import Oracle
from .splits import LabeledExample, ScoredSplit, Split, evaluate_split, score_node
from .tree import DecisionTree, Internal, Leaf, TreeNode

__all__ = ["DistillConfig", "OntologyContext", "extract", "direct_induce"]


@dataclass(frozen=True)
class DistillConfig:
    size_limit: int
    seed: int
    s_min: int = 1000
    leaf_epsilon: float = 0.01
    max_numeric_thresholds: int = 32
    mode: str = "plain"  # "plain" or "ontology"
    zero_gain_fallback: bool = True
    reach_weighted_priority: bool = True

    def __post_init__(self):
        if self.size_limit < 1:
            raise ValueError("size_limit must be at least 1")
        if not (0.0 < self.leaf_epsilon < 0.5):
            raise ValueError("leaf_epsilon must lie in (0, 0.5)")
        if self.s_min < 1:
            raise ValueError("s_min must be at least 1")
        if self.mode not in ("plain", "ontology"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def to_dict(self) -> dict:
        return {
            "size_limit": self.size_limit,
            "seed": self.seed,
            "s_min": self.s_min,
            "leaf_epsilon": self.leaf_epsilon,
            "max_numeric_thresholds": self.max_numeric_thresholds,
            "mode": self.mode,
            "zero_gain_fallback": self.zero_gain_fallback,
            "reach_weighted_priority": self.reach_weighted_priority,
        }

    def hash(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class OntologyContext:
    index: SubsumptionIndex
    mapping: dict[str, str]  # feature name -> concept name
    ontology_hash: str

    def ic_table(self, schema: FeatureSchema) -> dict[str, float]:
        """Information content per feature; unmapped features score 0."""
        table = {}
        for feature in schema.features:
            concept = self.mapping.get(feature.name)
            table[feature.name] = (
                self.index.information_content(Atom(concept)) if concept else 0.0
            )
        return table


@dataclass
class _Builder:
    """Mutable node under construction; starts as a leaf, may gain a split."""

    node_id: int
    label: str
    support: int
    purity: float
    split: Optional[Split] = None
    true_child: Optional["_Builder"] = None
    false_child: Optional["_Builder"] = None

    def freeze(self) -> TreeNode:
        if self.split is None:
            return Leaf(label=self.label, support=self.support, purity=self.purity)
        return Internal(
            split=self.split,
            true_child=self.true_child.freeze(),
            false_child=self.false_child.freeze(),
        )


@dataclass
class _Open:
    builder: _Builder
    constraint: NodeConstraint
    examples: list[LabeledExample]
    marginals: Optional[Marginals]
    reach: float


def _majority(labels: Sequence[str], schema: FeatureSchema) -> tuple[str, float]:
    counts = Counter(labels)
    label = max(schema.class_labels, key=lambda c: counts.get(c, 0))
    return label, counts.get(label, 0) / len(labels)


def _node_rng(seed: int, node_id: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(node_id,)))


class _Grower:
    def __init__(
        self,
        schema: FeatureSchema,
        config: DistillConfig,
        ic_table: dict[str, float],
        oracle: Optional[Oracle],
        real_instances: Optional[list],
    ):
        self.schema = schema
        self.config = config
        self.ic_table = ic_table
        self.oracle = oracle
        self.real_instances = real_instances  # marginal estimation pool
        self.heap: list = []
        self.seq = 0
        self.next_id = 0
        self.n_internal = 0
        self.fallback_nodes = 0
        self.sampled_total = 0

    def new_builder(self, examples: list[LabeledExample], fallback_label: str) -> _Builder:
        node_id = self.next_id
        self.next_id += 1
        if examples:
            label, purity = _majority([l for _, l in examples], self.schema)
        else:
            label, purity = fallback_label, 1.0
        return _Builder(node_id=node_id, label=label, support=len(examples), purity=purity)

    def score(self, examples, constraint) -> ScoredSplit:
        return score_node(
            examples,
            self.schema,
            constraint,
            mode=self.config.mode,
            ic_table=self.ic_table,
            max_numeric_thresholds=self.config.max_numeric_thresholds,
            zero_gain_fallback=self.config.zero_gain_fallback,
        )

    def maybe_enqueue(self, open_node: _Open) -> None:
        """Enqueue unless the node is already a leaf by the stopping rules
        (pure enough, nothing to split on, or an empty example set)."""
        if not open_node.examples:
            return
        if open_node.builder.purity >= 1.0 - self.config.leaf_epsilon:
            return
        scored = self.score(open_node.examples, open_node.constraint)
        if scored.split is None:
            return
        weight = open_node.reach if self.config.reach_weighted_priority else 1.0
        priority = -(weight * scored.score)
        secondary = -(weight * scored.raw_gain)
        heapq.heappush(self.heap, (priority, secondary, self.seq, open_node))
        self.seq += 1

    def top_up(self, open_node: _Open) -> list[LabeledExample]:
        examples = list(open_node.examples)
        need = self.config.s_min - len(examples)
        if self.oracle is None or need <= 0 or open_node.marginals is None:
            return examples
        rng = _node_rng(self.config.seed, open_node.builder.node_id)
        drawn = [
            draw_instance(open_node.marginals, open_node.constraint, rng)
            for _ in range(need)
        ]
        labels = self.oracle.predict_many(drawn)
        examples.extend(zip(drawn, labels))
        self.sampled_total += need
        return examples

    def child_marginals(self, constraint: NodeConstraint, parent: Optional[Marginals]):
        if self.oracle is None:
            return None
        assert self.real_instances is not None
        reaching = [x for x in self.real_instances if constraint.satisfies(x)]
        if reaching:
            return estimate_marginals(reaching, self.schema)
        return parent  # no real data this deep: inherit the parent estimate

    def grow(self, root_examples: list[LabeledExample], root_marginals) -> tuple[_Builder, int]:
        root = self.new_builder(root_examples, fallback_label=self.schema.class_labels[0])
        self.maybe_enqueue(
            _Open(
                builder=root,
                constraint=unconstrained(self.schema),
                examples=root_examples,
                marginals=root_marginals,
                reach=1.0,
            )
        )

        while self.heap and self.n_internal < self.config.size_limit:
            _, _, _, open_node = heapq.heappop(self.heap)
            examples = self.top_up(open_node)
            builder = open_node.builder
            builder.label, builder.purity = _majority(
                [l for _, l in examples], self.schema
            )
            builder.support = len(examples)
            if builder.purity >= 1.0 - self.config.leaf_epsilon:
                continue  # pure after the top-up: close as a leaf
            scored = self.score(examples, open_node.constraint)
            if scored.split is None:
                continue
            if scored.fallback_used:
                self.fallback_nodes += 1
            self.attach(open_node, examples, scored.split)
            self.n_internal += 1

        return root, self.n_internal

    def attach(self, open_node: _Open, examples: list[LabeledExample], split: Split) -> None:
        builder = open_node.builder
        pos = self.schema.feature_index(split.feature)
        parts: dict[bool, list[LabeledExample]] = {True: [], False: []}
        for instance, label in examples:
            parts[evaluate_split(split, instance, pos)].append((instance, label))

        builder.split = split
        for branch in (True, False):
            child_examples = parts[branch]
            try:
                child_constraint = refine_constraint(open_node.constraint, split, branch)
            except UnsatisfiableConstraintError:
                # Candidate generation excludes these; guard anyway.
                child = self.new_builder(child_examples, fallback_label=builder.label)
                self.graft(builder, branch, child)
                continue
            child = self.new_builder(child_examples, fallback_label=builder.label)
            self.graft(builder, branch, child)
            self.maybe_enqueue(
                _Open(
                    builder=child,
                    constraint=child_constraint,
                    examples=child_examples,
                    marginals=self.child_marginals(child_constraint, open_node.marginals),
                    reach=open_node.reach * (len(child_examples) / len(examples)),
                )
            )

    @staticmethod
    def graft(parent: _Builder, branch: bool, child: _Builder) -> None:
        if branch:
            parent.true_child = child
        else:
            parent.false_child = child


def _provenance(
    config: DistillConfig,
    oracle: Optional[Oracle],
    ontology_context: Optional[OntologyContext],
    grower: _Grower,
    algorithm: str,
) -> dict:
    return {
        "algorithm": algorithm,
        "config": config.to_dict(),
        "config_hash": config.hash(),
        "seed": config.seed,
        "mode": config.mode,
        "oracle": oracle.metadata() if oracle is not None else None,
        "ontology_hash": ontology_context.ontology_hash if ontology_context else None,
        "fallback_nodes": grower.fallback_nodes,
        "sampled_total": grower.sampled_total,
    }


def extract(
    oracle: Oracle,
    train: LabeledDataset,
    config: DistillConfig,
    ontology_context: Optional[OntologyContext] = None,
) -> DecisionTree:
    """Distill a surrogate decision tree for the oracle.

    The training data is relabeled by the oracle first; ground-truth labels
    play no further role. Ontology mode requires an ontology context; the
    information content of each mapped feature is looked up once.
    """
    schema = train.schema
    oracle.ensure_compatible(schema)
    if config.mode == "ontology" and ontology_context is None:
        raise ValueError("ontology mode requires an ontology context")
    if len(train) == 0:
        raise ValueError("cannot distill from an empty dataset")

    ic_table = ontology_context.ic_table(schema) if ontology_context else {}
    oracle_labels = oracle.predict_many(train.instances)
    root_examples = list(zip(train.instances, oracle_labels))
    root_marginals = estimate_marginals(train.instances, schema)

    grower = _Grower(
        schema=schema,
        config=config,
        ic_table=ic_table if config.mode == "ontology" else {},
        oracle=oracle,
        real_instances=list(train.instances),
    )
    root, _ = grower.grow(root_examples, root_marginals)
    return DecisionTree.build(
        root=root.freeze(),
        schema_fingerprint=schema.fingerprint(),
        provenance=_provenance(config, oracle, ontology_context, grower, "distill"),
    )


def direct_induce(
    train: LabeledDataset,
    config: DistillConfig,
    ontology_context: Optional[OntologyContext] = None,
) -> DecisionTree:
    """Greedy top-down induction from the ground-truth labels: the same
    split machinery and stopping rules, but no oracle and no sampling."""
    schema = train.schema
    if config.mode == "ontology" and ontology_context is None:
        raise ValueError("ontology mode requires an ontology context")
    if len(train) == 0:
        raise ValueError("cannot induce from an empty dataset")

    ic_table = ontology_context.ic_table(schema) if ontology_context else {}
    root_examples = list(zip(train.instances, train.labels))

    grower = _Grower(
        schema=schema,
        config=config,
        ic_table=ic_table if config.mode == "ontology" else {},
        oracle=None,
        real_instances=None,
    )
    root, _ = grower.grow(root_examples, None)
    return DecisionTree.build(
        root=root.freeze(),
        schema_fingerprint=schema.fingerprint(),
        provenance=_provenance(config, None, ontology_context, grower, "direct"),
    )
