import pytest

from treedistill.data import Categorical, Feature, FeatureSchema, LabeledDataset
from treedistill.distill import DecisionTree, Internal, Leaf, Split
from treedistill.metrics import (
    MetricsReport,
    accuracy,
    evaluate,
    fidelity,
    size_category,
    syntactic_complexity,
)
from treedistill.oracle import TableOracle


@pytest.fixture
def schema():
    return FeatureSchema(
        features=(Feature("a", Categorical(("0", "1"))), Feature("b", Categorical(("0", "1")))),
        class_feature="c",
        class_labels=("no", "yes"),
    )


def make_tree(root, schema):
    return DecisionTree.build(
        root=root, schema_fingerprint=schema.fingerprint(), provenance={"algorithm": "test"}
    )


def leaf(label):
    return Leaf(label=label, support=1, purity=1.0)


def full_depth2(schema):
    return make_tree(
        Internal(
            Split("a", "eq", "0"),
            Internal(Split("b", "eq", "0"), leaf("no"), leaf("yes")),
            Internal(Split("b", "eq", "0"), leaf("yes"), leaf("no")),
        ),
        schema,
    )


def test_single_leaf_accuracy_is_majority_share(schema):
    ds = LabeledDataset(
        schema=schema,
        instances=[("0", "0")] * 7 + [("1", "1")] * 3,
        labels=["yes"] * 7 + ["no"] * 3,
    )
    tree = make_tree(leaf("yes"), schema)
    assert accuracy(tree, ds) == pytest.approx(0.7)


def test_fidelity_equals_accuracy_on_relabeled_data(schema):
    instances = [(a, b) for a in "01" for b in "01"] * 3
    oracle = TableOracle.from_pairs(
        schema, [((a, b), "yes" if a == b else "no") for a in "01" for b in "01"]
    )
    ds = LabeledDataset(schema=schema, instances=instances, labels=["no"] * len(instances))
    tree = full_depth2(schema)
    relabeled = LabeledDataset(
        schema=schema, instances=instances, labels=oracle.predict_many(instances)
    )
    assert fidelity(tree, oracle, ds) == pytest.approx(accuracy(tree, relabeled))


def test_perfect_fidelity_on_matching_table(schema):
    oracle = TableOracle.from_pairs(
        schema, [((a, b), "yes" if (a == "0") == (b == "1") else "no") for a in "01" for b in "01"]
    )
    ds = LabeledDataset(
        schema=schema,
        instances=[(a, b) for a in "01" for b in "01"],
        labels=["no"] * 4,
    )
    tree = make_tree(
        Internal(
            Split("a", "eq", "0"),
            Internal(Split("b", "eq", "1"), leaf("yes"), leaf("no")),
            Internal(Split("b", "eq", "1"), leaf("no"), leaf("yes")),
        ),
        schema,
    )
    assert fidelity(tree, oracle, ds) == 1.0


def test_empty_test_set_rejected(schema):
    tree = make_tree(leaf("yes"), schema)
    with pytest.raises(ValueError):
        accuracy(tree, LabeledDataset(schema=schema, instances=[], labels=[]))


def test_complexity_single_leaf(schema):
    tree = make_tree(leaf("yes"), schema)
    assert syntactic_complexity(tree, alpha=0.5) == pytest.approx(0.1)


def test_complexity_full_depth2(schema):
    tree = full_depth2(schema)
    assert (tree.n_leaves, tree.b_total) == (4, 8)
    assert syntactic_complexity(tree, alpha=0.5) == pytest.approx(0.56)


def test_complexity_alpha_extremes(schema):
    tree = full_depth2(schema)
    assert syntactic_complexity(tree, alpha=1.0) == pytest.approx(4 / 5)
    assert syntactic_complexity(tree, alpha=0.0) == pytest.approx(8 / 25)


def test_complexity_monotone_under_growth(schema):
    smaller = make_tree(Internal(Split("a", "eq", "0"), leaf("no"), leaf("yes")), schema)
    bigger = make_tree(
        Internal(
            Split("a", "eq", "0"),
            Internal(Split("b", "eq", "0"), leaf("no"), leaf("yes")),
            leaf("yes"),
        ),
        schema,
    )
    for alpha in (0.1, 0.5, 0.9):
        assert syntactic_complexity(bigger, alpha) > syntactic_complexity(smaller, alpha)


def test_complexity_invariant_under_child_swap(schema):
    a = make_tree(
        Internal(Split("a", "eq", "0"), leaf("no"), Internal(Split("b", "eq", "0"), leaf("no"), leaf("yes"))),
        schema,
    )
    b = make_tree(
        Internal(Split("a", "eq", "0"), Internal(Split("b", "eq", "0"), leaf("yes"), leaf("no")), leaf("no")),
        schema,
    )
    assert syntactic_complexity(a) == syntactic_complexity(b)


def chain_tree(schema, n_internal):
    node = leaf("yes")
    for _ in range(n_internal):
        node = Internal(Split("a", "eq", "0"), leaf("no"), node)
    return make_tree(node, schema)


@pytest.mark.parametrize(
    "n_internal,category",
    [(0, "small"), (10, "small"), (11, "medium"), (20, "medium"), (21, "large"), (30, "large"), (31, "oversize")],
)
def test_size_categories(schema, n_internal, category):
    assert size_category(chain_tree(schema, n_internal)) == category


def test_report_rendering(schema):
    ds = LabeledDataset(schema=schema, instances=[("0", "0")], labels=["yes"])
    report = evaluate(make_tree(leaf("yes"), schema), ds)
    text = report.to_text()
    assert "accuracy: 1.0000" in text
    assert "fidelity" not in text  # omitted without an oracle
    assert report.to_dict()["fidelity"] is None
    assert isinstance(report, MetricsReport)
