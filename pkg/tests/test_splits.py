import math

import numpy as np
import pytest

from treedistill.data import (
    Categorical,
    Feature,
    FeatureSchema,
    Numeric,
    refine_constraint,
    unconstrained,
)
from treedistill.distill import (
    Split,
    candidate_splits,
    entropy_bits,
    info_gain,
    modified_gain,
    score_node,
)


@pytest.fixture
def schema():
    return FeatureSchema(
        features=(
            Feature("gender", Categorical(("male", "female"))),
            Feature("income", Numeric(0.0, 1000.0)),
        ),
        class_feature="approved",
        class_labels=("yes", "no"),
    )


def ex(gender, income, label):
    return ((gender, income), label)


# --- candidate generation --------------------------------------------------


def test_no_split_for_single_allowed_value(schema):
    constraint = refine_constraint(
        unconstrained(schema), Split("gender", "eq", "male"), True
    )
    examples = [ex("male", 10.0, "yes"), ex("male", 20.0, "no")]
    splits = candidate_splits(examples, schema, constraint)
    assert all(s.feature != "gender" for s in splits)


def test_numeric_midpoints(schema):
    examples = [ex("male", 10.0, "yes"), ex("male", 20.0, "no"), ex("male", 30.0, "yes")]
    constraint = refine_constraint(
        unconstrained(schema), Split("gender", "eq", "male"), True
    )
    splits = candidate_splits(examples, schema, constraint)
    assert [s.value for s in splits] == [15.0, 25.0]


def test_threshold_cap_evenly_spaced(schema):
    examples = [ex("male", float(v), "yes") for v in range(100)]
    constraint = unconstrained(schema)
    splits = [s for s in candidate_splits(examples, schema, constraint) if s.op == "le"]
    assert len(splits) == 32
    mids = [v + 0.5 for v in range(99)]
    idx = np.round(np.linspace(0, 98, 32)).astype(int)
    assert [s.value for s in splits] == [mids[i] for i in idx]
    gaps = np.diff(idx)
    assert set(gaps.tolist()) <= {3, 4}


def test_candidates_respect_interval_constraint(schema):
    constraint = refine_constraint(
        unconstrained(schema), Split("income", "le", 18.0), True
    )
    examples = [ex("male", 10.0, "yes"), ex("male", 16.0, "no"), ex("female", 12.0, "no")]
    splits = candidate_splits(examples, schema, constraint)
    for s in splits:
        if s.op == "le":
            assert 0.0 < s.value < 18.0


def test_categorical_candidates_in_declared_order(schema):
    examples = [ex("female", 1.0, "yes"), ex("male", 1.0, "no")]
    splits = [s for s in candidate_splits(examples, schema, unconstrained(schema)) if s.op == "eq"]
    assert [s.value for s in splits] == ["male", "female"]


# --- gains -------------------------------------------------------------------


def test_perfect_separation_is_one_bit(schema):
    examples = [ex("male", 1.0, "yes")] * 4 + [ex("female", 1.0, "no")] * 4
    assert info_gain(Split("gender", "eq", "male"), examples, schema) == pytest.approx(1.0)


def test_no_partition_no_gain(schema):
    examples = [ex("male", 1.0, "yes")] * 6 + [ex("male", 2.0, "no")] * 2
    assert info_gain(Split("gender", "eq", "male"), examples, schema) == pytest.approx(0.0)


def test_hand_computed_gain(schema):
    # S = {6 yes, 2 no} split into (4 yes, 0) / (2 yes, 2 no):
    # H(0.75) - 0.5*H(0.5) = 0.8113 - 0.5 = 0.3113 bits.
    examples = (
        [ex("male", 1.0, "yes")] * 4 + [ex("female", 1.0, "yes")] * 2 + [ex("female", 1.0, "no")] * 2
    )
    gain = info_gain(Split("gender", "eq", "male"), examples, schema)
    expected = entropy_bits(["yes"] * 6 + ["no"] * 2) - 0.5
    assert gain == pytest.approx(expected)
    assert gain == pytest.approx(0.311278, abs=1e-6)


def test_entropy_bits_balanced():
    assert entropy_bits(["a", "b"] * 10) == pytest.approx(1.0)
    assert entropy_bits(["a"] * 10) == 0.0
    assert entropy_bits([]) == 0.0


def test_modified_gain_cases(schema):
    examples = [ex("male", 1.0, "yes")] * 4 + [ex("female", 1.0, "no")] * 4
    split = Split("gender", "eq", "male")
    assert modified_gain(split, examples, schema, 0.73) == pytest.approx(0.27)
    assert modified_gain(split, examples, schema, 0.0) == 0.0
    assert modified_gain(split, examples, schema, 1.0) == 0.0


# --- node scoring -------------------------------------------------------------


def test_argmax_selection(schema):
    # gender separates perfectly; income barely helps.
    examples = [ex("male", 10.0, "yes")] * 4 + [ex("female", 12.0, "no")] * 4
    scored = score_node(examples, schema, unconstrained(schema), mode="plain")
    assert scored.split == Split("gender", "eq", "male")
    assert scored.score == pytest.approx(1.0)
    assert not scored.fallback_used


def test_uniform_ic_preserves_choice(schema):
    rng = np.random.default_rng(2)
    for _ in range(25):
        examples = [
            ex(
                "male" if rng.random() < 0.5 else "female",
                float(rng.integers(0, 50)),
                "yes" if rng.random() < 0.5 else "no",
            )
            for _ in range(30)
        ]
        plain = score_node(examples, schema, unconstrained(schema), mode="plain")
        uniform_ic = {"gender": 0.4, "income": 0.4}
        onto = score_node(
            examples, schema, unconstrained(schema), mode="ontology", ic_table=uniform_ic
        )
        assert onto.split == plain.split


def test_unmapped_features_score_zero_and_fallback(schema):
    examples = [ex("male", 10.0, "yes")] * 4 + [ex("female", 12.0, "no")] * 4
    scored = score_node(
        examples, schema, unconstrained(schema), mode="ontology", ic_table={}
    )
    assert scored.fallback_used
    assert scored.split == Split("gender", "eq", "male")

    strict = score_node(
        examples,
        schema,
        unconstrained(schema),
        mode="ontology",
        ic_table={},
        zero_gain_fallback=False,
    )
    assert not strict.fallback_used
    assert strict.score == 0.0


def test_no_candidates_yields_none(schema):
    constraint = refine_constraint(
        unconstrained(schema), Split("gender", "eq", "male"), True
    )
    examples = [ex("male", 5.0, "yes"), ex("male", 5.0, "no")]
    scored = score_node(examples, schema, constraint, mode="plain")
    assert scored.split is None


def test_ties_break_by_feature_order():
    schema = FeatureSchema(
        features=(
            Feature("a", Categorical(("0", "1"))),
            Feature("b", Categorical(("0", "1"))),
        ),
        class_feature="c",
        class_labels=("x", "y"),
    )
    # a and b are identical columns: equal gain, the earlier feature wins.
    examples = [(("0", "0"), "x")] * 3 + [(("1", "1"), "y")] * 3
    scored = score_node(examples, schema, unconstrained(schema), mode="plain")
    assert scored.split.feature == "a"


def test_scale_invariance_of_selection(schema):
    rng = np.random.default_rng(5)
    for _ in range(20):
        examples = [
            ex(
                "male" if rng.random() < 0.5 else "female",
                float(rng.integers(0, 20)),
                "yes" if rng.random() < 0.6 else "no",
            )
            for _ in range(24)
        ]
        base = score_node(examples, schema, unconstrained(schema), mode="plain")
        # Multiplying every score by a positive constant must not change the
        # winner: ic = 0.5 scales all gains by exactly 0.5.
        half = score_node(
            examples,
            schema,
            unconstrained(schema),
            mode="ontology",
            ic_table={"gender": 0.5, "income": 0.5},
        )
        assert half.split == base.split
