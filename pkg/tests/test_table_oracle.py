import pytest

from treedistill.data import Categorical, Feature, FeatureSchema
from treedistill.errors import DatasetError, UnlistedInstanceError
from treedistill.oracle import TableOracle, table_oracle


@pytest.fixture
def schema():
    return FeatureSchema(
        features=(Feature("a", Categorical(("0", "1"))), Feature("b", Categorical(("0", "1")))),
        class_feature="c",
        class_labels=("no", "yes"),
    )


def test_lookup_returns_listed_label(schema, tmp_path):
    path = tmp_path / "preds.csv"
    path.write_text("a,b,predicted\n0,0,no\n0,1,yes\n1,0,no\n")
    oracle = table_oracle(str(path), schema)
    assert oracle.predict(("0", "1")) == "yes"


def test_unlisted_instance_is_an_error(schema, tmp_path):
    path = tmp_path / "preds.csv"
    path.write_text("a,b,predicted\n0,0,no\n")
    oracle = table_oracle(str(path), schema)
    with pytest.raises(UnlistedInstanceError):
        oracle.predict(("1", "1"))


def test_conflicting_duplicates_rejected_at_load(schema, tmp_path):
    path = tmp_path / "preds.csv"
    path.write_text("a,b,predicted\n0,0,no\n0,0,yes\n")
    with pytest.raises(DatasetError, match="conflicting"):
        table_oracle(str(path), schema)


def test_consistent_duplicates_allowed(schema):
    oracle = TableOracle.from_pairs(schema, [(("0", "0"), "no"), (("0", "0"), "no")])
    assert oracle.predict(("0", "0")) == "no"


def test_full_cartesian_and_table(schema, tmp_path):
    rows = ["a,b,predicted"]
    for a in "01":
        for b in "01":
            label = "yes" if a == "1" and b == "1" else "no"
            rows.append(f"{a},{b},{label}")
    path = tmp_path / "and.csv"
    path.write_text("\n".join(rows) + "\n")
    oracle = table_oracle(str(path), schema)
    for a in "01":
        for b in "01":
            expected = "yes" if a == "1" and b == "1" else "no"
            assert oracle.predict((a, b)) == expected


def test_missing_predicted_column(schema, tmp_path):
    path = tmp_path / "preds.csv"
    path.write_text("a,b\n0,0\n")
    with pytest.raises(DatasetError, match="missing column 'predicted'"):
        table_oracle(str(path), schema)
