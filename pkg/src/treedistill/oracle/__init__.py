"""Black-box oracles: the built-in network and the prediction-table replay."""

from ..errors import DatasetError
from .base import Oracle
from .mlp import MlpOracle, TrainConfig, TrainingSummary, load_mlp, train_mlp
from .table import TableOracle, table_oracle

__all__ = [
    "Oracle",
    "MlpOracle",
    "TrainConfig",
    "TrainingSummary",
    "train_mlp",
    "load_mlp",
    "TableOracle",
    "table_oracle",
    "load_oracle",
]


def load_oracle(path: str, schema) -> Oracle:
    """Load an oracle artifact: an MLP model document (JSON) or a
    predictions CSV (anything else)."""
    with open(path, "r", encoding="utf-8") as fh:
        head = fh.read(1)
    if head == "{":
        oracle = load_mlp(path)
        if oracle.schema_fingerprint != schema.fingerprint():
            raise DatasetError(
                f"{path}: oracle schema fingerprint does not match the dataset schema"
            )
        return oracle
    return table_oracle(path, schema)
