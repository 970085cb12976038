"""Exact-match lookup oracle over exported predictions.

Lets any external model act as the oracle: export its predictions as a CSV
of full feature vectors plus a ``predicted`` column, then replay them. A
lookup miss is an explicit error; the caller must only query listed
instances (intended for replay tests over closed input grids).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from ..data.dataset import parse_value
from ..data.schema import FeatureSchema, Instance
from ..errors import DatasetError, UnlistedInstanceError
from .base import Oracle

__all__ = ["TableOracle", "table_oracle"]

PREDICTED_COLUMN = "predicted"


@dataclass
class TableOracle(Oracle):
    schema: FeatureSchema
    table: dict[Instance, str]
    kind: str = "table"

    @classmethod
    def from_pairs(cls, schema: FeatureSchema, pairs) -> "TableOracle":
        table: dict[Instance, str] = {}
        for instance, label in pairs:
            instance = tuple(instance)
            if label not in schema.class_labels:
                raise DatasetError(f"unknown class label {label!r} in prediction table")
            prior = table.get(instance)
            if prior is not None and prior != label:
                raise DatasetError(
                    f"conflicting labels {prior!r} and {label!r} for instance {instance!r}"
                )
            table[instance] = label
        return cls(schema=schema, table=table)

    def predict(self, instance: Instance) -> str:
        try:
            return self.table[tuple(instance)]
        except KeyError:
            raise UnlistedInstanceError(
                f"instance {instance!r} has no row in the prediction table"
            ) from None

    def metadata(self) -> dict:
        meta = super().metadata()
        meta["rows"] = len(self.table)
        return meta


def table_oracle(path: str, schema: FeatureSchema) -> TableOracle:
    """Load a predictions CSV: the schema's feature columns plus
    ``predicted``. Duplicate rows with conflicting labels are a load-time
    error."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: empty file") from None
        positions = {}
        for col in [f.name for f in schema.features] + [PREDICTED_COLUMN]:
            if col not in header:
                raise DatasetError(f"{path}: missing column {col!r}")
            positions[col] = header.index(col)

        pairs = []
        for row_no, row in enumerate(reader, start=2):
            where = f"{path}:{row_no}"
            if len(row) < len(header):
                raise DatasetError(f"{where}: expected {len(header)} fields, got {len(row)}")
            instance = tuple(
                parse_value(schema, i, row[positions[f.name]], where)
                for i, f in enumerate(schema.features)
            )
            label = row[positions[PREDICTED_COLUMN]]
            if label not in schema.class_labels:
                raise DatasetError(f"{where}: unknown class label {label!r}")
            pairs.append((instance, label))
    try:
        return TableOracle.from_pairs(schema, pairs)
    except DatasetError as exc:
        raise DatasetError(f"{path}: {exc}") from exc
