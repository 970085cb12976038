"""CSV ingestion against a feature schema."""

from __future__ import annotations

import csv
from dataclasses import dataclass

from ..errors import DatasetError
from .schema import Categorical, FeatureSchema, Instance

__all__ = ["LabeledDataset", "load_dataset", "parse_value"]


@dataclass
class LabeledDataset:
    schema: FeatureSchema
    instances: list[Instance]
    labels: list[str]

    def __post_init__(self):
        if len(self.instances) != len(self.labels):
            raise DatasetError("instances and labels differ in length")

    def __len__(self) -> int:
        return len(self.instances)


def parse_value(schema: FeatureSchema, feature_pos: int, raw: str, where: str):
    """Parse and validate one cell. Out-of-range numerics are errors, never
    clamped (clamping would corrupt the marginals downstream)."""
    feature = schema.features[feature_pos]
    if isinstance(feature.kind, Categorical):
        if raw not in feature.kind.values:
            raise DatasetError(
                f"{where}: unknown value {raw!r} for categorical feature {feature.name!r}"
            )
        return raw
    try:
        value = float(raw)
    except ValueError:
        raise DatasetError(
            f"{where}: cannot parse {raw!r} as a number for feature {feature.name!r}"
        ) from None
    if not (feature.kind.lo <= value <= feature.kind.hi):
        raise DatasetError(
            f"{where}: value {value} outside [{feature.kind.lo}, {feature.kind.hi}] "
            f"for feature {feature.name!r}"
        )
    return value


def load_dataset(path: str, schema: FeatureSchema) -> LabeledDataset:
    """Load an RFC-4180 CSV with a header row. Columns are located by name;
    columns not named in the schema are ignored. Row order is preserved."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: empty file") from None

        positions: dict[str, int] = {}
        for col in [f.name for f in schema.features] + [schema.class_feature]:
            if col not in header:
                raise DatasetError(f"{path}: missing column {col!r}")
            positions[col] = header.index(col)

        instances: list[Instance] = []
        labels: list[str] = []
        for row_no, row in enumerate(reader, start=2):
            where = f"{path}:{row_no}"
            if len(row) < len(header):
                raise DatasetError(f"{where}: expected {len(header)} fields, got {len(row)}")
            values = tuple(
                parse_value(schema, i, row[positions[f.name]], where)
                for i, f in enumerate(schema.features)
            )
            label = row[positions[schema.class_feature]]
            if label not in schema.class_labels:
                raise DatasetError(f"{where}: unknown class label {label!r}")
            instances.append(values)
            labels.append(label)
    return LabeledDataset(schema=schema, instances=instances, labels=labels)
