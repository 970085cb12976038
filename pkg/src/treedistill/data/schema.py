"""Feature schemas and typed instances.

A schema fixes the feature order, each feature's kind (categorical with a
closed value list, or numeric with inclusive bounds), and the class feature
with its labels. Instances are plain tuples aligned with the feature order;
validation happens at ingestion, not per access.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Union

from ..errors import SchemaError

__all__ = [
    "Categorical",
    "Numeric",
    "Feature",
    "FeatureSchema",
    "Instance",
    "load_schema",
    "parse_schema",
]

Instance = tuple  # values aligned with FeatureSchema.features


@dataclass(frozen=True)
class Categorical:
    values: tuple[str, ...]


@dataclass(frozen=True)
class Numeric:
    lo: float
    hi: float


@dataclass(frozen=True)
class Feature:
    name: str
    kind: Union[Categorical, Numeric]


@dataclass(frozen=True)
class FeatureSchema:
    features: tuple[Feature, ...]
    class_feature: str
    class_labels: tuple[str, ...]

    def __post_init__(self):
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise SchemaError("feature names must be unique")
        if self.class_feature in names:
            raise SchemaError("class feature must not also be a feature")
        if len(self.class_labels) < 2:
            raise SchemaError("at least two class labels are required")
        if len(set(self.class_labels)) != len(self.class_labels):
            raise SchemaError("class labels must be unique")
        for f in self.features:
            if isinstance(f.kind, Categorical):
                if not f.kind.values:
                    raise SchemaError(f"{f.name}: empty categorical value list")
                if len(set(f.kind.values)) != len(f.kind.values):
                    raise SchemaError(f"{f.name}: duplicate categorical values")
            else:
                if not (f.kind.lo < f.kind.hi):
                    raise SchemaError(f"{f.name}: numeric min must be below max")

    def feature_index(self, name: str) -> int:
        for i, f in enumerate(self.features):
            if f.name == name:
                return i
        raise SchemaError(f"unknown feature {name!r}")

    def label_index(self, label: str) -> int:
        try:
            return self.class_labels.index(label)
        except ValueError:
            raise SchemaError(f"unknown class label {label!r}") from None

    def to_dict(self) -> dict:
        feats = []
        for f in self.features:
            if isinstance(f.kind, Categorical):
                feats.append(
                    {"name": f.name, "kind": "categorical", "values": list(f.kind.values)}
                )
            else:
                feats.append(
                    {"name": f.name, "kind": "numeric", "min": f.kind.lo, "max": f.kind.hi}
                )
        return {
            "features": feats,
            "class_feature": self.class_feature,
            "class_labels": list(self.class_labels),
        }

    def fingerprint(self) -> str:
        cached = getattr(self, "_fingerprint", None)
        if cached is None:
            canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
            cached = hashlib.sha256(canon.encode("utf-8")).hexdigest()
            object.__setattr__(self, "_fingerprint", cached)
        return cached


def parse_schema(doc: dict) -> FeatureSchema:
    try:
        features = []
        for spec in doc["features"]:
            name = spec["name"]
            kind = spec["kind"]
            if kind == "categorical":
                features.append(Feature(name, Categorical(tuple(spec["values"]))))
            elif kind == "numeric":
                features.append(Feature(name, Numeric(float(spec["min"]), float(spec["max"]))))
            else:
                raise SchemaError(f"{name}: unknown feature kind {kind!r}")
        return FeatureSchema(
            features=tuple(features),
            class_feature=doc["class_feature"],
            class_labels=tuple(doc["class_labels"]),
        )
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed schema document: {exc}") from exc


def load_schema(path: str) -> FeatureSchema:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    return parse_schema(doc)
