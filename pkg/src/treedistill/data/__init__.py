"""Feature schemas, datasets, constraints, and constrained sampling."""

from .constraints import NodeConstraint, refine_constraint, unconstrained
from .dataset import LabeledDataset, load_dataset
from .sampling import (
    CategoricalMarginal,
    Marginals,
    NumericMarginal,
    draw_instance,
    estimate_marginals,
)
from .schema import (
    Categorical,
    Feature,
    FeatureSchema,
    Instance,
    Numeric,
    load_schema,
    parse_schema,
)

__all__ = [
    "Categorical",
    "Numeric",
    "Feature",
    "FeatureSchema",
    "Instance",
    "load_schema",
    "parse_schema",
    "LabeledDataset",
    "load_dataset",
    "NodeConstraint",
    "unconstrained",
    "refine_constraint",
    "CategoricalMarginal",
    "NumericMarginal",
    "Marginals",
    "estimate_marginals",
    "draw_instance",
]
