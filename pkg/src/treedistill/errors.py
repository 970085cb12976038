"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "TreedistillError",
    "OntologySyntaxError",
    "DuplicateDeclarationError",
    "UndeclaredNameError",
    "ConceptNotInSubError",
    "InconsistentTBoxError",
    "SchemaError",
    "DatasetError",
    "SchemaMismatchError",
    "UnsatisfiableConstraintError",
    "UnlistedInstanceError",
    "TrainingDivergedError",
    "TreeFormatError",
    "UsageError",
]


class TreedistillError(Exception):
    """Base class for all toolkit errors."""


class OntologySyntaxError(TreedistillError):
    """Malformed ontology source. Carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DuplicateDeclarationError(TreedistillError):
    """A name was declared twice (or a DOMAIN/RANGE repeated for a role)."""


class UndeclaredNameError(TreedistillError):
    """A name was used in a namespace it does not belong to."""


class ConceptNotInSubError(TreedistillError):
    """A query concept is not a member of the enumerated subconcept set."""


class InconsistentTBoxError(TreedistillError):
    """TOP is subsumed by BOTTOM; information content is undefined."""


class SchemaError(TreedistillError):
    """Invalid feature schema definition."""


class DatasetError(TreedistillError):
    """Invalid dataset or prediction-table content."""


class SchemaMismatchError(TreedistillError):
    """Schema fingerprints of two artifacts disagree."""


class UnsatisfiableConstraintError(TreedistillError):
    """A node constraint admits no instances (empty value set or interval)."""


class UnlistedInstanceError(TreedistillError):
    """A table oracle was queried with an instance it has no row for."""


class TrainingDivergedError(TreedistillError):
    """Network training produced a non-finite loss."""

    def __init__(self, epoch: int):
        super().__init__(f"non-finite loss at epoch {epoch}")
        self.epoch = epoch


class TreeFormatError(TreedistillError):
    """Malformed serialized tree document."""


class UsageError(TreedistillError):
    """Bad command-line invocation."""
