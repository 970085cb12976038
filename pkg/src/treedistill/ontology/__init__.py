"""Ontology parsing, classification, and concept informativeness."""

from .concepts import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Bottom,
    ConceptExpr,
    Exists,
    Top,
    conjunction,
    render,
    subexpressions,
)
from .parser import Gci, TBox, load_tbox, parse_tbox
from .reasoner import SubsumptionIndex, classify, enumerate_sub

__all__ = [
    "TOP",
    "BOTTOM",
    "Top",
    "Bottom",
    "Atom",
    "Exists",
    "And",
    "ConceptExpr",
    "conjunction",
    "render",
    "subexpressions",
    "Gci",
    "TBox",
    "parse_tbox",
    "load_tbox",
    "SubsumptionIndex",
    "classify",
    "enumerate_sub",
]
