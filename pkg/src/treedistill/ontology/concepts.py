"""Concept expressions for the small description logic used by the toolkit.

Concepts are TOP, BOTTOM, named atoms, conjunctions, and existential role
restrictions. All expressions are immutable and kept in a canonical form so
that structural equality (and therefore set membership) is deterministic:
conjunctions are flattened, duplicate-free, and sorted by a total order over
expressions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "ConceptExpr",
    "Top",
    "Bottom",
    "Atom",
    "Exists",
    "And",
    "TOP",
    "BOTTOM",
    "conjunction",
    "sort_key",
    "subexpressions",
    "render",
]


@dataclass(frozen=True)
class Top:
    """The universal concept."""

    def __repr__(self) -> str:
        return "Top()"


@dataclass(frozen=True)
class Bottom:
    """The empty concept."""

    def __repr__(self) -> str:
        return "Bottom()"


@dataclass(frozen=True)
class Atom:
    name: str

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True)
class Exists:
    role: str
    filler: "ConceptExpr"

    def __repr__(self) -> str:
        return f"Exists({self.role!r}, {self.filler!r})"


@dataclass(frozen=True)
class And:
    """A flattened, deduplicated, canonically ordered conjunction.

    Do not construct directly; use :func:`conjunction`, which establishes the
    invariants (length >= 2, no nested And, sorted unique conjuncts).
    """

    conjuncts: tuple["ConceptExpr", ...]

    def __repr__(self) -> str:
        return f"And({list(self.conjuncts)!r})"


ConceptExpr = Union[Top, Bottom, Atom, Exists, And]

TOP = Top()
BOTTOM = Bottom()

# Variant ranks: Top < Bottom < Atom < Exists < And.
_RANKS = {Top: 0, Bottom: 1, Atom: 2, Exists: 3, And: 4}


def sort_key(expr: ConceptExpr) -> tuple:
    """Total-order key over concept expressions (used for canonical form)."""
    if isinstance(expr, (Top, Bottom)):
        return (_RANKS[type(expr)],)
    if isinstance(expr, Atom):
        return (2, expr.name)
    if isinstance(expr, Exists):
        return (3, expr.role, sort_key(expr.filler))
    return (4, tuple(sort_key(c) for c in expr.conjuncts))


def conjunction(parts: Iterable[ConceptExpr]) -> ConceptExpr:
    """Build a canonical conjunction: flatten, dedupe, sort.

    A single surviving conjunct is returned as-is (a conjunction always has
    at least two members).
    """
    flat: list[ConceptExpr] = []
    for p in parts:
        if isinstance(p, And):
            flat.extend(p.conjuncts)
        else:
            flat.append(p)
    unique = sorted(set(flat), key=sort_key)
    if not unique:
        raise ValueError("conjunction of zero concepts")
    if len(unique) == 1:
        return unique[0]
    return And(tuple(unique))


def subexpressions(expr: ConceptExpr) -> set[ConceptExpr]:
    """The expression together with all of its nested subexpressions."""
    out = {expr}
    if isinstance(expr, Exists):
        out |= subexpressions(expr.filler)
    elif isinstance(expr, And):
        for c in expr.conjuncts:
            out |= subexpressions(c)
    return out


def render(expr: ConceptExpr) -> str:
    """Source-syntax rendering (parse(render(e)) == e for canonical e)."""
    if isinstance(expr, Top):
        return "TOP"
    if isinstance(expr, Bottom):
        return "BOTTOM"
    if isinstance(expr, Atom):
        return expr.name
    if isinstance(expr, Exists):
        filler = render(expr.filler)
        if isinstance(expr.filler, And):
            filler = f"({filler})"
        return f"EXISTS {expr.role}.{filler}"
    return " AND ".join(render(c) for c in expr.conjuncts)
