"""TBox classification and concept informativeness.

Subsumption over the enumerated subconcept set is decided by the polynomial
completion-rule procedure: every complex member gets a fresh internal atom
with two-way inclusion axioms, all axioms are reduced to the four normal
forms (A < B, A1 n A2 < B, A < Er.B, Er.A < B), the rule set is saturated to
a fixpoint, and subsumptions are read off the saturated membership sets.
Domain declarations enter as Er.TOP < C; range declarations stay metadata.

On top of the closure the module provides downward covers, the refinement
closure (iterated downward cover), and the information content measure
1 - log|subconcepts(C)| / log|sub|.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConceptNotInSubError, InconsistentTBoxError
from .concepts import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Bottom,
    ConceptExpr,
    Exists,
    Top,
    render,
    sort_key,
    subexpressions,
)
from .parser import TBox

__all__ = ["enumerate_sub", "classify", "SubsumptionIndex"]

_TOP_NAME = "*T"
_BOT_NAME = "*F"


def enumerate_sub(tbox: TBox) -> tuple[ConceptExpr, ...]:
    """All subconcepts of the TBox axioms plus TOP and BOTTOM, in canonical
    order. Domain/range declarations contribute no members."""
    members: set[ConceptExpr] = {TOP, BOTTOM}
    for gci in tbox.gcis:
        members |= subexpressions(gci.lhs)
        members |= subexpressions(gci.rhs)
    return tuple(sorted(members, key=sort_key))


class _Normalizer:
    """Names complex expressions and accumulates normal-form axioms.

    Normal forms are tuples:
      ("sub", A, B)        A < B
      ("conj", A1, A2, B)  A1 n A2 < B
      ("exr", A, r, B)     A < Er.B
      ("exl", r, A, B)     Er.A < B
    where A/B are atom names, "*T" or "*F".
    """

    def __init__(self) -> None:
        self.axioms: list[tuple] = []
        self.names: dict[ConceptExpr, str] = {}
        self._counter = 0

    def _fresh(self) -> str:
        name = f"*{self._counter}"
        self._counter += 1
        return name

    def name_of(self, expr: ConceptExpr) -> str:
        if isinstance(expr, Top):
            return _TOP_NAME
        if isinstance(expr, Bottom):
            return _BOT_NAME
        if isinstance(expr, Atom):
            return expr.name
        name = self.names.get(expr)
        if name is None:
            name = self._fresh()
            self.names[expr] = name
            self._define(name, expr)
        return name

    def _define(self, name: str, expr: ConceptExpr) -> None:
        # Two-way inclusions make the fresh atom equivalent to its expression.
        if isinstance(expr, Exists):
            filler = self.name_of(expr.filler)
            self.axioms.append(("exr", name, expr.role, filler))
            self.axioms.append(("exl", expr.role, filler, name))
        elif isinstance(expr, And):
            parts = [self.name_of(c) for c in expr.conjuncts]
            for part in parts:
                if part != _TOP_NAME:
                    self.axioms.append(("sub", name, part))
            current = parts[0]
            for i, nxt in enumerate(parts[1:], start=2):
                target = name if i == len(parts) else self._fresh()
                self.axioms.append(("conj", current, nxt, target))
                current = target
        else:  # pragma: no cover - atoms/TOP/BOTTOM never reach _define
            raise AssertionError(expr)

    def add_gci(self, lhs: ConceptExpr, rhs: ConceptExpr) -> None:
        left, right = self.name_of(lhs), self.name_of(rhs)
        if left == _BOT_NAME or right == _TOP_NAME:
            return  # tautology
        self.axioms.append(("sub", left, right))

    def add_domain(self, role: str, expr: ConceptExpr) -> None:
        target = self.name_of(expr)
        if target == _TOP_NAME:
            return
        self.axioms.append(("exl", role, _TOP_NAME, target))


def _saturate(axioms: list[tuple], elements: set[str]) -> dict[str, set[str]]:
    """Worklist saturation of the completion rules; returns the membership
    sets S, where B in S[A] means A is subsumed by B."""
    sub_by_lhs: dict[str, list[str]] = defaultdict(list)
    conj_by_part: dict[str, list[tuple[str, str]]] = defaultdict(list)
    exr_by_lhs: dict[str, list[tuple[str, str]]] = defaultdict(list)
    exl_by_role_filler: dict[tuple[str, str], list[str]] = defaultdict(list)
    for ax in axioms:
        if ax[0] == "sub":
            sub_by_lhs[ax[1]].append(ax[2])
        elif ax[0] == "conj":
            _, a1, a2, b = ax
            conj_by_part[a1].append((a2, b))
            if a2 != a1:
                conj_by_part[a2].append((a1, b))
        elif ax[0] == "exr":
            exr_by_lhs[ax[1]].append((ax[2], ax[3]))
        else:
            _, role, filler, b = ax
            exl_by_role_filler[(role, filler)].append(b)

    S: dict[str, set[str]] = {e: set() for e in elements}
    succs: dict[str, set[tuple[str, str]]] = defaultdict(set)
    preds: dict[str, set[tuple[str, str]]] = defaultdict(set)
    work: deque[tuple] = deque()

    def add_membership(elem: str, concept: str) -> None:
        if concept not in S[elem]:
            S[elem].add(concept)
            work.append(("s", elem, concept))

    def add_edge(elem: str, role: str, target: str) -> None:
        if (role, target) not in succs[elem]:
            succs[elem].add((role, target))
            preds[target].add((role, elem))
            work.append(("e", elem, role, target))

    for elem in elements:
        add_membership(elem, elem)
        add_membership(elem, _TOP_NAME)

    while work:
        item = work.popleft()
        if item[0] == "s":
            _, a, c = item
            for b in sub_by_lhs.get(c, ()):
                add_membership(a, b)
            for other, b in conj_by_part.get(c, ()):
                if other in S[a]:
                    add_membership(a, b)
            for role, b in exr_by_lhs.get(c, ()):
                add_edge(a, role, b)
            for role, p in tuple(preds.get(a, ())):
                for b in exl_by_role_filler.get((role, c), ()):
                    add_membership(p, b)
                if c == _BOT_NAME:
                    add_membership(p, _BOT_NAME)
        else:
            _, a, role, b = item
            for c in tuple(S[b]):
                for b2 in exl_by_role_filler.get((role, c), ()):
                    add_membership(a, b2)
            if _BOT_NAME in S[b]:
                add_membership(a, _BOT_NAME)

    return S


@dataclass
class SubsumptionIndex:
    """Immutable subsumption closure over the enumerated subconcept set.

    closure[i, j] holds iff members[i] is subsumed by members[j] w.r.t. the
    TBox. The relation is a preorder with BOTTOM and TOP as extremes.
    """

    members: tuple[ConceptExpr, ...]
    closure: np.ndarray
    fresh_names: dict[ConceptExpr, str]
    inconsistent: bool
    _index: dict[ConceptExpr, int] = field(repr=False, default_factory=dict)
    _strict: np.ndarray | None = field(repr=False, default=None)

    def __post_init__(self) -> None:
        self._index = {m: i for i, m in enumerate(self.members)}
        self.closure.setflags(write=False)

    def __contains__(self, concept: ConceptExpr) -> bool:
        return concept in self._index

    def _require(self, concept: ConceptExpr) -> int:
        try:
            return self._index[concept]
        except KeyError:
            raise ConceptNotInSubError(
                f"{render(concept)} is not among the TBox subconcepts"
            ) from None

    def is_subsumed(self, c: ConceptExpr, d: ConceptExpr) -> bool:
        """C subsumed by D w.r.t. the TBox."""
        return bool(self.closure[self._require(c), self._require(d)])

    def equivalent(self, c: ConceptExpr, d: ConceptExpr) -> bool:
        i, j = self._require(c), self._require(d)
        return bool(self.closure[i, j] and self.closure[j, i])

    def _strict_matrix(self) -> np.ndarray:
        if self._strict is None:
            self._strict = self.closure & ~self.closure.T
        return self._strict

    def downcov(self, concept: ConceptExpr) -> tuple[ConceptExpr, ...]:
        """Most general specializations of the concept within the member set:
        members subsumed by it with no strictly intermediate member. The
        concept itself always qualifies; equivalent members never block each
        other (strictness excludes equivalence)."""
        i = self._require(concept)
        strict = self._strict_matrix()
        below = self.closure[:, i]
        blocked = (strict & strict[:, i]).any(axis=1)
        picked = below & ~blocked
        return tuple(self.members[j] for j in np.nonzero(picked)[0])

    def subconcepts(self, concept: ConceptExpr) -> frozenset[ConceptExpr]:
        """Least fixpoint of iterating the downward cover from the concept."""
        self._require(concept)
        seen: set[ConceptExpr] = {concept}
        frontier = [concept]
        while frontier:
            nxt: list[ConceptExpr] = []
            for c in frontier:
                for d in self.downcov(c):
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
            frontier = nxt
        return frozenset(seen)

    def information_content(self, concept: ConceptExpr | None) -> float:
        """1 - log|subconcepts(C)| / log|sub|; 0 for anything outside the
        member set. Any log base gives the same ratio; natural log is used."""
        if self.inconsistent:
            raise InconsistentTBoxError(
                "TOP is subsumed by BOTTOM; information content is undefined"
            )
        if concept is None or concept not in self._index:
            return 0.0
        count = len(self.subconcepts(concept))
        return 1.0 - np.log(count) / np.log(len(self.members))


def classify(tbox: TBox) -> SubsumptionIndex:
    """Compute the full subsumption closure over ``enumerate_sub(tbox)``.

    An entailed TOP < BOTTOM flags the index as inconsistent (the closure is
    still returned).
    """
    members = enumerate_sub(tbox)
    norm = _Normalizer()
    proxies = {m: norm.name_of(m) for m in members}
    for gci in tbox.gcis:
        norm.add_gci(gci.lhs, gci.rhs)
    for role in sorted(tbox.domain_axioms):
        norm.add_domain(role, tbox.domain_axioms[role])

    elements = {_TOP_NAME, _BOT_NAME} | set(proxies.values())
    for ax in norm.axioms:
        if ax[0] == "sub":
            elements.update((ax[1], ax[2]))
        elif ax[0] == "conj":
            elements.update((ax[1], ax[2], ax[3]))
        elif ax[0] == "exr":
            elements.update((ax[1], ax[3]))
        else:
            elements.update((ax[2], ax[3]))

    S = _saturate(norm.axioms, elements)

    n = len(members)
    closure = np.zeros((n, n), dtype=bool)
    for i, m in enumerate(members):
        memberships = S[proxies[m]]
        unsat = isinstance(m, Bottom) or _BOT_NAME in memberships
        for j, d in enumerate(members):
            closure[i, j] = (
                isinstance(d, Top) or unsat or proxies[d] in memberships
            )

    fresh = {m: name for m, name in proxies.items() if isinstance(m, (And, Exists))}
    return SubsumptionIndex(
        members=members,
        closure=closure,
        fresh_names=fresh,
        inconsistent=_BOT_NAME in S[_TOP_NAME],
    )
