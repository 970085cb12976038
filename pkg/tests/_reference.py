"""Independent reference implementations used as test oracles.

Everything here is deliberately written in the most naive way possible and
shares no code with the package: the brute-force saturation re-applies every
completion rule to every element until nothing changes (no worklist, no
indexing), and the tree evaluator is a plain recursive descent.
"""

from __future__ import annotations

import numpy as np

from treedistill.ontology import TOP, BOTTOM, Atom, Exists, conjunction
from treedistill.ontology.parser import Gci, TBox

TOPN = "__top__"
BOTN = "__bot__"


def brute_force_saturation(axioms, atoms):
    """Naive completion-rule closure over a normalized TBox.

    ``axioms`` are tuples in the package's normal forms:
        ("sub", A, B), ("conj", A1, A2, B), ("exr", A, r, B), ("exl", r, A, B)
    with TOPN/BOTN allowed in atom positions. Returns dict elem -> set of
    subsumers (element names plus TOPN/BOTN).
    """
    elements = set(atoms) | {TOPN, BOTN}
    for ax in axioms:
        if ax[0] in ("sub", "exr"):
            elements |= {ax[1], ax[3] if ax[0] == "exr" else ax[2]}
        elif ax[0] == "conj":
            elements |= {ax[1], ax[2], ax[3]}
        else:
            elements |= {ax[2], ax[3]}

    S = {e: {e, TOPN} for e in elements}
    R = set()  # (elem, role, elem)

    changed = True
    while changed:
        changed = False
        for a in elements:
            for ax in axioms:
                if ax[0] == "sub":
                    if ax[1] in S[a] and ax[2] not in S[a]:
                        S[a].add(ax[2])
                        changed = True
                elif ax[0] == "conj":
                    if ax[1] in S[a] and ax[2] in S[a] and ax[3] not in S[a]:
                        S[a].add(ax[3])
                        changed = True
                elif ax[0] == "exr":
                    if ax[1] in S[a] and (a, ax[2], ax[3]) not in R:
                        R.add((a, ax[2], ax[3]))
                        changed = True
        for (a, role, b) in list(R):
            for ax in axioms:
                if ax[0] == "exl" and ax[1] == role and ax[2] in S[b] and ax[3] not in S[a]:
                    S[a].add(ax[3])
                    changed = True
            if BOTN in S[b] and BOTN not in S[a]:
                S[a].add(BOTN)
                changed = True
    return S


def brute_force_subsumes(S, a, b):
    """a subsumed by b, reading off a brute-force saturation."""
    if b == TOPN or a == BOTN:
        return True
    return b in S[a] or BOTN in S[a]


def random_normalized_tbox(rng: np.random.Generator, max_atoms=12, max_axioms=20):
    """A random TBox whose axioms are already in the four normal forms.

    Returns (tbox, axioms, atom_names): the same axioms both as package
    concept expressions (for classify) and as reference tuples (for the
    brute force).
    """
    n_atoms = int(rng.integers(2, max_atoms + 1))
    atoms = [f"A{i}" for i in range(n_atoms)]
    roles = [f"r{i}" for i in range(int(rng.integers(1, 4)))]
    n_axioms = int(rng.integers(1, max_axioms + 1))

    def pick_atom():
        return atoms[int(rng.integers(0, n_atoms))]

    def pick_rhs():
        # Occasionally BOTTOM on the right to exercise unsatisfiability.
        if rng.random() < 0.08:
            return BOTN
        return pick_atom()

    def pick_filler():
        # Occasionally TOP as filler (the domain-axiom encoding shape).
        if rng.random() < 0.15:
            return TOPN
        return pick_atom()

    tuples = []
    for _ in range(n_axioms):
        form = rng.random()
        role = roles[int(rng.integers(0, len(roles)))]
        if form < 0.35:
            tuples.append(("sub", pick_atom(), pick_rhs()))
        elif form < 0.6:
            tuples.append(("conj", pick_atom(), pick_atom(), pick_rhs()))
        elif form < 0.8:
            tuples.append(("exr", pick_atom(), role, pick_atom()))
        else:
            tuples.append(("exl", role, pick_filler(), pick_rhs()))

    def expr_of(name):
        if name == TOPN:
            return TOP
        if name == BOTN:
            return BOTTOM
        return Atom(name)

    gcis = []
    for ax in tuples:
        if ax[0] == "sub":
            gcis.append(Gci(expr_of(ax[1]), expr_of(ax[2])))
        elif ax[0] == "conj":
            lhs = conjunction([expr_of(ax[1]), expr_of(ax[2])])
            gcis.append(Gci(lhs, expr_of(ax[3])))
        elif ax[0] == "exr":
            gcis.append(Gci(expr_of(ax[1]), Exists(ax[2], expr_of(ax[3]))))
        else:
            gcis.append(Gci(Exists(ax[1], expr_of(ax[2])), expr_of(ax[3])))

    tbox = TBox(gcis=gcis, concept_names=set(atoms), role_names=set(roles))
    return tbox, tuples, atoms


def evaluate_tree_reference(node, instance, feature_index):
    """Recursive-descent tree evaluator, independent of the package walker."""
    from treedistill.distill.tree import Leaf

    if isinstance(node, Leaf):
        return node.label
    value = instance[feature_index[node.split.feature]]
    if node.split.op == "eq":
        taken = value == node.split.value
    else:
        taken = value <= node.split.value
    child = node.true_child if taken else node.false_child
    return evaluate_tree_reference(child, instance, feature_index)
