"""Line-oriented ontology source parser.

Statement forms (one per line, ``#`` starts a comment):

    CONCEPT <name>
    ROLE <name>
    <expr> SUBCLASSOF <expr>
    DOMAIN <role> = <expr>
    RANGE <role> = <expr>

Expression grammar, with AND left-associative and parentheses allowed::

    expr ::= term (AND term)*
    term ::= TOP | BOTTOM | <name> | EXISTS <role>.<term> | ( expr )

Note that the filler of EXISTS is a term, so a conjunction filler needs
parentheses: ``EXISTS r.(A AND B)``.

Names are auto-declared on first use (with a warning). Declaring a name in
both namespaces, or using it against a previous registration, is an error;
so is an explicit duplicate declaration.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from ..errors import DuplicateDeclarationError, OntologySyntaxError, UndeclaredNameError
from .concepts import BOTTOM, TOP, Atom, ConceptExpr, Exists, conjunction

__all__ = ["Gci", "TBox", "parse_tbox", "load_tbox"]

log = logging.getLogger(__name__)

_KEYWORDS = {"CONCEPT", "ROLE", "SUBCLASSOF", "DOMAIN", "RANGE", "TOP", "BOTTOM", "AND", "EXISTS"}

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[().=]|\S")


@dataclass(frozen=True)
class Gci:
    """A general concept inclusion lhs SUBCLASSOF rhs."""

    lhs: ConceptExpr
    rhs: ConceptExpr


@dataclass
class TBox:
    gcis: list[Gci] = field(default_factory=list)
    concept_names: set[str] = field(default_factory=set)
    role_names: set[str] = field(default_factory=set)
    domain_axioms: dict[str, ConceptExpr] = field(default_factory=dict)
    # Ranges are stored for provenance only; the logic cannot express them,
    # so they never enter subsumption reasoning.
    range_axioms: dict[str, ConceptExpr] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


@dataclass
class _Token:
    text: str
    line: int
    column: int


class _Names:
    """Disjoint concept/role namespaces with auto-declaration."""

    def __init__(self, tbox: TBox):
        self.tbox = tbox
        self.kind: dict[str, str] = {}
        self.explicit: set[str] = set()

    def declare(self, name: str, kind: str, tok: _Token) -> None:
        if name in self.explicit:
            raise DuplicateDeclarationError(
                f"line {tok.line}: {name!r} declared more than once"
            )
        prior = self.kind.get(name)
        if prior is not None and prior != kind:
            raise UndeclaredNameError(
                f"line {tok.line}: {name!r} already used as a {prior}, "
                f"cannot declare as {kind}"
            )
        self.explicit.add(name)
        self._register(name, kind)

    def use(self, name: str, kind: str, tok: _Token) -> None:
        prior = self.kind.get(name)
        if prior is None:
            msg = f"line {tok.line}: {name!r} auto-declared as {kind} on first use"
            self.tbox.warnings.append(msg)
            log.warning(msg)
            self._register(name, kind)
        elif prior != kind:
            raise UndeclaredNameError(
                f"line {tok.line}: {name!r} is a {prior}, used as a {kind}"
            )

    def _register(self, name: str, kind: str) -> None:
        self.kind[name] = kind
        (self.tbox.concept_names if kind == "concept" else self.tbox.role_names).add(name)


class _LineParser:
    def __init__(self, tokens: list[_Token], line_no: int, line_len: int, names: _Names):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no
        self.line_len = line_len
        self.names = names

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise OntologySyntaxError("unexpected end of line", self.line_no, self.line_len + 1)
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise OntologySyntaxError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.column)
        return tok

    def expect_name(self) -> _Token:
        tok = self.next()
        if tok.text in _KEYWORDS or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok.text):
            raise OntologySyntaxError(f"expected a name, found {tok.text!r}", tok.line, tok.column)
        return tok

    def expect_end(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise OntologySyntaxError(f"unexpected trailing {tok.text!r}", tok.line, tok.column)

    def parse_expr(self) -> ConceptExpr:
        parts = [self.parse_term()]
        while (tok := self.peek()) is not None and tok.text == "AND":
            self.next()
            parts.append(self.parse_term())
        return conjunction(parts) if len(parts) > 1 else parts[0]

    def parse_term(self) -> ConceptExpr:
        tok = self.next()
        if tok.text == "TOP":
            return TOP
        if tok.text == "BOTTOM":
            return BOTTOM
        if tok.text == "EXISTS":
            role = self.expect_name()
            self.names.use(role.text, "role", role)
            self.expect(".")
            return Exists(role.text, self.parse_term())
        if tok.text == "(":
            expr = self.parse_expr()
            self.expect(")")
            return expr
        if tok.text in _KEYWORDS or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok.text):
            raise OntologySyntaxError(f"expected a concept, found {tok.text!r}", tok.line, tok.column)
        self.names.use(tok.text, "concept", tok)
        return Atom(tok.text)


def _tokenize(line: str, line_no: int) -> list[_Token]:
    tokens = []
    for m in _TOKEN_RE.finditer(line):
        text = m.group(0)
        if text == "#":
            break
        tokens.append(_Token(text, line_no, m.start() + 1))
    # A comment may start mid-token boundary ("#..." matched as single \S).
    out = []
    for tok in tokens:
        if tok.text.startswith("#"):
            break
        out.append(tok)
    return out


def parse_tbox(text: str) -> TBox:
    """Parse ontology source text into a TBox. Deterministic and total over
    valid inputs; empty input yields an empty, valid TBox."""
    tbox = TBox()
    names = _Names(tbox)
    for line_no, line in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(line, line_no)
        if not tokens:
            continue
        p = _LineParser(tokens, line_no, len(line), names)
        head = tokens[0].text
        if head in ("CONCEPT", "ROLE"):
            p.next()
            name = p.expect_name()
            names.declare(name.text, "concept" if head == "CONCEPT" else "role", name)
            p.expect_end()
        elif head in ("DOMAIN", "RANGE"):
            p.next()
            role = p.expect_name()
            names.use(role.text, "role", role)
            p.expect("=")
            expr = p.parse_expr()
            p.expect_end()
            table = tbox.domain_axioms if head == "DOMAIN" else tbox.range_axioms
            if role.text in table:
                raise DuplicateDeclarationError(
                    f"line {line_no}: {head} of {role.text!r} declared more than once"
                )
            table[role.text] = expr
        else:
            lhs = p.parse_expr()
            p.expect("SUBCLASSOF")
            rhs = p.parse_expr()
            p.expect_end()
            tbox.gcis.append(Gci(lhs, rhs))
    return tbox


def load_tbox(path: str) -> TBox:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tbox(fh.read())
