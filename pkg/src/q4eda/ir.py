"""Weighted boolean query expressions.

The inner query language: lowercase terms with optional fractional
weights and negation, n-ary | and & groups, required subtrees, and a
multiplicative Scaled wrapper that only exists between compilation
passes. Trees are immutable; every operation returns a new tree and
structural equality is plain ==.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal

_WORD = re.compile(r"[a-z0-9]+")
_TERM_TEXT = re.compile(r"[a-z0-9]+( [a-z0-9]+)*")
# a '(' opens a phrase, not a group, iff words and single spaces run
# straight to the closing ')'
_PHRASE_AHEAD = re.compile(r"[a-z0-9]+( [a-z0-9]+)*\)")
_WEIGHT = re.compile(r"[0-9]+(\.[0-9]+)?")


class ParseError(ValueError):
    """Query text that does not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class Term:
    text: str             # lowercase words joined by single spaces
    weight: float = 1.0   # > 0; 1.0 prints without a superscript
    negative: bool = False

    def __post_init__(self):
        if not _TERM_TEXT.fullmatch(self.text):
            raise ValueError(f"bad term text {self.text!r}")
        if not self.weight > 0:
            raise ValueError(f"term weight must be positive, got {self.weight!r}")

    @property
    def phrase(self) -> bool:
        """True for multiword terms, which match as exact sequences."""
        return " " in self.text


@dataclass(frozen=True)
class Or:
    children: tuple[QueryExpr, ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("| group needs at least two children")


@dataclass(frozen=True)
class And:
    children: tuple[QueryExpr, ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("& group needs at least two children")


@dataclass(frozen=True)
class Required:
    child: QueryExpr


@dataclass(frozen=True)
class Scaled:
    child: QueryExpr
    factor: float

    def __post_init__(self):
        if not self.factor > 0:
            raise ValueError(f"scale factor must be positive, got {self.factor!r}")


QueryExpr = Term | Or | And | Required | Scaled


def or_of(children) -> QueryExpr:
    """Or over children, collapsing the single-child case."""
    nodes = tuple(children)
    if not nodes:
        raise ValueError("empty | group")
    return nodes[0] if len(nodes) == 1 else Or(nodes)


def and_of(children) -> QueryExpr:
    nodes = tuple(children)
    if not nodes:
        raise ValueError("empty & group")
    return nodes[0] if len(nodes) == 1 else And(nodes)


def format_weight(weight: float) -> str:
    """Shortest decimal that parses back to exactly this float."""
    if weight == int(weight):
        return str(int(weight))
    s = repr(weight)
    if "e" in s or "E" in s:
        s = format(Decimal(s), "f")
    return s


def print_expr(expr: QueryExpr) -> str:
    """Canonical text form. parse(print_expr(e)) reproduces e exactly
    for trees without Scaled nodes; Scaled factors are distributed into
    term weights while printing."""
    if isinstance(expr, Term):
        body = f"({expr.text})" if expr.phrase else expr.text
        out = ("-" if expr.negative else "") + body
        if expr.weight != 1.0:
            out += "^" + format_weight(expr.weight)
        return out
    if isinstance(expr, Or):
        return "(" + " | ".join(print_expr(c) for c in expr.children) + ")"
    if isinstance(expr, And):
        return "(" + " & ".join(print_expr(c) for c in expr.children) + ")"
    if isinstance(expr, Required):
        return '"' + print_expr(expr.child) + '"'
    return print_expr(_push(expr.child, expr.factor))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse_expr(self) -> QueryExpr:
        self.skip_ws()
        if self.pos >= len(self.text):
            self.fail("unexpected end of query")
        c = self.text[self.pos]
        if c == '"':
            return self.parse_required()
        if c == "(" and not _PHRASE_AHEAD.match(self.text, self.pos + 1):
            return self.parse_group()
        return self.parse_term()

    def parse_required(self) -> Required:
        self.pos += 1
        child = self.parse_expr()
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != '"':
            self.fail("unclosed required quote")
        self.pos += 1
        return Required(child)

    def parse_group(self) -> QueryExpr:
        self.pos += 1
        children = [self.parse_expr()]
        op = None
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                self.fail("unclosed group")
            c = self.text[self.pos]
            if c == ")":
                self.pos += 1
                break
            if c not in "|&":
                self.fail("expected |, & or )")
            if op is None:
                op = c
            elif c != op:
                self.fail("mixed | and & in one group")
            self.pos += 1
            children.append(self.parse_expr())
        if len(children) == 1:
            # redundant parentheses around a single subexpression
            return children[0]
        return Or(tuple(children)) if op == "|" else And(tuple(children))

    def parse_term(self) -> Term:
        negative = False
        if self.text[self.pos] == "-":
            negative = True
            self.pos += 1
            if self.pos >= len(self.text):
                self.fail("dangling -")
        c = self.text[self.pos]
        if c == "(":
            m = _PHRASE_AHEAD.match(self.text, self.pos + 1)
            if not m:
                self.fail("expected a phrase after (")
            text = m.group(0)[:-1]
            self.pos = m.end()
        else:
            m = _WORD.match(self.text, self.pos)
            if not m:
                self.fail("expected a term")
            text = m.group(0)
            self.pos = m.end()
        weight = 1.0
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            self.pos += 1
            wm = _WEIGHT.match(self.text, self.pos)
            if not wm:
                self.fail("malformed weight")
            weight = float(wm.group(0))
            if weight == 0.0:
                self.fail("zero weight")
            self.pos = wm.end()
        return Term(text, weight, negative)


def parse(text: str) -> QueryExpr:
    """Parse canonical query text. Raises ParseError with the offending
    offset; uppercase input is rejected, not folded."""
    p = _Parser(text)
    expr = p.parse_expr()
    p.skip_ws()
    if p.pos != len(p.text):
        p.fail("trailing characters after query")
    return expr


def _push(expr: QueryExpr, factor: float) -> QueryExpr:
    """Multiply factor into every term weight, dissolving Scaled."""
    if isinstance(expr, Scaled):
        return _push(expr.child, expr.factor * factor)
    if isinstance(expr, Term):
        if factor == 1.0:
            return expr
        return Term(expr.text, expr.weight * factor, expr.negative)
    if isinstance(expr, Or):
        return Or(tuple(_push(c, factor) for c in expr.children))
    if isinstance(expr, And):
        return And(tuple(_push(c, factor) for c in expr.children))
    return Required(_push(expr.child, factor))


def scale(expr: QueryExpr, factor: float) -> QueryExpr:
    if not factor > 0:
        raise ValueError(f"scale factor must be positive, got {factor!r}")
    return _push(expr, factor)


def _skeleton(expr: QueryExpr):
    """Tree shape ignoring weights; used to merge duplicate branches."""
    if isinstance(expr, Term):
        return ("t", expr.text, expr.negative)
    if isinstance(expr, Required):
        return ("r", _skeleton(expr.child))
    tag = "|" if isinstance(expr, Or) else "&"
    return (tag, tuple(_skeleton(c) for c in expr.children))


def _merge_max(a: QueryExpr, b: QueryExpr) -> QueryExpr:
    """Merge two skeleton-equal trees, keeping the larger weight per term."""
    if isinstance(a, Term):
        return a if a.weight >= b.weight else b
    if isinstance(a, Required):
        return Required(_merge_max(a.child, b.child))
    return type(a)(tuple(_merge_max(x, y) for x, y in zip(a.children, b.children)))


def _canon(expr: QueryExpr) -> QueryExpr:
    if isinstance(expr, Term):
        return expr
    if isinstance(expr, Required):
        return Required(_canon(expr.child))
    kids: list[QueryExpr] = []
    for child in expr.children:
        c = _canon(child)
        if isinstance(c, type(expr)):
            kids.extend(c.children)
        else:
            kids.append(c)
    merged: list[QueryExpr] = []
    slot: dict = {}
    for c in kids:
        key = _skeleton(c)
        if key in slot:
            i = slot[key]
            merged[i] = _merge_max(merged[i], c)
        else:
            slot[key] = len(merged)
            merged.append(c)
    if len(merged) == 1:
        return merged[0]
    return type(expr)(tuple(merged))


def simplify(expr: QueryExpr) -> QueryExpr:
    """Normal form: no Scaled nodes, no nested same-operator groups, no
    single-child groups, duplicate branches merged keeping the largest
    weight. First-occurrence child order is preserved. Idempotent."""
    return _canon(_push(expr, 1.0))
