"""Render query expressions into backend dialects.

Two targets: Elasticsearch simple-query-string text, and the local
backend's form (same tree with negation resolved away, since negated
terms still count as evidence for the finding they negate).
"""

from __future__ import annotations

from .ir import And, Or, QueryExpr, Required, Scaled, Term, format_weight, scale


def to_local(expr: QueryExpr) -> QueryExpr:
    """Clear every negative flag, keep the terms."""
    if isinstance(expr, Term):
        if not expr.negative:
            return expr
        return Term(expr.text, expr.weight)
    if isinstance(expr, Or):
        return Or(tuple(to_local(c) for c in expr.children))
    if isinstance(expr, And):
        return And(tuple(to_local(c) for c in expr.children))
    if isinstance(expr, Required):
        return Required(to_local(expr.child))
    return Scaled(to_local(expr.child), expr.factor)


def _suffix(weight: float) -> str:
    return "" if weight == 1.0 else "^" + format_weight(weight)


def to_es_simple(expr: QueryExpr) -> str:
    """Weight superscripts become ^, & becomes +, phrases are quoted,
    required subtrees get a +() gate, negation is dropped with the term
    kept."""
    if isinstance(expr, Scaled):
        return to_es_simple(scale(expr.child, expr.factor))
    if isinstance(expr, Term):
        body = f'"{expr.text}"' if expr.phrase else expr.text
        return body + _suffix(expr.weight)
    if isinstance(expr, Or):
        return "(" + " | ".join(to_es_simple(c) for c in expr.children) + ")"
    if isinstance(expr, And):
        return "(" + " + ".join(to_es_simple(c) for c in expr.children) + ")"
    child = expr.child
    if isinstance(child, Term):
        return f"+({child.text})" + _suffix(child.weight)
    rendered = to_es_simple(child)
    if rendered.startswith("("):
        return "+" + rendered
    return f"+({rendered})"
