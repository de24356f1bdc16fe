"""Combine per-data-type sub-expressions into one query.

Every (key, dataset, range) combination contributes an intersection
set S; the conjunction of all S is favored with doubled weight over
their disjunction, and simplification collapses the overlap so shared
terms simply end up twice as heavy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ir import Or, QueryExpr, Scaled, and_of, or_of, simplify

Range = tuple[int, int]


@dataclass(frozen=True)
class ConversionBundle:
    country_exprs: dict[str, QueryExpr]            # key -> expression
    dataset_exprs: dict[str, QueryExpr]            # dataset name -> expression
    year_exprs: dict[Range, QueryExpr]             # range -> expression
    finding_exprs: dict[tuple[str, str, Range], QueryExpr | None]

    def __post_init__(self):
        expected = {(key, name, rng)
                    for key in self.country_exprs
                    for name in self.dataset_exprs
                    for rng in self.year_exprs}
        if set(self.finding_exprs) != expected:
            raise ValueError("finding_exprs must cover exactly keys x datasets x ranges")


def combine(bundle: ConversionBundle) -> QueryExpr:
    if not (bundle.country_exprs and bundle.dataset_exprs and bundle.year_exprs):
        raise ValueError("empty conversion bundle")
    sets = []
    for key, key_expr in bundle.country_exprs.items():
        for name, dataset_expr in bundle.dataset_exprs.items():
            for rng, year_expr in bundle.year_exprs.items():
                parts = [key_expr, dataset_expr, year_expr]
                finding = bundle.finding_exprs[(key, name, rng)]
                if finding is not None:
                    parts.append(finding)
                sets.append(and_of(parts))
    intersection = and_of(sets)
    union = or_of(sets)
    return simplify(Or((Scaled(intersection, 2.0), union)))
