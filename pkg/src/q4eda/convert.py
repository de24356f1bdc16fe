"""Selection fragments to query sub-expressions.

Four conversions: free-text keywords (embedding expansion plus antonym
negatives), countries (gazetteer synonyms plus a down-weighted region),
year ranges (weighted year, decade and century terms), and series
findings (trend and shape classes re-expanded as keywords).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .data import Gazetteer
from .ir import QueryExpr, Term, and_of, or_of
from .nlp import EmbeddingModel, expand
from .peaks import find_peaks


class Trend(str, Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"
    NEUTRAL = "neutral"


class Pattern(str, Enum):
    STABLE = "stable"
    PEAK = "peak"
    VALLEY = "valley"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class ConverterConfig:
    ma_window: int = 2          # moving-average half-window
    lambda1: float = 0.5        # stdev below which a slice is stable
    lambda2: float = 1.5        # |pattern factor| above which peak/valley
    neighbor_k: int = 6         # expansion neighbours per keyword
    width_rel_height: float = 0.5
    profile: str = "uniform"    # default year-weight profile

    def __post_init__(self):
        if self.ma_window < 1:
            raise ValueError("ma_window must be >= 1")
        if self.lambda1 <= 0 or self.lambda2 <= 0:
            raise ValueError("lambda thresholds must be positive")
        if self.neighbor_k < 0:
            raise ValueError("neighbor_k must be >= 0")
        if not 0 < self.width_rel_height <= 1:
            raise ValueError("width_rel_height must be in (0, 1]")
        if self.profile not in ("uniform", "gaussian"):
            raise ValueError(f"unknown profile {self.profile!r}")


def convert_keyword(name: str, model: EmbeddingModel,
                    lexicon: dict[str, tuple[str, ...]], k: int) -> QueryExpr:
    terms = expand(name, model, lexicon, k)
    return or_of(Term(t.term, t.weight, t.negative) for t in terms)


def convert_country(name: str, gazetteer: Gazetteer) -> QueryExpr:
    entry = gazetteer.resolve(name)
    if entry is None:
        close = gazetteer.near_matches(name)
        hint = f" (close matches: {', '.join(close)})" if close else ""
        raise LookupError(f"unknown country {name!r}{hint}")
    terms = [Term(entry.name)]
    terms.extend(Term(s) for s in entry.synonyms)
    if entry.region:
        terms.append(Term(entry.region, entry.region_weight))
    return or_of(terms)


def _ordinal(n: int) -> str:
    if 10 <= n % 100 <= 20:
        suffix = "th"
    else:
        suffix = {1: "st", 2: "nd", 3: "rd"}.get(n % 10, "th")
    return f"{n}{suffix}"


def convert_years(y_a: int, y_b: int, profile: str = "uniform") -> QueryExpr:
    """Year terms weighted by profile, then decade terms ("1850s") and
    century terms ("19th century") weighted by how much of the period
    the selection misses on each side; periods cut by more than half
    drop out."""
    if y_a > y_b:
        raise ValueError(f"bad year range ({y_a}, {y_b})")
    terms = []
    if profile == "uniform":
        terms.extend(Term(str(y)) for y in range(y_a, y_b + 1))
    elif profile == "gaussian":
        # bell-shaped profile over the range, heaviest at the center;
        # quarter-range scale, except degenerate short ranges
        gamma = (y_b - y_a) / 4 if y_b - y_a + 1 >= 5 else 1.0
        center = (y_a + y_b) / 2
        for y in range(y_a, y_b + 1):
            x = (y - center) / gamma
            terms.append(Term(str(y), round(1.0 / (1.0 + x * x), 1)))
    else:
        raise ValueError(f"unknown profile {profile!r}")
    for k in range(y_a // 10, y_b // 10 + 1):
        begin = 10 * k
        missed = max(0, y_a - begin) + max(0, begin + 10 - y_b)
        numer = 10 - 2 * missed  # integer arithmetic keeps 0.6 exact
        if numer > 0:
            terms.append(Term(f"{begin}s", numer / 10))
    for c in range(y_a // 100, y_b // 100 + 1):
        begin = 100 * c
        missed = max(0, y_a - begin) + max(0, begin + 100 - y_b)
        numer = 100 - 2 * missed
        if numer > 0:
            terms.append(Term(f"{_ordinal(c + 1)} century", numer / 100))
    return or_of(terms)


def _moving_average(values, w: int) -> list[float]:
    n = len(values)
    out = []
    for i in range(n):
        lo = max(0, i - w)
        hi = min(n - 1, i + w)
        segment = values[lo:hi + 1]
        out.append(sum(segment) / len(segment))
    return out


def _pstdev(values) -> float:
    mean = sum(values) / len(values)
    return math.sqrt(sum((v - mean) ** 2 for v in values) / len(values))


def detect_trend(values, config: ConverterConfig) -> Trend:
    """Sign-count of smoothed first differences; ties cancel."""
    if len(values) < 2:
        return Trend.NEUTRAL
    smoothed = _moving_average(values, config.ma_window)
    total = 0
    for prev, cur in zip(smoothed, smoothed[1:]):
        if cur > prev:
            total += 1
        elif cur < prev:
            total -= 1
    if total > 0:
        return Trend.ASCENDING
    if total < 0:
        return Trend.DESCENDING
    return Trend.NEUTRAL


def detect_pattern(values, config: ConverterConfig) -> tuple[Pattern, float]:
    """Classify a slice as stable/peak/valley/unstable with its pattern
    factor: point count times (peak mass - valley mass) over stdev."""
    if not values:
        raise ValueError("empty series")
    sigma = _pstdev(values)
    if sigma < config.lambda1:
        return Pattern.STABLE, 0.0
    rel = config.width_rel_height
    mirrored = [-v for v in values]
    w_plus = sum(p.width * p.prominence for p in find_peaks(values, rel))
    w_minus = sum(p.width * p.prominence for p in find_peaks(mirrored, rel))
    pf = len(values) * (w_plus - w_minus) / sigma
    if pf > config.lambda2:
        return Pattern.PEAK, pf
    if pf < -config.lambda2:
        return Pattern.VALLEY, pf
    return Pattern.UNSTABLE, pf


def convert_finding(values, config: ConverterConfig, model: EmbeddingModel,
                    lexicon: dict[str, tuple[str, ...]]) -> QueryExpr | None:
    """Trend and shape class words expanded as keywords; neutral and
    stable contribute nothing, and a sub-two-point slice has no finding
    at all."""
    if len(values) <= 1:
        return None
    parts = []
    trend = detect_trend(values, config)
    if trend is not Trend.NEUTRAL:
        parts.append(convert_keyword(trend.value, model, lexicon, config.neighbor_k))
    pattern, _ = detect_pattern(values, config)
    if pattern is not Pattern.STABLE:
        parts.append(convert_keyword(pattern.value, model, lexicon, config.neighbor_k))
    if not parts:
        return None
    return and_of(parts)
