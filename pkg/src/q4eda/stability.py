"""Answer-stability evaluation.

For every series: pull the most prominent peaks and valleys, widen each
into a selection range, jiggle the endpoints one year in every
direction, run all resulting queries, and measure how much of the
original answer set survives the jiggling. Aggregated per pattern
class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .convert import ConverterConfig, Pattern, detect_pattern
from .data import DatasetCollection, Selection, Series
from .peaks import find_peaks
from .search import BackendError

Range = tuple[int, int]


@dataclass(frozen=True)
class PatternStats:
    mean: float
    std: float  # population
    count: int


@dataclass(frozen=True)
class StabilityReport:
    per_pattern_type: dict[Pattern, PatternStats]
    overall_mean: float
    query_count: int      # queries attempted
    failed_queries: int   # backend failures, excluded from aggregation
    skipped_patterns: int  # patterns without a usable original result


def extract_top_patterns(series: Series, config: ConverterConfig,
                         n: int = 6) -> list[tuple[Range, Pattern]]:
    """Top-n most prominent peaks and valleys of the whole series, each
    widened to [index - ceil(width), index + ceil(width)] and
    classified on that slice."""
    values = list(series.values)
    if len(values) < 3 or n <= 0:
        return []
    rel = config.width_rel_height
    candidates = [(p, 0) for p in find_peaks(values, rel)]
    candidates += [(p, 1) for p in find_peaks([-v for v in values], rel)]
    # prominence desc, then position, peaks before valleys
    candidates.sort(key=lambda po: (-po[0].prominence, po[0].index, po[1]))
    out = []
    for peak, _ in candidates[:n]:
        radius = math.ceil(peak.width)
        lo = max(0, peak.index - radius)
        hi = min(len(values) - 1, peak.index + radius)
        pattern, _pf = detect_pattern(values[lo:hi + 1], config)
        out.append(((series.years[lo], series.years[hi]), pattern))
    return out


def perturb(year_range: Range, window: int = 3,
            bounds: Range | None = None) -> list[Range]:
    """The original range first, then every endpoint offset combination
    within the window, clamped to bounds, deduplicated, degenerate
    ranges dropped."""
    if window < 1 or window % 2 == 0:
        raise ValueError("window must be an odd positive integer")
    half = window // 2
    deltas = sorted((ds, de)
                    for ds in range(-half, half + 1)
                    for de in range(-half, half + 1))
    deltas.remove((0, 0))
    deltas.insert(0, (0, 0))
    y_a, y_b = year_range
    out: list[Range] = []
    seen = set()
    for ds, de in deltas:
        a, b = y_a + ds, y_b + de
        if bounds is not None:
            a = max(a, bounds[0])
            b = min(b, bounds[1])
        if a > b or (a, b) in seen:
            continue
        seen.add((a, b))
        out.append((a, b))
    return out


def stability(original_ids, derived_id_lists) -> float:
    """Mean fraction of the original ids that each derived run keeps."""
    base = set(original_ids)
    if not base:
        raise ValueError("empty original result set")
    if not derived_id_lists:
        raise ValueError("no derived result sets")
    total = sum(len(base & set(ids)) for ids in derived_id_lists)
    return total / (len(base) * len(derived_id_lists))


def run_stability(collection: DatasetCollection,
                  run_query: Callable[[Selection], list[str]],
                  config: ConverterConfig, *, top_n: int = 6,
                  window: int = 3) -> StabilityReport:
    """Evaluate every series of the collection. run_query turns a
    Selection into ranked document ids (the backend, end to end);
    BackendError from it is recorded and the affected query excluded.
    A pattern whose original query fails or matches nothing is skipped
    whole."""
    per_type: dict[Pattern, list[float]] = {}
    query_count = 0
    failed = 0
    skipped = 0
    for name, dataset in collection.datasets.items():
        for key, series in dataset.series.items():
            if not series.years:
                continue
            bounds = (series.years[0], series.years[-1])
            for year_range, pattern in extract_top_patterns(series, config, top_n):
                original: list[str] | None = None
                derived: list[list[str]] = []
                for i, rng in enumerate(perturb(year_range, window, bounds)):
                    selection = Selection((name,), (key,), (rng,), config.profile)
                    query_count += 1
                    try:
                        ids = run_query(selection)
                    except BackendError:
                        failed += 1
                        if i == 0:
                            break
                        continue
                    if i == 0:
                        original = ids
                        if not ids:
                            break
                    else:
                        derived.append(ids)
                if not original or not derived:
                    skipped += 1
                    continue
                per_type.setdefault(pattern, []).append(stability(original, derived))
    stats = {}
    values_all: list[float] = []
    for pattern, values in per_type.items():
        mean = sum(values) / len(values)
        var = sum((v - mean) ** 2 for v in values) / len(values)
        stats[pattern] = PatternStats(mean, math.sqrt(var), len(values))
        values_all.extend(values)
    overall = sum(values_all) / len(values_all) if values_all else 0.0
    return StabilityReport(stats, overall, query_count, failed, skipped)


def report_to_json(report: StabilityReport) -> dict:
    return {
        "per_pattern_type": {
            pattern.value: {"mean": s.mean, "std": s.std, "count": s.count}
            for pattern, s in sorted(report.per_pattern_type.items(),
                                     key=lambda ps: ps[0].value)
        },
        "overall_mean": report.overall_mean,
        "query_count": report.query_count,
        "failed_queries": report.failed_queries,
        "skipped_patterns": report.skipped_patterns,
    }


def report_to_table(report: StabilityReport) -> str:
    rows = [("pattern", "mean", "std", "count")]
    for pattern, s in sorted(report.per_pattern_type.items(),
                             key=lambda ps: ps[0].value):
        rows.append((pattern.value, f"{s.mean:.4f}", f"{s.std:.4f}", str(s.count)))
    rows.append(("overall", f"{report.overall_mean:.4f}", "", ""))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
             for row in rows]
    lines.append(f"queries: {report.query_count}  "
                 f"failed: {report.failed_queries}  "
                 f"skipped: {report.skipped_patterns}")
    return "\n".join(lines)
