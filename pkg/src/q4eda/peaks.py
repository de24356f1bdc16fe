"""Local maxima with topographic prominence and interpolated width.

A peak is the leftmost sample of a maximal plateau that strictly rises
on the left and strictly falls after the plateau; shoulders (plateaus
that rise again) are excluded, which keeps every prominence positive.
Prominence measures down to the higher of the two lowest points
reachable without climbing above the peak. Width is the horizontal
extent at a reference height below the peak, linearly interpolated
between samples and clipped to the same window.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Peak:
    index: int        # position in F, leftmost sample of the plateau
    prominence: float  # > 0, in value units
    width: float       # > 0, in sample units


def _window(values, i: int) -> tuple[int, int]:
    """Extent of peak i: outward until a strictly higher sample or the
    series edge, exclusive of the higher sample."""
    n = len(values)
    lo = i
    j = i - 1
    while j >= 0 and values[j] <= values[i]:
        lo = j
        j -= 1
    hi = i
    j = i + 1
    while j < n and values[j] <= values[i]:
        hi = j
        j += 1
    return lo, hi


def _width_at(values, i: int, lo: int, hi: int, height: float) -> float:
    il = i
    while il > lo and values[il] > height:
        il -= 1
    if values[il] < height:
        left = il + (height - values[il]) / (values[il + 1] - values[il])
    else:
        left = float(il)
    ir = i
    while ir < hi and values[ir] > height:
        ir += 1
    if values[ir] < height:
        right = ir - (height - values[ir]) / (values[ir - 1] - values[ir])
    else:
        right = float(ir)
    return right - left


def find_peaks(values, rel_height: float = 0.5) -> list[Peak]:
    """All peaks of the series, left to right. Series shorter than 3
    samples have no interior and yield []."""
    n = len(values)
    peaks = []
    i = 1
    while i < n - 1:
        if values[i] > values[i - 1]:
            j = i
            while j + 1 < n and values[j + 1] == values[i]:
                j += 1
            if j + 1 < n and values[j + 1] < values[i]:
                lo, hi = _window(values, i)
                prominence = values[i] - max(min(values[lo:i + 1]),
                                             min(values[i:hi + 1]))
                width = _width_at(values, i, lo, hi,
                                  values[i] - rel_height * prominence)
                peaks.append(Peak(i, prominence, width))
            i = j + 1
        else:
            i += 1
    return peaks
