"""Finite unions of closed intervals with exact rational endpoints, and
dyadic box counting on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .angle import fmt
from .errors import DegenerateFit


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, pairwise disjoint closed intervals ``[a, b]`` (``a <= b``).

    Intervals may be degenerate (single points).  Endpoints are real
    numbers, not angles: a set on the circle is stored on a lift such as
    ``[0, 1]`` or ``[1/4, 5/4]``.
    """

    intervals: tuple = ()

    def __post_init__(self):
        ivs = tuple((Fraction(a), Fraction(b)) for a, b in self.intervals)
        for a, b in ivs:
            if a > b:
                raise ValueError(f"empty interval [{a}, {b}]")
        for (_, b0), (a1, _) in zip(ivs, ivs[1:]):
            if not b0 < a1:
                raise ValueError("intervals must be sorted and disjoint")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "IntervalSet":
        """Build from arbitrary closed intervals, merging overlaps."""
        ivs = sorted((Fraction(a), Fraction(b)) for a, b in pairs)
        merged = []
        for a, b in ivs:
            if merged and a <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(b, merged[-1][1]))
            else:
                merged.append((a, b))
        return cls(tuple(merged))

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __getitem__(self, i):
        return self.intervals[i]

    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), Fraction(0))

    def contains(self, x) -> bool:
        x = Fraction(x)
        return any(a <= x <= b for a, b in self.intervals)

    def intersect(self, lo, hi) -> "IntervalSet":
        lo, hi = Fraction(lo), Fraction(hi)
        out = []
        for a, b in self.intervals:
            a2, b2 = max(a, lo), min(b, hi)
            if a2 <= b2:
                out.append((a2, b2))
        return IntervalSet(tuple(out))

    def is_subset_of(self, other: "IntervalSet") -> bool:
        return all(
            any(c <= a and b <= d for c, d in other.intervals)
            for a, b in self.intervals
        )

    def to_csv(self) -> str:
        lines = ["lo,hi"]
        lines += [f"{fmt(a)},{fmt(b)}" for a, b in self.intervals]
        return "\n".join(lines) + "\n"


def _cell_ranges(pairs, k: int, wrap: bool):
    """Inclusive cell-index ranges met by each interval at generation ``k``.

    Cells are ``[j/2^k, (j+1)/2^k[``.  A non-degenerate interval meets the
    cells its interior meets; a point meets the cell containing it.
    """
    scale = 1 << k
    for a, b in pairs:
        a, b = Fraction(a), Fraction(b)
        if a == b:
            i = math.floor(a * scale)
            yield i, i
        else:
            yield math.floor(a * scale), math.ceil(b * scale) - 1


def count_cells(pairs: Sequence, k: int, wrap: bool = False) -> int:
    """Number of generation-``k`` dyadic cells meeting the union of ``pairs``.

    With ``wrap`` the cells are taken modulo 1 (sets on the circle);
    otherwise the final cell of ``[0, 1]`` is closed.
    """
    scale = 1 << k
    ranges = []
    for i0, i1 in _cell_ranges(pairs, k, wrap):
        if wrap:
            if i1 - i0 + 1 >= scale:
                return scale
            i0m = i0 % scale
            i1m = i0m + (i1 - i0)
            if i1m >= scale:
                ranges.append((i0m, scale - 1))
                ranges.append((0, i1m - scale))
            else:
                ranges.append((i0m, i1m))
        else:
            ranges.append((max(0, min(i0, scale - 1)), max(0, min(i1, scale - 1))))
    ranges.sort()
    total = 0
    cur_lo = cur_hi = None
    for lo, hi in ranges:
        if cur_hi is None or lo > cur_hi + 1:
            if cur_hi is not None:
                total += cur_hi - cur_lo + 1
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    if cur_hi is not None:
        total += cur_hi - cur_lo + 1
    return total


def loglog_slope(scales: Sequence[int], counts: Sequence[int]) -> float:
    """Least-squares slope of ``log2(count)`` against the generation."""
    if len(scales) < 2:
        raise DegenerateFit("need at least two scales for a slope")
    x = np.asarray(scales, dtype=float)
    y = np.log2(np.asarray(counts, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def boxcount_dimension(S, scales: Sequence[int], wrap: bool = False):
    """Dyadic box counts of ``S`` at each generation and their log-log slope.

    Returns ``(counts, slope)``.
    """
    pairs = list(S)
    if not pairs:
        raise ValueError("cannot box-count an empty set")
    scales = list(scales)
    if any(b <= a for a, b in zip(scales, scales[1:])):
        raise ValueError("scales must be increasing")
    counts = [count_cells(pairs, k, wrap) for k in scales]
    return counts, loglog_slope(scales, counts)
