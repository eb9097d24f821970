"""Tuning on angles: the block substitution ``0 -> theta0, 1 -> theta1``.

A real hyperbolic component of period ``p`` with root angles
``0.(theta0)^inf`` and ``0.(theta1)^inf`` acts on binary expansions by
replacing each digit with a ``p``-digit block.  The image of the circle is
a Cantor set whose gaps are labelled by dyadic rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .angle import (
    ONES_TAIL,
    ZEROS_TAIL,
    Angle,
    eventually_periodic_value,
    periodic_expansion,
)
from .errors import DomainError
from .intervals import IntervalSet, _cell_ranges, boxcount_dimension
from .realslice import Opening, cover_R


@dataclass(frozen=True)
class TuningWords:
    period: int
    theta0: str
    theta1: str

    def __post_init__(self):
        if self.period < 2:
            raise DomainError("tuning needs period >= 2")
        for w in (self.theta0, self.theta1):
            if len(w) != self.period or set(w) - set("01"):
                raise DomainError(f"bad tuning word {w!r}")
        if self.theta0 >= self.theta1:
            raise DomainError("theta0 must precede theta1")

    @property
    def theta_minus(self) -> Fraction:
        return eventually_periodic_value("", self.theta0)

    @property
    def theta_plus(self) -> Fraction:
        return eventually_periodic_value("", self.theta1)

    def block(self, bits: str) -> str:
        return "".join(self.theta1 if b == "1" else self.theta0 for b in bits)

    def contract(self, bit: str, x) -> Fraction:
        """Prepend one block: ``(0.theta_bit) + x 2^-p``."""
        w = self.theta1 if bit == "1" else self.theta0
        return (int(w, 2) + Fraction(x)) / (1 << self.period)


def words_from_opening(o: Opening) -> TuningWords:
    p = o.period
    if p < 2:
        raise DomainError("the period-1 component acts as the identity")
    theta0 = format(o.index, f"0{p}b")
    theta1 = "".join("1" if b == "0" else "0" for b in theta0)
    return TuningWords(p, theta0, theta1)


def _image(w: TuningWords, prefix: str, repetend: str) -> Fraction:
    return eventually_periodic_value(w.block(prefix), w.block(repetend))


def tune_angle(w: TuningWords, t, expansion: Optional[str] = None):
    """Image of ``t`` under the substitution.

    Non-dyadic ``t`` has one image.  A dyadic ``t`` has two, one per
    binary expansion; both are returned as a sorted pair unless
    ``expansion`` picks one (``zeros-tail`` or ``ones-tail``).  For
    ``t = 0`` the ones-tail expansion is ``0.111...`` and maps to
    ``theta_plus``.
    """
    t = Angle(t)
    if not t.is_dyadic:
        return _image(w, *periodic_expansion(t))
    if expansion is not None:
        if expansion not in (ZEROS_TAIL, ONES_TAIL):
            raise ValueError(f"unknown expansion {expansion!r}")
        return _image(w, *periodic_expansion(t, expansion))
    a = _image(w, *periodic_expansion(t, ZEROS_TAIL))
    b = _image(w, *periodic_expansion(t, ONES_TAIL))
    return (a, b) if a < b else (b, a)


def _real_images(w: TuningWords, x: Fraction):
    """Images of the real number ``x`` in ``[0, 1]`` (not reduced mod 1)."""
    if x == 0:
        return (w.theta_minus,)
    if x == 1:
        return (w.theta_plus,)
    r = tune_angle(w, x)
    return r if isinstance(r, tuple) else (r,)


def staircase_psi(w: TuningWords, s) -> Fraction:
    """Inverse of the substitution, extended to the gaps of its image.

    Decodes ``s`` block by block.  When ``s`` falls in a gap the decoding
    stops and the gap's dyadic label is returned.  The result lies in
    ``[0, 1]``, with ``psi(theta_plus) = 1``.
    """
    s = Fraction(s)
    lo, hi = w.theta_minus, w.theta_plus
    if not lo <= s <= hi:
        raise DomainError("s must lie in [theta_minus, theta_plus]")
    P = 1 << w.period
    n0, n1 = int(w.theta0, 2), int(w.theta1, 2)
    left_end = (n0 + hi) / P  # top of the 0-block image
    right_start = (n1 + lo) / P  # bottom of the 1-block image
    bits = []
    seen = {}
    y = s
    while y not in seen:
        seen[y] = len(bits)
        if y <= left_end:
            bits.append("0")
            y = y * P - n0
        elif y >= right_start:
            bits.append("1")
            y = y * P - n1
        else:
            return eventually_periodic_value("".join(bits) + "1", "")
    start = seen[y]
    word = "".join(bits)
    return eventually_periodic_value(word[:start], word[start:])


def _cantor_pairs(w: TuningWords, m: int) -> list:
    scale = 1 << (w.period * m)
    lo, hi = w.theta_minus, w.theta_plus
    out = []
    for u in range(1 << m):
        base = Fraction(int(w.block(format(u, f"0{m}b")), 2), scale)
        out.append((base + lo / scale, base + hi / scale))
    return out


def cantor_boxdim(w: TuningWords, depth: int):
    """Box-count slope of the image of all words of ``depth // p`` digits.

    Cells are counted at generations ``p j`` for ``depth/(2p) <= j <=
    depth/p``.  Returns ``(scales, counts, slope)``.
    """
    p = w.period
    if depth < 4 * p:
        raise ValueError("depth must be at least 4 p")
    m = depth // p
    pairs = _cantor_pairs(w, m)
    scales = [p * j for j in range(max(1, m // 2), m + 1)]
    counts, slope = boxcount_dimension(pairs, scales)
    return scales, counts, slope


def _cell_image(w: TuningWords, j: int, m: int):
    scale = 1 << (w.period * m)
    base = Fraction(int(w.block(format(j, f"0{m}b")), 2) if m else 0, scale)
    return base + w.theta_minus / scale, base + w.theta_plus / scale


def tuned_R_cover(w: TuningWords, P: int, cover: Optional[IntervalSet] = None,
                  depth: Optional[int] = None) -> IntervalSet:
    """Image of the closed cover of R by openings of period ``<= P``.

    Without ``depth`` each cover interval ``[a, b]`` maps to its hull
    ``[min A(a), max A(b)]``.  With ``depth = m`` each interval is first
    replaced by the generation-``m`` dyadic cells meeting it, and each cell
    by the image of its block, so the result keeps the Cantor structure
    down to scale ``2^-(p m)``.
    """
    if cover is None:
        cover = cover_R(P)
    if depth is None:
        pairs = [(min(_real_images(w, a)), max(_real_images(w, b))) for a, b in cover]
        return IntervalSet.from_pairs(pairs)
    cells = set()
    points = []
    for (i0, i1), (a, b) in zip(_cell_ranges(list(cover), depth, False), cover):
        if a == b:
            points.extend((x, x) for x in _real_images(w, a))
        else:
            cells.update(range(max(i0, 0), min(i1, (1 << depth) - 1) + 1))
    pairs = [_cell_image(w, j, depth) for j in sorted(cells)] + points
    return IntervalSet.from_pairs(pairs)


def tuned_cover_slope(w: TuningWords, P: int, scales: Optional[Sequence[int]] = None,
                      depth: Optional[int] = None):
    """Box counts and slope of the cell-refined :func:`tuned_R_cover` at
    generations ``p k``.

    ``scales`` defaults to ``k = P, ..., 2P``: openings of period ``<= P``
    are at least ``4^-P`` long, so the cover is resolved down to there.
    ``depth`` defaults to ``max(scales)``.
    """
    scales = list(scales) if scales is not None else list(range(P, 2 * P + 1))
    S = tuned_R_cover(w, P, depth=depth if depth is not None else max(scales))
    return boxcount_dimension(S, [w.period * k for k in scales])


def holder_constant(w: TuningWords, n_pairs: int = 10_000, bits: int = 40,
                    seed: Optional[int] = 0) -> float:
    """Largest ``(psi(b) - psi(a)) / (b - a)^(1/p)`` over random pairs.

    Pairs are dyadic with ``bits`` digits, drawn uniformly in
    ``[theta_minus, theta_plus]``.
    """
    rng = random.Random(seed)
    lo, hi = w.theta_minus, w.theta_plus
    scale = 1 << bits
    a0, a1 = -(-lo.numerator * scale // lo.denominator), hi.numerator * scale // hi.denominator
    best = 0.0
    for _ in range(n_pairs):
        i, j = sorted(rng.sample(range(a0, a1 + 1), 2)) if a1 - a0 > 1 else (a0, a1)
        a, b = Fraction(i, scale), Fraction(j, scale)
        gain = staircase_psi(w, b) - staircase_psi(w, a)
        best = max(best, float(gain) / float(b - a) ** (1 / w.period))
    return best

