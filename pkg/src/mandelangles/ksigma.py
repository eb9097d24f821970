"""The compact sets K_sigma of angles that keep away from dyadic rationals.

``K_sigma^n`` is the set of ``t`` with ``||t||_k >= sigma 2^-k`` for every
``2 <= k <= n``, where ``||t||_k`` is the distance to the nearest dyadic
rational of generation ``k``.  Levels are built exactly on integer grids:
with ``sigma = a/b`` every endpoint at level ``n`` is an integer multiple of
``1/(b 2^n)``.  Sets are stored on the lift ``[1/4, 5/4]`` of the circle
(the point ``1/4`` is removed at level 2), so the interval around ``0``
appears centered at ``1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from .angle import Angle, fmt
from .errors import DomainError
from .intervals import IntervalSet, loglog_slope

LIFT_LO = Fraction(1, 4)


@dataclass(frozen=True)
class SigmaParam:
    sigma: Fraction
    dyadic_exponent: Optional[int] = None

    def __post_init__(self):
        s = Fraction(self.sigma)
        object.__setattr__(self, "sigma", s)
        if not 0 < s < 1:
            raise DomainError("sigma must lie in ]0, 1[")
        if self.dyadic_exponent is None:
            if s.numerator == 1 and s.denominator & (s.denominator - 1) == 0:
                object.__setattr__(self, "dyadic_exponent", s.denominator.bit_length() - 1)
        elif s != Fraction(1, 1 << self.dyadic_exponent):
            raise DomainError("dyadic_exponent does not match sigma")

    @classmethod
    def dyadic(cls, p: int) -> "SigmaParam":
        if p < 2:
            raise DomainError("need p >= 2 for sigma = 2^-p")
        return cls(Fraction(1, 1 << p), p)

    @property
    def lam(self) -> Fraction:
        """Contraction ratio ``(3 - 4 sigma) / (3 - 8 sigma)`` of the mass estimate."""
        return (3 - 4 * self.sigma) / (3 - 8 * self.sigma)

    def _require_dyadic(self) -> int:
        p = self.dyadic_exponent
        if p is None or p < 2:
            raise DomainError("this operation needs sigma = 2^-p with p >= 2")
        return p


@dataclass
class KsigmaLevel:
    """One level ``K_sigma^n``, as integer endpoint arrays on a fixed grid.

    Interval ``i`` is ``[lo[i] / scale, hi[i] / scale]`` on the lift.
    """

    sp: SigmaParam
    n: int
    lo: np.ndarray
    hi: np.ndarray
    _set: Optional[IntervalSet] = field(default=None, repr=False)

    @property
    def scale(self) -> int:
        return self.sp.sigma.denominator << self.n

    def __len__(self):
        return len(self.lo)

    @property
    def set(self) -> IntervalSet:
        if self._set is None:
            s = self.scale
            self._set = IntervalSet(
                tuple((Fraction(int(a), s), Fraction(int(b), s)) for a, b in zip(self.lo, self.hi))
            )
        return self._set

    def measure(self) -> Fraction:
        return Fraction(int((self.hi - self.lo).sum()), self.scale)

    def contains(self, t) -> bool:
        x = Fraction(t) % 1
        if x < LIFT_LO:
            x += 1
        v = x * self.scale
        i = int(np.searchsorted(self.lo, math.floor(v), side="right")) - 1
        return i >= 0 and self.lo[i] <= v <= self.hi[i]


def _remove_generation(lo, hi, a: int, b: int):
    """Cut the open ``a``-neighbourhoods of the odd multiples of ``b`` out of
    every ``[lo, hi]``."""
    out_lo, out_hi = [], []
    while len(lo):
        y = lo - a
        m = y // b + 1
        m += (m + 1) % 2  # next odd multiple
        x = m * b
        hit = x - a < hi
        out_lo.append(lo[~hit])
        out_hi.append(hi[~hit])
        lo, hi, x = lo[hit], hi[hit], x[hit]
        left = x - a >= lo
        out_lo.append(lo[left])
        out_hi.append((x - a)[left])
        right = x + a <= hi
        lo, hi = (x + a)[right], hi[right]
    lo = np.concatenate(out_lo)
    hi = np.concatenate(out_hi)
    order = np.argsort(lo, kind="stable")
    return lo[order], hi[order]


def iter_levels(sp: SigmaParam, n_max: int):
    """Yield ``K_sigma^n`` for ``n = 2, ..., n_max``."""
    if n_max < 2:
        raise ValueError("levels start at n = 2")
    a, b = sp.sigma.numerator, sp.sigma.denominator
    if b << (n_max + 3) >= 1 << 62:
        raise DomainError("grid too fine for int64; use a coarser sigma or fewer levels")
    # level-2 grid: unit 1/(4b); the lift [1/4, 5/4] is [b, 5b]
    lo = np.array([b], dtype=np.int64)
    hi = np.array([5 * b], dtype=np.int64)
    for n in range(2, n_max + 1):
        if n > 2:
            lo, hi = 2 * lo, 2 * hi
        lo, hi = _remove_generation(lo, hi, a, b)
        yield KsigmaLevel(sp, n, lo, hi)


def build_level(sp: SigmaParam, n: int) -> KsigmaLevel:
    if n < 2:
        raise ValueError("levels start at n = 2")
    for level in iter_levels(sp, n):
        pass
    return level


def membership(t: Union[Angle, str, Fraction], sp: SigmaParam, depth: Optional[int] = None) -> bool:
    """Whether ``||t||_k >= sigma 2^-k`` for ``2 <= k <= depth``.

    ``t`` may be a binary word, read as the terminating expansion
    ``0.word``.  With ``depth=None`` the test runs over all ``k`` (exact for
    rational ``t``: it stops once the doubling orbit cycles).
    """
    if depth is not None and depth < 2:
        raise ValueError("depth must be >= 2")
    if isinstance(t, str):
        # 0.word = int(word) / 2^len, no need to reduce
        num, den = (int(t, 2) if t else 0), 1 << len(t)
    else:
        t = Angle(t)
        num, den = t.numerator, t.denominator
    sa, sb = sp.sigma.numerator, sp.sigma.denominator
    lim = sa * den
    x = (2 * num) % den  # frac(2^(k-1) t) for k = 2
    if depth is not None:
        for _ in range(depth - 1):
            if abs(2 * x - den) * sb < lim:
                return False
            x = (2 * x) % den
        return True
    seen = set()
    while x not in seen:
        if abs(2 * x - den) * sb < lim:
            return False
        seen.add(x)
        x = (2 * x) % den
    return True


def membership_runlength(w: str, p: int) -> Optional[bool]:
    """Symbolic membership for ``sigma = 2^-p`` from the runs of equal digits.

    A word belongs iff every maximal run of ``p`` or more equal digits
    starts at position 1 or 2 (1-indexed).  Returns ``None`` when the only
    offending run is a run of 1s followed by nothing but 0s up to the end of
    the word: the digit string then sits exactly on the boundary of a removed
    neighbourhood, and its status depends on digits not given.
    """
    L = len(w)
    if L < p + 2:
        raise ValueError("word must have at least p + 2 digits")
    tie = False
    for m in _long_runs(p).finditer(w):
        j = m.start()
        if j < 2:
            continue
        if w[j] == "0" or m.end() - j > p or "1" in w[j + p:]:
            return False
        tie = True
    return None if tie else True


@lru_cache(maxsize=None)
def _long_runs(p: int):
    """Maximal runs of at least ``p`` equal digits."""
    return re.compile(f"0{{{p},}}|1{{{p},}}")


def _children(parent: KsigmaLevel, child: KsigmaLevel):
    """Index of the parent of each child interval, and child lengths."""
    plo = 2 * parent.lo
    idx = np.searchsorted(plo, child.lo, side="right") - 1
    return idx


def _centered(level: KsigmaLevel):
    s = level.scale
    mid = level.lo + level.hi
    i_half = np.nonzero(mid == s)[0]
    i_zero = np.nonzero(mid == 2 * s)[0]
    return i_half, i_zero


def verify_structure(sp: SigmaParam, n_max: int) -> list:
    """Check the five structural clauses on every level ``2 <= n <= n_max``.

    Returns one record per (clause, level) with ``pass`` and a witness;
    all comparisons are exact integer arithmetic.
    """
    p = sp._require_dyadic()
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    levels = list(iter_levels(sp, n_max + 1))
    q = 1 << p
    dist = Fraction(q - 2, q - 1)
    case1 = Fraction(q - 3, q - 2)
    case1_hit = None
    report = []

    def rec(clause, n, ok, interval=None, witness=None):
        report.append({"clause": clause, "level": n, "pass": bool(ok),
                       "interval": interval, "witness": witness})

    def iv(level, i):
        s = level.scale
        return f"[{fmt(Fraction(int(level.lo[i]), s))}, {fmt(Fraction(int(level.hi[i]), s))}]"

    for level, nxt in zip(levels, levels[1:]):
        n = level.n
        length = level.hi - level.lo
        # (i) endpoints are dyadic of generation k + p with 2 <= k <= n
        ends = np.concatenate([level.lo, level.hi])
        v2 = np.array([(int(e) & -int(e)).bit_length() - 1 for e in ends])
        gen = n + p - v2
        bad = np.nonzero((gen < 2 + p) | (gen > n + p))[0]
        nondeg = bool((length > 0).all())
        rec("i", n, len(bad) == 0 and nondeg,
            witness=None if len(bad) == 0 else fmt(Fraction(int(ends[bad[0]]), level.scale)))
        # (ii) distinguished intervals centred at 1/2 and 0
        i_half, i_zero = _centered(level)
        want = 2 * q - 2  # 2^(-n+1)(1 - sigma) on the 2^(n+p) grid
        ok2 = (len(i_half) == 1 and len(i_zero) == 1
               and length[i_half[0]] == want and length[i_zero[0]] == want)
        rec("ii", n, ok2, witness=f"length {fmt(Fraction(want, level.scale))}")
        # (iii) one to three children, exactly three for the distinguished pair
        idx = _children(level, nxt)
        counts = np.bincount(idx, minlength=len(level))
        ok3 = bool(((counts >= 1) & (counts <= 3)).all())
        if ok2:
            ok3 = ok3 and counts[i_half[0]] == 3 and counts[i_zero[0]] == 3
        bad3 = np.nonzero((counts < 1) | (counts > 3))[0]
        rec("iii", n, ok3, interval=iv(level, bad3[0]) if len(bad3) else None,
            witness=f"child counts {sorted(set(counts.tolist()))}")
        # (iv) 0 < m(I) <= 2^(-n+1)(1 - sigma)
        bad4 = np.nonzero((length <= 0) | (length > want))[0]
        rec("iv", n, len(bad4) == 0, interval=iv(level, bad4[0]) if len(bad4) else None,
            witness=f"max length {fmt(Fraction(int(length.max()), level.scale))}")
        # (v) m(I cap K^(n+1)) / m(I) >= (3 - 8 sigma)/(3 - 4 sigma)
        kept = np.zeros(len(level), dtype=np.int64)
        np.add.at(kept, idx, nxt.hi - nxt.lo)
        lhs = kept * (3 * q - 4)
        rhs = 2 * length * (3 * q - 8)
        bad5 = np.nonzero(lhs < rhs)[0]
        ratios = [Fraction(int(k), 2 * int(m)) for k, m in zip(kept, length)]
        imin = int(np.argmin([float(r) for r in ratios]))
        rec("v", n, len(bad5) == 0, interval=iv(level, imin),
            witness=f"min ratio {fmt(ratios[imin])}")
        # attainment of the two ratio values from the case analysis
        ok_d = bool(len(i_half)) and ratios[i_half[0]] == dist and ratios[i_zero[0]] == dist
        rec("v-distinguished", n, ok_d, witness=fmt(dist))
        if case1_hit is None:
            hits = [i for i, r in enumerate(ratios) if r == case1]
            if hits:
                case1_hit = (n, iv(level, hits[0]))
    # the Case-1 ratio needs a few levels before a suitable interval appears
    if case1_hit is None:
        rec("v-case1", None, False, witness=fmt(case1))
    else:
        rec("v-case1", case1_hit[0], True, interval=case1_hit[1], witness=fmt(case1))
    return report


def dim_lower_bound(sp: Union[SigmaParam, Fraction, float], strict: bool = False) -> float:
    """``max(0, 1 - log2((3 - 4 sigma) / (3 - 8 sigma)))``, or 0 when
    ``sigma >= 3/8`` (an error with ``strict``)."""
    sigma = sp.sigma if isinstance(sp, SigmaParam) else sp
    if sigma >= Fraction(3, 8):
        if strict:
            raise DomainError("lower bound needs sigma < 3/8")
        return 0.0
    lam = (3 - 4 * sigma) / (3 - 8 * sigma)
    return max(0.0, 1.0 - math.log2(lam))


def mass_distribution(sp: SigmaParam, n: int, restricted: bool = False):
    """Weights of the level-``n`` mass distribution on the intervals of ``K^n``.

    The level-2 weights are proportional to length; each later interval
    receives its parent's weight in proportion to its share of the parent's
    surviving length.  With ``restricted`` the start is the part of
    ``K^(p+1)`` inside the central block ``[(1 - sigma)/2, (1 + sigma)/2]``.
    Returns ``(level, weights)`` with exact fractional weights.
    """
    p = sp._require_dyadic()
    start = p + 1 if restricted else 2
    if n < start:
        raise ValueError(f"level must be >= {start}")
    weights = None
    prev = None
    for level in iter_levels(sp, n):
        if level.n < start:
            continue
        if weights is None:
            if restricted:
                s = level.scale
                c_lo = (q := 1 << p) - 1
                keep = (level.lo * (2 * q) >= c_lo * s) & (level.hi * (2 * q) <= (q + 1) * s)
                level = KsigmaLevel(sp, level.n, level.lo[keep], level.hi[keep])
            length = [int(x) for x in level.hi - level.lo]
            total = sum(length)
            weights = [Fraction(m, total) for m in length]
        else:
            if restricted:
                keep = (level.lo >= 2 * prev.lo[0]) & (level.hi <= 2 * prev.hi[-1])
                level = KsigmaLevel(sp, level.n, level.lo[keep], level.hi[keep])
            idx = _children(prev, level)
            length = [int(x) for x in level.hi - level.lo]
            kept = [0] * len(prev)
            for i, m in zip(idx.tolist(), length):
                kept[i] += m
            weights = [weights[i] * Fraction(m, kept[i]) for i, m in zip(idx.tolist(), length)]
        prev = level
    return prev, weights


def porosity_witness(sp: SigmaParam, I) -> tuple:
    """An open sub-interval ``J`` of ``I`` missing ``K_sigma``, with
    ``m(J) = sigma 2^-n >= (sigma / 4) m(I)``.

    ``J`` is centred on a dyadic rational of generation ``n + 1``, where
    ``2^-(n-1) < m(I) <= 2^-(n-2)``.  Returns ``(lo, hi, n + 1)``; the last
    entry is the level at which ``J`` is already removed.
    """
    a, b = Fraction(I[0]), Fraction(I[1])
    m = b - a
    if m <= 0:
        raise DomainError("interval must have positive length")
    n = 2
    while Fraction(1, 1 << (n - 1)) >= m:
        n += 1
    j = math.ceil(a * (1 << n))
    centre = Fraction(2 * j + 1, 1 << (n + 1))
    half = sp.sigma / (1 << (n + 1))
    return centre - half, centre + half, n + 1


def interval_counts(sp: SigmaParam, levels: Sequence[int]) -> list:
    levels = sorted(levels)
    want = set(levels)
    return [len(lv) for lv in iter_levels(sp, levels[-1]) if lv.n in want]


def boxdim_estimate(sp: SigmaParam, levels: Sequence[int]) -> float:
    """Least-squares slope of ``log2 #intervals(K^n)`` against ``n``."""
    levels = sorted(levels)
    return loglog_slope(levels, interval_counts(sp, levels))
