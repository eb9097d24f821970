"""The set R of angles whose parameter-ray impressions meet the real slice.

Membership uses the doubling-map characterization: ``t`` in ``[0, 1/2]``
belongs to R iff no forward iterate ``2^n t mod 1`` (``n >= 1``) falls in
the open interval ``]t, 1 - t[``.  Openings of real hyperbolic components
are enumerated from their root and co-root angle formulas.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .angle import Angle, fmt
from .errors import InsufficientPrecision
from .intervals import IntervalSet, boxcount_dimension  # noqa: F401  (re-export)

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class Opening:
    """Combinatorial record of one real hyperbolic component.

    The opening is the open interval ``]theta_minus, omega_minus[``; the
    mirror angles ``theta_plus``/``omega_plus`` are ``1 - theta_minus`` and
    ``1 - omega_minus``.
    """

    theta_minus: Angle
    period: int
    index: int

    @classmethod
    def from_pn(cls, p: int, n: int) -> "Opening":
        return cls(Angle(n, (1 << p) - 1) if p > 1 else Angle(0), p, n)

    @property
    def omega_minus(self) -> Angle:
        return Angle(self.index + 1, (1 << self.period) + 1)

    @property
    def theta_plus(self) -> Fraction:
        return 1 - Fraction(self.theta_minus)

    @property
    def omega_plus(self) -> Fraction:
        return 1 - Fraction(self.omega_minus)

    @property
    def length(self) -> Fraction:
        p, n = self.period, self.index
        return Fraction((1 << p) - 2 * n - 1, (1 << 2 * p) - 1)

    def contains(self, t) -> bool:
        return self.theta_minus < Fraction(t) < self.omega_minus

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.period,
                "n": self.index,
                "theta_minus": fmt(self.theta_minus),
                "omega_minus": fmt(self.omega_minus),
                "length": fmt(self.length),
            },
            separators=(",", ":"),
        )


def _canonical(t) -> Fraction:
    t = Angle(t)
    return Fraction(1 - t) if t > HALF else Fraction(t)


def _in_R_int(num: int, den: int) -> bool:
    # t = num/den in [0, 1/2]; reject iff some iterate lies strictly in ]t, 1-t[
    hi = den - num
    x = (2 * num) % den
    if den & 1:
        # purely periodic: one pass around the cycle back to t
        while x != num:
            if num < x < hi:
                return False
            x = (2 * x) % den
        return True
    seen = set()
    while x not in seen:
        if num < x < hi:
            return False
        seen.add(x)
        x = (2 * x) % den
    return True


def in_R(t) -> bool:
    """Exact membership of a rational angle in R.

    Angles above 1/2 are first replaced by ``1 - t``.
    """
    t = _canonical(t)
    return _in_R_int(t.numerator, t.denominator)


def _compare_shift(bits: str, k: int, target_complement: bool):
    """Compare ``2^k t`` with ``t`` (or with ``1 - t``) from the bits of ``t``.

    Returns ``(sign, strict)``: ``sign`` is +1/-1 for shifted >= / <=
    target, ``strict`` says whether the inequality is certainly strict.
    Returns ``None`` when the available bits do not separate the two.
    """
    n = len(bits) - k
    for i in range(n):
        a = bits[k + i]
        b = bits[i]
        if target_complement:
            b = "1" if b == "0" else "0"
        if a != b:
            sign = 1 if a > b else -1
            # the difference is +-2^-(i+1) plus tails; it can only vanish if
            # every later digit difference is extremal in the opposite sense
            for j in range(i + 1, n):
                aj = bits[k + j]
                bj = bits[j]
                if target_complement:
                    bj = "1" if bj == "0" else "0"
                if (int(aj) - int(bj)) != -sign:
                    return sign, True
            return sign, False
    return None


GUARD_BITS = 8


@dataclass(frozen=True)
class DepthVerdict:
    survives: bool
    step: Optional[int] = None

    def __str__(self):
        return "survives" if self.survives else f"rejected-at-step-{self.step}"


def in_R_depth(bits: str, N: int, guard: int = GUARD_BITS) -> DepthVerdict:
    """Finite-depth membership test for an angle known only by its leading bits.

    ``bits`` are the binary digits of ``t`` (so ``t ~ 0.bits``), with
    ``t <= 1/2`` expected.  Checks the iterates ``n = 1..N``.  An iterate
    whose remaining ``len(bits) - n >= guard`` digits all agree with the
    boundary of ``]t, 1 - t[`` counts as touching it, which does not
    reject.  With fewer digits left the comparison raises
    :class:`InsufficientPrecision`.
    """
    if N < 1:
        raise ValueError("depth must be >= 1")
    if len(bits) <= N:
        raise InsufficientPrecision(f"need more than {N} bits, got {len(bits)}")

    def undecided(k, what):
        if len(bits) - k < guard:
            raise InsufficientPrecision(f"iterate {k} undecided against {what}")

    for k in range(1, N + 1):
        lo = _compare_shift(bits, k, target_complement=False)
        if lo is None:
            undecided(k, "t")
            continue
        if lo[0] < 0:
            continue  # 2^k t <= t
        hi = _compare_shift(bits, k, target_complement=True)
        if hi is None:
            undecided(k, "1 - t")
            continue
        if hi[0] > 0:
            continue  # 2^k t >= 1 - t
        if lo[1] and hi[1]:
            return DepthVerdict(False, k)
        undecided(k, "the boundary")
    return DepthVerdict(True)


def exact_period(num: int, den: int) -> int:
    """Exact doubling period of ``num/den`` with ``den`` odd."""
    x = (2 * num) % den
    k = 1
    while x != num:
        x = (2 * x) % den
        k += 1
    return k


def _accept(p: int, n: int) -> bool:
    if p == 1:
        return n == 0
    theta = Fraction(n, (1 << p) - 1)
    if exact_period(theta.numerator, theta.denominator) != p:
        return False
    return in_R(theta) and in_R(Fraction(n + 1, (1 << p) + 1))


def _openings_of_period(p: int) -> list:
    return [Opening.from_pn(p, n) for n in range(1 << (p - 1)) if _accept(p, n)]


def enumerate_openings(P: int, jobs: int = 1) -> list:
    """All openings of real hyperbolic components of period ``<= P``, sorted."""
    if P < 1:
        raise ValueError("max period must be >= 1")
    periods = range(1, P + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_openings_of_period, periods))
    else:
        chunks = [_openings_of_period(p) for p in periods]
    return sorted(o for chunk in chunks for o in chunk)


def openings_length_sum(P: int, jobs: int = 1) -> Fraction:
    return sum((o.length for o in enumerate_openings(P, jobs)), Fraction(0))


def cover_R(P: int, openings: Optional[list] = None) -> IntervalSet:
    """Closed complement in ``[0, 1/2]`` of the openings of period ``<= P``."""
    if openings is None:
        openings = enumerate_openings(P)
    out = []
    cursor = Fraction(0)
    for o in openings:
        a, b = Fraction(o.theta_minus), Fraction(o.omega_minus)
        out.append((cursor, a))
        cursor = b
    out.append((cursor, HALF))
    return IntervalSet(tuple(out))
