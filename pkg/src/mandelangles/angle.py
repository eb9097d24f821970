"""Exact angles on the circle R/Z.

An :class:`Angle` is a reduced rational in ``[0, 1)``.  Binary words are
plain ``str`` objects over ``"01"``; the helpers here convert between the
two and implement the doubling map ``t -> 2t mod 1``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

ZEROS_TAIL = "zeros-tail"
ONES_TAIL = "ones-tail"


class Angle(Fraction):
    """A rational number reduced modulo 1.

    Arithmetic inherited from :class:`~fractions.Fraction` returns plain
    fractions; wrap the result in ``Angle`` again to reduce it mod 1.
    """

    __slots__ = ()

    def __new__(cls, numerator=0, denominator=None):
        if denominator is None:
            if type(numerator) is cls:
                return numerator
            if isinstance(numerator, str):
                numerator = Fraction(numerator.strip())
        f = Fraction(numerator, denominator)
        return super().__new__(cls, f.numerator % f.denominator, f.denominator)

    def __repr__(self):
        return f"Angle({self.numerator}, {self.denominator})"

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"

    @property
    def is_dyadic(self) -> bool:
        d = self.denominator
        return d & (d - 1) == 0


def parse_angle(text: str) -> Angle:
    """Parse ``"num/den"`` (or an integer) into an :class:`Angle`."""
    return Angle(Fraction(text.strip()))


def fmt(x) -> str:
    """Format a rational as ``"num/den"``, always with a denominator."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def double(t) -> Angle:
    return Angle(2 * Fraction(t))


def complement(t) -> Angle:
    return Angle(1 - Fraction(t))


class Orbit(NamedTuple):
    preperiod: int
    period: int
    orbit: list


def orbit_cycle(t) -> Orbit:
    """Forward orbit of ``t`` under doubling, up to the first repetition."""
    t = Angle(t)
    den = t.denominator
    seen = {}
    x = t.numerator
    nums = []
    while x not in seen:
        seen[x] = len(nums)
        nums.append(x)
        x = (2 * x) % den
    pre = seen[x]
    return Orbit(pre, len(nums) - pre, [Angle(a, den) for a in nums])


def doubling_period(t) -> int:
    """Exact period of ``t`` under doubling, or 0 if ``t`` is strictly preperiodic."""
    pre, per, _ = orbit_cycle(t)
    return per if pre == 0 else 0


def binary_expansion(t, n: int, dyadic_convention: str = ZEROS_TAIL) -> str:
    """First ``n`` binary digits of ``t``.

    For dyadic ``t`` the convention picks the terminating expansion
    (``zeros-tail``) or the one ending in 1s (``ones-tail``).  For ``t = 0``
    the ones-tail expansion is ``0.111...`` (the angle read as 1).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    t = Angle(t)
    num, den = t.numerator, t.denominator
    bits = []
    if dyadic_convention == ONES_TAIL and t.is_dyadic:
        # work on (0, 1]: digit is 1 iff x > 1/2
        x = num if num else den
        for _ in range(n):
            if 2 * x > den:
                bits.append("1")
                x = 2 * x - den
            else:
                bits.append("0")
                x = 2 * x
        return "".join(bits)
    if dyadic_convention not in (ZEROS_TAIL, ONES_TAIL):
        raise ValueError(f"unknown convention {dyadic_convention!r}")
    x = num
    for _ in range(n):
        x *= 2
        if x >= den:
            bits.append("1")
            x -= den
        else:
            bits.append("0")
    return "".join(bits)


def periodic_expansion(t, dyadic_convention: str = ZEROS_TAIL) -> tuple[str, str]:
    """Split the expansion of ``t`` into (preperiod word, repetend word)."""
    t = Angle(t)
    if t.is_dyadic:
        k = t.denominator.bit_length() - 1
        if dyadic_convention == ONES_TAIL:
            return binary_expansion(t, k, ONES_TAIL), "1"
        return binary_expansion(t, k), "0"
    pre, per, _ = orbit_cycle(t)
    w = binary_expansion(t, pre + per)
    return w[:pre], w[pre:]


def word_value(word: str) -> Fraction:
    """Value of ``0.word`` followed by zeros, as an exact fraction in [0, 1)."""
    if not word:
        return Fraction(0)
    return Fraction(int(word, 2), 1 << len(word))


def eventually_periodic_value(prefix: str, repetend: str) -> Fraction:
    """Value of ``0.prefix(repetend)^inf`` as an exact fraction in [0, 1]."""
    head = word_value(prefix)
    if not repetend:
        return head
    cycle = Fraction(int(repetend, 2), (1 << len(repetend)) - 1)
    return head + cycle / (1 << len(prefix))


def dyadic_distance(t, n: int) -> Fraction:
    """Circle distance from ``t`` to the nearest dyadic rational of generation ``n``.

    Generation-``n`` dyadics are the points ``j / 2**n`` with ``j`` odd.
    """
    if n < 1:
        raise ValueError("generation must be >= 1")
    u = Fraction(t) * (1 << n)
    f = math.floor(u)
    if f % 2:
        d = min(u - f, f + 2 - u)
    else:
        d = min(u - (f - 1), f + 1 - u)
    return d / (1 << n)
