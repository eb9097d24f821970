"""Dynamic rays of ``Q_c(z) = z^2 + c`` by inverse iteration.

Far out the Boettcher coordinate is close to the identity, so the ray at
angle ``s`` passes near ``R0 e^{2 pi i s}``.  Starting from those points
for the whole forward orbit ``t, 2t, 4t, ...`` and pulling back, each
point lands on the ray of the preceding angle at half the potential.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

import mpmath
from mpmath import mp, mpc, mpf

from .angle import Angle, word_value
from .errors import DomainError
from .kneading import RealParam, _cycle_derivs, _orbit_point, tau


def default_precision(depth: int) -> int:
    env = os.environ.get("RAYS_PRECISION_BITS")
    if env:
        return int(env)
    return 53 + 2 * depth


@dataclass
class RayPolyline:
    """Points ``z_0, ..., z_depth`` with ``z_k^2 + c = z_{k+1}``.

    ``z_k`` lies on the ray of angle ``angles[k] = 2^k t`` at potential
    about ``log(R0) 2^(k - depth)``; ``z_0`` is the point closest to the
    Julia set.  ``curve`` holds points of the single ray of angle ``t``,
    from potential ``log(R0)`` down to ``log(R0) 2^-depth``.
    """

    c: mpf
    t: Angle
    points: list
    angles: list
    depth: int
    prec: int = 53
    curve: list = None

    @property
    def endpoint(self) -> mpc:
        return self.points[0]

    def max_pullback_error(self) -> float:
        with mp.workprec(self.prec):
            return float(max(abs(a * a + self.c - b) for a, b in zip(self.points, self.points[1:])))

    def to_csv(self) -> str:
        lines = ["re,im,angle_num,angle_den"]
        for z, a in zip(self.points, self.angles):
            lines.append(f"{mpmath.nstr(z.real, 17)},{mpmath.nstr(z.imag, 17)},{a.numerator},{a.denominator}")
        return "\n".join(lines) + "\n"


def trace_ray(c, t, depth: int = 40, R0: float = 100, prec: Optional[int] = None) -> RayPolyline:
    """Trace the dynamic ray of angle ``t`` down ``depth`` pullbacks."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if R0 < 4:
        raise DomainError("start radius must be >= 4")
    prec = prec or default_precision(depth)
    p = RealParam(c, max(prec, 64))
    t = Angle(t)
    angles = [t]
    for _ in range(depth):
        angles.append(Angle(2 * angles[-1]))
    with mp.workprec(prec):
        cc = mpf(p.c)
        # row m holds the ray points at potential log(R0) / 2^m for angles 2^j t
        row = [mpf(R0) * mpmath.expjpi(2 * mpf(a.numerator) / a.denominator) for a in angles]
        chain = [row[depth]]
        curve = [row[0]]
        for m in range(1, depth + 1):
            new = []
            for j in range(depth + 1 - m):
                w = mpmath.sqrt(row[j + 1] - cc)
                new.append(w if abs(w - row[j]) <= abs(w + row[j]) else -w)
            row = new
            chain.append(row[depth - m])
            curve.append(row[0])
        points = chain[::-1]
    return RayPolyline(cc, t, points, angles, depth, prec, curve)


def parabolic_root(c, period: int, steps: int = 4000) -> mpf:
    """Dynamic root of a parabolic ``c``: the smallest point of the
    parabolic cycle of the given period lying to the right of ``c``."""
    p = RealParam(c)
    with mp.workprec(p.precision):
        x = _orbit_point(p.c, steps)
        for _ in range(200):
            y, d1, _ = _cycle_derivs(x, p.c, period)
            if d1 == 1:
                break
            step = (y - x) / (d1 - 1)
            x -= step
            if abs(step) < mpf(2) ** (-p.precision // 2):
                break
        cycle = []
        for _ in range(period):
            cycle.append(x)
            x = x * x + p.c
        right = [z for z in cycle if z > p.c]
        return min(right) if right else max(cycle)


def verify_landing(c, nbits: Optional[int] = None, depth: int = 40, t=None, root=None,
                   R0: float = 100) -> float:
    """Distance from the traced ray at tau(c) to the dynamic root.

    ``t`` defaults to the ``nbits``-digit truncation of tau(c) (``depth +
    24`` digits unless given) and ``root`` to ``c`` itself.
    """
    p = RealParam(c)
    if t is None:
        nbits = nbits or depth + 24
        t = word_value(tau(p, nbits))
    ray = trace_ray(p, t, depth, R0)
    target = p.c if root is None else root
    return float(abs(ray.endpoint - target))


def residual_sequence(c, t, depths, root=None) -> list:
    """Landing residuals at several depths (slow decay at parabolic ``c``)."""
    return [verify_landing(c, depth=d, t=t, root=root) for d in depths]
