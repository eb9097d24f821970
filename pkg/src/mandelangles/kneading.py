"""Itineraries of real quadratics ``Q_c(z) = z^2 + c`` and the angle function tau.

Signs of the critical orbit are certified with interval arithmetic
(``mpmath.iv``); a sign is only emitted once the enclosing interval
excludes 0, with the working precision doubled as needed.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath
from mpmath import iv, mp, mpf

from .angle import Angle, binary_expansion, doubling_period, word_value
from .errors import EscapeError, HitCriticalPoint, NonConvergence, NotInR
from .realslice import HALF, Opening, _accept, in_R

DEFAULT_PREC = 128
MAX_PREC = 4096

Real = Union[str, float, int, Fraction, mpf]


def _to_mpf(c: Real, prec: int) -> mpf:
    if isinstance(c, RealParam):
        c = c.c
    with mp.workprec(prec):
        if isinstance(c, Fraction):
            return mpf(c.numerator) / c.denominator
        return mpf(c)


@dataclass(frozen=True)
class RealParam:
    """A real parameter ``c`` in ``[-2, 1/4]`` with its working precision."""

    c: mpf
    precision: int = DEFAULT_PREC

    def __post_init__(self):
        c = _to_mpf(self.c, self.precision)
        if not (-2 <= c <= mpf(1) / 4):
            raise EscapeError(f"c = {mpmath.nstr(c, 12)} is outside [-2, 1/4]")
        object.__setattr__(self, "c", c)


def _param(c) -> RealParam:
    return c if isinstance(c, RealParam) else RealParam(c)


@contextmanager
def _iv_prec(prec: int):
    old = iv.prec
    iv.prec = prec
    try:
        yield
    finally:
        iv.prec = old


def _signs(c: mpf, N: int, prec: int) -> Optional[str]:
    """Certified signs of ``c, Q_c(c), ...`` or None if precision ran out."""
    out = []
    with _iv_prec(prec):
        cc = iv.mpf(c)
        x = cc
        for _ in range(N):
            if x.a > 0:
                out.append("+")
            elif x.b < 0:
                out.append("-")
            else:
                return None
            if x.a > 2 or x.b < -2:
                raise EscapeError("orbit escaped |x| > 2")
            x = x * x + cc
    return "".join(out)


def itinerary(c, N: int, max_prec: int = MAX_PREC) -> str:
    """Signs ``sgn(x_0), ..., sgn(x_{N-1})`` of the orbit ``x_0 = c``,
    ``x_{j+1} = x_j^2 + c``, as a string over ``"+-"``.

    Raises :class:`HitCriticalPoint` if some ``x_j`` cannot be separated
    from 0 even at ``max_prec`` bits.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    p = _param(c)
    prec = p.precision
    src = p.c
    while prec <= max_prec:
        s = _signs(src, N, prec)
        if s is not None:
            return s
        prec *= 2
    raise HitCriticalPoint(f"orbit of c = {mpmath.nstr(p.c, 15)} too close to 0 within {N} steps")


def word_from_itinerary(signs: str) -> str:
    """``t_0 = 0``; ``t_{j+1} = t_j`` after ``+`` and ``1 - t_j`` after ``-``."""
    bits = ["0"]
    for s in signs[:-1]:
        bits.append(bits[-1] if s == "+" else ("1" if bits[-1] == "0" else "0"))
    return "".join(bits)


def tau(c, nbits: int) -> str:
    """First ``nbits`` binary digits of tau(c).

    Inside hyperbolic components the same recurrence gives the extended
    value, constant on each half of the component.
    """
    return word_from_itinerary(itinerary(c, nbits))


def tau_value(c, nbits: int) -> Fraction:
    return word_value(tau(c, nbits))


def tau_parabolic(o: Opening, endpoint: str = "root") -> Angle:
    """tau at the root (``theta_minus``) or co-root (``omega_minus``) of the
    component behind the opening ``o``."""
    if endpoint == "root":
        return o.theta_minus
    if endpoint == "coroot":
        return o.omega_minus
    raise ValueError("endpoint must be 'root' or 'coroot'")


def _coroot_period(t: Fraction) -> Optional[int]:
    """``q`` if ``t`` is the co-root angle ``(n+1)/(2^q+1)`` of an opening."""
    P = doubling_period(t)
    if P % 2:
        return None
    q = P // 2
    den = (1 << q) + 1
    m = t * den
    if m.denominator != 1 or m < 1:
        return None
    return q if _accept(q, int(m) - 1) else None


def _orbit_point(c: mpf, steps: int) -> mpf:
    x = mpf(0)
    for _ in range(steps):
        x = x * x + c
        if abs(x) > 2:
            break
    return x


def _cycle_derivs(x: mpf, c: mpf, q: int):
    """``Q^q(x)``, its first and second derivative in ``x``."""
    y, d1, d2 = x, mpf(1), mpf(0)
    for _ in range(q):
        y, d1, d2 = y * y + c, 2 * y * d1, 2 * (d1 * d1 + y * d2)
    return y, d1, d2


def _multiplier(c: mpf, q: int, x0: mpf) -> mpf:
    """Multiplier of the period-``q`` point found by Newton from ``x0``."""
    x = x0
    for _ in range(200):
        y, d1, _ = _cycle_derivs(x, c, q)
        step = (y - x) / (d1 - 1)
        x -= step
        if abs(step) < mpf(2) ** (-mp.prec + 8):
            break
    return _cycle_derivs(x, c, q)[1]


def _has_parabolic_pair(c: mpf, P: int, x0: mpf) -> bool:
    """Whether ``Q^P(x) - x`` has its pair of real roots near ``x0``.

    Locate the nearby extremum of ``g(x) = Q^P(x) - x`` and test whether
    ``g`` changes sign there (inside the component) or not (outside).
    """
    x = x0
    for _ in range(200):
        _, d1, d2 = _cycle_derivs(x, c, P)
        if d2 == 0:
            break
        step = (d1 - 1) / d2
        x -= step
        if abs(step) < mpf(2) ** (-mp.prec + 8):
            break
    y, _, d2 = _cycle_derivs(x, c, P)
    return (y - x) * d2 <= 0


def _tie_goes_left(c: mpf, t: Fraction, depth: int) -> bool:
    """Decide the side of pi(t) when tau(c) agrees with periodic ``t`` to ``depth`` bits.

    Returns True when pi(t) < c.
    """
    x0 = _orbit_point(c, depth // 2)
    q = _coroot_period(t)
    if q is not None:
        # period-doubling point: the q-cycle attracts to the right of it
        return abs(_multiplier(c, q, x0)) < 1
    # primitive or satellite root: the P-cycle exists to the left of it
    return not _has_parabolic_pair(c, doubling_period(t), x0)


def pi(t, tol: float = 1e-10, match_bits: int = 44, max_depth: int = 512, prec: int = DEFAULT_PREC) -> mpf:
    """The real parameter whose ray has angle ``t`` in R, by bisection on tau.

    Bisection stops once the bracket is below ``tol`` and tau at the
    last midpoint, which is returned, reproduces the first ``match_bits`` digits of ``t``.
    Plateaus at parabolic angles are resolved from the local cycle
    structure at the midpoint.
    """
    t = Fraction(t)
    if not 0 <= t <= HALF:
        raise NotInR("t must lie in [0, 1/2]")
    if not in_R(t):
        raise NotInR(f"{t} is not in R")
    if t == 0:
        return mpf(1) / 4
    if t == HALF:
        return mpf(-2)
    periodic = Angle(t).denominator % 2 == 1
    cap = max(max_depth, 8 * doubling_period(t)) if periodic else max_depth
    with mp.workprec(prec):
        lo, hi = mpf(-2), mpf(1) / 4
        floor = mpf(2) ** (-prec + 16)
        while True:
            m = (lo + hi) / 2
            width = hi - lo
            if width < floor:
                raise NonConvergence(f"bracket for {t} collapsed at working precision")
            depth = 48
            decided = None
            while decided is None:
                try:
                    w = tau(RealParam(m, prec), depth)
                except HitCriticalPoint:
                    m += width / 2**20
                    continue
                tb = binary_expansion(t, depth)
                if w != tb:
                    j = next(i for i, (a, b) in enumerate(zip(w, tb)) if a != b)
                    decided = "hi" if w[j] < tb[j] else "lo"
                    agree = j
                elif depth < cap:
                    depth = min(2 * depth, cap)
                elif periodic:
                    decided = "hi" if _tie_goes_left(m, t, depth) else "lo"
                    agree = depth
                else:
                    raise NonConvergence(f"tau comparison for {t} undecided at depth {depth}")
            if decided == "hi":
                hi = m
            else:
                lo = m
            if hi - lo <= tol and agree >= match_bits:
                return m


def nonrecurrence_depth(c, N: int) -> float:
    """``min |x_n|`` over ``1 <= n <= N`` for the critical orbit ``x_1 = c``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    p = _param(c)
    with mp.workprec(p.precision):
        x = p.c
        best = abs(x)
        for _ in range(N - 1):
            x = x * x + p.c
            if abs(x) > 2:
                raise EscapeError("orbit escaped |x| > 2")
            best = min(best, abs(x))
        return float(best)
