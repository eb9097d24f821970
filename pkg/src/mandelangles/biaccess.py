"""Biaccessible angles of real quadratics and the dimension bound ell(c).

For real ``c`` with ``tau = tau(c)``, an angle ``t`` is biaccessible iff
no forward doubling iterate of ``t`` falls in ``]tau, 1 - tau[``.  That is
the ``K_sigma`` condition with ``sigma = 1 - 2 tau``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from mpmath import mp, mpf

from .angle import Angle, binary_expansion, word_value
from .errors import DomainError, HitCriticalPoint, InsufficientPrecision, UnresolvedLocation
from .kneading import RealParam, _has_parabolic_pair, _orbit_point, tau
from .ksigma import SigmaParam, boxdim_estimate
from .realslice import GUARD_BITS, HALF, Opening, enumerate_openings
from .tuning import words_from_opening

C_FEIG = mpf("-1.40115518909205060052382")
ELL_WINDOW = (Fraction(4, 9), HALF)


def thue_morse(n: int) -> str:
    """First ``n`` digits ``0110100110010110...`` of the Thue-Morse word."""
    return "".join(str(bin(k).count("1") % 2) for k in range(n))


TAU_FEIG_WORD = thue_morse(256)
TAU_FEIG = word_value(TAU_FEIG_WORD)


def s_c_membership(t: Union[Angle, str, Fraction], tau_c, depth: Optional[int] = None) -> bool:
    """Whether no iterate ``2^n t`` (``n >= 1``) falls in ``]tau_c, 1 - tau_c[``.

    A rational ``t`` is decided exactly over its whole orbit (``depth``
    ignored).  A word is the list of leading digits of ``t``; iterates
    ``n = 1, ..., depth`` are checked, and :class:`InsufficientPrecision`
    is raised when the digits do not decide one of them.
    """
    tau_c = Fraction(tau_c)
    if not 0 <= tau_c <= HALF:
        raise DomainError("tau_c must lie in [0, 1/2]")
    if isinstance(t, str):
        return _s_c_word(t, tau_c, depth)
    t = Angle(t)
    num, den = t.numerator, t.denominator
    # x / den in ]a / b, 1 - a / b[ in integers
    a, b = tau_c.numerator, tau_c.denominator
    lo, hi = a * den, (b - a) * den
    x = (2 * num) % den
    seen = set()
    while x not in seen:
        if lo < x * b < hi:
            return False
        seen.add(x)
        x = (2 * x) % den
    return True


def _s_c_word(bits: str, tau_c: Fraction, depth: Optional[int]) -> bool:
    # an iterate pinned to a boundary point by >= GUARD_BITS digits counts as touching it
    L = len(bits)
    if depth is None:
        depth = L - 1
    if depth >= L:
        raise InsufficientPrecision(f"need more than {depth} digits, got {L}")
    for n in range(1, depth + 1):
        lo = word_value(bits[n:])
        hi = lo + Fraction(1, 1 << (L - n))
        if hi <= tau_c or lo >= 1 - tau_c:
            continue
        if lo > tau_c and hi < 1 - tau_c:
            return False
        if L - n >= GUARD_BITS and (lo <= tau_c <= hi or lo <= 1 - tau_c <= hi):
            continue
        raise InsufficientPrecision(f"iterate {n} undecided at {L} digits")
    return True


def basilica_catalogue(n_max: int) -> list:
    """``{0, 1/2}`` and ``+-1/(6 2^n)``, ``1/2 +- 1/(6 2^n)`` for ``n <= n_max``."""
    out = {Angle(0), Angle(1, 2)}
    for n in range(n_max + 1):
        e = Fraction(1, 6 << n)
        out.update(Angle(x) for x in (e, -e, HALF + e, HALF - e))
    return sorted(out)


def ell(rho_value) -> Optional[float]:
    """``1 - log2((16 rho - 5) / (32 rho - 13))`` on ``[4/9, 1/2]``, else None."""
    r = Fraction(rho_value) if isinstance(rho_value, (int, Fraction)) else float(rho_value)
    if r > HALF:
        raise DomainError("rho cannot exceed 1/2")
    if r < ELL_WINDOW[0]:
        return None
    if isinstance(r, Fraction):
        q = (16 * r - 5) / (32 * r - 13)
        return 1.0 - math.log2(q.numerator) + math.log2(q.denominator)
    return 1.0 - math.log2((16 * r - 5) / (32 * r - 13))


def makarov_lower(delta: float) -> float:
    """``delta / 2`` up to ``11/12``, then ``delta / (1 + sqrt(12 (1 - delta)))``."""
    if not 0 < delta <= 1:
        raise DomainError("delta must lie in ]0, 1]")
    if delta <= 11 / 12:
        return delta / 2
    return delta / (1 + math.sqrt(12 * (1 - delta)))


def locate(c, openings: Sequence[Opening], nbits: int = 128, nudge: float = 2.0 ** -80):
    """The opening whose component closure contains ``c``, or None.

    ``c`` lies in the closure of the component behind ``o`` iff the
    extended tau(c) equals ``theta_minus`` or ``omega_minus``.  Just to
    the right of a primitive root, tau(c) agrees with ``theta_minus`` to
    many digits; that case is split off by the local cycle structure.
    Points within ``nudge`` of a boundary count as inside.
    """
    p = RealParam(c)
    with mp.workprec(p.precision):
        probe = p.c - mpf(nudge) if p.c - nudge >= -2 else p.c
        try:
            w = tau(RealParam(probe, p.precision), nbits)
        except HitCriticalPoint:
            try:
                probe = probe - mpf(nudge)
                w = tau(RealParam(probe, p.precision), nbits)
            except HitCriticalPoint:
                raise UnresolvedLocation("critical orbit cannot be certified near c") from None
        for o in openings:
            if w == binary_expansion(o.omega_minus, nbits):
                return o
            if w == binary_expansion(o.theta_minus, nbits):
                if o.period == 1:
                    return o
                x0 = _orbit_point(probe, nbits // 2)
                if _has_parabolic_pair(probe, o.period, x0):
                    return o
                # a satellite root is also the co-root of its parent
                continue
    return None


def rho(c, openings: Optional[Sequence[Opening]] = None, nbits: int = 128) -> Fraction:
    """tau of the Feigenbaum point of the component closure containing
    ``c``, or tau(c) when ``c`` lies in no listed closure.

    Values are truncations to at least ``nbits`` digits.
    """
    if RealParam(c).c == -2:
        return HALF
    if openings is None:
        openings = enumerate_openings(10)
    o = locate(c, openings, nbits)
    if o is None:
        return word_value(tau(c, nbits))
    if o.period == 1:
        return TAU_FEIG
    w = words_from_opening(o)
    return word_value(w.block(TAU_FEIG_WORD[: max(nbits // o.period, 64)]))


def _tau_near(p: RealParam, nbits: int, nudge: float = 2.0 ** -80) -> Fraction:
    """tau(c), or tau just left of c when the critical orbit of c is periodic."""
    try:
        return word_value(tau(p, nbits))
    except HitCriticalPoint:
        with mp.workprec(p.precision):
            return word_value(tau(RealParam(max(p.c - mpf(nudge), mpf(-2)), p.precision), nbits))


@dataclass
class DimBoundReport:
    c: float
    tau: float
    rho: float
    sigma: float
    ell: Optional[float]
    ell_prime: Optional[float]
    boxdim_estimate: Optional[float]
    upper_flag: str
    flags: list = field(default_factory=list)

    def as_row(self) -> dict:
        row = asdict(self)
        row["flags"] = ";".join(self.flags)
        return row


def dim_report(c, openings: Optional[Sequence[Opening]] = None,
               levels: Sequence[int] = range(8, 17)) -> DimBoundReport:
    """Bounds and estimates for the dimension of the biaccessible angles.

    ``ell`` and the porosity flag are proven bounds; ``boxdim_estimate``
    is the interval-count slope of ``K_sigma`` and only an estimate.
    """
    p = RealParam(c)
    t = HALF if p.c == -2 else _tau_near(p, 64)
    sigma = 1 - 2 * t
    flags = []
    at_feig = abs(p.c - C_FEIG) < 1e-15
    if p.c > C_FEIG and not at_feig:
        return DimBoundReport(float(p.c), float(t), float(t), float(sigma), 0.0, 0.0, 0.0,
                              "dimension 0", ["dimension-0"])
    r = rho(p, openings)
    lower = ell(r) if p.c <= -1.75 else None
    if lower is None:
        flags.append("no lower bound available")
    if at_feig:
        flags.append("open problem: positivity of the dimension")
    lp = makarov_lower(lower) if lower else None
    if sigma == 0:
        est, upper = 1.0, "dimension 1"
    else:
        # sigma is known to 2^-63; round it onto a 2^-24 grid for the construction
        s = Fraction(round(sigma * (1 << 24)), 1 << 24)
        est = boxdim_estimate(SigmaParam(s), list(levels)) if s > 0 else 1.0
        upper = "strictly below 1 by porosity"
    flags.append("boxdim is an estimate")
    return DimBoundReport(float(p.c), float(t), float(r), float(sigma), lower, lp, est, upper, flags)


CSV_COLUMNS = ["c", "rho", "sigma", "ell", "ell_prime", "boxdim_estimate", "flags"]


def reports_csv(reports: Sequence[DimBoundReport]) -> str:
    buf = io.StringIO()
    wr = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
    wr.writeheader()
    for r in reports:
        row = r.as_row()
        wr.writerow({k: ("" if row[k] is None else row[k]) for k in CSV_COLUMNS})
    return buf.getvalue()
