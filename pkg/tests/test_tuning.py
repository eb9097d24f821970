import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from mandelangles.angle import ONES_TAIL, ZEROS_TAIL, Angle, binary_expansion, double
from mandelangles.errors import DomainError
from mandelangles.realslice import Opening, enumerate_openings, in_R
from mandelangles.tuning import (
    TuningWords,
    cantor_boxdim,
    holder_constant,
    staircase_psi,
    tune_angle,
    tuned_cover_slope,
    tuned_R_cover,
    words_from_opening,
)

BASILICA = TuningWords(2, "01", "10")
AIRPLANE = TuningWords(3, "011", "100")
P5 = TuningWords(5, "01111", "10000")
ALL_WORDS = [BASILICA, AIRPLANE, P5, TuningWords(4, "0111", "1000"), TuningWords(4, "0110", "1001")]


def substitute_oracle(w, t, nbits):
    """Leading digits of the image by direct digit substitution."""
    bits = binary_expansion(t, nbits)
    return "".join(w.theta1 if b == "1" else w.theta0 for b in bits)[:nbits]


def test_words_from_opening():
    ops = {(o.period, o.index): o for o in enumerate_openings(5)}
    assert words_from_opening(ops[2, 1]) == BASILICA
    assert words_from_opening(ops[3, 3]) == AIRPLANE
    assert words_from_opening(ops[5, 15]) == P5
    with pytest.raises(DomainError):
        words_from_opening(Opening.from_pn(1, 0))
    for o in ops.values():
        if o.period > 1:
            w = words_from_opening(o)
            assert w.theta_minus == o.theta_minus and w.theta_plus == o.theta_plus


def test_tuning_words_validation():
    with pytest.raises(DomainError):
        TuningWords(1, "0", "1")
    with pytest.raises(DomainError):
        TuningWords(2, "10", "01")
    with pytest.raises(DomainError):
        TuningWords(2, "012", "10")


def test_tune_examples():
    assert tune_angle(BASILICA, F(0)) == (F(1, 3), F(2, 3))
    assert tune_angle(BASILICA, F(0), ZEROS_TAIL) == F(1, 3)
    assert tune_angle(BASILICA, F(0), ONES_TAIL) == F(2, 3)
    assert tune_angle(BASILICA, F(1, 3)) == F(2, 5)
    assert tune_angle(BASILICA, F(1, 2)) == (F(5, 12), F(7, 12))


def test_tune_matches_substitution():
    rng = random.Random(6)
    for _ in range(300):
        w = rng.choice(ALL_WORDS)
        d = rng.randint(3, 500) | 1
        t = F(rng.randint(1, d - 1), d)
        img = tune_angle(w, t)
        assert binary_expansion(img, 120) == substitute_oracle(w, t, 120)


@given(st.sampled_from(ALL_WORDS), st.integers(1, 4096), st.integers(0, 10**6))
def test_left_inverse(w, d, n):
    t = F(n % d, d)
    r = tune_angle(w, t)
    for img in (r if isinstance(r, tuple) else (r,)):
        assert staircase_psi(w, img) % 1 == t


def test_left_inverse_dyadic_branches():
    for w in ALL_WORDS:
        for k in range(1, 9):
            for j in range(1, 2**k, 2):
                t = F(j, 2**k)
                lo, hi = tune_angle(w, t)
                assert lo < hi
                assert staircase_psi(w, lo) == t == staircase_psi(w, hi)
                mid = (lo + hi) / 2
                assert staircase_psi(w, mid) == t


def test_order_on_non_dyadic():
    for w in ALL_WORDS[:3]:
        ts = sorted({F(n, d) for d in range(3, 80, 2) for n in range(1, d)})
        imgs = [tune_angle(w, t) for t in ts]
        assert all(a < b for a, b in zip(imgs, imgs[1:]))


def test_contraction_identity():
    rng = random.Random(7)
    for _ in range(300):
        w = rng.choice(ALL_WORDS)
        d = rng.randint(3, 999) | 1
        t = F(rng.randint(1, d - 1), d)
        lead = binary_expansion(t, 1)
        assert tune_angle(w, t) == w.contract(lead, tune_angle(w, double(t)))


def test_root_compatibility():
    for w in ALL_WORDS:
        assert tune_angle(w, F(0), ZEROS_TAIL) == w.theta_minus
        assert tune_angle(w, F(1), ONES_TAIL) == w.theta_plus


def test_psi_examples():
    w = BASILICA
    assert staircase_psi(w, F(1, 3)) == 0
    assert staircase_psi(w, F(2, 3)) == 1
    assert staircase_psi(w, F(2, 5)) == F(1, 3)
    for s in (F(5, 12) + F(1, 1000), F(1, 2), F(7, 12) - F(1, 10**9)):
        assert staircase_psi(w, s) == F(1, 2)
    with pytest.raises(DomainError):
        staircase_psi(w, F(1, 4))


def test_psi_monotone():
    rng = random.Random(13)
    for w in ALL_WORDS[:3]:
        lo, hi = w.theta_minus, w.theta_plus
        pts = sorted(lo + (hi - lo) * F(rng.randint(0, 2**30), 2**30) for _ in range(400))
        vals = [staircase_psi(w, s) for s in pts]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("w,target", [(BASILICA, 0.5), (AIRPLANE, 1 / 3), (P5, 0.2)])
def test_cantor_boxdim(w, target):
    scales, counts, slope = cantor_boxdim(w, 12 * w.period)
    assert abs(slope - target) < 0.02
    with pytest.raises(ValueError):
        cantor_boxdim(w, 3 * w.period)


def test_tuned_cover_hull_endpoints():
    S = tuned_R_cover(BASILICA, 3)
    ends = {x for iv in S for x in iv}
    allowed = set()
    for x in (F(0), F(1, 3), F(2, 5), F(3, 7), F(4, 9), F(1, 2)):
        r = tune_angle(BASILICA, x)
        allowed.update(r if isinstance(r, tuple) else (r,))
    assert ends <= allowed
    assert all(BASILICA.theta_minus <= a <= b <= BASILICA.theta_plus for a, b in S)


def test_tuned_cover_refined_inside_hull():
    hull = tuned_R_cover(BASILICA, 5)
    fine = tuned_R_cover(BASILICA, 5, depth=8)
    assert fine.measure() < hull.measure()
    pts = [F(n, d) for d in range(3, 400, 2) for n in range(1, d // 2 + 1) if in_R(F(n, d))]
    for t in pts:
        img = tune_angle(BASILICA, t)
        assert hull.contains(img) and fine.contains(img)


def test_tuned_cover_slope_basilica_small():
    counts, slope = tuned_cover_slope(BASILICA, 6)
    assert 0.35 < slope < 0.5


def test_holder_constant_bounded():
    c1 = holder_constant(BASILICA, n_pairs=2000, seed=1)
    c2 = holder_constant(BASILICA, n_pairs=2000, bits=60, seed=2)
    assert 0 < c1 < 4 and 0 < c2 < 4
