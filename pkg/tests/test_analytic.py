import random

import pytest
from mpmath import mp

from ebelyi.algebra.curves import model_curve, model_lattice, model_w1, two_torsion_x
from ebelyi.algebra.fields import Cyc, QQ
from ebelyi.analytic import (
    find_int_relation,
    lattice_invariants,
    precision_ladder,
    recognize_cyc,
    recognize_rational,
    reduce_basis,
    wp_series,
)
from ebelyi.errors import RecognitionFailed


def test_wp_satisfies_its_differential_equation():
    # p'^2 = 4 p^3 - g2 p - g3 to better than 2^-64 at 128 bits
    for W1, W2 in ((mp.mpf(1), mp.mpc(0, 1)), (mp.mpf(2), mp.mpc(1, 1))):
        with mp.workprec(160):
            g2, g3 = lattice_invariants(W1, W2, 150)
            for z in (mp.mpc("0.31", "0.17"), mp.mpc("0.5", "0.25")):
                p, pp = wp_series(W1, W2, z, 150)
                resid = pp * pp - (4 * p**3 - g2 * p - g3)
                assert abs(resid) < mp.mpf(2) ** -64


def test_wp_returns_none_on_the_lattice():
    assert wp_series(mp.mpf(1), mp.mpc(0, 1), mp.mpc(0, 0), 96) is None
    assert wp_series(mp.mpf(1), mp.mpc(0, 1), mp.mpc(3, 2), 96) is None


def test_reduce_basis_shrinks():
    with mp.workprec(96):
        V1, V2 = reduce_basis(mp.mpf(10), mp.mpf(10) + mp.mpc(0, 1) * mp.mpf("0.1"))
        tau = V2 / V1
        assert tau.imag > 0
        assert abs(tau) > 0.9


def test_model_lattice_hits_two_torsion_at_half_periods():
    for kind in ("i", "w"):
        lat = model_lattice(kind)
        curve = model_curve(kind)
        half = model_w1(kind) * QQ(1, 2)
        X, Y = lat.point(half, 160)
        x = recognize_cyc(X, kind, 160)
        assert x in two_torsion_x(kind)
        assert curve.f_at(x).is_zero()


def test_model_lattice_point_is_on_the_curve_numerically():
    for kind in ("i", "w"):
        lat = model_lattice(kind)
        curve = model_curve(kind)
        with mp.workprec(160):
            X, Y = lat.point(mp.mpc("0.23", "0.11"), 150)
            A = curve.A.embed(150)
            B = curve.B.embed(150)
            resid = Y * Y - (X**3 + A * X + B)
            assert abs(resid) < mp.mpf(2) ** -100 * (1 + abs(X) ** 3)


def test_find_int_relation_golden_ratio():
    with mp.workprec(128):
        v = (1 + mp.sqrt(5)) / 2
        rel = find_int_relation([mp.mpf(1), v, v * v], 120)
    assert rel is not None
    c0, c1, c2 = rel
    # any valid relation is a multiple of 1 + x - x^2
    assert c2 != 0 and c0 == c1 == -c2


def test_recognize_rational():
    with mp.workprec(128):
        assert recognize_rational(mp.mpf(22) / 7, 120) == QQ(22, 7)
        assert recognize_rational(mp.mpf(-5), 120) == QQ(-5)
        with pytest.raises(RecognitionFailed):
            recognize_rational(mp.pi, 120)


def test_recognize_embed_roundtrip_on_random_elements():
    rng = random.Random(20260817)
    for _ in range(100):
        kind = rng.choice(("i", "w"))
        a = QQ(rng.randint(-30, 30), rng.randint(1, 12))
        b = QQ(rng.randint(-30, 30), rng.randint(1, 12))
        v = Cyc(kind, a, b)
        assert recognize_cyc(v.embed(160), kind, 160) == v


def test_recognize_rejects_transcendental_input():
    with mp.workprec(180):
        v = mp.exp(1)
    with pytest.raises(RecognitionFailed):
        recognize_cyc(v, "w", 160)


def test_precision_ladder_retries_until_enough_bits():
    calls = []

    def fn(p):
        calls.append(p)
        if p < 500:
            raise RecognitionFailed("needs more bits")
        return p

    out = precision_ladder(fn, start=128)
    assert out >= 500
    assert calls == sorted(calls)

    def never(p):
        raise RecognitionFailed("no")

    with pytest.raises(RecognitionFailed):
        precision_ladder(never, start=128, limit=256)
