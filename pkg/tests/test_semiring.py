"""Scalar algebra instances and the 1x1 embedding."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

import supcalc as sc
from supcalc.semiring import LiteralError


EXACT = (sc.QNN, sc.Q, sc.BOOL)


@pytest.mark.parametrize("sr", EXACT, ids=lambda s: s.name)
def test_semiring_axioms_exact(sr):
    rng = random.Random(17)
    pool = sr.test_pool
    for _ in range(1000):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert sr.eq(sr.add(a, b), sr.add(b, a))
        assert sr.eq(sr.add(sr.add(a, b), c), sr.add(a, sr.add(b, c)))
        assert sr.eq(sr.add(a, sr.zero), a)
        assert sr.eq(sr.mul(sr.mul(a, b), c), sr.mul(a, sr.mul(b, c)))
        assert sr.eq(sr.mul(a, sr.one), a)
        assert sr.eq(sr.mul(sr.one, a), a)
        assert sr.eq(sr.mul(a, sr.add(b, c)), sr.add(sr.mul(a, b), sr.mul(a, c)))
        assert sr.eq(sr.mul(sr.add(a, b), c), sr.add(sr.mul(a, c), sr.mul(b, c)))
        assert sr.eq(sr.mul(a, sr.zero), sr.zero)
        assert sr.eq(sr.mul(sr.zero, a), sr.zero)


def test_semiring_axioms_float_within_tolerance():
    sr = sc.F64
    rng = random.Random(17)
    for _ in range(1000):
        a, b, c = (rng.choice(sr.test_pool) for _ in range(3))
        assert abs(sr.mul(a, sr.add(b, c)) - (a * b + a * c)) <= 1e-12
        assert abs(sr.add(a, b) - (b + a)) <= 1e-12


@pytest.mark.parametrize("sr", (sc.QNN, sc.Q, sc.F64), ids=lambda s: s.name)
def test_embed_is_a_homomorphism(sr):
    rng = random.Random(3)
    for _ in range(200):
        a, b = rng.choice(sr.test_pool), rng.choice(sr.test_pool)
        lhs = sc.add(sc.embed(a, sr), sc.embed(b, sr))
        assert lhs.equal(sc.embed(sr.add(a, b), sr))
        lhs = sc.compose(sc.embed(a, sr), sc.embed(b, sr))
        assert lhs.equal(sc.embed(sr.mul(a, b), sr))


def test_embed_injective_on_pool():
    for sr in (sc.QNN, sc.Q, sc.BOOL):
        images = [tuple(sc.embed(v, sr).entries) for v in sr.test_pool]
        assert len(set(images)) == len(sr.test_pool)


def test_embed_units():
    assert sc.embed(F(1)).equal(sc.identity(1, sc.QNN))
    assert sc.embed(F(0)).equal(sc.zero_mat(1, 1, sc.QNN))
    assert sc.embed(F(3, 4)).entries == [F(3, 4)]


def test_weight_pairs():
    assert sc.make_weight_pair(F(1, 2), F(1, 2), sc.QNN) == sc.WeightPair(F(1, 2), F(1, 2))
    assert sc.make_weight_pair(F(1), F(0), sc.QNN).p == F(1)
    with pytest.raises(sc.WeightError):
        sc.make_weight_pair(F(1, 2), F(1, 4), sc.QNN)


def test_weight_pairs_are_semiring_relative():
    # in the two-point algebra 1+1=1, so (1,1) is a legal pair
    sc.make_weight_pair(True, True, sc.BOOL)
    with pytest.raises(sc.WeightError):
        sc.make_weight_pair(False, False, sc.BOOL)
    # in the signed rationals, 2 + (-1) = 1
    sc.make_weight_pair(F(2), F(-1), sc.Q)


def test_literal_rejections():
    with pytest.raises(LiteralError):
        sc.BOOL.from_literal(F(1, 2))
    with pytest.raises(LiteralError):
        sc.QNN.from_literal(F(-1))
    assert sc.Q.from_literal(F(-1)) == F(-1)
    assert sc.F64.from_literal(F(1, 2)) == 0.5


def test_format_scalar_reparses():
    for sr in (sc.QNN, sc.Q, sc.F64, sc.BOOL):
        for v in sr.test_pool:
            text = sc.format_scalar(v)
            assert sr.eq(sr.from_literal(F(text)), v)


def test_get_semiring():
    assert sc.get_semiring("qnn") is sc.QNN
    with pytest.raises(sc.SemiringError):
        sc.get_semiring("tropical")
