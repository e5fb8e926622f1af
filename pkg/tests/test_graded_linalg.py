from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from qsuper.ratfunc import RatFunc
from qsuper.sqrtext import SqrtRing
from qsuper.superop import (
    SuperOp, SuperOpError, V, embed_on_legs, eye, flip_element, graded_commutator,
    graded_flip, super_kron, unit_coefficient,
)

UNITS = [(1, 1), (1, 2), (2, 1), (2, 2)]


def e(i, j, c=1):
    return SuperOp.unit(i, j, coeff=c)


def parity(i, j):
    return (V.parities[i - 1] + V.parities[j - 1]) % 2


def act(X: SuperOp, col: int):
    return {r: v for (r, c), v in X.entries.items() if c == col}


def random_op(rng, legs=2):
    size = 2 ** legs
    entries = {(i, j): RatFunc.const(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
               for i in range(size) for j in range(size) if rng.random() < 0.6}
    return SuperOp((V,) * legs, entries)


def test_odd_odd_kron_product_sign():
    lhs = super_kron(e(1, 2), e(2, 1)) * super_kron(e(2, 1), e(1, 2))
    assert lhs == -super_kron(e(1, 1), e(2, 2))


def test_odd_odd_kron_matches_basis_action():
    # (e12 (x) e21)(v_a (x) v_b) = (-1)^{[e21][v_a]} e12 v_a (x) e21 v_b
    X = super_kron(e(1, 2), e(2, 1))
    # only v2 (x) v1 (index 2) is not killed; v_a = v2 is odd so the sign is -1
    assert act(X, 2) == {1: RatFunc.const(-1)}
    for col in (0, 1, 3):
        assert act(X, col) == {}


def test_kron_identity_and_even():
    assert super_kron(eye(1), eye(1)) == eye(2)
    a = super_kron(e(1, 1), e(2, 2))
    assert a * a == a


def test_flip_on_basis():
    P = graded_flip()
    # v1 (x) v2 -> v2 (x) v1 ; v2 (x) v2 -> -v2 (x) v2
    assert act(P, 1) == {2: RatFunc.const(1)}
    assert act(P, 3) == {3: RatFunc.const(-1)}
    assert P * P == eye(2)


@pytest.mark.parametrize("a,b", list(product(UNITS, UNITS)))
def test_flip_conjugation_twists_units(a, b):
    P = graded_flip()
    sign = -1 if parity(*a) and parity(*b) else 1
    lhs = P * super_kron(e(*a), e(*b)) * P
    assert lhs == super_kron(e(*b), e(*a)).scale(sign)


def test_flip_element_examples():
    assert flip_element(super_kron(e(1, 2), e(2, 1))) == -super_kron(e(2, 1), e(1, 2))
    assert flip_element(eye(2)) == eye(2)
    rng = random.Random(3)
    for _ in range(5):
        X = random_op(rng)
        assert flip_element(flip_element(X)) == X


def test_embed_on_legs_examples():
    rng = random.Random(5)
    X = random_op(rng)
    assert embed_on_legs(X, (1, 2), 3) == super_kron(X, eye(1))
    assert embed_on_legs(eye(2), (2, 3), 3) == eye(3)
    P23 = super_kron(eye(1), graded_flip())
    Y = super_kron(e(1, 2), e(2, 1))
    assert embed_on_legs(Y, (1, 3), 3) == P23 * super_kron(Y, eye(1)) * P23


def test_embed_on_reversed_legs_is_flip():
    rng = random.Random(7)
    X = random_op(rng)
    assert embed_on_legs(X, (2, 1), 2) == flip_element(X)


def test_embed_rejects_bad_legs():
    with pytest.raises(SuperOpError):
        embed_on_legs(eye(2), (1, 1), 3)
    with pytest.raises(SuperOpError):
        embed_on_legs(eye(2), (1, 4), 3)


def test_unit_coefficient_reads_graded_units():
    X = super_kron(e(1, 2), e(2, 1)).scale(5) + super_kron(e(2, 1), e(1, 2)).scale(3)
    assert unit_coefficient(X, (1, 2), (2, 1)) == RatFunc.const(5)
    assert unit_coefficient(X, (2, 1), (1, 2)) == RatFunc.const(3)


def test_graded_commutator_examples():
    assert graded_commutator(e(1, 2), e(2, 1)) == eye(1)
    assert graded_commutator(e(1, 2), e(1, 2)).is_zero()
    assert graded_commutator(e(1, 1), e(2, 2)).is_zero()


def test_parity_detection():
    assert e(1, 2).parity() == 1
    assert e(2, 2).parity() == 0
    assert (e(1, 2) + e(1, 1)).parity() is None


def test_inverse_over_field():
    rng = random.Random(11)
    X = eye(2) + random_op(rng).scale(Fraction(1, 7))
    assert X * X.inverse() == eye(2)


def test_sqrt_ring_entries():
    q = RatFunc.symbol("q")
    ring = SqrtRing({"s": q + 1})
    s = ring.root("s")
    assert s * s == ring.scalar(q + 1)
    X = SuperOp.unit(1, 2, coeff=s, ring=ring)
    Y = SuperOp.unit(2, 1, coeff=s, ring=ring)
    assert (X * Y).get(0, 0) == ring.scalar(q + 1)


def test_json_is_dense_and_labelled():
    d = super_kron(e(1, 2), e(2, 1)).to_json()
    assert d["legs"] == 2
    assert d["parity"] == [[0, 1], [0, 1]]
    assert len(d["entries"]) == 4 and all(len(row) == 4 for row in d["entries"])
    assert d["entries"][1][2] != 0 and d["entries"][0][0] == 0
