from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qsuper.affine import (
    ConfigError, EvalRepConfig, K_matrix, eval_rep_chevalley, eval_rep_drinfeld, pbw_image,
    q_minus_T_image, r_from_universal, r_matrix_vv, verify_drinfeld_relations,
    verify_graded_ybe, verify_r_universal_vs_closed,
)
from qsuper.quasihopf import face_twistor_universal
from qsuper.ratfunc import RatFunc, symbol
from qsuper.superop import SuperOp, eye, graded_commutator, super_kron, unit_coefficient

q = symbol("q")
z = symbol("z")
Q7_5 = RatFunc.const(Fraction(7, 5))


def e(i, j, c=1):
    return SuperOp.unit(i, j, coeff=c)


def test_chevalley_images_theta_one():
    im = eval_rep_chevalley()
    assert im["e1"] == e(1, 2)
    assert (im["h1"] + im["h0"]).is_zero()
    for name in ("e1", "f1", "e0", "f0"):
        assert im[name].parity() == 1


def test_theta_must_be_nonzero_integer():
    with pytest.raises(ConfigError):
        EvalRepConfig(theta=0)
    with pytest.raises(ConfigError):
        EvalRepConfig(theta=Fraction(1, 2))


def test_drinfeld_images_theta_one():
    assert eval_rep_drinfeld(0)["X+"] == e(1, 2)
    assert eval_rep_drinfeld(1)["H"] == eye(1).scale(z)


def test_e0_is_x1_minus_times_q_minus_h0():
    ch = eval_rep_chevalley()
    d1 = eval_rep_drinfeld(1)
    q_minus_h0 = eye(1).scale(q ** -1)  # H_0 = theta I at theta = 1
    assert ch["e0"] == d1["X-"] * q_minus_h0


def test_drinfeld_commutators_theta_one():
    x0p, x0m = eval_rep_drinfeld(0)["X+"], eval_rep_drinfeld(0)["X-"]
    x1p = eval_rep_drinfeld(1)["X+"]
    H2 = eval_rep_drinfeld(2)["H"]
    assert graded_commutator(x0p, x1p).is_zero()
    assert graded_commutator(H2, x1p).is_zero()
    assert graded_commutator(x0p, x0m) == eye(1)


@pytest.mark.parametrize("theta", [1, 2, -1])
def test_drinfeld_relation_suite(theta):
    assert verify_drinfeld_relations(3, EvalRepConfig(theta=theta)).passed


def test_r_closed_form_entries():
    R = r_matrix_vv()
    assert unit_coefficient(R, (1, 1), (1, 1)) == (q ** -2 - z) / (1 - z * q ** -2)
    coeff = unit_coefficient(R, (2, 1), (1, 2))
    assert coeff.subs({"z": 0}).is_zero()
    assert not coeff.is_zero()


def test_r_closed_form_at_zero():
    R0 = r_matrix_vv(z=0)
    expected = (super_kron(e(1, 1), e(1, 1)).scale(q ** -2) + super_kron(e(2, 2), e(2, 2))
                + super_kron(e(1, 1), e(2, 2)).scale(q ** -1)
                + super_kron(e(2, 2), e(1, 1)).scale(q ** -1)
                + super_kron(e(1, 2), e(2, 1)).scale(q ** -1 * (q - q ** -1)))
    assert R0 == expected


def test_q_minus_T_is_K_inverse():
    K = K_matrix()
    assert q_minus_T_image() == K.inverse()
    assert unit_coefficient(K, (1, 1), (1, 1)) == q ** 2


def test_universal_r_product_matches_closed_form():
    rep = verify_r_universal_vs_closed(8)
    assert rep.passed


def test_universal_r_product_mixed_theta():
    assert verify_r_universal_vs_closed(4, theta=2, theta_p=1).passed


def test_graded_ybe_fixed_sample():
    assert verify_graded_ybe(2, 3, 5, q=Q7_5).is_zero()


def test_graded_ybe_equal_arguments():
    assert verify_graded_ybe(3, 3, 5, q=Q7_5).is_zero()


def test_graded_ybe_random_samples():
    rng = random.Random(20)
    for _ in range(5):
        zs = [Fraction(rng.randint(1, 30), rng.randint(1, 7)) for _ in range(3)]
        assert verify_graded_ybe(*zs, q=Q7_5).is_zero()


def test_graded_ybe_mixed_theta():
    assert verify_graded_ybe(2, 3, 5, 1, 2, 3, q=Q7_5).is_zero()


def test_ungraded_flip_breaks_ybe():
    res = verify_graded_ybe(2, 3, 5, q=Q7_5, flip="ungraded")
    assert not res.is_zero()
    assert res.witness() is not None


def test_pbw_image_of_face_twistor():
    w = RatFunc.const(3)
    F = pbw_image(face_twistor_universal(w), w=w)
    expected = eye(2) - super_kron(e(1, 2), e(2, 1)).scale((q - q ** -1) * w / (1 - w))
    assert F == expected


def test_r_from_universal_is_series():
    R = r_from_universal(3)
    assert R.legs == 2
