from __future__ import annotations

from fractions import Fraction

import pytest

from qsuper.affine import ConfigError
from qsuper.face import (
    D_w, face_difference_residual, face_dybe_residual, face_twistor_vv, face_twistor_vv_at,
    verify_face_difference_eq, verify_face_dynamical_ybe, verify_face_initial,
    verify_phi10_identity,
)
from qsuper.ratfunc import RatFunc, symbol
from qsuper.superop import unit_coefficient

q = symbol("q")
W = RatFunc.const(3)
Q7_5 = RatFunc.const(Fraction(7, 5))


def test_unit_entry_on_odd_odd_diagonal():
    F = face_twistor_vv(2, 2, w=W)
    assert unit_coefficient(F, (2, 2), (2, 2)) == F.ring.one()


def test_f21_has_overall_z_and_p():
    F = face_twistor_vv(3, 3, w=W)
    f21 = unit_coefficient(F, (2, 1), (1, 2))
    assert not f21.is_zero()
    assert all(e[0] >= 1 and e[1] >= 1 for e in f21.coeffs)


def test_value_at_z_zero_is_universal_twistor_image():
    F0 = face_twistor_vv_at(0, 4, w=W)
    Q = q - q ** -1
    for key, val in F0.entries.items():
        if key in ((0, 0), (1, 1), (2, 2), (3, 3)):
            assert val == F0.ring.one()
    f12 = unit_coefficient(F0, (1, 2), (2, 1))
    assert f12 == F0.ring.scalar(-W * Q / (1 - W))
    assert unit_coefficient(F0, (2, 1), (1, 2)).is_zero()


def test_entries_depend_on_w():
    a = face_twistor_vv_at(0, 2, w=W)
    b = face_twistor_vv_at(0, 2, w=RatFunc.const(5))
    assert a != b


def test_initial_condition_suite():
    assert verify_face_initial(4, 4, w=W).passed


def test_face_parameter_and_orders_validated():
    for bad in (0, 1):
        with pytest.raises(ConfigError):
            face_twistor_vv(2, 2, w=bad)
    with pytest.raises(ConfigError):
        face_twistor_vv(0, 2, w=W)
    with pytest.raises(ConfigError):
        D_w(1)


def test_phi10_product_identity():
    rep = verify_phi10_identity(8)
    assert rep.passed
    assert [r.kind for r in rep.records] == ["identity", "control"]


def test_difference_equation_low_orders():
    assert face_difference_residual(1, 1, w=W).is_zero()
    assert face_difference_residual(2, 3, q=Q7_5).is_zero()


def test_difference_equation_full():
    rep = verify_face_difference_eq(6, 6)
    assert rep.passed
    control = rep.records[-1]
    assert control.kind == "control" and control.witness is not None


def test_dynamical_ybe_p_zero_and_one():
    assert face_dybe_residual((2, 3, 5), 1, q=Q7_5, w=W).is_zero()


def test_static_ybe_fails_for_face_r():
    res = face_dybe_residual((2, 3, 5), 2, q=Q7_5, w=W, shift=False)
    assert not res.is_zero()


def test_dynamical_ybe_suite():
    rep = verify_face_dynamical_ybe(2, samples=((2, 3, 5), (Fraction(1, 2), 7, 3)))
    assert rep.passed
