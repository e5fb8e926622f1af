from __future__ import annotations

from fractions import Fraction

import pytest

from qsuper.affine import ConfigError
from qsuper.ratfunc import RatFunc, symbol
from qsuper.series import SeriesSpace
from qsuper.superop import SuperOp, eye, unit_coefficient
from qsuper.vertex import (
    bc_closed, e2_closed, solve_x_system, tau_drinfeld_image, vertex_closed_forms,
    vertex_difference_residual, vertex_factors, vertex_twistor_product, verify_vertex_difference_eq,
    verify_vertex_product, verify_vertex_ybe, x_csv_rows, x_system_residual,
)

q = symbol("q")
z = symbol("z")
Q = q - q ** -1


def test_tau_images_at_low_modes_literal():
    im0 = tau_drinfeld_image(0)
    assert im0["X+"] == SuperOp.unit(1, 2, coeff=z)
    assert im0["X-"] == SuperOp.unit(2, 1, coeff=-z ** -1)
    # sign (-1)^{n+1} is +1 at n = 1
    assert tau_drinfeld_image(1)["H"] == eye(1).scale(z ** 2)


def test_tau_corrected_reading_swaps_odd_units():
    im0 = tau_drinfeld_image(0, reading="corrected")
    assert im0["X+"] == SuperOp.unit(2, 1, coeff=z)
    assert im0["X-"] == SuperOp.unit(1, 2, coeff=-z ** -1)
    with pytest.raises(ConfigError):
        tau_drinfeld_image(0, reading="other")


def test_first_factor_data():
    sp = SeriesSpace(["ph", "zeta"], [4, 4])
    f = vertex_factors(1, sp)
    X = sp.monomial({"ph": 2, "zeta": 2})
    one = sp.one()
    expected = (one + X.scale(q ** 2)) * (one + X.scale(q ** -2)) * ((one + X) ** 2).inverse()
    assert f.rho == expected
    assert unit_coefficient(f.E_odd, (1, 2), (1, 2)).coefficient((1, 1)) == Q
    assert unit_coefficient(f.E_odd, (2, 1), (2, 1)).coefficient((1, 1)) == -Q
    with pytest.raises(ConfigError):
        vertex_factors(0, sp)


def test_even_factor_is_identity_at_zeta_zero():
    sp = SeriesSpace(["ph"], [4])
    f = vertex_factors(1, sp, zeta=0)
    assert f.E_even == eye(2, sp)


def test_twistor_is_identity_at_zeta_zero():
    assert vertex_twistor_product(6, 4, zeta=0) == eye(2, SeriesSpace(["ph"], [6]))


def test_half_order_comes_from_first_factors():
    # the p^{1/2} zeta layer is Q (e12 (x) e12 - e21 (x) e21), all from k = 1
    E = vertex_twistor_product(1, 2)
    layer = {k: v.coefficient((1, 1)) for k, v in E.entries.items()}
    nonzero = {k for k, v in layer.items() if not v.is_zero()}
    assert nonzero == {(0, 3), (3, 0)}
    assert unit_coefficient(E, (1, 2), (1, 2)).coefficient((1, 1)) == Q
    assert unit_coefficient(E, (2, 1), (2, 1)).coefficient((1, 1)) == -Q


def test_b_plus_c_is_one_at_zeta_zero():
    sp = SeriesSpace(["ph", "zeta"], [6, 6])
    bpc, _ = bc_closed(sp)
    assert bpc.coefficient((0, 0)).is_one()
    assert all(e[1] > 0 for e in bpc.coeffs if e != (0, 0))


def test_e2_antisymmetric_odd_entries():
    sp = SeriesSpace(["ph", "zeta"], [6, 6])
    E2 = e2_closed(sp)
    c12 = unit_coefficient(E2, (1, 2), (2, 1))
    c21 = unit_coefficient(E2, (2, 1), (1, 2))
    assert not c12.is_zero()
    assert c12 == -c21


def test_product_suite():
    rep = verify_vertex_product(8, 8, 6, 4)
    assert rep.passed
    assert len(rep.records) == 8


def test_x_system_solution_and_residual():
    X = solve_x_system(6, 6)
    assert x_system_residual(X).is_zero()
    assert X["X11"].constant_term().is_one()
    assert X["X12"].constant_term().is_zero()


def test_x_csv_rows_are_exact_strings():
    rows = x_csv_rows(vertex_closed_forms(4)["X"]["X12"])
    assert rows
    for a, b, num, den in rows:
        assert isinstance(a, int) and isinstance(b, int)
        assert num and den and den != "0"


def test_difference_equation_first_layers():
    assert vertex_difference_residual(2).is_zero()


def test_difference_equation_literal_reading_fails():
    assert not vertex_difference_residual(2, reading="literal").is_zero()


def test_difference_suite():
    rep = verify_vertex_difference_eq(6)
    assert rep.passed
    kinds = [r.kind for r in rep.records]
    assert kinds.count("control") == 2


def test_vertex_ybe_suite():
    rep = verify_vertex_ybe(3, samples=((2, 3, 5), (Fraction(1, 2), 3, 7)))
    assert rep.passed
    assert {"ybe-ungraded-flip", "p0-layer"} <= {r.id for r in rep.records}
