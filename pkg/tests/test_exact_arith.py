from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from qsuper.qseries import hyper_1phi0, hyper_2phi1, poch_finite, poch_infinite
from qsuper.ratfunc import RatFunc
from qsuper.series import SeriesError, SeriesSpace, TruncatedSeries, series_invert


def test_ratfunc_is_kept_reduced(q):
    a = (q ** 2 - 1) / (q - 1)
    assert a == q + 1
    assert a.is_polynomial()
    assert ((q - q ** -1) / (q - q ** -1)).is_one()


def test_ratfunc_subs_and_fraction(q):
    r = (q + 1) / (q - 2)
    assert r.subs({"q": 3}).to_fraction() == 4
    assert RatFunc.const(Fraction(3, 4)).to_fraction() == Fraction(3, 4)


def test_ratfunc_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        RatFunc.const(0).inverse()


def test_ratfunc_json_round_trip(q):
    r = (q ** 3 - 2) / (5 * q + 1)
    assert RatFunc.from_json(r.to_json()) == r
    assert RatFunc.from_json(json.loads(json.dumps(r.to_json()))) == r


def test_difference_of_squares():
    sp = SeriesSpace(("z",), (2,))
    z = sp.gen("z")
    assert (sp.one() + z) * (sp.one() - z) == sp.one() - z * z


def test_truncation_drops_high_terms():
    sp = SeriesSpace(("z",), (1,))
    z = sp.gen("z")
    assert (sp.one() + z) * (sp.one() + z) == sp.one() + z.scale(2)


def test_invert_times_self_is_one(q):
    sp = SeriesSpace(("z",), (6,))
    a = sp.one() - sp.gen("z").scale(q)
    assert a * series_invert(a) == sp.one()


def test_geometric_series():
    sp = SeriesSpace(("z",), (3,))
    z = sp.gen("z")
    expected = sp.one() + z + z * z + z * z * z
    assert series_invert(sp.one() - z) == expected
    assert series_invert(sp.one()) == sp.one()


def test_invert_two_variables(q):
    sp = SeriesSpace(("p", "z"), (4, 4))
    x = (sp.gen("p") * sp.gen("z")).scale(q ** 2)
    expected = sp.zero()
    xk = sp.one()
    for _ in range(5):
        expected = expected + xk
        xk = xk * x
    assert series_invert(sp.one() - x) == expected


def test_invert_requires_unit_constant_term():
    sp = SeriesSpace(("z",), (3,))
    with pytest.raises(SeriesError):
        series_invert(sp.gen("z"))


def test_mismatched_layouts_raise():
    a = SeriesSpace(("z",), (3,)).one()
    b = SeriesSpace(("p",), (3,)).one()
    with pytest.raises(SeriesError):
        a * b


def test_series_json_round_trip(q):
    sp = SeriesSpace(("p", "z"), (2, 3))
    s = sp.one() + sp.gen("z").scale(q) - sp.monomial({"p": 2, "z": 1}, 5)
    assert TruncatedSeries.from_json(s.to_json()) == s


def test_poch_finite_examples(q):
    sp = SeriesSpace(("p",), (6,))
    a = q
    p = sp.gen("p")
    assert poch_finite(a, p, 0, like=p) == sp.one()
    assert poch_finite(a, p, 2, like=p) == (sp.one() - sp.scalar(a)) * (sp.one() - p.scale(a))


def test_poch_finite_recursion_random():
    rng = random.Random(1)
    sp = SeriesSpace(("p",), (8,))
    p = sp.gen("p")
    for _ in range(3):
        a = RatFunc.const(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        for n in range(6):
            pn = sp.monomial({"p": n})
            lhs = poch_finite(a, p, n + 1, like=p)
            rhs = poch_finite(a, p, n, like=p) * (sp.one() - pn.scale(a))
            assert lhs == rhs


def test_poch_infinite_examples(q):
    sp = SeriesSpace(("p",), (1,))
    p = sp.gen("p")
    assert poch_infinite(0, p, like=p) == sp.one()
    assert poch_infinite(p.scale(q), p) == sp.one() - p.scale(q)
    sp4 = SeriesSpace(("p",), (4,))
    p4 = sp4.gen("p")
    full = poch_infinite(q, p4)
    assert full.coefficient((1,)) == -q * (1 - q)


def test_poch_infinite_rejects_unit_base():
    sp = SeriesSpace(("p",), (3,))
    with pytest.raises(SeriesError):
        poch_infinite(sp.gen("p"), sp.one())


def test_hyper_2phi1_first_terms(q):
    sp = SeriesSpace(("p", "x"), (3, 1))
    p, x = sp.gen("p"), sp.gen("x")
    a, b, c = q, q ** 2, q ** -1
    got = hyper_2phi1(a, b, c, p, x)
    term = (sp.one() - sp.scalar(a)) * (sp.one() - sp.scalar(b)) * series_invert(
        (sp.one() - p) * (sp.one() - sp.scalar(c)))
    assert got == sp.one() + term * x
    assert hyper_2phi1(a, b, c, p, sp.zero()) == sp.one()


def test_1phi0_product_formula(q):
    # 1phi0(q^-4; p, p q^2 z) = (p q^-2 z; p)_oo / (p q^2 z; p)_oo
    sp = SeriesSpace(("p", "z"), (8, 8))
    p, z = sp.gen("p"), sp.gen("z")
    lhs = hyper_1phi0(q ** -4, p, (p * z).scale(q ** 2))
    rhs = poch_infinite((p * z).scale(q ** -2), p) * series_invert(
        poch_infinite((p * z).scale(q ** 2), p))
    assert lhs == rhs
    wrong = hyper_1phi0(q ** -2, p, (p * z).scale(q ** 2))
    assert wrong != rhs
