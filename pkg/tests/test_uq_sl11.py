from __future__ import annotations

import pytest

from qsuper.pbw import TensorElement as T
from qsuper.quasihopf import (
    AXIOM_IDS, axiom_residual, base_structure, face_twistor_inverse, face_twistor_universal,
    twist_structure, universal_r, verify_base_hopf, verify_dynamical_identities,
    verify_shifted_cocycle, verify_twisted_axioms,
)
from qsuper.ratfunc import RatFunc, symbol

q = symbol("q")
Q = q - q ** -1


def leg(x: T, k: int, n: int) -> T:
    return x.place((k,), n)


def test_odd_generators_are_nilpotent():
    assert T.e() * T.e() == 0
    assert T.f() * T.f() == 0


def test_fe_reorders_with_cartan_term():
    t = T.t()
    kappa = (t - t.inverse()).scale(Q ** -1)
    assert T.f() * T.e() == kappa - T.e() * T.f()


def test_cartan_conjugation():
    t = T.t()
    assert t * T.e() * t.inverse() == T.e()
    tex, tex_inv = T.tex(), T.tex(power=-1)
    assert tex * tex_inv == 1
    assert tex * T.e() * tex_inv == T.e().scale(q ** 2)
    assert tex * T.f() * tex_inv == T.f().scale(q ** -2)


def test_G_exchange_with_e():
    e1 = leg(T.e(), 1, 2)
    u2 = leg(T.t(), 2, 2)
    G = T.G(2, 1, 2)
    assert G * e1 == e1 * u2.inverse() * G


def test_coproduct_of_e_and_unit():
    e1, t1 = leg(T.e(), 1, 2), leg(T.t(), 1, 2)
    e2 = leg(T.e(), 2, 2)
    assert T.e().coproduct() == e1 + t1 * e2
    assert T.one(1).coproduct() == 1


def test_coproduct_of_G_splits():
    G = T.G(2, 1, 2)
    assert G.coproduct(1) == T.G(3, 1, 3) * T.G(3, 2, 3)


def test_counit_and_antipode():
    t = T.t(power=3)
    assert t.counit() == 1
    ef = T.e() * T.f()
    assert ef.antipode() == -(T.f() * T.e())
    for a in (T.e(), T.f(), T.t(), ef):
        assert a.antipode().counit() == a.counit()


def test_universal_r_counit_and_intertwining():
    R = universal_r()
    assert R.counit(1) == 1
    assert R.counit(2) == 1
    for a in (T.e(), T.f(), T.t()):
        assert a.coproduct().flip() * R == R * a.coproduct()


def test_universal_r_coproducts():
    R = universal_r()
    assert R.coproduct(1) == R.place((1, 3), 3) * R.place((2, 3), 3)
    assert R.coproduct(2) == R.place((1, 3), 3) * R.place((1, 2), 3)


def test_face_twistor_counit_and_limit():
    w = RatFunc.const(3)
    F = face_twistor_universal(w)
    assert F.counit(1) == 1 and F.counit(2) == 1
    assert face_twistor_universal(RatFunc.const(0)) == 1


def test_face_twistor_inverse_is_first_order():
    for w in (RatFunc.const(3), None):
        F = face_twistor_universal(w)
        assert F * face_twistor_inverse(w) == 1
        assert F.inverse() == face_twistor_inverse(w)


def test_face_twistor_singular_at_one():
    with pytest.raises(ValueError):
        face_twistor_universal(RatFunc.const(1))


def test_trivial_twist_gives_base_structure():
    S = base_structure()
    assert S.phi == 1 and S.alpha == 1 and S.beta == 1
    assert S.R == universal_r()


def test_twisted_alpha_beta_counit():
    S = twist_structure(face_twistor_universal(), face_twistor_inverse())
    assert (S.alpha.counit() * S.beta.counit()) == 1


def test_hopf_antipode_axiom():
    rep = verify_base_hopf()
    assert rep.passed
    assert any(r.id == "hopf-antipode" for r in rep.records)


def test_twisted_axioms_all_vanish():
    rep = verify_twisted_axioms()
    assert rep.passed
    assert {"pentagon", "quasi-ybe"} <= {r.id for r in rep.records}


def test_shifted_cocycle_and_controls():
    rep = verify_shifted_cocycle()
    assert rep.passed
    kinds = {r.id: r.kind for r in rep.records}
    assert kinds["cocycle"] == "identity"
    assert kinds["cocycle-unshifted"] == "control"
    control = next(r for r in rep.records if r.id == "cocycle-unshifted")
    assert control.witness is not None


def test_dynamical_identities_and_static_control():
    rep = verify_dynamical_identities()
    assert rep.passed
    assert {"dyn-phi", "dyn-dybe", "static-ybe"} <= {r.id for r in rep.records}


def test_unknown_axiom_id():
    with pytest.raises(ValueError):
        axiom_residual("no-such-axiom", base_structure())
    assert "pentagon" in AXIOM_IDS
