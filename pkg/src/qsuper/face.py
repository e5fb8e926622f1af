"""Face-type twistor image F_VV(z; p, w) and the elliptic face R-matrix."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Sequence

from .affine import (ConfigError, K_matrix, pbw_image, q_value, r_matrix_vv)
from .qseries import hyper_1phi0, hyper_2phi1, poch_infinite
from .quasihopf import face_twistor_universal
from .ratfunc import RatFunc, symbol
from .report import VerificationReport, timed
from .series import SeriesSpace, TruncatedSeries, ratfunc_to_series, series_invert
from .superop import SuperOp, embed_on_legs, flip_element


def _w(w):
    if w is None:
        return symbol("w")
    w = w if isinstance(w, RatFunc) else RatFunc.const(Fraction(w))
    if w.is_zero() or (w - 1).is_zero():
        raise ConfigError("the face parameter must avoid w = 0 and w = 1")
    return w


def face_entries(space: SeriesSpace, z, q=None, w=None) -> Dict[str, TruncatedSeries]:
    """The six nonzero entries; `z` is a series (z in the series) or a coefficient value."""
    q = q_value(q)
    w = _w(w)
    p = space.gen("p")
    x = p * z * q ** 2 if isinstance(z, TruncatedSeries) else p.scale(q ** 2 * z)
    one = space.one()
    Q = q - q ** -1
    qm2 = q ** -2
    wi = w ** -1
    phi10 = hyper_1phi0(one.scale(q ** -4), "p", x)
    f11 = hyper_2phi1(w * qm2, qm2, w, "p", x)
    f12 = hyper_2phi1(w * qm2, p.scale(qm2), p.scale(w), "p", x).scale(-w * Q / (1 - w))
    pref = p.scale(wi * Q) * series_invert(one - p.scale(wi))
    pref = pref * z if isinstance(z, TruncatedSeries) else pref.scale(z)
    f21 = pref * hyper_2phi1(p.scale(wi * qm2), p.scale(qm2), (p * p).scale(wi), "p", x)
    f22 = hyper_2phi1(p.scale(wi * qm2), qm2, p.scale(wi), "p", x)
    return {"phi10": phi10, "f11": f11, "f12": f12, "f21": f21, "f22": f22}


def _assemble(ent: Dict[str, TruncatedSeries], space: SeriesSpace) -> SuperOp:
    return SuperOp.from_units({
        ((1, 1), (1, 1)): ent["phi10"],
        ((2, 2), (2, 2)): space.one(),
        ((1, 1), (2, 2)): ent["f11"],
        ((2, 2), (1, 1)): ent["f22"],
        ((1, 2), (2, 1)): ent["f12"],
        ((2, 1), (1, 2)): ent["f21"],
    }, ring=space)


def face_twistor_vv(p_order: int = 6, z_order: int = 6, q=None, w=None) -> SuperOp:
    """F_VV(z; p, w) as a matrix of (p, z)-series."""
    if p_order < 1 or z_order < 1:
        raise ConfigError("truncation orders must be >= 1")
    space = SeriesSpace(["p", "z"], [p_order, z_order])
    return _assemble(face_entries(space, space.gen("z"), q, w), space)


def face_twistor_vv_at(z, p_order: int = 4, q=None, w=None) -> SuperOp:
    """F_VV with z kept in the coefficient field; a p-series only."""
    if p_order < 1:
        raise ConfigError("truncation order must be >= 1")
    space = SeriesSpace(["p"], [p_order])
    z = z if isinstance(z, RatFunc) else RatFunc.const(Fraction(z))
    return _assemble(face_entries(space, z, q, w), space)


def D_w(w=None) -> SuperOp:
    w = _w(w)
    return SuperOp.from_units({((1, 1),): 1, ((2, 2),): w})


def phi10_product(space: SeriesSpace, q=None) -> TruncatedSeries:
    """(p q^-2 z; p)_oo / (p q^2 z; p)_oo."""
    q = q_value(q)
    p, z = space.gen("p"), space.gen("z")
    num = poch_infinite((p * z).scale(q ** -2), "p", p)
    den = poch_infinite((p * z).scale(q ** 2), "p", p)
    return num * series_invert(den)


def verify_phi10_identity(order: int = 8, q=None) -> VerificationReport:
    rep = VerificationReport("qseries-identities")
    q = q_value(q)
    space = SeriesSpace(["p", "z"], [order, order])
    with timed() as t:
        x = (space.gen("p") * space.gen("z")).scale(q ** 2)
        res = hyper_1phi0(space.one().scale(q ** -4), "p", x) - phi10_product(space, q)
    rep.check(f"1phi0-product[N={order}]", res, ms=t["ms"])
    with timed() as t:
        # wrong base in the numerator must break the identity
        num = poch_infinite((space.gen("p") * space.gen("z")).scale(q ** -1), "p", space.gen("p"))
        den = poch_infinite(x, "p", space.gen("p"))
        res = hyper_1phi0(space.one().scale(q ** -4), "p", x) - num * series_invert(den)
    rep.check("1phi0-product-wrong-base", res, kind="control", ms=t["ms"])
    return rep


def face_difference_residual(p_order: int = 6, z_order: int = 6, q=None, w=None) -> SuperOp:
    """F(pz) - Ad(D_w (x) 1)(F(z)) K R_VV(pz)."""
    q = q_value(q)
    F = face_twistor_vv(p_order, z_order, q, w)
    space = SeriesSpace(["p", "z"], [p_order, z_order])
    Fpz = F.map_entries(lambda s: s.substitute_monomial("z", {"p": 1, "z": 1}), space)
    R = r_matrix_vv(None, 1, 1, q)
    Rpz = R.map_entries(lambda v: ratfunc_to_series(v, space).substitute_monomial("z", {"p": 1, "z": 1}), space)
    D = D_w(w)
    D1 = embed_on_legs(D, (1,), 2)
    D1i = embed_on_legs(D.inverse(), (1,), 2)
    K = K_matrix(q).to_series(space)
    rhs = D1.to_series(space) * F * D1i.to_series(space) * K * Rpz
    return Fpz - rhs


def verify_face_difference_eq(p_order: int = 6, z_order: int = 6, q=None, w=None) -> VerificationReport:
    rep = VerificationReport("face-diff-eq")
    with timed() as t:
        res = face_difference_residual(p_order, z_order, q, w)
    rep.check(f"difference-equation[p<={p_order},z<={z_order}]", res, ms=t["ms"])
    with timed() as t:
        # dropping the D_w conjugation breaks it
        qv = q_value(q)
        F = face_twistor_vv(p_order, z_order, qv, w)
        space = SeriesSpace(["p", "z"], [p_order, z_order])
        Fpz = F.map_entries(lambda s: s.substitute_monomial("z", {"p": 1, "z": 1}), space)
        R = r_matrix_vv(None, 1, 1, qv)
        Rpz = R.map_entries(lambda v: ratfunc_to_series(v, space).substitute_monomial("z", {"p": 1, "z": 1}), space)
        res = Fpz - F * K_matrix(qv).to_series(space) * Rpz
    rep.check("difference-equation-without-Dw", res, kind="control", ms=t["ms"])
    return rep


def verify_face_initial(p_order: int = 6, z_order: int = 6, q=None, w=None) -> VerificationReport:
    rep = VerificationReport("face-initial")
    qv = q_value(q)
    with timed() as t:
        F = face_twistor_vv(p_order, z_order, qv, w)
        F0 = F.map_entries(lambda s: s.evaluate_var("z", 0).evaluate_var("p", 0)
                           .constant_term(), None)
        univ = pbw_image(face_twistor_universal(), 1, 0, qv, _w(w))
        res = F0 - univ
    rep.check("initial-condition", res, ms=t["ms"])
    with timed() as t:
        # the whole z = 0 layer is p-independent
        Fz0 = F.map_entries(lambda s: s.evaluate_var("z", 0), None)
        res = Fz0 - univ.to_series(SeriesSpace(["p"], [p_order]))
    rep.check("initial-condition-all-p", res, ms=t["ms"])
    return rep


def elliptic_face_r(z, p_order: int = 4, q=None, w=None, flip: SuperOp = None) -> SuperOp:
    """R(z, lambda) = F(z^-1)^T R_VV(z) F(z)^-1 as a p-series with z in the coefficients."""
    qv = q_value(q)
    z = z if isinstance(z, RatFunc) else RatFunc.const(Fraction(z))
    F = face_twistor_vv_at(z, p_order, qv, w)
    Finv_arg = face_twistor_vv_at(z ** -1, p_order, qv, w)
    space = F.ring
    FT = flip_element(Finv_arg, flip.to_series(space) if flip is not None else None)
    R = r_matrix_vv(z, 1, 1, qv).to_series(space)
    return FT * R * F.inverse()


def face_dybe_residual(zs: Sequence, p_order: int = 4, q=None, w=None, shift: bool = True) -> SuperOp:
    qv = q_value(q)
    w = _w(w)
    z1, z2, z3 = (RatFunc.const(Fraction(x)) if not isinstance(x, RatFunc) else x for x in zs)
    ws = w * qv ** 2 if shift else w
    cache = {}

    def R(i, j, zij, wv):
        key = (i, j, wv is ws)
        if key not in cache:
            cache[key] = embed_on_legs(elliptic_face_r(zij, p_order, qv, wv), (i, j), 3)
        return cache[key]

    lhs = R(1, 2, z1 / z2, ws) * R(1, 3, z1 / z3, w) * R(2, 3, z2 / z3, ws)
    rhs = R(2, 3, z2 / z3, w) * R(1, 3, z1 / z3, ws) * R(1, 2, z1 / z2, w)
    return lhs - rhs


def verify_face_dynamical_ybe(p_order: int = 4, samples=((2, 3, 5),), q=None, w=None) -> VerificationReport:
    rep = VerificationReport("face-dybe")
    for zs in samples:
        tag = ",".join(str(Fraction(x)) for x in zs)
        with timed() as t:
            res = face_dybe_residual(zs, p_order, q, w, True)
        rep.check(f"dynamical-ybe[z={tag};p<={p_order}]", res, ms=t["ms"])
    zs = samples[0]
    with timed() as t:
        res = face_dybe_residual(zs, p_order, q, w, False)
    rep.check("static-ybe", res, kind="control", ms=t["ms"], note="shift w -> w q^2 switched off")
    return rep
