"""Two-dimensional evaluation representation of U_q[sl(1|1)^] and its R-matrix.

Level zero throughout (c = 0).  theta is an integer so q^{n theta} stays in
Q(q); for theta != 1 the factor sqrt([theta]_q) is an adjoined symbol s with
s^2 = [theta]_q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

from .ratfunc import QF, RatFunc, qint, symbol
from .report import VerificationReport, timed
from .series import SeriesSpace, TruncatedSeries, ratfunc_to_series, series_exp
from .sqrtext import SqrtRing
from .superop import V, SuperOp, embed_on_legs, graded_commutator, super_kron, ungraded_flip

U = SuperOp.unit


class ConfigError(ValueError):
    pass


def q_value(q=None) -> RatFunc:
    """Symbolic q by default; exact rational samples are checked for degeneracy."""
    if q is None:
        return symbol("q")
    if isinstance(q, RatFunc):
        return q
    v = Fraction(q)
    if v in (0, 1, -1):
        raise ConfigError(f"q = {v} is degenerate")
    return RatFunc.const(v)


@dataclass
class EvalRepConfig:
    theta: int = 1
    c0: int = 0
    cn: Fraction = Fraction(0)
    z: object = None           # spectral parameter; symbol z by default
    sqrt_symbol: str = "s"
    q: object = None

    def __post_init__(self):
        if int(self.theta) != self.theta or self.theta == 0:
            raise ConfigError("theta must be a nonzero integer")
        self.theta = int(self.theta)
        self.cn = Fraction(self.cn)


def sqrt_ring(thetas: Dict[str, int], q=None):
    """Ring carrying sqrt([theta]_q) for each named theta != 1.

    Returns (ring, {name: value}) where value is 1 when theta = 1.
    """
    qq = q_value(q)
    rules = {name: qint(th, qq) for name, th in thetas.items() if th != 1}
    if not rules:
        return QF, {name: RatFunc.const(1) for name in thetas}
    ring = SqrtRing(rules)
    vals = {name: (ring.root(name) if th != 1 else ring.one()) for name, th in thetas.items()}
    return ring, vals


def _identity(ring=QF) -> SuperOp:
    return SuperOp.identity((V,), ring)


def _z(cfg: EvalRepConfig):
    return symbol("z") if cfg.z is None else (cfg.z if isinstance(cfg.z, RatFunc) else RatFunc.const(cfg.z))


def eval_rep_chevalley(cfg: EvalRepConfig = None) -> Dict[str, SuperOp]:
    """Images of e_i, f_i and of the Cartan elements h_i, h_ex as matrices."""
    cfg = cfg or EvalRepConfig()
    q = q_value(cfg.q)
    ring, vals = sqrt_ring({cfg.sqrt_symbol: cfg.theta}, q)
    s = vals[cfg.sqrt_symbol]
    z = _z(cfg)
    I = _identity(ring)
    return {
        "e1": U(1, 2, V, s, ring),
        "f1": U(2, 1, V, s, ring),
        "h1": I.scale(RatFunc.const(cfg.theta)),
        "hex": U(1, 1, V, 2, ring) + I.scale(RatFunc.const(cfg.c0)),
        "e0": U(2, 1, V, s * z, ring),
        "f0": U(1, 2, V, -(s * z ** -1), ring),
        "h0": I.scale(RatFunc.const(-cfg.theta)),
    }


def eval_rep_drinfeld(n: int, cfg: EvalRepConfig = None) -> Dict[str, SuperOp]:
    """Images of X^+_n, X^-_n, H_n, H^ex_n (H_0 = theta I, H^ex_0 = h_ex)."""
    cfg = cfg or EvalRepConfig()
    q = q_value(cfg.q)
    ring, vals = sqrt_ring({cfg.sqrt_symbol: cfg.theta}, q)
    s = vals[cfg.sqrt_symbol]
    z = _z(cfg)
    th = cfg.theta
    I = _identity(ring)
    zn = z ** n
    out = {
        "X+": U(1, 2, V, s * zn * q ** (n * th), ring),
        "X-": U(2, 1, V, s * zn * q ** (n * th), ring),
    }
    if n == 0:
        out["H"] = I.scale(RatFunc.const(th))
        out["Hex"] = U(1, 1, V, 2, ring) + I.scale(RatFunc.const(cfg.c0))
    else:
        out["H"] = I.scale(zn * qint(n * th, q) / n)
        out["Hex"] = U(1, 1, V, zn * qint(2 * n, q) / n * q ** (n * th), ring) + I.scale(zn * RatFunc.const(cfg.cn))
    return out


def q_power_diag(H: SuperOp, q, sign: int = 1) -> SuperOp:
    """q^{sign H} for a diagonal one-leg matrix with integer entries."""
    out = {}
    for i in range(H.size):
        v = H.get(i, i)
        if hasattr(v, "rules"):
            v = v.parts.get(frozenset(), RatFunc.const(0))
        k = v.to_fraction() if isinstance(v, RatFunc) else Fraction(v)
        if k.denominator != 1:
            raise ConfigError("non-integral Cartan eigenvalue in q-power")
        out[(i, i)] = H.ring.scalar(q ** (sign * int(k)))
    return SuperOp(H.spaces, out, H.ring)


def _psi(cfg: EvalRepConfig, order: int, sign: int) -> TruncatedSeries:
    """sum_k psi^{+}_k x^k (sign=+1) or sum_k psi^-_{-k} x^k (sign=-1) as scalars."""
    q = q_value(cfg.q)
    z = _z(cfg)
    th = cfg.theta
    sp = SeriesSpace(["x"], [order])
    g = sp.zero()
    for n in range(1, order + 1):
        hn = (z ** (sign * n)) * qint(n * th, q) / n     # H_{sign n} eigenvalue
        g = g + sp.monomial({"x": n}, hn * (q - q ** -1) * sign)
    return series_exp(g).scale(q ** (sign * th))


def verify_drinfeld_relations(N_modes: int = 4, cfg: EvalRepConfig = None) -> VerificationReport:
    cfg = cfg or EvalRepConfig()
    if N_modes < 1:
        raise ConfigError("N_modes must be >= 1")
    q = q_value(cfg.q)
    rep = VerificationReport("drinfeld")
    modes = range(-N_modes, N_modes + 1)
    img = {n: eval_rep_drinfeld(n, cfg) for n in range(-2 * N_modes, 2 * N_modes + 1)}
    ring = img[0]["H"].ring
    I = _identity(ring)
    zero = SuperOp.zero((V,), ring)
    Qi = (q - q ** -1) ** -1

    def acc(pairs):
        total = zero
        for x in pairs:
            total = total + x
        return total

    with timed() as t:
        res = acc(graded_commutator(img[n]["H"], img[m]["H"]) + graded_commutator(img[n]["Hex"], img[m]["Hex"])
                  + graded_commutator(img[n]["H"], img[m]["Hex"])
                  for n in modes for m in modes)
    rep.check("cartan-commute", res, ms=t["ms"])
    with timed() as t:
        res = acc(graded_commutator(img[n]["H"], img[m][x]) for n in modes for m in modes for x in ("X+", "X-"))
    rep.check("h-x-commute", res, ms=t["ms"])
    with timed() as t:
        res = acc(graded_commutator(img[n][x], img[m][x]) for n in modes for m in modes for x in ("X+", "X-"))
    rep.check("x-x-anticommute", res, ms=t["ms"])
    with timed() as t:
        K = q_power_diag(img[0]["Hex"], q)
        Ki = q_power_diag(img[0]["Hex"], q, -1)
        res = acc(K * img[n]["X+"] * Ki - img[n]["X+"].scale(q ** 2)
                  + K * img[n]["X-"] * Ki - img[n]["X-"].scale(q ** -2) for n in modes)
    rep.check("hex0-conjugation", res, ms=t["ms"])
    with timed() as t:
        terms = []
        for n in modes:
            if n == 0:
                continue
            for m in modes:
                coef = qint(2 * n, q) / n
                terms.append(graded_commutator(img[n]["Hex"], img[m]["X+"]) - img[n + m]["X+"].scale(coef))
                terms.append(graded_commutator(img[n]["Hex"], img[m]["X-"]) + img[n + m]["X-"].scale(coef))
        res = acc(terms)
    rep.check("hex-x", res, ms=t["ms"])
    with timed() as t:
        order = 2 * N_modes
        pp, pm = _psi(cfg, order, 1), _psi(cfg, order, -1)
        terms = []
        for n in modes:
            for m in modes:
                k = n + m
                psi_p = pp.coefficient((k,)) if k >= 0 else RatFunc.const(0)
                psi_m = pm.coefficient((-k,)) if k <= 0 else RatFunc.const(0)
                rhs = I.scale((psi_p - psi_m) * Qi)
                terms.append(graded_commutator(img[n]["X+"], img[m]["X-"]) - rhs)
        res = acc(terms)
    rep.check("x-plus-x-minus", res, ms=t["ms"])
    with timed() as t:
        ch = eval_rep_chevalley(cfg)
        res = (ch["e1"] - img[0]["X+"]) + (ch["f1"] - img[0]["X-"]) + (ch["h1"] - img[0]["H"]) \
            + (ch["hex"] - img[0]["Hex"]) + (ch["h1"] + ch["h0"]) \
            + (ch["e0"] - img[1]["X-"] * q_power_diag(img[0]["H"], q, -1)) \
            + (ch["f0"] + q_power_diag(img[0]["H"], q) * img[-1]["X+"])
    rep.check("chevalley-drinfeld", res, ms=t["ms"])
    return rep


# -- R-matrices ------------------------------------------------------------

def r_matrix_vv(z=None, theta: int = 1, theta_p: int = 1, q=None, ring=None,
                s=None, s_p=None) -> SuperOp:
    """The six-term closed form R_VV(z; theta, theta')."""
    q = q_value(q)
    z = symbol("z") if z is None else (z if isinstance(z, RatFunc) else RatFunc.const(z))
    if ring is None:
        ring, vals = sqrt_ring({"s": theta, "s'": theta_p}, q)
        s, s_p = vals["s"], vals["s'"]
    a, b = q ** -theta, q ** -theta_p
    D = 1 - z * a * b
    if D.is_zero():
        raise ConfigError("R_VV evaluated at its pole")
    Q = q - q ** -1
    terms = {
        ((1, 1), (1, 1)): (a * b - z) / D,
        ((2, 2), (2, 2)): RatFunc.const(1),
        ((1, 1), (2, 2)): (b - z * a) / D,
        ((2, 2), (1, 1)): (a - z * b) / D,
        ((1, 2), (2, 1)): ring.scalar(s * s_p) * (a * Q / D),
        ((2, 1), (1, 2)): ring.scalar(s * s_p) * (-(b * z * Q) / D),
    }
    return SuperOp.from_units({k: ring.scalar(v) for k, v in terms.items()}, ring=ring)


def q_minus_T_image(theta: int = 1, theta_p: int = 1, c0: int = 0, q=None, ring=QF) -> SuperOp:
    """(pi_theta (x) pi_theta') q^{-T} at level zero."""
    q = q_value(q)
    out = {}
    for i in range(2):
        for j in range(2):
            e2 = -2 * theta * (1 if j == 0 else 0) - 2 * theta_p * (1 if i == 0 else 0) - c0 * (theta + theta_p)
            if e2 % 2:
                raise ConfigError("c0 (theta + theta') must be even")
            out[(2 * i + j, 2 * i + j)] = ring.scalar(q ** (e2 // 2))
    return SuperOp((V, V), out, ring)


def K_matrix(q=None, ring=QF) -> SuperOp:
    """K = (pi (x) pi) q^{T} at theta = theta' = 1, c0 = 0."""
    return q_minus_T_image(1, 1, 0, q, ring).inverse()


def r_from_universal(N_z: int = 8, theta: int = 1, theta_p: int = 1, c0: int = 0,
                     cn: Fraction = Fraction(0), q=None) -> SuperOp:
    """Image of R^< R^0 R^> q^{-T} as a series in z = z_1/z_2 up to z^N_z."""
    q = q_value(q)
    ring_s, vals = sqrt_ring({"s": theta, "s'": theta_p}, q)
    ss = vals["s"] * vals["s'"]
    space = SeriesSpace(["z"], [N_z])
    z = space.gen("z")
    Q = q - q ** -1
    one = SuperOp.identity((V, V), space)
    e12_21 = SuperOp.from_units({((1, 2), (2, 1)): 1}).to_series(space)
    e21_12 = SuperOp.from_units({((2, 1), (1, 2)): 1}).to_series(space)
    # R^<: ordered product over n >= 0 of exp(Q X+_n (x) X-_{-n}); each exponent squares to 0
    R_lt = one
    for n in range(N_z + 1):
        c = z ** n * (Q * q ** (n * (theta - theta_p)))
        R_lt = R_lt * (one + e12_21.scale(c).scale(ss))
    # R^0: diagonal exponential
    g = {}
    for i in range(2):
        for j in range(2):
            acc = space.zero()
            for n in range(1, N_z + 1):
                # H_n (x) H^ex_{-n} + H^ex_n (x) H_{-n}, weighted by -Q n/[2n]
                h1 = qint(n * theta, q) / n
                h2 = qint(n * theta_p, q) / n
                hex2 = qint(-2 * n, q) / (-n) * q ** (-n * theta_p) * (1 if j == 0 else 0) + RatFunc.const(cn)
                hex1 = qint(2 * n, q) / n * q ** (n * theta) * (1 if i == 0 else 0) + RatFunc.const(cn)
                val = h1 * hex2 + hex1 * h2
                acc = acc + space.monomial({"z": n}, -Q * n / qint(2 * n, q) * val)
            g[(2 * i + j, 2 * i + j)] = series_exp(acc)
    R_0 = SuperOp((V, V), g, space)
    # R^>: reverse-ordered product over n >= 0
    R_gt = one
    for n in range(N_z + 1):
        c = z ** (n + 1) * (-Q * q ** (n * (theta - theta_p)))
        R_gt = (one + e21_12.scale(c).scale(ss)) * R_gt
    qT = q_minus_T_image(theta, theta_p, c0, q).to_series(space)
    return R_lt * R_0 * R_gt * qT


def closed_form_series(N_z: int = 8, theta: int = 1, theta_p: int = 1, q=None) -> SuperOp:
    q = q_value(q)
    space = SeriesSpace(["z"], [N_z])
    ring_s, vals = sqrt_ring({"s": theta, "s'": theta_p}, q)
    ss = vals["s"] * vals["s'"]
    R = r_matrix_vv(None, theta, theta_p, q, ring=QF, s=RatFunc.const(1), s_p=RatFunc.const(1))
    out = {}
    for (i, j), v in R.entries.items():
        ser = ratfunc_to_series(v, space)
        # odd-odd entries carry sqrt([theta][theta'])
        if _is_odd_odd(R, i, j):
            ser = ser.scale(ss)
        out[(i, j)] = ser
    return SuperOp((V, V), out, space)


def _is_odd_odd(R: SuperOp, i: int, j: int) -> bool:
    ri, rj = R.digits(i), R.digits(j)
    return ri[0] != rj[0]


def verify_r_universal_vs_closed(N_z: int = 8, theta: int = 1, theta_p: int = 1, q=None) -> VerificationReport:
    rep = VerificationReport("r-universal-vs-closed")
    with timed() as t:
        res = r_from_universal(N_z, theta, theta_p, q=q) - closed_form_series(N_z, theta, theta_p, q)
    rep.check(f"product-vs-closed[theta={theta},{theta_p};N={N_z}]", res, ms=t["ms"])
    with timed() as t:
        K = K_matrix(q)
        res = q_minus_T_image(1, 1, 0, q) * K - SuperOp.identity((V, V))
    rep.check("q^-T-image-is-K-inverse", res, ms=t["ms"])
    return rep


def verify_graded_ybe(z1, z2, z3, th1: int = 1, th2: int = 1, th3: int = 1, q=None,
                      flip: str = "graded") -> SuperOp:
    """R12(z1/z2) R13(z1/z3) R23(z2/z3) - R23 R13 R12.

    flip "graded" embeds R13 directly; "ungraded" builds it as P23 R12 P23
    with the ungraded flip, a deliberately broken variant.
    """
    q = q_value(q)
    ring, vals = sqrt_ring({"s1": th1, "s2": th2, "s3": th3}, q)
    z1, z2, z3 = (RatFunc.const(Fraction(x)) if not isinstance(x, RatFunc) else x for x in (z1, z2, z3))
    th = {1: th1, 2: th2, 3: th3}
    sv = {1: vals["s1"], 2: vals["s2"], 3: vals["s3"]}
    zz = {1: z1, 2: z2, 3: z3}

    def M(i, j):
        return r_matrix_vv(zz[i] / zz[j], th[i], th[j], q, ring=ring, s=sv[i], s_p=sv[j])

    R12 = embed_on_legs(M(1, 2), (1, 2), 3)
    R23 = embed_on_legs(M(2, 3), (2, 3), 3)
    if flip == "graded":
        R13 = embed_on_legs(M(1, 3), (1, 3), 3)
    elif flip == "ungraded":
        P = embed_on_legs(ungraded_flip(V, ring), (2, 3), 3)
        R13 = P * embed_on_legs(M(1, 3), (1, 2), 3) * P
    else:
        raise ConfigError(f"unknown flip {flip!r}")
    return R12 * R13 * R23 - R23 * R13 * R12


def pbw_image(x, theta: int = 1, c0: int = 0, q=None, w=None) -> SuperOp:
    """(pi_theta)^{(x) n} of a PBW tensor element.

    u_k -> q^theta; the dynamical symbol W -> w q^{-2 theta} so that
    W u_1^2 maps to the face parameter w.
    """
    from .pbw import u_name
    qq = q_value(q)
    w = symbol("w") if w is None else w
    n = x.n
    mapping = {u_name(k): qq ** theta for k in range(1, n + 1)}
    mapping["W"] = w * qq ** (-2 * theta)
    e, f = U(1, 2), U(2, 1)
    tex_diag = {0: qq ** (2 + c0), 1: qq ** c0}
    out = SuperOp.zero((V,) * n)
    for (monos, g), c in x.terms.items():
        term = None
        for (m, a, b) in monos:
            op = SuperOp((V,), {(0, 0): tex_diag[0] ** m, (1, 1): tex_diag[1] ** m})
            if a:
                op = op * e
            if b:
                op = op * f
            term = op if term is None else super_kron(term, op)
        if term is None:
            term = SuperOp.identity(())
        for (k, l), power in g:
            G = embed_on_legs(q_minus_T_image(theta, theta, c0, qq), (k, l), n)
            term = term * (G ** power)
        out = out + term.scale(c.subs(mapping))
    return out
