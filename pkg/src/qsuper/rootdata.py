"""Exact weight-lattice model of the all-fermionic simple root system of sl(n|n)^.

Coordinates are taken over the basis (delta, eps_1..eps_n, del_1..del_n, d);
c is identified with delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from flint import fmpq, fmpq_mat

from .affine import ConfigError
from .report import Residual, VerificationReport, timed


def _vec(dim: int, entries: Dict[int, Fraction]) -> fmpq_mat:
    v = fmpq_mat(dim, 1)
    for i, c in entries.items():
        v[i, 0] = v[i, 0] + fmpq(Fraction(c).numerator, Fraction(c).denominator)
    return v


def _frac(x: fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


@dataclass
class RootDatum:
    n: int
    gram: fmpq_mat
    roots: List[fmpq_mat]          # alpha_0 .. alpha_{2n-1}
    h_ex: fmpq_mat
    d: fmpq_mat
    c: fmpq_mat
    dual: Dict[str, fmpq_mat]      # "ex", "0".."2n-1", "c"

    @property
    def dim(self) -> int:
        return 2 * self.n + 2

    def delta(self) -> fmpq_mat:
        return _vec(self.dim, {0: 1})

    def eps(self, i: int) -> fmpq_mat:
        return _vec(self.dim, {i: 1})

    def dl(self, i: int) -> fmpq_mat:
        return _vec(self.dim, {self.n + i: 1})

    def form(self, a: fmpq_mat, b: fmpq_mat) -> Fraction:
        return _frac((a.transpose() * self.gram * b)[0, 0])

    def cartan_matrix(self) -> List[List[Fraction]]:
        return [[self.form(a, b) for b in self.roots] for a in self.roots]

    def basis(self) -> List[fmpq_mat]:
        """h_ex, h_0 .. h_{2n-1}, d."""
        return [self.h_ex] + list(self.roots) + [self.d]

    def dual_basis(self) -> List[fmpq_mat]:
        """h^ex, h^0 .. h^{2n-1}, c."""
        return [self.dual["ex"]] + [self.dual[str(i)] for i in range(2 * self.n)] + [self.dual["c"]]

    def sum_eps_minus_del(self) -> fmpq_mat:
        return _vec(self.dim, {**{i: 1 for i in range(1, self.n + 1)},
                               **{self.n + i: -1 for i in range(1, self.n + 1)}})

    def to_json(self) -> dict:
        def v(x):
            return [str(_frac(x[i, 0])) for i in range(self.dim)]
        return {"n": self.n, "basis": self.basis_names(), "roots": [v(a) for a in self.roots],
                "h_ex": v(self.h_ex), "cartan_matrix": [[str(c) for c in row] for row in self.cartan_matrix()],
                "dual_basis": [v(x) for x in self.dual_basis()]}

    def basis_names(self) -> List[str]:
        return (["delta"] + [f"eps{i}" for i in range(1, self.n + 1)]
                + [f"del{i}" for i in range(1, self.n + 1)] + ["d"])


def build_root_data(n: int) -> RootDatum:
    if n < 1:
        raise ConfigError("n must be >= 1")
    dim = 2 * n + 2
    gram = fmpq_mat(dim, dim)
    for i in range(1, n + 1):
        gram[i, i] = 1
        gram[n + i, n + i] = -1
    gram[0, dim - 1] = gram[dim - 1, 0] = 1
    E = {i: i for i in range(1, n + 1)}
    D = {i: n + i for i in range(1, n + 1)}
    roots: List[fmpq_mat] = [None] * (2 * n)
    roots[0] = _vec(dim, {0: 1, E[1]: -1, D[n]: 1})
    for j in range(1, n):
        roots[2 * j] = _vec(dim, {D[j]: 1, E[j + 1]: -1})
    for i in range(1, n + 1):
        roots[2 * i - 1] = _vec(dim, {E[i]: 1, D[i]: -1})
    h_ex = _vec(dim, {**{E[i]: 1 for i in range(1, n + 1)}, **{D[i]: 1 for i in range(1, n + 1)}})
    d = _vec(dim, {dim - 1: 1})
    c = _vec(dim, {0: 1})
    s = _vec(dim, {**{E[i]: 1 for i in range(1, n + 1)}, **{D[i]: -1 for i in range(1, n + 1)}})
    dual = {"ex": s * fmpq(1, 2 * n), "c": c}
    for k in range(n):
        part = _vec(dim, {**{E[i]: 1 for i in range(1, k + 1)}, **{D[i]: -1 for i in range(1, k + 1)}})
        dual[str(2 * k)] = d + part - s * fmpq(k, n)
        part = _vec(dim, {**{E[i]: 1 for i in range(1, k + 2)}, **{D[i]: -1 for i in range(1, k + 1)}})
        dual[str(2 * k + 1)] = d + part - s * fmpq(2 * k + 1, 2 * n)
    return RootDatum(n, gram, roots, h_ex, d, c, dual)


def _pairing(rd: RootDatum) -> fmpq_mat:
    B, Dl = rd.basis(), rd.dual_basis()
    m = fmpq_mat(len(B), len(B))
    for i, a in enumerate(B):
        for j, b in enumerate(Dl):
            m[i, j] = (a.transpose() * rd.gram * b)[0, 0]
    return m


def _mat_residual(m: fmpq_mat) -> Residual:
    for i in range(m.nrows()):
        for j in range(m.ncols()):
            if m[i, j] != 0:
                return Residual(False, {"row": i, "col": j, "value": str(_frac(m[i, j]))})
    return Residual(True)


def verify_dual_basis(n: int) -> VerificationReport:
    rep = VerificationReport("root-data")
    rd = build_root_data(n)
    with timed() as t:
        P = _pairing(rd)
        ident = fmpq_mat(P.nrows(), P.ncols(), [1 if i == j else 0 for i in range(P.nrows()) for j in range(P.ncols())])
        res = _mat_residual(P - ident)
    rep.check(f"dual-basis-pairing[n={n}]", res, ms=t["ms"])
    with timed() as t:
        bad = [i for i, a in enumerate(rd.roots) if rd.form(a, a) != 0]
    rep.check(f"isotropic-roots[n={n}]", Residual(not bad, {"roots": bad}), ms=t["ms"])
    with timed() as t:
        C = rd.cartan_matrix()
        asym = [(i, j) for i in range(2 * n) for j in range(2 * n) if C[i][j] != C[j][i]]
    rep.check(f"cartan-symmetric[n={n}]", Residual(not asym, {"pairs": asym}), ms=t["ms"])
    with timed() as t:
        m = 2 * n
        moved = [(i, j) for i in range(m) for j in range(m) if C[i][j] != C[(i + 1) % m][(j + 1) % m]]
        wit = None if not moved else {"pair": list(moved[0]), "before": str(C[moved[0][0]][moved[0][1]]),
                                      "after": str(C[(moved[0][0] + 1) % m][(moved[0][1] + 1) % m])}
    rep.check(f"cartan-cyclic-invariance[n={n}]", Residual(not moved, wit), ms=t["ms"],
              note="" if not moved else "the shift h_i -> h_{i+1} is not an isometry of the form")
    with timed() as t:
        tot = rd.roots[0]
        for a in rd.roots[1:]:
            tot = tot + a
        res = _mat_residual(tot - rd.c)
    rep.check(f"sum-of-simple-roots-is-delta[n={n}]", res, ms=t["ms"])
    return rep


def canonical_element(rd: RootDatum) -> fmpq_mat:
    """T = sum_l h_l (x) h^l as a coefficient matrix over the coordinate basis."""
    T = fmpq_mat(rd.dim, rd.dim)
    for a, b in zip(rd.basis(), rd.dual_basis()):
        T = T + a * b.transpose()
    return T


def tau_on_cartan(n: int, xi=0, rd: RootDatum = None) -> fmpq_mat:
    """Matrix of tau on coordinates: h_i -> h_{i+1}, h_ex -> -h_ex + xi c, d -> tau(h^0)."""
    rd = rd or build_root_data(n)
    xi = Fraction(xi)
    fx = fmpq(xi.numerator, xi.denominator)
    B = rd.basis()
    images = [-rd.h_ex + rd.c * fx]
    images += [rd.roots[(i + 1) % (2 * n)] for i in range(2 * n)]
    images.append(rd.dual["1"] + rd.sum_eps_minus_del() * (fx / (2 * n)) - rd.c * ((fx + n - 1) / (2 * n)))
    Bm = _hstack(B)
    Im = _hstack(images)
    return Im * Bm.inv()


def _hstack(cols: List[fmpq_mat]) -> fmpq_mat:
    m = fmpq_mat(cols[0].nrows(), len(cols))
    for j, v in enumerate(cols):
        for i in range(v.nrows()):
            m[i, j] = v[i, 0]
    return m


def rho_tilde(rd: RootDatum, xi=0) -> fmpq_mat:
    xi = Fraction(xi)
    out = rd.dual["ex"] * fmpq(xi.numerator * rd.n, xi.denominator)
    for i in range(2 * rd.n):
        out = out + rd.dual[str(i)]
    return out


def _cc_scalar(n: int, xi: Fraction) -> Fraction:
    return Fraction(2 * (n * n - 1), 6) - Fraction(3, 6) * xi


def verify_tau_invariants(n: int, xi=0) -> VerificationReport:
    rep = VerificationReport("root-data")
    xi = Fraction(xi)
    fx = fmpq(xi.numerator, xi.denominator)
    rd = build_root_data(n)
    A = tau_on_cartan(n, xi, rd)
    tag = f"n={n},xi={xi}"
    s = rd.sum_eps_minus_del()
    with timed() as t:
        res = _mat_residual(A * rd.dual["ex"] - (-rd.dual["ex"] + rd.c * fmpq(1, 2 * n)))
    rep.check(f"tau-h^ex[{tag}]", res, ms=t["ms"])
    with timed() as t:
        bad = None
        for k in range(n):
            lhs = A * rd.dual[str(2 * k)]
            rhs = (rd.dual[str((2 * k + 1) % (2 * n))] + s * (fx / (2 * n))
                   - rd.c * ((fx + n - 2 * k - 1) / (2 * n)))
            r = _mat_residual(lhs - rhs)
            if not r.is_zero():
                bad = {"k": k, "parity": "even", **r.witness()}
                break
            lhs = A * rd.dual[str(2 * k + 1)]
            rhs = (rd.dual[str((2 * k + 2) % (2 * n))] + s * (fx / (2 * n))
                   - rd.c * (fmpq(n - 2 * k - 1, 2 * n)))
            r = _mat_residual(lhs - rhs)
            if not r.is_zero():
                bad = {"k": k, "parity": "odd", **r.witness()}
                break
    rep.check(f"tau-dual-basis[{tag}]", Residual(bad is None, bad), ms=t["ms"])
    with timed() as t:
        res = _mat_residual(A * rd.c - rd.c)
    rep.check(f"tau-c[{tag}]", res, ms=t["ms"])
    rho = rho_tilde(rd, xi)
    with timed() as t:
        res = _mat_residual(A * rho - rho)
    rep.check(f"tau-rho-tilde[{tag}]", res, ms=t["ms"])
    with timed() as t:
        bad = [i for i, a in enumerate(rd.roots) if rd.form(rho, a) != 1]
    rep.check(f"rho-tilde-principal[{tag}]", Residual(not bad, {"roots": bad}), ms=t["ms"])
    T = canonical_element(rd)
    with timed() as t:
        res = _mat_residual(A * T * A.transpose() - T)
    rep.check(f"tau-tau-T[{tag}]", res, ms=t["ms"])
    with timed() as t:
        P = A ** (2 * n)
        bad = [i for i, h in enumerate(rd.roots) if P * h != h]
    rep.check(f"tau-order-2n[{tag}]", Residual(not bad, {"roots": bad}), ms=t["ms"])
    with timed() as t:
        # T is the inverse Gram matrix in coordinates
        res = _mat_residual(T - rd.gram.inv())
    rep.check(f"T-is-inverse-form[{tag}]", res, ms=t["ms"])
    return rep


def tau_sum(rd: RootDatum, A: fmpq_mat, X: fmpq_mat) -> fmpq_mat:
    """sum_{k=1}^{2n} (tau^k (x) 1) X."""
    out = fmpq_mat(rd.dim, rd.dim)
    Ak = A
    for _ in range(2 * rd.n):
        out = out + Ak * X
        Ak = A * Ak
    return out


def t_tilde(rd: RootDatum, xi=0) -> fmpq_mat:
    xi = Fraction(xi)
    rho = rho_tilde(rd, xi)
    c = rd.c
    sc = _cc_scalar(rd.n, xi)
    M = rho * c.transpose() + c * rho.transpose() - c * c.transpose() * fmpq(sc.numerator, sc.denominator)
    return M * fmpq(1, 2 * rd.n)


def _measured_note(rd: RootDatum, total: fmpq_mat, xi: Fraction) -> str:
    """Report the c (x) c coefficient when the sum has the expected shape."""
    rho = rho_tilde(rd, xi)
    rest = total - rho * rd.c.transpose() - rd.c * rho.transpose()
    others = [(i, j) for i in range(rd.dim) for j in range(rd.dim) if (i, j) != (0, 0) and rest[i, j] != 0]
    if others:
        return "sum is not of the form rho~ (x) c + c (x) rho~ + s c (x) c"
    measured = _frac(rest[0, 0])
    expected = -_cc_scalar(rd.n, xi)
    if measured == expected:
        return ""
    return f"measured c (x) c coefficient {measured}, displayed scalar gives {expected}"


def verify_sum_identity(n: int, xi=0) -> VerificationReport:
    rep = VerificationReport("root-data")
    xi = Fraction(xi)
    rd = build_root_data(n)
    A = tau_on_cartan(n, xi, rd)
    T = canonical_element(rd)
    tag = f"n={n},xi={xi}"
    with timed() as t:
        Tt = t_tilde(rd, xi)
        total = tau_sum(rd, A, T)
        res = _mat_residual(total - Tt * fmpq(2 * n))
    rep.check(f"tau-sum-T[{tag}]", res, ms=t["ms"], note=_measured_note(rd, total, xi))
    with timed() as t:
        res = _mat_residual(tau_sum(rd, A, T - Tt))
    rep.check(f"tau-sum-T-minus-Ttilde[{tag}]", res, ms=t["ms"])
    with timed() as t:
        # an extra c (x) rho~ term must break the identity
        wrong = Tt + rd.c * rho_tilde(rd, xi).transpose() * fmpq(1, 2 * n)
        res = _mat_residual(tau_sum(rd, A, T - wrong))
    rep.check(f"tau-sum-perturbed[{tag}]", res, kind="control", ms=t["ms"])
    return rep


def verify_root_data(ns=(1, 2, 3, 4), xis=(0, 1)) -> VerificationReport:
    rep = VerificationReport("root-data")
    for n in ns:
        rep.extend(verify_dual_basis(n))
        for xi in xis:
            rep.extend(verify_tau_invariants(n, xi))
            rep.extend(verify_sum_identity(n, xi))
    return rep
