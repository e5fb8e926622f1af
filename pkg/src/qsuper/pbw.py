"""PBW normal forms for U_q[sl(1|1)] and its graded tensor powers.

Presentation: e^2 = f^2 = 0, ef + fe = (t - t^-1)/(q - q^-1), t = q^h central,
t_ex e = q^2 e t_ex, t_ex f = q^-2 f t_ex.

A term of an n-leg element is

    coeff * (t_ex^{m_1} e^{a_1} f^{b_1}) (x) ... (x) (t_ex^{m_n} e^{a_n} f^{b_n}) * prod G_kl^{g_kl}

where the central t of leg k lives in the coefficient as the symbol u_k and
G_kl stands for q^{-T_kl}, T = (h (x) h_ex + h_ex (x) h)/2, always kept to the
right of the leg monomials.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .budget import check_terms
from .ratfunc import RatFunc, symbol

Mono = Tuple[int, int, int]                 # (m, a, b) = t_ex^m e^a f^b
GKey = Tuple[Tuple[Tuple[int, int], int], ...]
Key = Tuple[Tuple[Mono, ...], GKey]

MAX_LEGS = 5
ONE_MONO: Mono = (0, 0, 0)


class PBWError(ValueError):
    pass


def u_name(k: int) -> str:
    return f"u{k}"


@lru_cache(maxsize=None)
def _q() -> RatFunc:
    return symbol("q")


@lru_cache(maxsize=None)
def _Q() -> RatFunc:
    q = _q()
    return q - q ** -1


@lru_cache(maxsize=None)
def _kappa(leg: int) -> RatFunc:
    """(t - t^-1)/(q - q^-1) for the t of the given leg."""
    u = symbol(u_name(leg))
    return (u - u ** -1) / _Q()


@lru_cache(maxsize=None)
def _qpow(n: int) -> RatFunc:
    return _q() ** n


@lru_cache(maxsize=None)
def _umono(items: Tuple[Tuple[int, int], ...]) -> RatFunc:
    return RatFunc.monomial({u_name(k): e for k, e in items})


# e^a f^b * e^c f^d in the basis {1, e, f, ef}: list of (sign, uses_kappa, (a, b))
_EF_TABLE: Dict[Tuple[Tuple[int, int], Tuple[int, int]], List[Tuple[int, bool, Tuple[int, int]]]] = {}
for _x in ((0, 0), (1, 0), (0, 1), (1, 1)):
    _EF_TABLE[((0, 0), _x)] = [(1, False, _x)]
    _EF_TABLE[(_x, (0, 0))] = [(1, False, _x)]
_EF_TABLE.update({
    ((1, 0), (1, 0)): [],
    ((1, 0), (0, 1)): [(1, False, (1, 1))],
    ((1, 0), (1, 1)): [],
    ((0, 1), (1, 0)): [(1, True, (0, 0)), (-1, False, (1, 1))],
    ((0, 1), (0, 1)): [],
    ((0, 1), (1, 1)): [(1, True, (0, 1))],
    ((1, 1), (1, 0)): [(1, True, (1, 0))],
    ((1, 1), (0, 1)): [],
    ((1, 1), (1, 1)): [(1, True, (1, 1))],
})


def _mono_parity(m: Mono) -> int:
    return (m[1] + m[2]) & 1


def leg_product(x: Mono, y: Mono, leg: int) -> List[Tuple[RatFunc, Mono]]:
    """Product of two single-leg monomials, leg fixes which u carries t."""
    m1, a1, b1 = x
    m2, a2, b2 = y
    pre = None
    if m2 and (b1 - a1):
        pre = _qpow(2 * m2 * (b1 - a1))
    out = []
    for sign, uses_k, (a, b) in _EF_TABLE[((a1, b1), (a2, b2))]:
        c = _kappa(leg) if uses_k else RatFunc.const(1)
        if sign < 0:
            c = -c
        if pre is not None:
            c = c * pre
        out.append((c, (m1 + m2, a, b)))
    return out


def _merge_g(g1: GKey, g2: GKey) -> GKey:
    if not g1:
        return g2
    if not g2:
        return g1
    acc = dict(g1)
    for k, e in g2:
        acc[k] = acc.get(k, 0) + e
    return tuple(sorted((k, e) for k, e in acc.items() if e))


class TensorElement:
    """Element of U^{(x) n} in PBW normal form."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Key, RatFunc] = None):
        if not 0 <= n <= MAX_LEGS:
            raise PBWError(f"between 0 and {MAX_LEGS} legs are supported, got {n}")
        self.n = n
        self.terms: Dict[Key, RatFunc] = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    # -- constructors --------------------------------------------------
    @classmethod
    def scalar(cls, n: int, c) -> "TensorElement":
        return cls(n, {((ONE_MONO,) * n, ()): RatFunc.const(c)})

    @classmethod
    def one(cls, n: int) -> "TensorElement":
        return cls.scalar(n, 1)

    @classmethod
    def zero(cls, n: int) -> "TensorElement":
        return cls(n, {})

    @classmethod
    def mono(cls, n: int, monos: Mapping[int, Mono], coeff=1, g: Mapping[Tuple[int, int], int] = None) -> "TensorElement":
        """coeff * (monos on the given 1-based legs) * prod G."""
        legs = [ONE_MONO] * n
        for k, m in monos.items():
            legs[k - 1] = tuple(m)
        gk = tuple(sorted(((min(a, b), max(a, b)), e) for (a, b), e in (g or {}).items() if e))
        return cls(n, {(tuple(legs), gk): RatFunc.const(coeff)})

    @classmethod
    def e(cls, n: int = 1, leg: int = 1) -> "TensorElement":
        return cls.mono(n, {leg: (0, 1, 0)})

    @classmethod
    def f(cls, n: int = 1, leg: int = 1) -> "TensorElement":
        return cls.mono(n, {leg: (0, 0, 1)})

    @classmethod
    def t(cls, n: int = 1, leg: int = 1, power: int = 1) -> "TensorElement":
        return cls.scalar(n, symbol(u_name(leg)) ** power)

    @classmethod
    def tex(cls, n: int = 1, leg: int = 1, power: int = 1) -> "TensorElement":
        return cls.mono(n, {leg: (power, 0, 0)})

    @classmethod
    def G(cls, n: int, k: int, l: int, power: int = 1) -> "TensorElement":
        if k == l:
            raise PBWError("G needs two distinct legs")
        return cls.mono(n, {}, 1, {(k, l): power})

    # -- linear structure ---------------------------------------------
    def _check(self, other: "TensorElement"):
        if self.n != other.n:
            raise PBWError(f"leg mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            other = TensorElement.scalar(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return TensorElement(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            other = TensorElement.scalar(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TensorElement":
        c = RatFunc.const(c) if not isinstance(c, RatFunc) else c
        if c.is_zero():
            return TensorElement(self.n, {})
        return TensorElement(self.n, {k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            other = TensorElement.scalar(self.n, other)
        return self.n == other.n and (self - other).is_zero()

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    # -- product -------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        self._check(other)
        n = self.n
        acc: Dict[Key, RatFunc] = {}
        for (m1, g1), c1 in self.terms.items():
            p1 = [_mono_parity(x) for x in m1]
            for (m2, g2), c2 in other.terms.items():
                coef = c1 * c2
                if g1:
                    # move G's of the left factor right across the right monomials
                    ex = defaultdict(int)
                    for (a, b), g in g1:
                        _, ea, fb = m2[a - 1]
                        if fb - ea:
                            ex[b] += g * (fb - ea)
                        _, ea, fb = m2[b - 1]
                        if fb - ea:
                            ex[a] += g * (fb - ea)
                    items = tuple(sorted((k, e) for k, e in ex.items() if e))
                    if items:
                        coef = coef * _umono(items)
                # Koszul sign: sum over i > j of [x_i][y_j]
                s = 0
                ys = 0
                for i in range(n):
                    if p1[i]:
                        s += ys
                    ys += _mono_parity(m2[i])
                if s & 1:
                    coef = -coef
                g = _merge_g(g1, g2)
                partial: List[Tuple[RatFunc, Tuple[Mono, ...]]] = [(coef, ())]
                for i in range(n):
                    prods = leg_product(m1[i], m2[i], i + 1)
                    if not prods:
                        partial = []
                        break
                    if len(prods) == 1:
                        c, mm = prods[0]
                        partial = [(pc * c if not c.is_one() else pc, pm + (mm,)) for pc, pm in partial]
                    else:
                        partial = [(pc * c, pm + (mm,)) for pc, pm in partial for c, mm in prods]
                for pc, pm in partial:
                    key = (pm, g)
                    if key in acc:
                        v = acc[key] + pc
                        if v.is_zero():
                            del acc[key]
                        else:
                            acc[key] = v
                    else:
                        acc[key] = pc
        check_terms(len(acc))
        return TensorElement(n, acc)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k: int) -> "TensorElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = TensorElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self, max_steps: int = 64) -> "TensorElement":
        """Inverse of Y * G0 with Y = c (1 + N), N nilpotent."""
        if not self.terms:
            raise PBWError("zero is not invertible")
        gs = {g for (_, g) in self.terms}
        if len(gs) != 1:
            raise PBWError("inverse needs a common Cartan exponential factor")
        g0, = gs
        Y = TensorElement(self.n, {(m, ()): c for (m, _), c in self.terms.items()})
        c0 = Y.terms.get(((ONE_MONO,) * self.n, ()))
        if c0 is None:
            raise PBWError("element has no invertible scalar part")
        N = Y.scale(c0.inverse()) - 1
        inv = TensorElement.one(self.n)
        term = TensorElement.one(self.n)
        for _ in range(max_steps):
            term = -(term * N)
            if term.is_zero():
                break
            inv = inv + term
        else:
            raise PBWError("Neumann series did not terminate")
        inv = inv.scale(c0.inverse())
        if not g0:
            return inv
        ginv = TensorElement(self.n, {((ONE_MONO,) * self.n, tuple((k, -e) for k, e in g0)): RatFunc.const(1)})
        return ginv * inv

    # -- coefficient maps ----------------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "TensorElement":
        out: Dict[Key, RatFunc] = {}
        for k, v in self.terms.items():
            nv = v.subs(mapping)
            out[k] = out[k] + nv if k in out else nv
        return TensorElement(self.n, out)

    def shift(self, name: str, leg: int, power: int = 2) -> "TensorElement":
        """Dynamical shift name -> name * u_leg^power."""
        return self.subs({name: symbol(name) * symbol(u_name(leg)) ** power})

    # -- leg placement -------------------------------------------------
    def place(self, legs: Sequence[int], n: int) -> "TensorElement":
        """Put original leg i on target leg legs[i] of an n-leg element.

        Unused target legs carry 1.  Odd factors moved past each other pick
        up the Koszul sign; leg-tied symbols u_i are renamed accordingly.
        """
        legs = tuple(legs)
        if len(legs) != self.n or len(set(legs)) != self.n or (legs and (min(legs) < 1 or max(legs) > n)):
            raise PBWError(f"invalid placement {legs} of {self.n} legs into {n}")
        ren = {u_name(i + 1): symbol(u_name(L)) for i, L in enumerate(legs) if i + 1 != L}
        out: Dict[Key, RatFunc] = {}
        for (monos, g), c in self.terms.items():
            new = [ONE_MONO] * n
            odd = []
            for i, m in enumerate(monos):
                new[legs[i] - 1] = m
                if _mono_parity(m):
                    odd.append(legs[i])
            inv = sum(1 for x in range(len(odd)) for y in range(x + 1, len(odd)) if odd[x] > odd[y])
            ng = tuple(sorted(((min(legs[a - 1], legs[b - 1]), max(legs[a - 1], legs[b - 1])), e)
                              for (a, b), e in g))
            nc = c.subs(ren) if ren else c
            if inv & 1:
                nc = -nc
            key = (tuple(new), ng)
            out[key] = out[key] + nc if key in out else nc
        return TensorElement(n, out)

    def perm(self, *order: int) -> "TensorElement":
        """X_{abc...}: leg r of the result holds original factor order[r]."""
        legs = [0] * self.n
        for r, src in enumerate(order):
            legs[src - 1] = r + 1
        return self.place(legs, self.n)

    def flip(self) -> "TensorElement":
        if self.n != 2:
            raise PBWError("flip needs two legs")
        return self.perm(2, 1)

    # -- Hopf maps on one leg ------------------------------------------
    def coproduct(self, leg: int = 1) -> "TensorElement":
        """Apply Delta on the given leg; the result has n+1 legs."""
        n, k = self.n, leg
        if not 1 <= k <= n:
            raise PBWError(f"no leg {k} in a {n}-leg element")
        ren = {u_name(j): symbol(u_name(j + 1)) for j in range(k + 1, n + 1)}
        ren[u_name(k)] = symbol(u_name(k)) * symbol(u_name(k + 1))
        out: Dict[Key, RatFunc] = {}
        for (monos, g), c in self.terms.items():
            nc = c.subs(ren)
            ng_acc: Dict[Tuple[int, int], int] = {}
            for (a, b), e in g:
                for na in _split(a, k):
                    for nb in _split(b, k):
                        kk = (min(na, nb), max(na, nb))
                        ng_acc[kk] = ng_acc.get(kk, 0) + e
            ng = tuple(sorted((kk, e) for kk, e in ng_acc.items() if e))
            for dc, (y1, y2) in _delta_mono(monos[k - 1], k):
                new = monos[:k - 1] + (y1, y2) + monos[k:]
                key = (new, ng)
                v = nc * dc
                out[key] = out[key] + v if key in out else v
        return TensorElement(n + 1, out)

    def counit(self, leg: int = 1) -> "TensorElement":
        n, k = self.n, leg
        ren = {u_name(j): symbol(u_name(j - 1)) for j in range(k + 1, n + 1)}
        ren[u_name(k)] = RatFunc.const(1)
        out: Dict[Key, RatFunc] = {}
        for (monos, g), c in self.terms.items():
            m = monos[k - 1]
            if m[1] or m[2]:
                continue
            ng = tuple(sorted(((_drop(a, k), _drop(b, k)), e) for (a, b), e in g if k not in (a, b)))
            key = (monos[:k - 1] + monos[k:], ng)
            v = c.subs(ren)
            out[key] = out[key] + v if key in out else v
        return TensorElement(n - 1, out)

    def antipode(self, leg: int = 1) -> "TensorElement":
        n, k = self.n, leg
        uk = symbol(u_name(k))
        out = TensorElement.zero(n)
        for (monos, g), c in self.terms.items():
            if any(k in pair for pair, _ in g):
                raise PBWError("antipode on a leg carrying a Cartan exponential")
            nc = c.subs({u_name(k): uk ** -1})
            for sc, sm in _antipode_mono(monos[k - 1], k):
                new = monos[:k - 1] + (sm,) + monos[k:]
                out = out + TensorElement(n, {(new, g): nc * sc})
        return out

    def merge(self, leg: int = 1) -> "TensorElement":
        """Multiplication map m on legs (leg, leg+1)."""
        n, k = self.n, leg
        ren = {u_name(k + 1): symbol(u_name(k))}
        for j in range(k + 2, n + 1):
            ren[u_name(j)] = symbol(u_name(j - 1))
        out: Dict[Key, RatFunc] = {}
        for (monos, g), c in self.terms.items():
            if any(k in pair or k + 1 in pair for pair, _ in g):
                raise PBWError("merge on legs carrying a Cartan exponential")
            ng = tuple(sorted(((_drop(a, k + 1), _drop(b, k + 1)), e) for (a, b), e in g))
            nc = c.subs(ren)
            for pc, pm in leg_product(monos[k - 1], monos[k], k):
                key = (monos[:k - 1] + (pm,) + monos[k + 1:], ng)
                v = nc * pc
                out[key] = out[key] + v if key in out else v
        return TensorElement(n - 1, out)

    def multiply_all(self) -> "TensorElement":
        x = self
        while x.n > 1:
            x = x.merge(1)
        return x

    def on_leg(self, leg: int, left: "TensorElement" = None, right: "TensorElement" = None) -> "TensorElement":
        """Multiply single-leg elements onto one leg: (1 (x) left (x) 1) X (1 (x) right (x) 1)."""
        x = self
        if left is not None:
            x = left.place((leg,), self.n) * x
        if right is not None:
            x = x * right.place((leg,), self.n)
        return x

    # -- inspection ----------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def witness(self) -> Optional[dict]:
        if not self.terms:
            return None
        (monos, g), c = self.sorted_terms()[0]
        return {"monomial": [list(m) for m in monos],
                "cartan": [[list(k), e] for k, e in g],
                "coefficient": str(c)}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (monos, g), c in self.sorted_terms():
            legs = " (x) ".join(_mono_str(m) for m in monos)
            gs = "".join(f"*G{a}{b}" + (f"^{e}" if e != 1 else "") for (a, b), e in g)
            parts.append(f"({c}) [{legs}]{gs}")
        return "\n + ".join(parts)

    def to_json(self) -> dict:
        return {"legs": self.n,
                "terms": [{"coefficient": c.to_json(),
                           "pbw": [list(m) for m in monos],
                           "cartan": [[list(k), e] for k, e in g]}
                          for (monos, g), c in self.sorted_terms()]}


def _split(a: int, k: int) -> Tuple[int, ...]:
    if a < k:
        return (a,)
    if a == k:
        return (k, k + 1)
    return (a + 1,)


def _drop(a: int, k: int) -> int:
    return a - 1 if a > k else a


def _mono_str(m: Mono) -> str:
    s = []
    if m[0]:
        s.append(f"tex^{m[0]}")
    if m[1]:
        s.append("e")
    if m[2]:
        s.append("f")
    return "*".join(s) or "1"


@lru_cache(maxsize=None)
def _delta_mono(m: Mono, k: int) -> Tuple[Tuple[RatFunc, Tuple[Mono, Mono]], ...]:
    """Delta(t_ex^m e^a f^b) as 2-leg terms whose t's are u_k, u_{k+1}."""
    mm, a, b = m
    x = TensorElement.mono(2, {1: (mm, 0, 0), 2: (mm, 0, 0)})
    if a:
        x = x * (TensorElement.e(2, 1) + TensorElement.e(2, 2).scale(symbol("u1")))
    if b:
        x = x * (TensorElement.f(2, 1).scale(symbol("u2") ** -1) + TensorElement.f(2, 2))
    ren = {}
    if k != 1:
        ren = {"u1": symbol(u_name(k)), "u2": symbol(u_name(k + 1))}
    out = []
    for (monos, _), c in x.sorted_terms():
        out.append((c.subs(ren) if ren else c, monos))
    return tuple(out)


@lru_cache(maxsize=None)
def _antipode_mono(m: Mono, k: int) -> Tuple[Tuple[RatFunc, Mono], ...]:
    """S(t_ex^m e^a f^b) = S(e^a f^b) t_ex^-m in normal form on leg k."""
    mm, a, b = m
    u = symbol(u_name(k))
    # S(e) = -t^-1 e, S(f) = -f t, S(ef) = -S(f) S(e)
    one = TensorElement.one(1)
    Se = TensorElement.e(1).scale(-(u ** -1))
    Sf = TensorElement.f(1).scale(-u)
    if (a, b) == (0, 0):
        s = one
    elif (a, b) == (1, 0):
        s = Se
    elif (a, b) == (0, 1):
        s = Sf
    else:
        s = -(Sf * Se)
    s = s * TensorElement.tex(1, 1, -mm) if mm else s
    out = []
    for (monos, _), c in s.sorted_terms():
        out.append((c.subs({"u1": u}) if k != 1 else c, monos[0]))
    return tuple(out)
