"""Multivariate rational functions over Q.

Numerators and denominators are python-flint ``fmpq_mpoly`` values living in
one shared, growable polynomial context.  Every value is kept reduced
(gcd-cancelled, denominator with leading coefficient 1), so structural
equality coincides with mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Union

import flint

# Symbols registered up front so that the variable order (and hence the
# printed form of every value) does not depend on call order.
_BASE_SYMBOLS = (
    "q", "w", "W", "z", "z1", "z2", "z3", "zeta",
    "s", "s1", "s2", "s3", "u", "u1", "u2", "u3", "u4", "u5",
    "U", "U1", "U2", "U3",
)

_names: list = list(_BASE_SYMBOLS)
_ctx = flint.fmpq_mpoly_ctx.get(tuple(_names), "degrevlex")
_gen = 0


def _register(name: str) -> None:
    global _ctx, _gen
    if name in _names:
        return
    _names.append(name)
    _ctx = flint.fmpq_mpoly_ctx.get(tuple(_names), "degrevlex")
    _gen += 1


def _lift(poly):
    if poly.context() is _ctx:
        return poly
    return poly.project_to_context(_ctx)


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


Scalar = Union[int, Fraction, "RatFunc"]


class RatFunc:
    """A reduced quotient num/den of polynomials with rational coefficients."""

    __slots__ = ("num", "den", "_g")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = _ctx.constant(1)
        if _reduced:
            self.num, self.den, self._g = num, den, _gen
            return
        num, den = _lift(num), _lift(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den, self._g = num, _ctx.constant(1), _gen
            return
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num, self.den, self._g = num, den, _gen

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        return cls(_ctx.constant(_fmpq(value)), _reduced=True)

    @classmethod
    def symbol(cls, name: str) -> "RatFunc":
        _register(name)
        return cls(_ctx.gen(_names.index(name)), _reduced=True)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1) -> "RatFunc":
        """coeff * prod(name**e), negative exponents allowed."""
        for n in exps:
            _register(n)
        top = [0] * len(_names)
        bot = [0] * len(_names)
        for n, e in exps.items():
            if e >= 0:
                top[_names.index(n)] += e
            else:
                bot[_names.index(n)] -= e
        num = _ctx.from_dict({tuple(top): _fmpq(coeff)})
        den = _ctx.from_dict({tuple(bot): 1})
        return cls(num, den, _reduced=True)

    def _sync(self):
        if self._g != _gen:
            self.num, self.den, self._g = _lift(self.num), _lift(self.den), _gen
        return self

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def variables(self) -> set:
        self._sync()
        used = set()
        for poly in (self.num, self.den):
            for mono in poly.monoms():
                for i, e in enumerate(mono):
                    if e:
                        used.add(_names[i])
        return used

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other._sync()
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return RatFunc.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a = self._sync()
        if o.num.is_zero():
            return a
        if a.num.is_zero():
            return o
        if a.den.is_one() and o.den.is_one():
            return RatFunc(a.num + o.num, a.den, _reduced=True)
        if a.den == o.den:
            return RatFunc(a.num + o.num, a.den)
        return RatFunc(a.num * o.den + o.num * a.den, a.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        self._sync()
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a = self._sync()
        if a.num.is_zero() or o.num.is_zero():
            return ZERO_()
        if a.den.is_one() and o.den.is_one():
            return RatFunc(a.num * o.num, a.den, _reduced=True)
        # cross-cancel before multiplying to keep operands small
        g1 = a.num.gcd(o.den)
        g2 = o.num.gcd(a.den)
        n1, d2 = (a.num / g1, o.den / g1) if not g1.is_one() else (a.num, o.den)
        n2, d1 = (o.num / g2, a.den / g2) if not g2.is_one() else (o.num, a.den)
        den = d1 * d2
        num = n1 * n2
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        self._sync()
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        self._sync()
        if n >= 0:
            return RatFunc(self.num ** n, self.den ** n, _reduced=True)
        if self.num.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return RatFunc(self.den ** (-n), self.num ** (-n))

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a = self._sync()
        return a.num == o.num and a.den == o.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        """Hashable canonical form, independent of the live context."""
        return (_poly_key(self.num), _poly_key(self.den))

    # -- substitution -------------------------------------------------
    def subs(self, mapping: Mapping[str, Scalar]) -> "RatFunc":
        """Simultaneous substitution of symbols by rational functions."""
        self._sync()
        vals = {}
        for name, v in mapping.items():
            if name not in _names:
                continue
            vals[_names.index(name)] = RatFunc._coerce(v)
        if not vals:
            return self
        n_num, n_den = _eval_poly(self.num, vals)
        d_num, d_den = _eval_poly(self.den, vals)
        return RatFunc(n_num * d_den, n_den * d_num)

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        n = self.num.leading_coefficient() if not self.num.is_zero() else 0
        d = self.den.leading_coefficient()
        val = flint.fmpq(n) / d
        return Fraction(int(val.p), int(val.q))

    # -- output -------------------------------------------------------
    def __str__(self):
        self._sync()
        if self.den.is_one():
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den) > 1 or not self.den.is_constant() and "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"

    def numerator_str(self) -> str:
        return str(RatFunc(self._sync().num, None, True))

    def denominator_str(self) -> str:
        return str(RatFunc(self._sync().den, None, True))

    def to_json(self) -> dict:
        return {"num": _poly_json(self._sync().num), "den": _poly_json(self.den)}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(_poly_from_json(data["num"]), _poly_from_json(data["den"]))


def _poly_key(poly) -> tuple:
    items = []
    for mono, c in poly.terms():
        exps = tuple((_names[i], e) for i, e in enumerate(mono) if e)
        items.append((exps, int(c.p), int(c.q)))
    return tuple(sorted(items))


def _poly_json(poly) -> list:
    out = []
    for exps, p, q in _poly_key(poly):
        out.append([{n: int(e) for n, e in exps}, str(Fraction(p, q))])
    return out


def _poly_from_json(items) -> "flint.fmpq_mpoly":
    acc = _ctx.constant(0)
    for exps, coeff in items:
        for n in exps:
            _register(n)
        acc = _lift(acc)
        vec = [0] * len(_names)
        for n, e in exps.items():
            vec[_names.index(n)] = int(e)
        acc = acc + _ctx.from_dict({tuple(vec): _fmpq(Fraction(coeff))})
    return _lift(acc)


def _eval_poly(poly, vals: Dict[int, RatFunc]):
    """Evaluate poly at rational-function values; returns (num, den) polys.

    Each substituted variable x_i = a_i/b_i is homogenised with b_i^{deg_i}.
    """
    degs = poly.degrees()
    idx = sorted(vals)
    dmax = {i: degs[i] for i in idx}
    pw_a: Dict[int, list] = {}
    pw_b: Dict[int, list] = {}
    for i in idx:
        a, b = vals[i].num, vals[i].den
        pa, pb = [_ctx.constant(1)], [_ctx.constant(1)]
        for _ in range(dmax[i]):
            pa.append(pa[-1] * a)
            pb.append(pb[-1] * b)
        pw_a[i], pw_b[i] = pa, pb
    nvars = len(_names)
    acc = _ctx.constant(0)
    for mono, c in poly.terms():
        rest = list(mono) + [0] * (nvars - len(mono))
        term = None
        for i in idx:
            e = rest[i]
            rest[i] = 0
            f = pw_a[i][e] * pw_b[i][dmax[i] - e]
            term = f if term is None else term * f
        base = _ctx.from_dict({tuple(rest): c})
        acc = acc + (base if term is None else base * term)
    den = _ctx.constant(1)
    for i in idx:
        den = den * pw_b[i][dmax[i]]
    return acc, den


def ZERO_() -> RatFunc:
    return RatFunc(_ctx.constant(0), _reduced=True)


def symbol(name: str) -> RatFunc:
    return RatFunc.symbol(name)


def const(value) -> RatFunc:
    return RatFunc.const(value)


def symbols(names: Iterable[str]):
    return tuple(RatFunc.symbol(n) for n in names)


def qint(n: int, q: RatFunc) -> RatFunc:
    """Symmetric q-integer [n]_q = (q^n - q^-n)/(q - q^-1)."""
    return (q ** n - q ** (-n)) / (q - q ** (-1))


def parse_rational(text) -> Fraction:
    return Fraction(str(text))


class _Field:
    """Ring handle for RatFunc entries (used by matrix code)."""

    name = "ratfunc"

    @staticmethod
    def scalar(c) -> RatFunc:
        return RatFunc.const(c)

    def zero(self) -> RatFunc:
        return ZERO_()

    def one(self) -> RatFunc:
        return RatFunc.const(1)

    def __repr__(self):
        return "QF"


QF = _Field()


def collect(poly, names) -> Dict[tuple, RatFunc]:
    """Split a polynomial by the exponents of the given symbols.

    Returns {exponent tuple over names: RatFunc coefficient in the rest}.
    """
    idx = []
    for n in names:
        _register(n)
        idx.append(_names.index(n))
    poly = _lift(poly)
    out: Dict[tuple, object] = {}
    for mono, c in poly.terms():
        rest = list(mono) + [0] * (len(_names) - len(mono))
        key = tuple(rest[i] for i in idx)
        for i in idx:
            rest[i] = 0
        t = _ctx.from_dict({tuple(rest): c})
        out[key] = out[key] + t if key in out else t
    return {k: RatFunc(v, _reduced=True) for k, v in out.items()}
