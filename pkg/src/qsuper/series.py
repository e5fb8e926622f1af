"""Truncated multivariate power series with per-variable order bounds."""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from .budget import check_terms
from .ratfunc import RatFunc, ZERO_


class SeriesError(ValueError):
    pass


Exps = Tuple[int, ...]


def _as_coeff(x):
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    return x


class TruncatedSeries:
    """Sum of c_e * prod(v_i ** e_i) with 0 <= e_i <= orders[i].

    Coefficients are RatFunc (or any exact ring element with the same
    arithmetic protocol).  Terms beyond the bounds are dropped on every
    operation, so all stored data is exact up to the bounds.
    """

    __slots__ = ("vars", "orders", "coeffs")

    def __init__(self, vars: Sequence[str], orders: Sequence[int],
                 coeffs: Optional[Mapping[Exps, object]] = None):
        self.vars = tuple(vars)
        self.orders = tuple(int(o) for o in orders)
        if len(self.vars) != len(self.orders):
            raise SeriesError("one order per series variable is required")
        if any(o < 0 for o in self.orders):
            raise SeriesError("truncation orders must be non-negative")
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                e = tuple(e)
                if self._inside(e) and not c.is_zero():
                    clean[e] = c
        self.coeffs: Dict[Exps, object] = clean

    # -- constructors -------------------------------------------------
    def _inside(self, e: Exps) -> bool:
        for x, o in zip(e, self.orders):
            if x < 0 or x > o:
                return False
        return True

    def like(self, coeffs=None) -> "TruncatedSeries":
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.vars, out.orders = self.vars, self.orders
        out.coeffs = coeffs if coeffs is not None else {}
        return out

    def zero(self) -> "TruncatedSeries":
        return self.like({})

    def one(self) -> "TruncatedSeries":
        return self.scalar(1)

    def scalar(self, c) -> "TruncatedSeries":
        c = _as_coeff(c)
        if c.is_zero():
            return self.like({})
        return self.like({(0,) * len(self.vars): c})

    def monomial(self, exps: Mapping[str, int], coeff=1) -> "TruncatedSeries":
        e = tuple(int(exps.get(v, 0)) for v in self.vars)
        c = _as_coeff(coeff)
        if not self._inside(e) or c.is_zero():
            return self.like({})
        return self.like({e: c})

    def gen(self, name: str) -> "TruncatedSeries":
        return self.monomial({name: 1})

    # -- predicates / access -----------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, exps) -> object:
        if isinstance(exps, Mapping):
            exps = tuple(int(exps.get(v, 0)) for v in self.vars)
        return self.coeffs.get(tuple(exps), ZERO_())

    def constant_term(self):
        return self.coefficient((0,) * len(self.vars))

    def terms(self):
        return sorted(self.coeffs.items())

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other: "TruncatedSeries"):
        if self.vars != other.vars or self.orders != other.orders:
            raise SeriesError(
                f"series layout mismatch: {self.vars}{self.orders} "
                f"vs {other.vars}{other.orders}")

    # -- ring operations ---------------------------------------------
    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, RatFunc)) or hasattr(other, "is_zero"):
            return self.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return self.like(out)

    __radd__ = __add__

    def __neg__(self):
        return self.like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "TruncatedSeries":
        c = _as_coeff(c)
        if c.is_zero():
            return self.like({})
        return self.like({e: v * c for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)) or hasattr(other, "is_zero"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) or hasattr(other, "is_zero"):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return series_invert(self) ** (-n)
        result, base = self.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        return series_invert(self)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * series_invert(other)
        return self.scale(_as_coeff(other).inverse())

    def __rtruediv__(self, other):
        return self.scalar(other) * series_invert(self)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, TruncatedSeries) else other
        if o is NotImplemented:
            return NotImplemented
        if self.vars != o.vars or self.orders != o.orders:
            return False
        if self.coeffs.keys() != o.coeffs.keys():
            return False
        return all(self.coeffs[e] == o.coeffs[e] for e in self.coeffs)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    # -- transformations ---------------------------------------------
    def map_coeffs(self, fn: Callable) -> "TruncatedSeries":
        out = {}
        for e, c in self.coeffs.items():
            v = fn(c)
            if not v.is_zero():
                out[e] = v
        return self.like(out)

    def subs_coeffs(self, mapping) -> "TruncatedSeries":
        return self.map_coeffs(lambda c: c.subs(mapping))

    def truncate(self, orders: Sequence[int]) -> "TruncatedSeries":
        out = TruncatedSeries(self.vars, orders)
        out.coeffs = {e: c for e, c in self.coeffs.items() if out._inside(e)}
        return out

    def substitute_monomial(self, name: str, factor: Mapping[str, int],
                            coeff=1) -> "TruncatedSeries":
        """Replace variable `name` by coeff * monomial(factor).

        The monomial must contain `name` itself with exponent >= 1 or be
        otherwise non-negative, e.g. z -> p*z.
        """
        i = self.vars.index(name)
        shift = tuple(int(factor.get(v, 0)) for v in self.vars)
        c = _as_coeff(coeff)
        out = {}
        for e, v in self.coeffs.items():
            k = e[i]
            ne = list(e)
            ne[i] = 0
            ne = tuple(a + k * s for a, s in zip(ne, shift))
            if not self._inside(ne):
                continue
            val = v * c ** k if k else v
            if ne in out:
                val = out[ne] + val
            out[ne] = val
        return self.like({e: v for e, v in out.items() if not v.is_zero()})

    def evaluate_var(self, name: str, value) -> "TruncatedSeries":
        """Substitute a coefficient-field value for one series variable.

        Returns a series in the remaining variables."""
        i = self.vars.index(name)
        value = _as_coeff(value)
        nv = self.vars[:i] + self.vars[i + 1:]
        no = self.orders[:i] + self.orders[i + 1:]
        out: Dict[Exps, object] = {}
        for e, c in self.coeffs.items():
            ne = e[:i] + e[i + 1:]
            val = c * value ** e[i]
            out[ne] = out[ne] + val if ne in out else val
        return TruncatedSeries(nv, no, out)

    def valuation(self, name: str) -> Optional[int]:
        i = self.vars.index(name)
        if not self.coeffs:
            return None
        return min(e[i] for e in self.coeffs)

    # -- output -------------------------------------------------------
    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            mono = "*".join(f"{v}^{k}" if k > 1 else v
                            for v, k in zip(self.vars, e) if k)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "variables": list(self.vars),
            "bounds": list(self.orders),
            "terms": [[list(e), c.to_json()] for e, c in self.terms()],
        }

    @classmethod
    def from_json(cls, data) -> "TruncatedSeries":
        return cls(data["variables"], data["bounds"],
                   {tuple(e): RatFunc.from_json(c) for e, c in data["terms"]})


class SeriesSpace:
    """Factory for series sharing one variable layout."""

    def __init__(self, vars: Sequence[str], orders: Sequence[int]):
        self.vars = tuple(vars)
        self.orders = tuple(orders)
        for o in self.orders:
            if o < 0:
                raise SeriesError("truncation orders must be non-negative")

    def zero(self):
        return TruncatedSeries(self.vars, self.orders)

    def one(self):
        return self.zero().one()

    def scalar(self, c):
        return self.zero().scalar(c)

    def gen(self, name):
        return self.zero().gen(name)

    def monomial(self, exps, coeff=1):
        return self.zero().monomial(exps, coeff)

    def __call__(self, x):
        if isinstance(x, TruncatedSeries):
            return x
        return self.scalar(x)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    if not a.coeffs or not b.coeffs:
        return a.like({})
    orders = a.orders
    nv = len(orders)
    out: Dict[Exps, object] = {}
    bt = list(b.coeffs.items())
    if nv == 1:
        o0 = orders[0]
        for (ea,), ca in a.coeffs.items():
            lim = o0 - ea
            for (eb,), cb in bt:
                if eb <= lim:
                    k = (ea + eb,)
                    v = ca * cb
                    out[k] = out[k] + v if k in out else v
    elif nv == 2:
        o0, o1 = orders
        for (a0, a1), ca in a.coeffs.items():
            l0, l1 = o0 - a0, o1 - a1
            for (b0, b1), cb in bt:
                if b0 <= l0 and b1 <= l1:
                    k = (a0 + b0, a1 + b1)
                    v = ca * cb
                    out[k] = out[k] + v if k in out else v
    else:
        for ea, ca in a.coeffs.items():
            for eb, cb in bt:
                k = tuple(x + y for x, y in zip(ea, eb))
                if all(x <= o for x, o in zip(k, orders)):
                    v = ca * cb
                    out[k] = out[k] + v if k in out else v
    res = {e: c for e, c in out.items() if not c.is_zero()}
    check_terms(len(res))
    return a.like(res)


def _graded_order(orders: Sequence[int]):
    return sorted(_iproduct(*[range(o + 1) for o in orders]), key=lambda e: (sum(e), e))


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    """Two-sided inverse modulo truncation; the constant term must be a unit."""
    c0 = a.constant_term()
    if c0.is_zero():
        raise SeriesError("series with zero constant term is not invertible")
    inv0 = c0.inverse()
    zero = (0,) * len(a.vars)
    rest = [(e, c) for e, c in a.coeffs.items() if e != zero]
    b: Dict[Exps, object] = {zero: inv0}
    for e in _graded_order(a.orders):
        if e == zero:
            continue
        acc = None
        for f, c in rest:
            g = tuple(x - y for x, y in zip(e, f))
            if min(g) < 0:
                continue
            bg = b.get(g)
            if bg is None:
                continue
            t = c * bg
            acc = t if acc is None else acc + t
        if acc is not None and not acc.is_zero():
            b[e] = -(acc * inv0)
    res = {e: c for e, c in b.items() if not c.is_zero()}
    check_terms(len(res))
    return a.like(res)


def series_exp(g: TruncatedSeries) -> TruncatedSeries:
    """exp(g) for g without constant term."""
    if not g.constant_term().is_zero():
        raise SeriesError("exp needs a series without constant term")
    result = g.one()
    term = g.one()
    k = 0
    while True:
        k += 1
        term = (term * g).scale(RatFunc.const(Fraction(1, k)))
        if term.is_zero():
            return result
        result = result + term


def expand(x, space: SeriesSpace) -> TruncatedSeries:
    return space(x)


def ratfunc_to_series(r: RatFunc, space: SeriesSpace,
                      symbols: Mapping[str, str] = None) -> TruncatedSeries:
    """Expand a rational function as a power series.

    `symbols` maps coefficient-field symbol names to series variables
    (default: identically named).  The denominator must have a nonzero
    constant term with respect to those symbols.
    """
    from .ratfunc import collect
    if symbols is None:
        symbols = {v: v for v in space.vars}
    names = list(symbols)
    r = RatFunc._coerce(r)
    gens = [space.gen(symbols[n]) for n in names]

    def poly_series(poly):
        acc = space.zero()
        for exps, c in collect(poly, names).items():
            term = space.scalar(c)
            for g, k in zip(gens, exps):
                if k:
                    term = term * g ** k
            acc = acc + term
        return acc

    num = poly_series(r.num)
    den = poly_series(r.den)
    if den.constant_term().is_zero():
        raise SeriesError(f"denominator of {r} vanishes at the expansion point")
    return num * series_invert(den)
