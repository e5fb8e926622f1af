"""Adjoining square roots s_i with s_i^2 = r_i to a rational-function field.

Elements are sums over square-free products of the adjoined symbols with
RatFunc coefficients.  Only ring operations are provided; that is all the
matrix code needs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, FrozenSet, Mapping

from .ratfunc import RatFunc


class SqrtExt:
    __slots__ = ("parts", "rules")

    def __init__(self, parts: Mapping[FrozenSet[str], RatFunc], rules: Mapping[str, RatFunc]):
        self.rules = rules
        self.parts: Dict[FrozenSet[str], RatFunc] = {
            k: v for k, v in parts.items() if not v.is_zero()}

    @classmethod
    def scalar(cls, c, rules) -> "SqrtExt":
        return cls({frozenset(): RatFunc.const(c)}, rules)

    @classmethod
    def root(cls, name: str, rules, coeff=1) -> "SqrtExt":
        if name not in rules:
            raise KeyError(f"no square rule for {name}")
        return cls({frozenset([name]): RatFunc.const(coeff)}, rules)

    def _lift(self, other):
        if isinstance(other, SqrtExt):
            return other
        if isinstance(other, (int, Fraction, RatFunc)):
            return SqrtExt.scalar(other, self.rules)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.parts

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.parts)
        for k, v in o.parts.items():
            out[k] = out[k] + v if k in out else v
        return SqrtExt(out, self.rules)

    __radd__ = __add__

    def __neg__(self):
        return SqrtExt({k: -v for k, v in self.parts.items()}, self.rules)

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

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        out: Dict[FrozenSet[str], RatFunc] = {}
        for k1, v1 in self.parts.items():
            for k2, v2 in o.parts.items():
                v = v1 * v2
                for name in k1 & k2:
                    v = v * self.rules[name]
                k = k1 ^ k2
                out[k] = out[k] + v if k in out else v
        return SqrtExt(out, self.rules)

    __rmul__ = __mul__

    def inverse(self) -> "SqrtExt":
        if set(self.parts) == {frozenset()}:
            return SqrtExt({frozenset(): self.parts[frozenset()].inverse()}, self.rules)
        if len(self.parts) == 1:
            (k, v), = self.parts.items()
            # (v s_K)^-1 = s_K / (v prod r_K)
            d = v
            for name in k:
                d = d * self.rules[name]
            return SqrtExt({k: d.inverse()}, self.rules)
        raise NotImplementedError("inverse of a general surd sum")

    def __truediv__(self, other):
        o = self._lift(other)
        return self * o.inverse()

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def subs(self, mapping) -> "SqrtExt":
        return SqrtExt({k: v.subs(mapping) for k, v in self.parts.items()}, self.rules)

    def __repr__(self):
        if not self.parts:
            return "0"
        out = []
        for k in sorted(self.parts, key=sorted):
            tag = "*".join(sorted(k))
            out.append(f"({self.parts[k]})" + (f"*{tag}" if tag else ""))
        return " + ".join(out)

    def to_json(self):
        return {"surds": [[sorted(k), v.to_json()] for k, v in
                          sorted(self.parts.items(), key=lambda kv: sorted(kv[0]))]}


class SqrtRing:
    """Ring handle producing SqrtExt values with a fixed rule table."""

    def __init__(self, rules: Mapping[str, RatFunc]):
        self.rules = dict(rules)

    def scalar(self, c) -> SqrtExt:
        if isinstance(c, SqrtExt):
            return c
        return SqrtExt.scalar(c, self.rules)

    def zero(self) -> SqrtExt:
        return SqrtExt({}, self.rules)

    def one(self) -> SqrtExt:
        return self.scalar(1)

    def root(self, name: str, coeff=1) -> SqrtExt:
        return SqrtExt.root(name, self.rules, coeff)
