"""Z2-graded operators on tensor powers of C^{1|1}.

Basis vectors of a tensor power are indexed lexicographically with leg 1
most significant.  All Koszul sign bookkeeping lives in `super_kron`,
`unit_sign` and `embed_on_legs`; everything else is plain matrix algebra.

Entries are stored sparsely as {(row, col): value}.  Values may be RatFunc,
SqrtExt or TruncatedSeries; the operator carries a ring handle exposing
`scalar(c)` so identities and zeros can be produced in the right ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iproduct
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .ratfunc import QF
from .series import SeriesSpace, TruncatedSeries


class SuperOpError(ValueError):
    pass


@dataclass(frozen=True)
class SuperSpace:
    """A graded vector space given by the parities of its basis vectors."""

    parities: Tuple[int, ...] = (0, 1)

    def __post_init__(self):
        if any(p not in (0, 1) for p in self.parities):
            raise SuperOpError("parities must be 0 or 1")

    @property
    def dim(self) -> int:
        return len(self.parities)


V = SuperSpace((0, 1))
# parity-swapped copy of V (v_1 odd, v_2 even)
PI_V = SuperSpace((1, 0))


def _ring_of(*values):
    for v in values:
        if isinstance(v, TruncatedSeries):
            return SeriesSpace(v.vars, v.orders)
    for v in values:
        if hasattr(v, "rules"):
            from .sqrtext import SqrtRing
            return SqrtRing(v.rules)
    return QF


def _join_rings(a, b):
    if isinstance(a, SeriesSpace):
        return a
    if isinstance(b, SeriesSpace):
        return b
    if a is QF:
        return b
    return a


class SuperOp:
    """Square matrix on V_1 (x) ... (x) V_n with graded tensor structure."""

    __slots__ = ("spaces", "entries", "ring", "_dims", "_size")

    def __init__(self, spaces: Sequence[SuperSpace], entries: Mapping[Tuple[int, int], object] = None,
                 ring=None):
        self.spaces = tuple(spaces)
        self._dims = tuple(s.dim for s in self.spaces)
        size = 1
        for d in self._dims:
            size *= d
        self._size = size
        clean = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < size and 0 <= j < size):
                    raise SuperOpError(f"entry {(i, j)} outside a {size}x{size} matrix")
                if not v.is_zero():
                    clean[(i, j)] = v
        self.entries: Dict[Tuple[int, int], object] = clean
        self.ring = ring if ring is not None else _ring_of(*clean.values())

    # -- basic data ----------------------------------------------------
    @property
    def legs(self) -> int:
        return len(self.spaces)

    @property
    def size(self) -> int:
        return self._size

    def digits(self, index: int) -> Tuple[int, ...]:
        out = []
        for d in reversed(self._dims):
            out.append(index % d)
            index //= d
        return tuple(reversed(out))

    def index(self, digits: Sequence[int]) -> int:
        i = 0
        for d, x in zip(self._dims, digits):
            i = i * d + x
        return i

    def state_parity(self, index: int) -> int:
        return sum(s.parities[x] for s, x in zip(self.spaces, self.digits(index))) % 2

    def get(self, i: int, j: int):
        v = self.entries.get((i, j))
        return v if v is not None else self.ring.scalar(0)

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, spaces, ring=QF) -> "SuperOp":
        return cls(spaces, {}, ring)

    @classmethod
    def identity(cls, spaces, ring=QF) -> "SuperOp":
        op = cls(spaces, {}, ring)
        one = ring.scalar(1)
        op.entries = {(i, i): one for i in range(op.size)}
        return op

    @classmethod
    def unit(cls, i: int, j: int, space: SuperSpace = V, coeff=1, ring=QF) -> "SuperOp":
        """coeff * e_ij on one leg; i, j are 1-based as in e_11, e_12, ..."""
        c = ring.scalar(coeff)
        return cls((space,), {(i - 1, j - 1): c}, ring if ring is not QF else _ring_of(c))

    @classmethod
    def from_units(cls, terms: Mapping[Tuple[Tuple[int, int], ...], object],
                   spaces: Sequence[SuperSpace] = None, ring=QF) -> "SuperOp":
        """Sum of coeff * (e_{i1 j1} (x) e_{i2 j2} (x) ...) as graded tensors."""
        out = None
        for units, coeff in terms.items():
            sp = spaces or (V,) * len(units)
            term = None
            for leg, (i, j) in enumerate(units):
                u = cls.unit(i, j, sp[leg], 1, ring)
                term = u if term is None else super_kron(term, u)
            term = term.scale(coeff)
            out = term if out is None else out + term
        if out is None:
            raise SuperOpError("from_units needs at least one term")
        return out

    # -- linear structure ---------------------------------------------
    def _same_shape(self, other: "SuperOp"):
        if self.spaces != other.spaces:
            raise SuperOpError(f"shape mismatch: {self.spaces} vs {other.spaces}")

    def __add__(self, other: "SuperOp") -> "SuperOp":
        self._same_shape(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return SuperOp(self.spaces, out, _join_rings(self.ring, other.ring))

    def __neg__(self) -> "SuperOp":
        return SuperOp(self.spaces, {k: -v for k, v in self.entries.items()}, self.ring)

    def __sub__(self, other: "SuperOp") -> "SuperOp":
        return self + (-other)

    def scale(self, c) -> "SuperOp":
        ring = self.ring
        if isinstance(c, TruncatedSeries) or hasattr(c, "rules"):
            ring = _join_rings(ring, _ring_of(c))
        return SuperOp(self.spaces, {k: c * v for k, v in self.entries.items()}, ring)

    def __matmul__(self, other: "SuperOp") -> "SuperOp":
        return self.__mul__(other)

    def __mul__(self, other):
        if not isinstance(other, SuperOp):
            return self.scale(other)
        self._same_shape(other)
        rows: Dict[int, List[Tuple[int, object]]] = {}
        for (k, j), v in other.entries.items():
            rows.setdefault(k, []).append((j, v))
        out: Dict[Tuple[int, int], object] = {}
        for (i, k), a in self.entries.items():
            for j, b in rows.get(k, ()):
                v = a * b
                key = (i, j)
                out[key] = out[key] + v if key in out else v
        return SuperOp(self.spaces, out, _join_rings(self.ring, other.ring))

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, n: int) -> "SuperOp":
        if n < 0:
            return self.inverse() ** (-n)
        out = SuperOp.identity(self.spaces, self.ring)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, SuperOp):
            return NotImplemented
        return self.spaces == other.spaces and (self - other).is_zero()

    __hash__ = None

    def map_entries(self, fn, ring=None) -> "SuperOp":
        out = {k: fn(v) for k, v in self.entries.items()}
        return SuperOp(self.spaces, out, ring)

    def subs(self, mapping) -> "SuperOp":
        def f(v):
            if isinstance(v, TruncatedSeries):
                return v.subs_coeffs(mapping)
            return v.subs(mapping)
        return self.map_entries(f, self.ring)

    def to_series(self, space: SeriesSpace) -> "SuperOp":
        return self.map_entries(lambda v: v if isinstance(v, TruncatedSeries) else space.scalar(v), space)

    # -- grading -------------------------------------------------------
    def parity_parts(self) -> Tuple["SuperOp", "SuperOp"]:
        even, odd = {}, {}
        for (i, j), v in self.entries.items():
            target = odd if (self.state_parity(i) + self.state_parity(j)) % 2 else even
            target[(i, j)] = v
        return SuperOp(self.spaces, even, self.ring), SuperOp(self.spaces, odd, self.ring)

    def parity(self) -> Optional[int]:
        """0 or 1 for homogeneous operators, None for mixed ones (zero is even)."""
        even, odd = self.parity_parts()
        if odd.is_zero():
            return 0
        if even.is_zero():
            return 1
        return None

    # -- inversion -----------------------------------------------------
    def inverse(self) -> "SuperOp":
        if isinstance(self.ring, SeriesSpace):
            return _series_inverse(self)
        return _field_inverse(self)

    # -- reporting -----------------------------------------------------
    def label(self, index: int) -> str:
        return "".join(str(d + 1) for d in self.digits(index))

    def witness(self) -> Optional[dict]:
        """First nonzero entry in (row, col) order, with its leading term."""
        if not self.entries:
            return None
        (i, j) = min(self.entries)
        v = self.entries[(i, j)]
        w = {"row": self.label(i), "col": self.label(j)}
        if isinstance(v, TruncatedSeries):
            e, c = v.terms()[0]
            w["exponents"] = dict(zip(v.vars, e))
            w["coefficient"] = str(c)
        else:
            w["exponents"] = {}
            w["coefficient"] = str(v)
        return w

    def __repr__(self):
        lines = [f"SuperOp(legs={self.legs})"]
        for (i, j) in sorted(self.entries):
            lines.append(f"  [{self.label(i)},{self.label(j)}] {self.entries[(i, j)]}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        rows = []
        for i in range(self.size):
            row = []
            for j in range(self.size):
                v = self.entries.get((i, j))
                row.append(0 if v is None else v.to_json())
            rows.append(row)
        return {"legs": self.legs,
                "parity": [list(s.parities) for s in self.spaces],
                "entries": rows}


# -- Koszul signs ---------------------------------------------------------

def unit_sign(spaces: Sequence[SuperSpace], row: Sequence[int], col: Sequence[int]) -> int:
    """Sign s with e_{i1 j1} (x) ... (x) e_{ik jk} = s * E_{row, col}.

    Row/col are 0-based digit tuples.
    """
    s = 0
    acc = 0
    for sp, i, j in zip(spaces, row, col):
        pu = (sp.parities[i] + sp.parities[j]) % 2
        s += pu * acc
        acc += sp.parities[j]
    return -1 if s % 2 else 1


def super_kron(A: SuperOp, B: SuperOp) -> SuperOp:
    """Graded tensor product with (A (x) B)(v (x) w) = (-1)^{[B][v]} Av (x) Bw."""
    spaces = A.spaces + B.spaces
    nb = B.size
    out = {}
    for (i, k), a in A.entries.items():
        pk = A.state_parity(k)
        for (j, l), b in B.entries.items():
            v = a * b
            if pk and (B.state_parity(j) + B.state_parity(l)) % 2:
                v = -v
            out[(i * nb + j, k * nb + l)] = v
    return SuperOp(spaces, out, _join_rings(A.ring, B.ring))


def graded_flip(space: SuperSpace = V, ring=QF) -> SuperOp:
    """P(v_i (x) v_j) = (-1)^{[v_i][v_j]} v_j (x) v_i."""
    d = space.dim
    out = {}
    for i in range(d):
        for j in range(d):
            sign = -1 if space.parities[i] * space.parities[j] else 1
            out[(j * d + i, i * d + j)] = ring.scalar(sign)
    return SuperOp((space, space), out, ring)


def ungraded_flip(space: SuperSpace = V, ring=QF) -> SuperOp:
    """Plain swap without Koszul sign (negative controls only)."""
    d = space.dim
    out = {(j * d + i, i * d + j): ring.scalar(1) for i in range(d) for j in range(d)}
    return SuperOp((space, space), out, ring)


def flip_element(X: SuperOp, flip: SuperOp = None) -> SuperOp:
    """X^T = P X P for a two-leg operator."""
    if X.legs != 2:
        raise SuperOpError("flip_element needs a two-leg operator")
    if flip is None:
        if X.spaces[0] != X.spaces[1]:
            return embed_on_legs(X, (2, 1), 2)
        flip = graded_flip(X.spaces[0], X.ring)
    return flip * X * flip


def embed_on_legs(X: SuperOp, legs: Sequence[int], n: int,
                  spaces: Sequence[SuperSpace] = None) -> SuperOp:
    """Place a k-leg operator on the given (distinct, 1-based) legs of n.

    X is expanded into graded tensors of matrix units and each unit is put
    on its target leg; the product of the placed units is evaluated on the
    basis with the Koszul sign for passing each unit across earlier legs.
    """
    legs = tuple(legs)
    if len(legs) != X.legs:
        raise SuperOpError(f"{X.legs}-leg operator cannot go on legs {legs}")
    if len(set(legs)) != len(legs) or min(legs) < 1 or max(legs) > n:
        raise SuperOpError(f"invalid legs {legs} for {n} legs")
    if spaces is None:
        spaces = [V] * n
        for src, L in enumerate(legs):
            spaces[L - 1] = X.spaces[src]
    spaces = tuple(spaces)
    for src, L in enumerate(legs):
        if spaces[L - 1] != X.spaces[src]:
            raise SuperOpError("leg space mismatch")
    target = SuperOp(spaces, {}, X.ring)
    dims = [s.dim for s in spaces]
    basis = list(_iproduct(*[range(d) for d in dims]))
    out: Dict[Tuple[int, int], object] = {}
    for (I, J), v in X.entries.items():
        rd, cd = X.digits(I), X.digits(J)
        c = v if unit_sign(X.spaces, rd, cd) > 0 else -v
        for start in basis:
            cur = list(start)
            sign = 1
            ok = True
            for r in range(len(legs) - 1, -1, -1):
                L = legs[r] - 1
                if cur[L] != cd[r]:
                    ok = False
                    break
                sp = spaces[L]
                if (sp.parities[rd[r]] + sp.parities[cd[r]]) % 2:
                    if sum(spaces[m].parities[cur[m]] for m in range(L)) % 2:
                        sign = -sign
                cur[L] = rd[r]
            if not ok:
                continue
            key = (target.index(cur), target.index(start))
            t = c if sign > 0 else -c
            out[key] = out[key] + t if key in out else t
    return SuperOp(spaces, out, X.ring)


def graded_commutator(a: SuperOp, b: SuperOp) -> SuperOp:
    """[a, b] = ab - (-1)^{[a][b]} ba, extended bilinearly over parity parts."""
    a0, a1 = a.parity_parts()
    b0, b1 = b.parity_parts()
    out = a * b - b0 * a - b1 * a0
    return out + b1 * a1


# -- inversion ---------------------------------------------------------

def _field_inverse(X: SuperOp) -> SuperOp:
    """Gauss-Jordan elimination over a field."""
    n = X.size
    ring = X.ring
    rows = []
    for i in range(n):
        row = {j: v for (r, j), v in X.entries.items() if r == i}
        row[n + i] = ring.scalar(1)
        rows.append(row)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if col in rows[r]:
                piv = r
                break
        if piv is None:
            raise SuperOpError("singular operator")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        pinv = p.inverse()
        rows[col] = {k: v * pinv for k, v in rows[col].items()}
        for r in range(n):
            if r == col or col not in rows[r]:
                continue
            f = rows[r][col]
            new = dict(rows[r])
            for k, v in rows[col].items():
                t = new[k] - f * v if k in new else -(f * v)
                if t.is_zero():
                    new.pop(k, None)
                else:
                    new[k] = t
            rows[r] = new
    out = {}
    for i in range(n):
        for k, v in rows[i].items():
            if k >= n:
                out[(i, k - n)] = v
    return SuperOp(X.spaces, out, ring)


def _series_inverse(X: SuperOp) -> SuperOp:
    """Invert the constant layer exactly, then sum the Neumann series."""
    space = X.ring
    const = SuperOp(X.spaces, {k: v.constant_term() for k, v in X.entries.items()}, QF)
    c_inv = _field_inverse(const).to_series(space)
    Y = c_inv * X.to_series(space)
    N = Y - SuperOp.identity(X.spaces, space)
    out = SuperOp.identity(X.spaces, space)
    term = SuperOp.identity(X.spaces, space)
    while True:
        term = -(term * N)
        if term.is_zero():
            break
        out = out + term
    return out * c_inv


def unit_coefficient(X: SuperOp, *units: Tuple[int, int]):
    """Coefficient of e_{i1 j1} (x) e_{i2 j2} ... in X (1-based indices)."""
    rd = tuple(i - 1 for i, _ in units)
    cd = tuple(j - 1 for _, j in units)
    v = X.get(X.index(rd), X.index(cd))
    return v if unit_sign(X.spaces, rd, cd) > 0 else -v


def eye(n: int, ring=QF, space: SuperSpace = V) -> SuperOp:
    return SuperOp.identity((space,) * n, ring)
