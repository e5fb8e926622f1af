"""q-Pochhammer symbols and basic hypergeometric series on truncated series."""

from __future__ import annotations

from .series import SeriesError, TruncatedSeries, series_invert


class SingularParameterError(SeriesError):
    pass


def _base(base, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(base, str):
        return like.gen(base)
    return base


def _lift(x, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    return like.scalar(x)


def _positive_order(s: TruncatedSeries) -> bool:
    return s.constant_term().is_zero()


def poch_finite(a, base, n: int, like: TruncatedSeries = None) -> TruncatedSeries:
    """(a; base)_n = prod_{k<n} (1 - a base^k)."""
    if n < 0:
        raise ValueError("Pochhammer length must be non-negative")
    like = like if like is not None else (base if isinstance(base, TruncatedSeries) else a)
    b = _base(base, like)
    a = _lift(a, b)
    result = b.one()
    bk = b.one()
    for _ in range(n):
        result = result * (b.one() - a * bk)
        bk = bk * b
    return result


def poch_infinite(a, base, like: TruncatedSeries = None) -> TruncatedSeries:
    """(a; base)_oo, stopping once the factors are 1 modulo truncation."""
    like = like if like is not None else (base if isinstance(base, TruncatedSeries) else a)
    b = _base(base, like)
    if not _positive_order(b):
        raise SeriesError("Pochhammer base must have positive order")
    a = _lift(a, b)
    result = b.one()
    bk = b.one()
    while True:
        t = a * bk
        if t.is_zero():
            if bk.is_zero():
                return result
        else:
            result = result * (b.one() - t)
        if bk.is_zero():
            return result
        bk = bk * b


def hyper_2phi1(qa, qb, qc, base, x: TruncatedSeries, N: int = None) -> TruncatedSeries:
    """2phi1(qa, qb; qc; base, x) = sum_n (qa)_n (qb)_n / ((base)_n (qc)_n) x^n.

    Parameters may be coefficient-field values or series.  Summation stops
    at n = N or once x^n vanishes modulo truncation.
    """
    b = _base(base, x)
    qa, qb, qc = _lift(qa, b), _lift(qb, b), _lift(qc, b)
    one = b.one()
    total = one
    ratio = one     # (qa)_n (qb)_n / ((base)_n (qc)_n)
    xn = one
    bk = one        # base^n
    n = 0
    while N is None or n < N:
        xn = xn * x
        if xn.is_zero():
            break
        den = (one - b * bk) * (one - qc * bk)
        if den.constant_term().is_zero():
            raise SingularParameterError(
                f"vanishing denominator Pochhammer factor at n={n + 1}")
        ratio = ratio * (one - qa * bk) * (one - qb * bk) * series_invert(den)
        total = total + ratio * xn
        bk = bk * b
        n += 1
    return total


def hyper_1phi0(qa, base, x: TruncatedSeries, N: int = None) -> TruncatedSeries:
    """1phi0(qa; -; base, x) = sum_n (qa)_n / (base)_n x^n."""
    b = _base(base, x)
    qa = _lift(qa, b)
    one = b.one()
    total, ratio, xn, bk = one, one, one, one
    n = 0
    while N is None or n < N:
        xn = xn * x
        if xn.is_zero():
            break
        ratio = ratio * (one - qa * bk) * series_invert(one - b * bk)
        total = total + ratio * xn
        bk = bk * b
        n += 1
    return total
