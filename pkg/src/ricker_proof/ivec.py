"""Vectorised interval arithmetic on numpy arrays of endpoints.

The batch counterpart of :mod:`ricker_proof.interval`, used where thousands of
boxes are mapped at once.  An interval array is a pair ``(lo, hi)`` of float64
arrays of equal shape.  Each result endpoint is computed in round-to-nearest
and nudged one ulp outward (``EXP_ULPS`` for ``exp``).
"""

from __future__ import annotations

import numpy as np

from .interval import EXP_ULPS

IArr = tuple[np.ndarray, np.ndarray]

_NINF = -np.inf
_PINF = np.inf


def _dn(x: np.ndarray, n: int = 1) -> np.ndarray:
    for _ in range(n):
        x = np.nextafter(x, _NINF)
    return x


def _up(x: np.ndarray, n: int = 1) -> np.ndarray:
    for _ in range(n):
        x = np.nextafter(x, _PINF)
    return x


def const(value_lo: float, value_hi: float, shape) -> IArr:
    return np.full(shape, value_lo, dtype=np.float64), np.full(shape, value_hi, dtype=np.float64)


def add(a: IArr, b: IArr) -> IArr:
    return _dn(a[0] + b[0]), _up(a[1] + b[1])


def sub(a: IArr, b: IArr) -> IArr:
    return _dn(a[0] - b[1]), _up(a[1] - b[0])


def neg(a: IArr) -> IArr:
    return -a[1], -a[0]


def scale(c: float, a: IArr) -> IArr:
    """Multiply by an exactly representable scalar constant."""
    if c >= 0:
        return _dn(c * a[0]), _up(c * a[1])
    return _dn(c * a[1]), _up(c * a[0])


def mul(a: IArr, b: IArr) -> IArr:
    with np.errstate(invalid="ignore", over="ignore"):
        p = np.stack([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    # 0 * inf contributes 0 in the extended interval product.
    p = np.where(np.isnan(p), 0.0, p)
    lo, hi = _dn(p.min(axis=0)), _up(p.max(axis=0))
    # Operands of fixed sign fix the sign of every product, so a zero
    # (exact or underflowed) need not be nudged across it.
    a_pos, a_neg = a[0] >= 0.0, a[1] <= 0.0
    b_pos, b_neg = b[0] >= 0.0, b[1] <= 0.0
    lo = np.where((a_pos & b_pos) | (a_neg & b_neg), np.maximum(lo, 0.0), lo)
    hi = np.where((a_pos & b_neg) | (a_neg & b_pos), np.minimum(hi, -0.0), hi)
    return lo, hi


def mul_nonneg(a: IArr, b: IArr) -> IArr:
    """Product when both operands are known to be nonnegative."""
    with np.errstate(invalid="ignore", over="ignore"):
        lo = a[0] * b[0]
        hi = a[1] * b[1]
    lo = np.where(np.isnan(lo), 0.0, lo)
    hi = np.where(np.isnan(hi), _PINF, hi)
    return np.maximum(_dn(lo), 0.0), _up(hi)


def exp(a: IArr) -> tuple[np.ndarray, np.ndarray, bool]:
    """Endpoint-wise exp; the flag reports an overflow to +inf."""
    with np.errstate(over="ignore", under="ignore"):
        lo = np.exp(a[0])
        hi = np.exp(a[1])
    overflow = bool(np.isinf(hi).any())
    lo = np.maximum(_dn(lo, EXP_ULPS), 0.0)
    hi = np.where(np.isinf(hi), _PINF, _up(hi, EXP_ULPS))
    return lo, hi, overflow


def is_subset(a: IArr, b: IArr) -> np.ndarray:
    return (b[0] <= a[0]) & (a[1] <= b[1])


def sqrt(a: IArr) -> IArr:
    if np.any(a[0] < 0.0):
        raise ValueError("sqrt of an interval reaching below zero")
    return np.maximum(_dn(np.sqrt(a[0])), 0.0), _up(np.sqrt(a[1]))


def div(a: IArr, b: IArr) -> IArr:
    if np.any((b[0] <= 0.0) & (b[1] >= 0.0)):
        raise ZeroDivisionError("interval divisor contains zero")
    q = np.stack([a[0] / b[0], a[0] / b[1], a[1] / b[0], a[1] / b[1]])
    return _dn(q.min(axis=0)), _up(q.max(axis=0))


def sqr(a: IArr) -> IArr:
    lo2, hi2 = a[0] * a[0], a[1] * a[1]
    mx = _up(np.maximum(lo2, hi2))
    mn = np.where((a[0] <= 0.0) & (a[1] >= 0.0), 0.0, np.maximum(_dn(np.minimum(lo2, hi2)), 0.0))
    return mn, mx


class IntervalArray:
    """A vector of intervals with the scalar :class:`Interval` operator set.

    Lets code written against ``Interval`` (and ``ComplexInterval`` built
    on it) evaluate many parameter pieces in one pass.  Operands may be other
    arrays, scalar intervals or floats.
    """

    __slots__ = ("lo", "hi")
    defers_interval_ops = True
    real_interval_like = True

    def __init__(self, lo, hi):
        self.lo = np.asarray(lo, dtype=np.float64)
        self.hi = np.asarray(hi, dtype=np.float64)

    @classmethod
    def from_intervals(cls, items) -> "IntervalArray":
        return cls([i.lo for i in items], [i.hi for i in items])

    def to_intervals(self):
        from .interval import Interval

        return [Interval(float(l), float(h)) for l, h in zip(self.lo, self.hi)]

    @staticmethod
    def _pair(x) -> IArr:
        if isinstance(x, IntervalArray):
            return x.lo, x.hi
        if hasattr(x, "lo"):
            return np.float64(x.lo), np.float64(x.hi)
        v = np.float64(x)
        return v, v

    def _wrap(self, r: IArr) -> "IntervalArray":
        return IntervalArray(*np.broadcast_arrays(r[0], r[1]))

    def __add__(self, o):
        return self._wrap(add((self.lo, self.hi), self._pair(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(sub((self.lo, self.hi), self._pair(o)))

    def __rsub__(self, o):
        return self._wrap(sub(self._pair(o), (self.lo, self.hi)))

    def __mul__(self, o):
        return self._wrap(mul((self.lo, self.hi), self._pair(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self._wrap(div((self.lo, self.hi), self._pair(o)))

    def __rtruediv__(self, o):
        return self._wrap(div(self._pair(o), (self.lo, self.hi)))

    def __neg__(self):
        return IntervalArray(-self.hi, -self.lo)

    def __pow__(self, n: int):
        if n == 2:
            return self.sqr()
        if n < 1:
            raise ValueError("IntervalArray powers need n >= 1")
        r = self
        for _ in range(n - 1):
            r = r * self
        return r

    def sqr(self):
        return self._wrap(sqr((self.lo, self.hi)))

    def sqrt(self):
        return self._wrap(sqrt((self.lo, self.hi)))

    def all_positive(self) -> bool:
        return bool(np.all(self.lo > 0.0))

    def __len__(self) -> int:
        return int(self.lo.size)
