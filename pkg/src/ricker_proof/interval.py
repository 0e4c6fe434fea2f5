"""Rigorous real and rectangular-complex interval arithmetic.

Endpoints are binary64 floats.  Every operation computes its endpoints in
round-to-nearest and then nudges them outward by one ulp (two for ``exp``), so
the result contains the exact real result for every choice of arguments
inside the operands.  Sums and differences are left untouched when an
error-free transformation shows the rounded result is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Number = Union[int, float]

_INF = math.inf

# np.exp / math.exp are faithfully rounded on every supported platform; two
# ulps leave a margin of one.
EXP_ULPS = 2


class IntervalError(ArithmeticError):
    """Base class for interval arithmetic failures."""


class DivisionByZeroInterval(IntervalError, ZeroDivisionError):
    """The divisor interval contains zero."""


class DomainError(IntervalError, ValueError):
    """An argument interval leaves the domain of the function."""


def down(x: float, n: int = 1) -> float:
    for _ in range(n):
        x = math.nextafter(x, -_INF)
    return x


def up(x: float, n: int = 1) -> float:
    for _ in range(n):
        x = math.nextafter(x, _INF)
    return x


def _two_sum_err(a: float, b: float, s: float) -> float:
    # Knuth's TwoSum: a + b == s + err exactly.
    bb = s - a
    return (a - (s - bb)) + (b - bb)


def _add_down(a: float, b: float) -> float:
    s = a + b
    if math.isinf(s) or math.isinf(a) or math.isinf(b):
        return s
    return s if _two_sum_err(a, b, s) >= 0 else down(s)


def _add_up(a: float, b: float) -> float:
    s = a + b
    if math.isinf(s) or math.isinf(a) or math.isinf(b):
        return s
    return s if _two_sum_err(a, b, s) <= 0 else up(s)


_SPLITTER = 134217729.0  # 2**27 + 1
_SAFE_MAX = 2.0**995
_SAFE_MIN = 2.0**-969


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod_err(a: float, b: float, p: float) -> float | None:
    """Exact ``a*b - p`` via Dekker's algorithm, ``None`` outside the safe range."""
    if not (_SAFE_MIN < abs(a) < _SAFE_MAX and _SAFE_MIN < abs(b) < _SAFE_MAX):
        return None
    if not (_SAFE_MIN < abs(p) < _SAFE_MAX):
        return None
    ah, al = _split(a)
    bh, bl = _split(b)
    return al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def _mul_down(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    if math.isinf(p):
        return p if p < 0 or math.isinf(a) or math.isinf(b) else _MAXF
    e = _two_prod_err(a, b, p)
    if e is not None and e >= 0:
        return p
    # An underflowing product keeps the sign the exact one has.
    return max(0.0, down(p)) if (a > 0.0) == (b > 0.0) else down(p)


def _mul_up(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    if math.isinf(p):
        return p if p > 0 or math.isinf(a) or math.isinf(b) else -_MAXF
    e = _two_prod_err(a, b, p)
    if e is not None and e <= 0:
        return p
    return up(p) if (a > 0.0) == (b > 0.0) else min(-0.0, up(p))


_MAXF = 1.7976931348623157e308


def fraction_to_interval(q: Fraction) -> "Interval":
    """Tightest float interval containing the rational ``q``."""
    f = float(q)
    fq = Fraction(f)
    if fq == q:
        return Interval(f, f)
    if fq < q:
        return Interval(f, up(f))
    return Interval(down(f), f)


@dataclass(frozen=True, slots=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval endpoint is NaN")
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    # -- construction ------------------------------------------------------
    @classmethod
    def point(cls, x: Number) -> "Interval":
        return cls(x, x)

    @classmethod
    def from_decimal(cls, text: str) -> "Interval":
        """Enclose a decimal literal that may not be representable."""
        return fraction_to_interval(Fraction(text))

    @classmethod
    def from_decimals(cls, lo: str, hi: str) -> "Interval":
        return cls(cls.from_decimal(lo).lo, cls.from_decimal(hi).hi)

    @staticmethod
    def coerce(x: "Interval | Number") -> "Interval":
        if isinstance(x, Interval):
            return x
        if isinstance(x, Fraction):
            return fraction_to_interval(x)
        return Interval(x, x)

    # -- queries -----------------------------------------------------------
    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        if math.isinf(self.lo) or math.isinf(self.hi):
            return 0.0 if self.lo == -self.hi else (self.lo if math.isinf(self.hi) else self.hi)
        return 0.5 * self.lo + 0.5 * self.hi

    def contains(self, x: "Interval | Number") -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def __contains__(self, x: Number) -> bool:
        return self.contains(x)

    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    # -- arithmetic --------------------------------------------------------
    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other: "Interval | Number") -> "Interval":
        if getattr(other, "defers_interval_ops", False):
            return NotImplemented
        o = Interval.coerce(other)
        return Interval(_add_down(self.lo, o.lo), _add_up(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other: "Interval | Number") -> "Interval":
        if getattr(other, "defers_interval_ops", False):
            return NotImplemented
        o = Interval.coerce(other)
        return Interval(_add_down(self.lo, -o.hi), _add_up(self.hi, -o.lo))

    def __rsub__(self, other: Number) -> "Interval":
        if getattr(other, "defers_interval_ops", False):
            return NotImplemented
        return Interval.coerce(other) - self

    def __mul__(self, other: "Interval | Number") -> "Interval":
        if getattr(other, "defers_interval_ops", False):
            return NotImplemented
        o = Interval.coerce(other)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        return Interval(min(_mul_down(a, b) for a, b in pairs), max(_mul_up(a, b) for a, b in pairs))

    __rmul__ = __mul__

    def __truediv__(self, other: "Interval | Number") -> "Interval":
        if getattr(other, "defers_interval_ops", False):
            return NotImplemented
        o = Interval.coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise DivisionByZeroInterval(f"division by {o}")
        qs = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi]
        qs = [0.0 if math.isnan(q) else q for q in qs]
        return Interval(down(min(qs)), up(max(qs)))

    def __rtruediv__(self, other: Number) -> "Interval":
        if getattr(other, "defers_interval_ops", False):
            return NotImplemented
        return Interval.coerce(other) / self

    def __pow__(self, n: int) -> "Interval":
        return powi(self, n)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> list[float]:
        return [self.lo, self.hi]

    @classmethod
    def from_json(cls, pair: Iterable[float]) -> "Interval":
        lo, hi = pair
        return cls(float(lo), float(hi))

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"


# -- elementary functions --------------------------------------------------

def exp(a: Interval) -> Interval:
    def _lo(x: float) -> float:
        if x == 0.0:
            return 1.0
        if x == -_INF:
            return 0.0
        try:
            return max(0.0, down(math.exp(x), EXP_ULPS))
        except OverflowError:
            return _MAXF

    def _hi(x: float) -> float:
        if x == 0.0:
            return 1.0
        try:
            v = math.exp(x)
        except OverflowError:
            return _INF
        return up(v, EXP_ULPS)

    return Interval(_lo(a.lo), _hi(a.hi))


def sqrt(a: Interval) -> Interval:
    if a.lo < 0.0:
        raise DomainError(f"sqrt of {a}")
    lo = math.sqrt(a.lo)
    hi = math.sqrt(a.hi)
    lo = lo if _mul_up(lo, lo) <= a.lo else max(0.0, down(lo))
    hi = hi if math.isinf(hi) or _mul_down(hi, hi) >= a.hi else up(hi)
    return Interval(lo, hi)


def iabs(a: Interval) -> Interval:
    if a.lo >= 0.0:
        return a
    if a.hi <= 0.0:
        return -a
    return Interval(0.0, max(-a.lo, a.hi))


def _pow_down(x: float, n: int) -> float:
    r = 1.0
    for _ in range(n):
        r = _mul_down(r, x)
    return r


def _pow_up(x: float, n: int) -> float:
    r = 1.0
    for _ in range(n):
        r = _mul_up(r, x)
    return r


def powi(a: Interval, n: int) -> Interval:
    """Integer power with the correct minimum 0 for even powers."""
    if n < 0:
        return 1.0 / powi(a, -n)
    if n == 0:
        return Interval(1.0, 1.0)
    if n % 2 == 0:
        m = iabs(a)
        return Interval(_pow_down(m.lo, n), _pow_up(m.hi, n))
    lo = _pow_down(a.lo, n) if a.lo >= 0.0 else -_pow_up(-a.lo, n)
    hi = _pow_up(a.hi, n) if a.hi >= 0.0 else -_pow_down(-a.hi, n)
    return Interval(lo, hi)


def hull(a: Interval, b: Interval) -> Interval:
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi))


def intersects(a: Interval, b: Interval) -> bool:
    return a.lo <= b.hi and b.lo <= a.hi


def intersection(a: Interval, b: Interval) -> Interval | None:
    """Common part of two closed intervals, ``None`` when they are disjoint."""
    if not intersects(a, b):
        return None
    return Interval(max(a.lo, b.lo), min(a.hi, b.hi))


def is_subset(a: Interval, b: Interval) -> bool:
    return b.lo <= a.lo and a.hi <= b.hi


def is_interior(a: Interval, b: Interval) -> bool:
    """``a`` lies in the open interior of ``b``."""
    return b.lo < a.lo and a.hi < b.hi


def width(a: Interval) -> float:
    return a.width


def midpoint(a: Interval) -> float:
    return a.mid


def imin(a: Interval, b: Interval) -> Interval:
    return Interval(min(a.lo, b.lo), min(a.hi, b.hi))


def imax(a: Interval, b: Interval) -> Interval:
    return Interval(max(a.lo, b.lo), max(a.hi, b.hi))


# -- boxes -----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Box2:
    x: Interval
    y: Interval

    @classmethod
    def square(cls, side: Interval) -> "Box2":
        return cls(side, side)

    @classmethod
    def from_bounds(cls, x_lo: float, x_hi: float, y_lo: float, y_hi: float) -> "Box2":
        return cls(Interval(x_lo, x_hi), Interval(y_lo, y_hi))

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return self.x.lo, self.x.hi, self.y.lo, self.y.hi

    @property
    def diameter(self) -> float:
        return math.hypot(self.x.width, self.y.width)

    @property
    def mid(self) -> tuple[float, float]:
        return self.x.mid, self.y.mid

    def contains_point(self, p: tuple[float, float]) -> bool:
        return p[0] in self.x and p[1] in self.y

    def split4(self) -> list["Box2"]:
        xm, ym = self.x.mid, self.y.mid
        xs = (Interval(self.x.lo, xm), Interval(xm, self.x.hi))
        ys = (Interval(self.y.lo, ym), Interval(ym, self.y.hi))
        return [Box2(a, b) for b in ys for a in xs]

    def to_json(self) -> list[list[float]]:
        return [self.x.to_json(), self.y.to_json()]

    @classmethod
    def from_json(cls, data: list[list[float]]) -> "Box2":
        return cls(Interval.from_json(data[0]), Interval.from_json(data[1]))


def box_hull(a: Box2, b: Box2) -> Box2:
    return Box2(hull(a.x, b.x), hull(a.y, b.y))


def box_intersects(a: Box2, b: Box2) -> bool:
    return intersects(a.x, b.x) and intersects(a.y, b.y)


def box_is_subset(a: Box2, b: Box2) -> bool:
    return is_subset(a.x, b.x) and is_subset(a.y, b.y)


# -- rectangular complex intervals -----------------------------------------

@dataclass(frozen=True, slots=True)
class ComplexInterval:
    """Rectangle ``re + i im``.

    The parts may also be any real-interval type with the same operators
    (the batch evaluator uses numpy-backed intervals).
    """

    re: Interval
    im: Interval

    defers_interval_ops = True

    @classmethod
    def coerce(cls, x: "ComplexInterval | Interval | Number | complex") -> "ComplexInterval":
        if isinstance(x, ComplexInterval):
            return x
        if isinstance(x, Interval) or getattr(x, "real_interval_like", False):
            return cls(x, Interval(0.0, 0.0))
        if isinstance(x, complex):
            return cls(Interval.point(x.real), Interval.point(x.imag))
        return cls(Interval.coerce(x), Interval(0.0, 0.0))

    def __add__(self, other) -> "ComplexInterval":
        o = ComplexInterval.coerce(other)
        return ComplexInterval(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexInterval":
        o = ComplexInterval.coerce(other)
        return ComplexInterval(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "ComplexInterval":
        return ComplexInterval.coerce(other) - self

    def __neg__(self) -> "ComplexInterval":
        return ComplexInterval(-self.re, -self.im)

    def __mul__(self, other) -> "ComplexInterval":
        o = ComplexInterval.coerce(other)
        a, b, c, d = self.re, self.im, o.re, o.im
        return ComplexInterval(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ComplexInterval":
        o = ComplexInterval.coerce(other)
        den = _sqr(o.re) + _sqr(o.im)
        if not _positive(den):
            raise DivisionByZeroInterval(f"complex division by {o}")
        a, b, c, d = self.re, self.im, o.re, o.im
        return ComplexInterval((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other) -> "ComplexInterval":
        return ComplexInterval.coerce(other) / self

    def __pow__(self, n: int) -> "ComplexInterval":
        if n < 0:
            return 1.0 / (self ** -n)
        result = ComplexInterval.coerce(1.0)
        for _ in range(n):
            result = result * self
        return result

    def conj(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def contains(self, z: complex) -> bool:
        return z.real in self.re and z.imag in self.im

    def to_json(self) -> dict[str, list[float]]:
        return {"re": self.re.to_json(), "im": self.im.to_json()}


def _sqr(x):
    return x.sqr() if hasattr(x, "sqr") else powi(x, 2)


def _positive(x) -> bool:
    return bool(x.all_positive()) if hasattr(x, "all_positive") else x.lo > 0.0


I_UNIT = ComplexInterval(Interval(0.0, 0.0), Interval(1.0, 1.0))


def cadd(a: ComplexInterval, b: ComplexInterval) -> ComplexInterval:
    return a + b


def csub(a: ComplexInterval, b: ComplexInterval) -> ComplexInterval:
    return a - b


def cmul(a: ComplexInterval, b: ComplexInterval) -> ComplexInterval:
    return a * b


def cdiv(a: ComplexInterval, b: ComplexInterval) -> ComplexInterval:
    return a / b


def cabs(a: ComplexInterval) -> Interval:
    return sqrt(powi(a.re, 2) + powi(a.im, 2))
