"""Rigorous truncated normal form of the Ricker map at the positive fixed point.

Works with bivariate polynomials in ``z, zbar`` truncated at total degree 4,
stored as ``{(k, l): ComplexInterval}``.  Starting from the Taylor expansion of
the complexified map ``G(z) = mu z + g(z, zbar)``, the quadratic and cubic
terms (except ``w^2 wbar``) are removed by ``z = h(w)``.  What remains is

    w -> mu w + c_1 w^2 wbar + sum_{k+l=4} r_kl w^k wbar^l + O(|w|^5).

Everything is computed with interval coefficients, so it is an independent
check of the closed-form table in :mod:`ricker_proof.coefficients`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .interval import ComplexInterval, Interval, cabs, sqrt

Poly = dict[tuple[int, int], ComplexInterval]

MAX_DEGREE = 4
_ZERO = ComplexInterval(Interval(0.0, 0.0), Interval(0.0, 0.0))
_ONE = ComplexInterval(Interval(1.0, 1.0), Interval(0.0, 0.0))


def padd(p: Poly, q: Poly, sign: float = 1.0) -> Poly:
    r = dict(p)
    for key, c in q.items():
        term = c if sign == 1.0 else -c
        r[key] = r[key] + term if key in r else term
    return r


def pscale(p: Poly, c) -> Poly:
    return {key: v * c for key, v in p.items()}


def pmul(p: Poly, q: Poly, max_degree: int = MAX_DEGREE) -> Poly:
    r: Poly = {}
    for (a, b), c in p.items():
        for (d, e), f in q.items():
            if a + b + d + e > max_degree:
                continue
            key = (a + d, b + e)
            prod = c * f
            r[key] = r[key] + prod if key in r else prod
    return r


def pconj(p: Poly) -> Poly:
    """Coefficients of ``conj(p(z, zbar))`` as a polynomial in ``z, zbar``."""
    return {(b, a): c.conj() for (a, b), c in p.items()}


def compose(p: Poly, z: Poly, max_degree: int = MAX_DEGREE) -> Poly:
    """``p(Z, conj Z)`` for a polynomial ``Z`` without constant term."""
    zb = pconj(z)
    top = max((k + l for k, l in p), default=0)
    zpow: list[Poly] = [{(0, 0): _ONE}]
    zbpow: list[Poly] = [{(0, 0): _ONE}]
    for _ in range(top):
        zpow.append(pmul(zpow[-1], z, max_degree))
        zbpow.append(pmul(zbpow[-1], zb, max_degree))
    out: Poly = {}
    for (k, l), c in p.items():
        if k + l > max_degree:
            continue
        out = padd(out, pscale(pmul(zpow[k], zbpow[l], max_degree), c))
    return out


def order_part(p: Poly, order: int) -> Poly:
    return {key: c for key, c in p.items() if sum(key) == order}


def map_expansion(alpha: Interval) -> tuple[ComplexInterval, Poly]:
    """``(mu, g)`` with ``G(z) = mu z + g(z, zbar)`` up to degree 4.

    In ``u = x - alpha, v = y - alpha`` the map is linear part plus
    ``(0, v (e^-u - 1) + alpha (e^-u - 1 + u))``; ``z = <p, (u, v)>`` and
    ``(u, v) = 2 Re(z q)``.
    """
    s = _sqrt(4.0 * alpha - 1.0)
    half = Interval(0.5, 0.5)
    m = ComplexInterval(half, half * s)
    inv2a = 1.0 / (2.0 * alpha)
    u: Poly = {
        (1, 0): ComplexInterval(inv2a, -(s * inv2a)),
        (0, 1): ComplexInterval(inv2a, s * inv2a),
    }
    v: Poly = {(1, 0): _ONE, (0, 1): _ONE}
    em1: Poly = {}
    upow: Poly = {(0, 0): _ONE}
    for n in range(1, MAX_DEGREE + 1):
        upow = pmul(upow, u)
        em1 = padd(em1, pscale(upow, ((-1) ** n) / factorial(n)))
    f2 = padd(pmul(v, em1), pscale(padd(em1, u), alpha))
    # conj of the second component of p, (s - i) / (2 s)
    pc = ComplexInterval(half, -(half / s))
    return m, pscale(f2, pc)


@dataclass(frozen=True)
class NormalForm:
    mu: ComplexInterval
    g: Poly          # Taylor coefficients of g as plain polynomial coefficients
    h: Poly          # coefficients of h(w) - w as plain polynomial coefficients
    hinv: Poly       # truncated inverse h_inv(z), including the linear term
    reduced: Poly    # h_inv(G(h(w))) truncated at degree 4

    @property
    def c1(self) -> ComplexInterval:
        return self.reduced[(2, 1)]

    @property
    def remainder(self) -> Poly:
        return order_part(self.reduced, 4)

    def named_h(self, k: int, l: int) -> ComplexInterval:
        """``h_kl`` in the ``h_kl / (k! l!)`` convention of the transformation."""
        return self.h[(k, l)] * float(factorial(k) * factorial(l))

    def named_g(self, k: int, l: int) -> ComplexInterval:
        return self.g[(k, l)] * float(factorial(k) * factorial(l))


def _inverse(h: Poly) -> Poly:
    """Truncated inverse of ``w -> w + h(w)``: iterate ``w = z - h(w)``."""
    z: Poly = {(1, 0): _ONE}
    w = dict(z)
    for _ in range(MAX_DEGREE - 1):
        w = padd(z, compose(h, w), -1.0)
    return w


def _reduce(m: ComplexInterval, g: Poly, h: Poly) -> tuple[Poly, Poly]:
    hw = padd({(1, 0): _ONE}, h)
    gmap = padd({(1, 0): m}, g)
    hinv = _inverse(h)
    return compose(hinv, compose(gmap, hw)), hinv


def _sqrt(x):
    return x.sqrt() if hasattr(x, "sqrt") else sqrt(x)


def modulus(c: ComplexInterval):
    """``|c|`` for scalar or array-backed rectangles."""
    sq = c.re * c.re if not hasattr(c.re, "sqr") else c.re.sqr()
    sq = sq + (c.im * c.im if not hasattr(c.im, "sqr") else c.im.sqr())
    if not hasattr(sq, "sqrt"):
        return cabs(c)
    # a sum of squares: the one-ulp nudge below zero is spurious
    return type(sq)(np.maximum(sq.lo, 0.0), sq.hi).sqrt()


def normal_form_uncached(alpha) -> NormalForm:
    """Normal form over ``alpha``: an :class:`Interval` or an ``IntervalArray``."""
    if not (np.all(np.asarray(alpha.lo) > 0.25) and np.all(np.asarray(alpha.hi) <= 1.0)):
        raise ValueError(f"normal form needs alpha in (1/4, 1], got {alpha}")
    m, g = map_expansion(alpha)
    mb = m.conj()
    h: Poly = {}
    for order in (2, 3):
        red, _ = _reduce(m, g, h)
        for k in range(order + 1):
            l = order - k
            if (k, l) == (2, 1):
                continue
            h[(k, l)] = red.get((k, l), _ZERO) / (m ** k * mb ** l - m)
    red, hinv = _reduce(m, g, h)
    return NormalForm(m, g, h, hinv, red)


@lru_cache(maxsize=4096)
def normal_form(alpha: Interval) -> NormalForm:
    return normal_form_uncached(alpha)
