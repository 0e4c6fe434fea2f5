"""High-precision oracle for the normal form at the positive fixed point.

The map is written in eigen-coordinates as a function of two *independent*
complex variables ``(z, v)`` (``v`` standing for ``zbar``), and Taylor
coefficients are read off by a discrete Cauchy integral on a small torus.
The normalising change of variables is inverted exactly by fixed-point
iteration, so no truncated series algebra is shared with the package.
"""

from __future__ import annotations

from functools import lru_cache

import mpmath

DPS = 40
RADIUS = mpmath.mpf("0.02")
NODES = 16


def _setup(alpha):
    a = mpmath.mpf(alpha)
    s = mpmath.sqrt(4 * a - 1)
    mu = (1 + 1j * s) / 2
    # (u, v) = z q + zbar conj(q) with q an eigenvector of the linear part
    q = ((1 - 1j * s) / (2 * a), mpmath.mpf(1))
    # coordinate functional: l(q) = 1, l(conj q) = 0
    l1 = 1 / (q[0] - mpmath.conj(q[0]))
    l2 = -l1 * mpmath.conj(q[0])
    return a, mu, q, (l1, l2)


def _map_pair(alpha):
    """``(G, Gc)``: the map and its conjugate companion in variables ``(z, v)``."""
    a, mu, q, l = _setup(alpha)
    qc = (mpmath.conj(q[0]), mpmath.conj(q[1]))
    lc = (mpmath.conj(l[0]), mpmath.conj(l[1]))

    def step(z, v):
        u = z * q[0] + v * qc[0]
        w = z * q[1] + v * qc[1]
        f1 = w
        f2 = (a + w) * mpmath.exp(-u) - a
        return l[0] * f1 + l[1] * f2, lc[0] * f1 + lc[1] * f2

    return mu, step


def coefficients(fn, max_degree: int = 4) -> dict[tuple[int, int], complex]:
    """Taylor coefficients of ``fn(z, v)`` (first output) up to ``max_degree``."""
    n, r = NODES, RADIUS
    roots = [mpmath.exp(2j * mpmath.pi * j / n) for j in range(n)]
    vals = [[fn(r * roots[j], r * roots[m]) for m in range(n)] for j in range(n)]
    out = {}
    for k in range(max_degree + 1):
        for l in range(max_degree + 1 - k):
            acc = mpmath.mpc(0)
            for j in range(n):
                for m in range(n):
                    acc += vals[j][m] * roots[j] ** (-k) * roots[m] ** (-l)
            out[(k, l)] = acc / (n * n) / r ** (k + l)
    return out


def _poly_pair(h: dict):
    """``w -> (w + h(w, v), v + conj-h(v, w))`` for a coefficient table ``h``."""

    def fwd(w, v):
        z = w + sum(c * w**k * v**l for (k, l), c in h.items())
        zc = v + sum(mpmath.conj(c) * v**k * w**l for (k, l), c in h.items())
        return z, zc

    return fwd


def _inverse(fwd, target, iters: int = 60):
    z, zc = target
    w, v = z, zc
    for _ in range(iters):
        fz, fzc = fwd(w, v)
        w, v = w - (fz - z), v - (fzc - zc)
    return w, v


@lru_cache(maxsize=None)
def normal_form(alpha: float):
    """``(mu, g, h, hinv, reduced)`` as plain-coefficient dicts at point ``alpha``."""
    with mpmath.workdps(DPS):
        mu, G = _map_pair(alpha)
        mub = mpmath.conj(mu)
        g = coefficients(lambda z, v: G(z, v)[0])
        h: dict = {}
        for order in (2, 3):
            fwd = _poly_pair(h)

            def conj_map(w, v, fwd=fwd):
                return _inverse(fwd, G(*fwd(w, v)))[0]

            red = coefficients(conj_map, order)
            for k in range(order + 1):
                l = order - k
                if (k, l) != (2, 1):
                    h[(k, l)] = red[(k, l)] / (mu**k * mub**l - mu)
        fwd = _poly_pair(h)
        reduced = coefficients(lambda w, v: _inverse(fwd, G(*fwd(w, v)))[0])
        hinv = coefficients(lambda z, v: _inverse(fwd, (z, v))[0])
        tr = lambda d: {key: complex(val) for key, val in d.items() if abs(val) > mpmath.mpf(10) ** -25}
        return complex(mu), tr(g), tr(h), tr(hinv), tr(reduced)
