"""Closed-form normal-form coefficients of the Ricker map at the fixed point.

Each function takes a parameter interval ``alpha`` inside ``(1/4, 1]`` and
returns a :class:`ComplexInterval` enclosing the coefficient for every alpha in
it.  Moduli (``|h_inv^kl|``, ``|r_2^kl|``) and ``a(alpha)`` come back as
rectangles with a degenerate zero imaginary part.

``s`` below always denotes ``sqrt(4 alpha - 1)``; the expression
``sqrt(1 - 4 alpha)`` is taken on its principal branch, ``i s``.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .interval import ComplexInterval, I_UNIT, Interval, cabs, sqrt

CI = ComplexInterval
I = I_UNIT


def _check(alpha: Interval) -> None:
    if not (alpha.lo > 0.25 and alpha.hi <= 1.0):
        raise ValueError(f"coefficients need alpha in (1/4, 1], got {alpha}")


def root4(alpha: Interval) -> Interval:
    """``sqrt(4 alpha - 1)`` as a real interval."""
    return sqrt(4.0 * alpha - 1.0)


def poly(alpha: Interval, coeffs: Sequence[int]) -> Interval:
    """Horner evaluation of ``sum c_i alpha^i`` (coefficients low to high)."""
    acc = Interval.point(float(coeffs[-1]))
    for c in reversed(coeffs[:-1]):
        acc = acc * alpha + float(c)
    return acc


def _real(x: Interval) -> CI:
    return CI(x, Interval(0.0, 0.0))


def mu(alpha: Interval) -> CI:
    """Eigenvalue ``(1 + i s) / 2`` of the linear part."""
    _check(alpha)
    s = root4(alpha)
    return CI(Interval(0.5, 0.5), 0.5 * s)


# -- Taylor coefficients g_kl of the complexified map -------------------------

def _g(alpha: Interval) -> dict[tuple[int, int], CI]:
    a, s = alpha, root4(alpha)
    si = _real(s)
    return {
        (2, 0): CI.coerce(-0.5) + 3.0 * I / (2.0 * si),
        (1, 1): 2.0 * _real(a - 1.0) / (_real(4.0 * a - 1.0) + I * s),
        (0, 2): I * a * (3.0 * I + s) / (si * (I - 2.0 * I * a + s)),
        (3, 0): -(I * (_real(1.0 + a) - I * s)) / _real(a * s),
        (2, 1): (-3.0 * I + 2.0 * I * a + s) / _real(2.0 * a * s),
        (1, 2): 2.0 * (3.0 * I - 2.0 * I * a + s) / (si * (I + s) ** 2),
        (0, 3): 4.0 * I * a * (5.0 * I + s) / (si * (I + s) ** 3),
        (4, 0): 8.0 * (_real(a - 2.0) - 2.0 * I * s) / (si * (s - I) ** 3),
        (3, 1): -(2.0 * (-2.0 * I + I * a + s)) / (a * (-I + 4.0 * I * a + s)),
        (2, 2): _real(2.0 * (a - 2.0)) / (a * (_real(4.0 * a - 1.0) + I * s)),
        (1, 3): 8.0 * (_real(2.0 - a) - I * s) / (si * (I + s) ** 3),
        (0, 4): 8.0 * a * (7.0 * I + s) / (si * (I + s) ** 4),
    }


def eval_gkl(alpha: Interval, k: int, l: int) -> CI:
    _check(alpha)
    table = _g(alpha)
    if (k, l) not in table:
        raise IndexError(f"g_{k}{l} is not tabulated")
    return table[(k, l)]


# -- coefficients h_kl of the near-identity change of variables ---------------

def _h(alpha: Interval) -> dict[tuple[int, int], CI]:
    a, s = alpha, root4(alpha)
    si = _real(s)
    r14 = I * s
    h30_num = 16.0 * (-12.0 - 12.0 * I * s + a * (45.0 + 21.0 * I * s + a * (_real(2.0 * a - 27.0) - 5.0 * I * s)))
    h30_den = (1.0 + r14) ** 4 * si * (I + s + a * (-2.0 * I + a * (-5.0 * I + s)))
    h12_num = 4.0 * I + a * (-4.0 * (5.0 * I + 3.0 * s) + a * (28.0 * I + 18.0 * s + a * (
        -31.0 * I - 9.0 * s + a * (9.0 * I + s))))
    h12_den = _real(powi3(a)) * (-I + s + a * (6.0 * I + a * (-13.0 * I - 15.0 * s + 2.0 * a * (10.0 * I + s))))
    h03_num = 2.0 * (5.0 * I + 7.0 * s + a * (-29.0 * I - 14.0 * s + a * (17.0 * I - I * a + 3.0 * s)))
    h03_den = I + s + a * (-2.0 * (7.0 * I + 6.0 * s) + a * (70.0 * I + 46.0 * s + a * (
        -6.0 * (23.0 * I + 10.0 * s) + a * (73.0 * I - 4.0 * I * a + 13.0 * s))))
    return {
        (2, 0): 2.0 * (1.0 + r14 - a) / (a * (_real(1.0 - 4.0 * a) + I * s)),
        (1, 1): _real(2.0 * (a - 1.0)) / (a * (_real(4.0 * a - 1.0) - I * s)),
        (0, 2): 2.0 * a * (3.0 * I + s) / ((I + s) ** 2 * (-I + 4.0 * I * a + a * s)),
        (3, 0): h30_num / h30_den,
        (1, 2): h12_num / h12_den,
        (0, 3): h03_num / h03_den,
    }


def powi3(a: Interval) -> Interval:
    return a * a * a


def eval_hkl(alpha: Interval, k: int, l: int) -> CI:
    _check(alpha)
    table = _h(alpha)
    if (k, l) not in table:
        raise IndexError(f"h_{k}{l} is not tabulated")
    return table[(k, l)]


# -- moduli of the inverse-transformation coefficients ------------------------

def _hinv2_sum(a: Interval) -> Interval:
    num = (-2.0 * (a - 1.0) * a + sqrt(powi3(a) * (2.0 + a))
           + sqrt(a ** 5 * (2.0 + a) / poly(a, [-1, 4, 1])))
    return num / (2.0 * sqrt(a ** 5 * (4.0 * a - 1.0)))


def _hinv3_sum(a: Interval) -> Interval:
    t1 = sqrt(poly(a, [36, 15, -12, 4]) / (a ** 5 * poly(a, [-2, 7, 4]))) / 6.0
    t2 = sqrt(poly(a, [6, -40, 75, 0, -21, 4, 4]) / (poly(a, [2, -15, 22, 23, 4]) * 4.0 * a ** 6))
    t3 = sqrt(poly(a, [12, -54, 66, -13, 4, 4]) / (powi3(a) * poly(a, [-1, 13, -57, 88, -18, 7, 4]))) / 6.0
    t4 = sqrt(poly(a, [2, -16, 13, 124, -198, 15, 54, 9])
              / (a ** 6 * (4.0 * a - 1.0) * poly(a, [-1, 4, 1]) ** 2)) / 2.0
    return t1 + t2 + t3 + t4


_C5 = [-1, 5, -2, 1]
_C_2_15 = [2, -15, 22, 23, 4]


def _hinv4(a: Interval) -> dict[tuple[int, int], Interval]:
    q41 = poly(a, [-1, 4, 1])
    h40 = sqrt(poly(a, [-1140, 10874, -12660, -143073, 423177, -211261, 1356, 30869, -13766, -2238, 1489, 256])) / (
        24.0 * sqrt((1.0 - 4.0 * a) ** 2 * a ** 6 * q41 ** 3 * poly(a, _C5)))
    h31 = sqrt(poly(a, [-36, 912, -9354, 49026, -133548, 155248, 24851, -182342, 127014, -47122, -12543,
                        34528, -329, 1925, 2452, 361])) / (
        sqrt(poly(a, _C5)) * 6.0 * a ** 5 * poly(a, _C_2_15))
    # The numerator polynomial enters under a square root, as in the four
    # neighbouring moduli; without it the value is off by two orders of magnitude.
    h22 = sqrt(poly(a, [-16, 4, 2240, -14868, 19782, 91297, -309731, 259610, 81080, -147591, 12815, 19871,
                        -8236, 241, 2132, 361])) / (
        sqrt(poly(a, _C5)) * 4.0 * a ** 5 * poly(a, _C_2_15))
    h13 = sqrt(poly(a, [36, -840, 7728, -35454, 84157, -96139, 39017, 15361, -22836, 10489, 5142, -397,
                        922, 529, 64])) / (
        6.0 * sqrt(a ** 9 * q41 ** 3 * poly(a, [2, -17, 35, 4, -1, 4])))
    h04 = sqrt(poly(a, [36, -396, 1350, -1422, 318, 441, -145, 100, 25])) / (
        24.0 * sqrt(a ** 6 * q41 ** 2 * poly(a, [1, -9, 22, -9, 4])))
    return {(4, 0): h40, (3, 1): h31, (2, 2): h22, (1, 3): h13, (0, 4): h04}


def eval_hinv_kl(alpha: Interval, k: int, l: int) -> CI:
    """``|h_inv^kl|`` for k + l = 4; use :func:`hinv_order_sum` for orders 2 and 3."""
    _check(alpha)
    table = _hinv4(alpha)
    if (k, l) not in table:
        raise IndexError(f"h_inv^{k}{l} is not tabulated")
    return _real(table[(k, l)])


def hinv_order_sum(alpha: Interval, order: int) -> Interval:
    """``sum_{k+l=order} |h_inv^kl|`` from the closed forms (order 2, 3 or 4)."""
    _check(alpha)
    if order == 2:
        return _hinv2_sum(alpha)
    if order == 3:
        return _hinv3_sum(alpha)
    if order == 4:
        t = _hinv4(alpha)
        return t[(4, 0)] + t[(3, 1)] + t[(2, 2)] + t[(1, 3)] + t[(0, 4)]
    raise IndexError(f"no closed form for order {order}")


# -- tabulated fourth-order coefficients of the normal form -------------------

def _r2_tabulated(a: Interval) -> dict[tuple[int, int], Interval]:
    r40 = sqrt(poly(a, [-432, 2808, -5016, 4692, -2584, 930, -210, 7, 27, -6, 1])) / (
        24.0 * sqrt(a ** 4 * poly(a, [-1, 4, 1]) ** 2 * poly(a, [1, -9, 22, -9, 4])))
    r31 = sqrt(poly(a, [90, -810, 1635, 1485, -3462, 4056, -659, -108, -320, 24, 87, -102, 36, 1])) / (
        6.0 * sqrt(a ** 7 * poly(a, [2, -17, 33, 13, 0, 4, 1]) * (4.0 * a - 1.0) ** 2))
    r22 = sqrt(poly(a, [64, -608, 1348, 728, -1692, 1948, -688, -2008, 1184, 742, -355, -136, 34, 14, 1])) / (
        4.0 * sqrt(a ** 9 * (4.0 * a - 1.0) * poly(a, [-2, 7, 6, 1]) ** 2))
    r13 = sqrt(poly(a, [-54, 918, -5973, 18921, -32250, 32742, -15643, 2506, 3246, -3551, 1327, -156, -48,
                        59, 16, 1])) / (
        6.0 * sqrt(a ** 7 * poly(a, [-2, 9, 1, 0, 1]) * poly(a, [6, -48, 90, 4]) ** 2))
    return {(4, 0): r40, (3, 1): r31, (2, 2): r22, (1, 3): r13, (0, 4): r40}


def tabulated_r2_kl(alpha: Interval, k: int, l: int) -> CI:
    """``|r_2^kl|`` from the printed closed forms.

    The ``(1, 3)`` entry disagrees with the composed normal form (about 0.049
    against 0.21 near alpha = 1), so certification uses :func:`eval_r2_kl`.
    """
    _check(alpha)
    table = _r2_tabulated(alpha)
    if (k, l) not in table:
        raise IndexError(f"r_2^{k}{l} is not tabulated")
    return _real(table[(k, l)])


def eval_r2_kl(alpha: Interval, k: int, l: int) -> CI:
    """``|r_2^kl|`` from a rigorous composition of the normal-form transformation."""
    from .normal_form import normal_form

    _check(alpha)
    if k + l != 4 or k < 0 or l < 0:
        raise IndexError(f"r_2^{k}{l} is not a fourth-order coefficient")
    return _real(cabs(normal_form(alpha).remainder[(k, l)]))


def eval_c1(alpha: Interval) -> CI:
    _check(alpha)
    a, s = alpha, root4(alpha)
    num = 2.0 * I - 2.0 * s + a * (2.0 * (-7.0 * I + 5.0 * s) + a * (25.0 * I - 13.0 * s + a * (
        -25.0 * I + 7.0 * s - a * (-7.0 * I + s))))
    den = 2.0 * _real(powi3(a) * s) * (-I + s) * (I * a + s)
    return num / den


def eval_d(alpha: Interval) -> CI:
    """``d = |mu| / mu * c_1``; its real part is ``a(alpha)``."""
    m = mu(alpha)
    return _real(cabs(m)) / m * eval_c1(alpha)


def eval_a(alpha: Interval) -> CI:
    """``a(alpha) = (4 + alpha(-10 + alpha + alpha^2)) / (4 alpha^(3/2) (-1 + alpha(4 + alpha)))``."""
    _check(alpha)
    a = alpha
    return _real(poly(a, [4, -10, 1, 1]) / (4.0 * a * sqrt(a) * poly(a, [-1, 4, 1])))


def a_derivative_sign(alpha: Interval) -> Interval:
    """Enclosure of a polynomial with the sign of ``a'(alpha)``.

    With ``a = N / (4 alpha^(3/2) D)`` the derivative is
    ``(alpha N' D - N (1.5 D + alpha D')) / (4 alpha^(5/2) D^2)``.
    """
    a = alpha
    n, dn = poly(a, [4, -10, 1, 1]), poly(a, [-10, 2, 3])
    d, dd = poly(a, [-1, 4, 1]), poly(a, [4, 2])
    return a * dn * d - n * (1.5 * d + a * dd)


# -- closed-form bound expressions -------------------------------------------

def g2nd_closed(alpha: Interval) -> Interval:
    a = alpha
    return (1.0 - a + sqrt(a * (2.0 + a))) / sqrt(a * (4.0 * a - 1.0))


def g3rd_closed(alpha: Interval) -> Interval:
    a = alpha
    return (sqrt((6.0 + a) / (9.0 * a * (4.0 * a - 1.0)))
            + sqrt((2.0 + (a - 2.0) * a) / (a * a * (4.0 * a - 1.0))))


def g4th_closed(alpha: Interval) -> Interval:
    """Bound on the fourth-order part plus tail of the map's expansion at ``|z| < 1/19``."""
    a = alpha
    num = 4758.0 - 1995.0 * a + 665.0 * sqrt(a * (12.0 + a)) + 2660.0 * sqrt(3.0 + a * a)
    return num / (7980.0 * sqrt(powi3(a) * (4.0 * a - 1.0)))


def order_abs_sum(table: dict[tuple[int, int], CI], order: int, factorial_weights: bool) -> Interval:
    """``sum |c_kl| / (k! l!)`` (or plain ``sum |c_kl|``) over ``k + l = order``."""
    from math import factorial

    total = Interval(0.0, 0.0)
    for (k, l), c in sorted(table.items()):
        if k + l != order:
            continue
        m = cabs(c)
        if factorial_weights:
            m = m / float(factorial(k) * factorial(l))
        total = total + m
    return total


def g_table(alpha: Interval) -> dict[tuple[int, int], CI]:
    _check(alpha)
    return _g(alpha)


def h_table(alpha: Interval) -> dict[tuple[int, int], CI]:
    _check(alpha)
    return _h(alpha)


FormulaFn = Callable[[Interval], Interval]
