from math import factorial

import mpmath
import numpy as np
import pytest

from nf_oracle import normal_form as oracle_normal_form
from ricker_proof import coefficients as C
from ricker_proof.interval import ComplexInterval, Interval, cabs
from ricker_proof.ivec import IntervalArray
from ricker_proof.normal_form import normal_form, normal_form_uncached

ALPHAS = [1.0, 0.9995, 0.9]
SLACK = 1e-13


@pytest.fixture(scope="module", params=ALPHAS)
def case(request):
    a = request.param
    return Interval(a, a), oracle_normal_form(a)


def near(c: ComplexInterval, z: complex, slack: float = SLACK) -> bool:
    return (c.re.lo - slack <= z.real <= c.re.hi + slack) and (c.im.lo - slack <= z.imag <= c.im.hi + slack)


def near_real(iv: Interval, x: float, slack: float = SLACK) -> bool:
    return iv.lo - slack <= x <= iv.hi + slack


def fw(k: int, l: int) -> int:
    return factorial(k) * factorial(l)


# -- composed normal form against the Cauchy-integral oracle --------------------

def test_composed_normal_form_matches_oracle(case):
    alpha, (mu, g, h, hinv, red) = case
    nf = normal_form(alpha)
    assert near(nf.mu, mu)
    for key, c in nf.g.items():
        if sum(key) >= 2:
            assert near(c, g.get(key, 0j)), key
    for key, c in nf.h.items():
        assert near(c, h.get(key, 0j)), key
    for key, c in nf.hinv.items():
        assert near(c, hinv.get(key, 0j)), key
    for key, c in nf.reduced.items():
        assert near(c, red.get(key, 0j)), key


def test_reduced_map_has_only_resonant_cubic(case):
    alpha, _ = case
    nf = normal_form(alpha)
    for key, c in nf.reduced.items():
        if sum(key) in (2, 3) and key != (2, 1):
            assert abs(c.re.mid) < 1e-12 and abs(c.im.mid) < 1e-12, key


# -- printed closed forms against the oracle ----------------------------------------

def test_closed_form_g_table(case):
    alpha, (_, g, *_rest) = case
    for (k, l), c in C.g_table(alpha).items():
        assert near(c, g.get((k, l), 0j) * fw(k, l), 1e-11), (k, l)


def test_closed_form_h_table(case):
    alpha, (_, _, h, *_rest) = case
    for (k, l), c in C.h_table(alpha).items():
        assert near(c, h.get((k, l), 0j) * fw(k, l), 1e-11), (k, l)


@pytest.mark.parametrize("order", [2, 3, 4])
def test_inverse_moduli_sums(case, order):
    alpha, (_, _, _, hinv, _) = case
    exact = sum(abs(v) for k, v in hinv.items() if sum(k) == order)
    assert near_real(C.hinv_order_sum(alpha, order), exact, 1e-11)


def test_inverse_fourth_order_moduli(case):
    alpha, (_, _, _, hinv, _) = case
    for key in [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]:
        assert near_real(C.eval_hinv_kl(alpha, *key).re, abs(hinv[key]), 1e-11), key


def test_resonant_coefficient_and_a(case):
    alpha, (mu, _, _, _, red) = case
    assert near(C.eval_c1(alpha), red[(2, 1)], 1e-11)
    a_val = (abs(mu) / mu * red[(2, 1)]).real
    assert near_real(C.eval_a(alpha).re, a_val, 1e-11)
    assert near_real(C.eval_d(alpha).re, a_val, 1e-11)


def test_printed_fourth_order_table_except_w_wbar3(case):
    alpha, (*_, red) = case
    for key in [(4, 0), (3, 1), (2, 2), (0, 4)]:
        assert near_real(C.tabulated_r2_kl(alpha, *key).re, abs(red[key]), 1e-11), key
        assert near_real(C.eval_r2_kl(alpha, *key).re, abs(red[key]), 1e-11), key
    # the printed (1, 3) entry is off by a factor of about four; the composed one is right
    printed = C.tabulated_r2_kl(alpha, 1, 3).re
    assert not near_real(printed, abs(red[(1, 3)]), 1e-3)
    assert near_real(C.eval_r2_kl(alpha, 1, 3).re, abs(red[(1, 3)]), 1e-11)


def test_w_wbar3_value_at_one():
    *_, red = oracle_normal_form(1.0)
    assert abs(abs(red[(1, 3)]) - 0.2101770) < 1e-6
    assert abs(C.tabulated_r2_kl(Interval(1, 1), 1, 3).re.mid - 0.0485024) < 1e-6


# -- worked examples --------------------------------------------------------

def test_g20_at_one():
    v = complex(-0.5, float(3 / (2 * mpmath.sqrt(3))))
    # v is the float nearest the exact value, so allow one ulp of slack
    assert near(C.eval_gkl(Interval(1, 1), 2, 0), v, 2e-16)


def test_a_at_one_is_quarter():
    assert -0.25 in C.eval_a(Interval(1, 1)).re


def test_modulus_of_eigenvalue():
    for a in [0.5, 0.75, 0.999, 1.0]:
        r = cabs(C.mu(Interval(a, a)))
        v = mpmath.sqrt(mpmath.mpf(a))
        assert mpmath.mpf(r.lo) <= v <= mpmath.mpf(r.hi)


def test_coefficients_reject_alpha_out_of_range():
    with pytest.raises(ValueError):
        C.eval_gkl(Interval(0.2, 0.3), 2, 0)
    with pytest.raises(IndexError):
        C.eval_gkl(Interval(1, 1), 5, 0)


# -- point-parameter cross-check --------------------------------------------------

def taylor_g(alpha: float, k: int, l: int) -> complex:
    """Plain Taylor coefficient of the map in eigen-coordinates, closed form.

    ``G = l1 w + l2 ((alpha + w) e^{-u} - alpha)`` with ``u = z q + v conj(q)``
    and ``w = z + v``.
    """
    a = mpmath.mpf(alpha)
    s = mpmath.sqrt(4 * a - 1)
    q = (1 - 1j * s) / (2 * a)
    qb = mpmath.conj(q)
    l2 = -(1 / (q - qb)) * qb
    n = k + l
    t = a * (-1) ** n * q**k * qb**l / fw(k, l)
    sgn = (-1) ** (n - 1)
    if k >= 1:
        t += sgn * q ** (k - 1) * qb**l / (factorial(k - 1) * factorial(l))
    if l >= 1:
        t += sgn * q**k * qb ** (l - 1) / (factorial(k) * factorial(l - 1))
    return complex(l2 * t)


def test_g_moduli_match_point_oracle_at_random_parameters():
    rng = np.random.default_rng(0)
    alphas = rng.uniform(0.5, 1.0, 1000)
    keys = list(C.g_table(Interval(1, 1)))
    bad = 0
    for a in alphas:
        table = C.g_table(Interval(a, a))
        for k, l in keys:
            m = cabs(table[(k, l)])
            v = abs(taylor_g(a, k, l)) * fw(k, l)
            bad += not near_real(m, v, 1e-12 * max(1.0, v))
    assert bad == 0


def test_batched_normal_form_matches_scalar():
    pieces = [Interval(0.999, 0.9995), Interval(0.9995, 1.0)]
    batch = normal_form_uncached(IntervalArray.from_intervals(pieces))
    for i, piece in enumerate(pieces):
        scalar = normal_form(piece)
        for key in [(2, 1)]:
            b = batch.reduced[key]
            s = scalar.reduced[key]
            assert abs(b.re.lo[i] - s.re.lo) < 1e-12 and abs(b.im.hi[i] - s.im.hi) < 1e-12
