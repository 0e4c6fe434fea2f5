import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import complex_violations, containment_violations, monotonicity_violations
from ricker_proof.interval import (
    Box2,
    ComplexInterval,
    DivisionByZeroInterval,
    DomainError,
    Interval,
    cabs,
    cdiv,
    cmul,
    exp,
    fraction_to_interval,
    hull,
    iabs,
    intersection,
    intersects,
    is_subset,
    midpoint,
    powi,
    sqrt,
    width,
)


def ulps(x: float, y: float) -> float:
    return abs(y - x) / math.ulp(max(abs(x), abs(y), 5e-324))


# -- worked examples --------------------------------------------------------

def test_add_endpoints():
    r = Interval(1, 2) + Interval(3, 4)
    assert r.contains(Interval(4, 6))
    assert ulps(r.lo, 4.0) <= 1 and ulps(r.hi, 6.0) <= 1


def test_mul_matches_endpoint_products():
    r = Interval(-1, 2) * Interval(3, 4)
    products = [a * b for a in (-1, 2) for b in (3, 4)]
    assert r.lo <= min(products) and r.hi >= max(products)
    assert ulps(r.lo, -4.0) <= 1 and ulps(r.hi, 8.0) <= 1


def test_division_by_zero_interval():
    with pytest.raises(DivisionByZeroInterval):
        Interval(1, 1) / Interval(0, 1)


def test_exp_zero():
    r = exp(Interval(0, 0))
    assert 1.0 in r and ulps(r.lo, r.hi) <= 2


def test_powi_even_straddling():
    assert powi(Interval(-2, 1), 2) == Interval(0, 4)


def test_exp_log2():
    r = exp(Interval(0, 0.6931471805599453))
    assert r.lo <= 1.0 and r.hi >= 2.0


def test_complex_unit_rotation():
    one = ComplexInterval.coerce(1.0)
    i = ComplexInterval(Interval(0, 0), Interval(1, 1))
    assert cmul(one, i).contains(1j)


def test_cabs_345():
    assert 5.0 in cabs(ComplexInterval.coerce(3 + 4j))


def test_cdiv_exact():
    q = cdiv(ComplexInterval.coerce(1 + 1j), ComplexInterval.coerce(1 - 1j))
    assert q.contains(1j)


def test_complex_division_by_zero_rectangle():
    with pytest.raises(DivisionByZeroInterval):
        cdiv(ComplexInterval.coerce(1.0), ComplexInterval(Interval(-1, 1), Interval(-1, 1)))


def test_set_helpers():
    assert hull(Interval(0, 1), Interval(2, 3)) == Interval(0, 3)
    assert intersects(Interval(0, 1), Interval(1, 2))
    assert not intersects(Interval(0, 1), Interval(1.5, 2))
    assert intersection(Interval(0, 1), Interval(2, 3)) is None
    assert intersection(Interval(0, 2), Interval(1, 3)) == Interval(1, 2)
    assert is_subset(Interval(0.1, 0.2), Interval(0, 1))
    assert width(Interval(1, 3)) == 2.0 and midpoint(Interval(1, 3)) == 2.0


def test_rejects_invalid_endpoints():
    with pytest.raises(ValueError):
        Interval(2, 1)
    with pytest.raises(ValueError):
        Interval(math.nan, 1)


def test_sqrt_domain_error():
    with pytest.raises(DomainError):
        sqrt(Interval(-1, 4))


def test_sqrt_exact_squares_stay_tight():
    assert sqrt(Interval(4, 9)) == Interval(2, 3)


@pytest.mark.parametrize("x", [2.0, 3.0, 0.1, 1e-300, 7.389056098930651, 123456789.0])
def test_sqrt_encloses_high_precision_value(x):
    r = sqrt(Interval.point(x))
    v = mpmath.sqrt(mpmath.mpf(x))
    assert mpmath.mpf(r.lo) <= v <= mpmath.mpf(r.hi)


def test_decimal_literal_enclosure():
    for text in ["0.875", "0.1", "0.999", "1"]:
        iv = Interval.from_decimal(text)
        assert Fraction(iv.lo) <= Fraction(text) <= Fraction(iv.hi)
        assert ulps(iv.lo, iv.hi) <= 1


def test_exp_overflow_is_unbounded_not_error():
    r = exp(Interval(0, 1000))
    assert r.lo == 1.0 and math.isinf(r.hi)


def test_box_split_preserves_union():
    b = Box2.from_bounds(0, 1, 2, 4)
    parts = b.split4()
    assert len(parts) == 4
    xs = sorted({p.x.lo for p in parts} | {p.x.hi for p in parts})
    ys = sorted({p.y.lo for p in parts} | {p.y.hi for p in parts})
    assert xs == [0, 0.5, 1] and ys == [2, 3, 4]
    assert math.isclose(b.diameter, math.hypot(1, 2))


# -- fuzzing and properties ---------------------------------------------------

@pytest.mark.parametrize("op", ["add", "sub", "mul", "div", "exp", "sqrt", "abs", "powi"])
def test_containment_fuzz_small(op):
    assert containment_violations(op, 3000, seed=1) == 0


def test_inclusion_monotonicity_small():
    assert monotonicity_violations(500, seed=2) == 0


def test_complex_oracle_small():
    assert complex_violations(300, seed=3) == 0


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


@settings(max_examples=300, deadline=None)
@given(finite, finite)
def test_degenerate_ops_are_tight(x, y):
    a, b = Interval.point(x), Interval.point(y)
    results = [a + b, a - b, a * b]
    if abs(y) >= 1e-6:
        results.append(a / b)
    for r in results:
        assert ulps(r.lo, r.hi) <= 4


@settings(max_examples=300, deadline=None)
@given(finite, finite, finite, finite)
def test_product_contains_every_endpoint_product(a, b, c, d):
    x, y = Interval(min(a, b), max(a, b)), Interval(min(c, d), max(c, d))
    r = x * y
    for p in (x.lo, x.hi):
        for q in (y.lo, y.hi):
            assert Fraction(r.lo) <= Fraction(p) * Fraction(q) <= Fraction(r.hi)


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=10**12))
def test_fraction_enclosure_is_tightest(q):
    iv = fraction_to_interval(q)
    assert Fraction(iv.lo) <= q <= Fraction(iv.hi)
    assert iv.lo == iv.hi or math.nextafter(iv.lo, math.inf) == iv.hi


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-50, max_value=50), st.floats(min_value=0, max_value=5))
def test_abs_and_even_power_nonnegative(c, r):
    a = Interval(c - r, c + r)
    assert iabs(a).lo >= 0.0
    assert powi(a, 4).lo >= 0.0
