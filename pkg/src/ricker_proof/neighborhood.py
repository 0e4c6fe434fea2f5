"""Certified attracting neighbourhoods of the fixed point and their constants.

Three radii are available: the explicit formula ``epsilon(alpha)`` on
``[0.5, 1)``, the uniform radius 1/37 on ``[0.875, 1]`` and 1/22 on
``[0.999, 1]``.  The 1/22 radius rests on a list of parameter-dependent
inequalities, which :func:`certify_constants` re-verifies by adaptive
bisection of the parameter range.
"""

from __future__ import annotations

import dataclasses
import enum
import math
import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import coefficients as C
from .dynamics import RickerParams
from .errors import CertificationInconclusive, RegimeError, SliceTooWide
from .interval import Box2, Interval, cabs, fraction_to_interval, sqrt, up
from .ivec import IntervalArray
from .normal_form import modulus, normal_form, normal_form_uncached

EPS37 = Fraction(1, 37)
EPS22 = Fraction(1, 22)
# Regime thresholds are the outward-rounded float enclosures of the decimals,
# so a slice parsed from "0.999" keeps its regime.
ALPHA_37 = fraction_to_interval(Fraction(7, 8)).lo
ALPHA_22 = fraction_to_interval(Fraction(999, 1000)).lo


class Source(str, enum.Enum):
    FORMULA = "FormulaProp31"
    UNIFORM37 = "Uniform37"
    UNIFORM22 = "Uniform22"


@dataclass(frozen=True)
class NeighborhoodResult:
    epsilon0: float
    epsilon: float
    source: Source
    center: Box2  # [alpha]^2
    cube: Box2    # [U], inside the basin for every alpha in the slice

    def to_json(self) -> dict:
        return {
            "epsilon0": self.epsilon0,
            "epsilon": self.epsilon,
            "source": self.source.value,
            "center": self.center.to_json(),
            "U": self.cube.to_json(),
        }


def epsilon_formula(params: RickerParams) -> float:
    """Certified lower bound of ``epsilon(alpha)`` over the slice."""
    a = params.alpha
    if a.lo < 0.5 or a.hi >= 1.0:
        raise RegimeError(f"epsilon formula needs [alpha] inside [0.5, 1), got {a}")
    ra = sqrt(a)
    s2 = sqrt(2.0 + a)
    first = sqrt((4.0 * a - 1.0) / (2.0 + a)) / 20.0
    second = 9.0 * (4.0 * a - 1.0) * (1.0 - ra) / (20.0 * (1.0 + 2.0 * ra) * s2)
    return min(first.lo, second.lo)


def _radius_candidates(a: Interval) -> list[tuple[float, Source]]:
    out: list[tuple[float, Source]] = []
    if a.lo >= 0.5 and a.hi < 1.0:
        out.append((epsilon_formula(RickerParams(a)), Source.FORMULA))
    if a.lo >= ALPHA_37:
        out.append((fraction_to_interval(EPS37).lo, Source.UNIFORM37))
    if a.lo >= ALPHA_22:
        out.append((fraction_to_interval(EPS22).lo, Source.UNIFORM22))
    return out


def find_attraction_domain(params: RickerParams) -> NeighborhoodResult:
    """Largest applicable radius ``epsilon0`` and the cube ``[U]`` it certifies.

    ``[U] = [alpha+ - epsilon0, alpha- + epsilon0]^2``, shrunk by one ulp so it
    lies strictly inside the open cube around every fixed point of the slice.
    """
    a = params.alpha
    if a.lo < 0.5 or a.hi > 1.0:
        raise RegimeError(f"attracting neighbourhoods need [alpha] inside [0.5, 1], got {a}")
    cands = _radius_candidates(a)
    if not cands:
        raise RegimeError(f"no attracting radius applies to {a}")
    eps0, source = max(cands, key=lambda t: t[0])
    width = (Interval.point(a.hi) - Interval.point(a.lo)).hi
    if not (width < eps0) or eps0 <= 0.0:
        raise SliceTooWide(f"slice width {width} is not below epsilon0 = {eps0}")
    eps = (Interval.point(eps0) - width).lo
    lo = up((Interval.point(a.hi) - eps0).hi)
    hi = -up((Interval.point(-a.lo) - eps0).hi)
    if not (eps > 0.0 and lo < hi):
        raise SliceTooWide(f"slice width {width} leaves no cube for epsilon0 = {eps0}")
    side = Interval(lo, hi)
    return NeighborhoodResult(eps0, eps, source, Box2.square(a), Box2.square(side))


def local_stability_check(alpha: Interval) -> bool:
    """Linear stability (``sqrt(alpha) < 1``), or the normal-form case ``alpha+ = 1``."""
    if alpha.hi > 1.0 or alpha.lo <= 0.0:
        raise RegimeError(f"local stability is decided only on (0, 1], got {alpha}")
    return local_stability_reason(alpha) != "undecided"


def local_stability_reason(alpha: Interval) -> str:
    if alpha.hi > 1.0 or alpha.lo <= 0.0:
        raise RegimeError(f"local stability is decided only on (0, 1], got {alpha}")
    if sqrt(Interval.point(alpha.hi)).hi < 1.0:
        return "linear"
    if alpha.hi == 1.0:
        return "normal-form-endpoint"
    return "undecided"


# -- constants certification -------------------------------------------------

Evaluator = Callable[[Interval], Interval]


@dataclass(frozen=True)
class Inequality:
    name: str
    evaluate: Evaluator
    upper: Fraction | None = None
    lower: Fraction | None = None
    upper_strict: bool = True
    evaluate_batch: Callable[[list[Interval]], list[Interval]] | None = None

    def bounds_label(self) -> str:
        parts = []
        if self.lower is not None:
            parts.append(f"> {float(self.lower)}")
        if self.upper is not None:
            parts.append(("< " if self.upper_strict else "<= ") + f"{float(self.upper)}")
        return " and ".join(parts)

    def certifies(self, enc: Interval) -> bool:
        if self.lower is not None and not enc.lo > fraction_to_interval(self.lower).hi:
            return False
        if self.upper is not None:
            ub = fraction_to_interval(self.upper)
            ok = enc.hi < ub.lo if self.upper_strict else enc.hi <= ub.lo
            if not ok:
                return False
        return True

    def refutes(self, enc: Interval) -> bool:
        if self.lower is not None and enc.hi <= fraction_to_interval(self.lower).lo:
            return True
        if self.upper is not None:
            ub = fraction_to_interval(self.upper)
            if (enc.lo >= ub.hi) if self.upper_strict else (enc.lo > ub.hi):
                return True
        return False


@dataclass(frozen=True)
class CheckResult:
    name: str
    claimed_bound: float
    lower_bound: float | None
    certified_enclosure: Interval
    verdict: bool
    status: str  # "certified", "refuted" or "undecided"
    pieces: int
    witness: float | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "claimed_bound": self.claimed_bound,
            "lower_bound": self.lower_bound,
            "certified_enclosure": self.certified_enclosure.to_json(),
            "verdict": self.verdict,
            "status": self.status,
            "pieces": self.pieces,
            "witness": self.witness,
        }


@dataclass
class ConstantsCertificate:
    alpha_range: Interval
    checks: list[CheckResult] = field(default_factory=list)
    subdivision_count: int = 0
    extended: bool = False

    @property
    def all_verified(self) -> bool:
        return all(c.verdict for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "alpha_range": self.alpha_range.to_json(),
            "extended": self.extended,
            "subdivision_count": self.subdivision_count,
            "all_verified": self.all_verified,
            "checks": [c.to_json() for c in self.checks],
        }


def _abs_sum(table: dict, weights: dict[tuple[int, int], float]) -> Interval:
    total = Interval(0.0, 0.0)
    for key in sorted(weights):
        total = total + cabs(table[key]) / weights[key]
    return total


def _g_order(order: int) -> Evaluator:
    return lambda a: C.order_abs_sum(C.g_table(a), order, factorial_weights=True)


def _delta1(a: Interval) -> Interval:
    return _abs_sum(C.h_table(a), {(2, 0): 2.0, (1, 1): 1.0, (0, 2): 2.0})


def _delta2(a: Interval) -> Interval:
    return _abs_sum(C.h_table(a), {(3, 0): 6.0, (1, 2): 2.0, (0, 3): 6.0})


def _h_mod(k: int, l: int) -> Evaluator:
    return lambda a: cabs(C.eval_hkl(a, k, l))


def _hinv(order: int) -> Evaluator:
    return lambda a: C.hinv_order_sum(a, order)


def r2_fourth_order_sum(a: Interval) -> Interval:
    rem = normal_form(a).remainder
    total = Interval(0.0, 0.0)
    for key in sorted(rem):
        total = total + cabs(rem[key])
    return total


def r2_fourth_order_sum_batch(pieces: list[Interval]) -> list[Interval]:
    """:func:`r2_fourth_order_sum` over many pieces in one vectorised pass."""
    rem = normal_form_uncached(IntervalArray.from_intervals(pieces)).remainder
    total = None
    for key in sorted(rem):
        m = modulus(rem[key])
        total = m if total is None else total + m
    return total.to_intervals()


def a_enclosure(alpha: Interval) -> Interval:
    """Enclosure of ``a`` over ``alpha``, tight at the endpoints when monotone.

    Where ``a' > 0`` is certified the range is ``[a(lo), a(hi)]`` from point
    evaluations.  ``a(1) = -4/16 = -1/4`` exactly, used as the upper end there.
    """
    if alpha.is_degenerate() and alpha.hi == 1.0:
        return Interval(C.eval_a(alpha).re.lo, -0.25)
    if C.a_derivative_sign(alpha).lo > 0.0:
        lo = C.eval_a(Interval.point(alpha.lo)).re.lo
        hi = -0.25 if alpha.hi == 1.0 else C.eval_a(Interval.point(alpha.hi)).re.hi
        return Interval(lo, hi)
    return C.eval_a(alpha).re


def eps22_margin(a: Interval) -> Interval:
    """``sqrt((4 alpha - 1) / (alpha (2 + alpha))) / 21``; must exceed 1/22."""
    return sqrt((4.0 * a - 1.0) / (a * (2.0 + a))) / 21.0


def _q(text: str) -> Fraction:
    return Fraction(text)


def default_checks() -> list[Inequality]:
    return [
        Inequality("g2nd", _g_order(2), upper=_q("1.01")),
        Inequality("g3rd", _g_order(3), upper=_q("1.09")),
        Inequality("g4th", C.g4th_closed, upper=_q("0.76")),
        Inequality("delta1", _delta1, upper=_q("0.76")),
        Inequality("delta2", _delta2, upper=_q("0.52")),
        Inequality("hinv2", _hinv(2), upper=_q("0.76")),
        Inequality("hinv3", _hinv(3), upper=_q("1.06")),
        Inequality("hinv4", _hinv(4), upper=_q("1.39")),
        Inequality("h20", _h_mod(2, 0), upper=_q("1.01")),
        Inequality("h11", _h_mod(1, 1), upper=_q("0.001")),
        Inequality("h02", _h_mod(0, 2), upper=_q("0.51")),
        Inequality("h30", _h_mod(3, 0), upper=_q("0.89")),
        Inequality("h12", _h_mod(1, 2), upper=_q("0.45")),
        Inequality("h03", _h_mod(0, 3), upper=_q("0.89")),
        Inequality("r2_4th", r2_fourth_order_sum, upper=_q("1.02"), evaluate_batch=r2_fourth_order_sum_batch),
        Inequality("a", a_enclosure, lower=_q("-1"), upper=_q("-0.25"), upper_strict=False),
        Inequality("eps22", eps22_margin, lower=EPS22),
    ]


CHECK_NAMES = [c.name for c in default_checks()]


def _apply_overrides(checks: list[Inequality], overrides: dict[str, str | float | Fraction] | None) -> list[Inequality]:
    if not overrides:
        return checks
    unknown = set(overrides) - {c.name for c in checks}
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(sorted(unknown))}")
    out = []
    for c in checks:
        if c.name in overrides:
            val = Fraction(str(overrides[c.name]))
            if c.upper is not None:
                c = dataclasses.replace(c, upper=val)
            else:
                c = dataclasses.replace(c, lower=val)
        out.append(c)
    return out


def _split(a: Interval) -> tuple[Interval, Interval] | None:
    m = a.mid
    if not (a.lo < m < a.hi):
        return None
    return Interval(a.lo, m), Interval(m, a.hi)


BATCH = 64


_WHOLE_LINE = Interval(-math.inf, math.inf)


def _evaluate(ineq: Inequality, piece: Interval) -> Interval:
    # a piece too wide for the formula's domain is simply undecided
    try:
        return ineq.evaluate(piece)
    except (ArithmeticError, ValueError):
        return _WHOLE_LINE


def _evaluate_many(ineq: Inequality, pieces: list[Interval]) -> list[Interval]:
    if ineq.evaluate_batch is not None and len(pieces) > 1:
        try:
            return ineq.evaluate_batch(pieces)
        except (ArithmeticError, ValueError):
            pass
    return [_evaluate(ineq, p) for p in pieces]


def _certify_one(ineq: Inequality, rng: Interval, max_subdiv: int) -> tuple[CheckResult, int]:
    """Bisect ``rng`` until every piece certifies, one piece refutes, or the budget ends.

    Undecided pieces are split widest enclosure first (ties broken by the
    lower endpoint), up to ``BATCH`` at a time so vectorised checks pay one
    evaluation per batch.
    """
    heap: list[tuple[float, float, float, Interval]] = []
    accepted: list[Interval] = []
    undecided: list[Interval] = []
    splits = 0
    status = "certified"
    witness = None

    def classify(piece: Interval, e: Interval) -> bool:
        nonlocal status, witness
        if ineq.certifies(e):
            accepted.append(e)
        elif ineq.refutes(e):
            status, witness = "refuted", piece.lo
            accepted.append(e)
            return False
        else:
            heapq.heappush(heap, (-(e.hi - e.lo), piece.lo, piece.hi, e))
        return True

    classify(rng, _evaluate(ineq, rng))
    while heap and status == "certified":
        batch = []
        while heap and len(batch) < BATCH and splits + len(batch) < max_subdiv:
            batch.append(heapq.heappop(heap))
        halves: list[Interval] = []
        for _, lo, hi, e in batch:
            parts = _split(Interval(lo, hi))
            if parts is None:
                undecided.append(e)
                continue
            halves.extend(parts)
        splits += len(halves) // 2
        if not halves:
            if heap:
                # budget exhausted
                undecided.extend(item[3] for item in heap)
                heap.clear()
            break
        for piece, e in zip(halves, _evaluate_many(ineq, halves)):
            if not classify(piece, e):
                break
    if undecided or heap:
        undecided.extend(item[3] for item in heap)
        if status == "certified":
            status = "undecided"
    pieces = accepted + undecided
    hull = Interval(min(p.lo for p in pieces), max(p.hi for p in pieces))
    upper = float(ineq.upper) if ineq.upper is not None else float(ineq.lower)
    lower = float(ineq.lower) if (ineq.lower is not None and ineq.upper is not None) else None
    result = CheckResult(ineq.name, upper, lower, hull, status == "certified", status, len(pieces), witness)
    return result, splits


def certify_constants(
    alpha_range: Interval,
    max_subdiv: int = 10**4,
    overrides: dict[str, str | float | Fraction] | None = None,
    extended: bool = False,
    raise_on_undecided: bool = True,
) -> ConstantsCertificate:
    """Certify every normal-form inequality over ``alpha_range``.

    The default range must lie in ``[0.999, 1]``; ``extended=True`` accepts
    ``[0.875, 1]`` and only reports which bounds still hold.  ``max_subdiv``
    is the bisection budget per check.
    """
    floor = ALPHA_37 if extended else ALPHA_22
    if alpha_range.lo < floor or alpha_range.hi > 1.0:
        raise RegimeError(f"constants are certified on [{floor}, 1], got {alpha_range}")
    if max_subdiv < 0:
        raise ValueError("max_subdiv must be >= 0")
    checks = _apply_overrides(default_checks(), overrides)
    cert = ConstantsCertificate(alpha_range, extended=extended)
    for ineq in checks:
        res, n = _certify_one(ineq, alpha_range, max_subdiv)
        cert.checks.append(res)
        cert.subdivision_count += n
    undecided = [c.name for c in cert.checks if c.status == "undecided"]
    if undecided and raise_on_undecided and not extended:
        raise CertificationInconclusive(
            f"bisection budget exhausted for: {', '.join(undecided)}", undecided, cert
        )
    return cert


__all__ = [
    "ALPHA_22",
    "ALPHA_37",
    "CHECK_NAMES",
    "CheckResult",
    "Inequality",
    "ConstantsCertificate",
    "NeighborhoodResult",
    "Source",
    "a_enclosure",
    "certify_constants",
    "default_checks",
    "epsilon_formula",
    "find_attraction_domain",
    "local_stability_check",
    "local_stability_reason",
    "r2_fourth_order_sum",
    "r2_fourth_order_sum_batch",
]
