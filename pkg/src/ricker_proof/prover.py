"""Per-slice proofs that the fixed point attracts the whole trapping square.

For a parameter slice ``[alpha]``: enclose the trapping square ``[S]``, take a
certified attracting cube ``[U]``, then repeatedly build the transition graph
of ``F^k`` on a partition of ``[S]``, drop cells that lie on no directed cycle
or that lie in or map into ``[U]``, and refine the rest.  An empty partition
means that no point of ``[S]`` other than the fixed point is non-wandering.
"""

from __future__ import annotations

import decimal
import enum
import json
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .dynamics import RickerParams, ricker_image_arrays, trapping_sequences, verify_forward_invariance
from .errors import ConvergenceFailure, RegimeError, ResourceExceeded, SliceTooWide
from .graph import (
    CellSet,
    GraphLimits,
    IterationStats,
    dump_boxes,
    enclose_nonwandering,
    max_iterations,
)
from .interval import Box2, Interval, fraction_to_interval
from .neighborhood import find_attraction_domain

SCHEMA_VERSION = 1
DEFAULT_DELTA0 = 0.1
DEFAULT_MAX_ITERATIONS = 40
DEFAULT_MEMORY = 8 * 1024**3
DEFAULT_INVARIANCE_GRID = 64


class Verdict(str, enum.Enum):
    PROVED = "proved"
    INCONCLUSIVE = "inconclusive"
    RESOURCE_EXCEEDED = "resource_exceeded"


def parse_decimal(text: str | float | Fraction) -> Fraction:
    """Exact rational value of a decimal string (floats are taken at face value)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, float):
        return Fraction(repr(text))
    return Fraction(str(text).strip())


def decimal_interval(lo: Fraction, hi: Fraction) -> Interval:
    """Float interval containing the rational interval ``[lo, hi]``."""
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    return Interval(fraction_to_interval(lo).lo, fraction_to_interval(hi).hi)


def _fmt(q: Fraction) -> str:
    """Decimal string of ``q``; exact whenever ``q`` has a finite expansion."""
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        d = (decimal.Decimal(q.numerator) / decimal.Decimal(q.denominator)).normalize()
    text = format(d, "f")
    return text if Fraction(text) == q else str(q)


@dataclass(frozen=True)
class ParameterSlice:
    lo: Fraction
    hi: Fraction
    delta0: float = DEFAULT_DELTA0
    iterate_k: int = 3

    def __post_init__(self) -> None:
        if not (Fraction(1, 2) <= self.lo <= self.hi <= 1):
            raise RegimeError(f"slice [{self.lo}, {self.hi}] must lie in [0.5, 1]")
        if not self.delta0 > 0:
            raise ValueError("delta0 must be positive")
        if self.iterate_k not in (1, 2, 3):
            raise ValueError("iterate_k must be 1, 2 or 3")

    @classmethod
    def from_decimals(cls, lo, hi, delta0: float = DEFAULT_DELTA0, iterate_k: int = 3) -> "ParameterSlice":
        return cls(parse_decimal(lo), parse_decimal(hi), delta0, iterate_k)

    @property
    def alpha(self) -> Interval:
        return decimal_interval(self.lo, self.hi)

    @property
    def label(self) -> str:
        return f"[{_fmt(self.lo)}, {_fmt(self.hi)}]"

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "decimal": [_fmt(self.lo), _fmt(self.hi)],
            "delta0": self.delta0,
            "iterate_k": self.iterate_k,
        }


@dataclass(frozen=True)
class Limits:
    memory_bytes: int = DEFAULT_MEMORY
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    invariance_grid: int = DEFAULT_INVARIANCE_GRID
    trapping_tol: float = 1e-9
    image_form: str = "mean-value"

    def graph_limits(self) -> GraphLimits:
        return GraphLimits(memory_bytes=self.memory_bytes)

    def to_json(self) -> dict:
        return {
            "memory_bytes": self.memory_bytes,
            "max_iterations": self.max_iterations,
            "invariance_grid": self.invariance_grid,
            "trapping_tol": self.trapping_tol,
            "image_form": self.image_form,
        }


@dataclass
class ProofCertificate:
    slice: ParameterSlice
    region_S: Box2 | None
    i0: int | None
    epsilon0: float | None
    epsilon: float | None
    neighborhood_U: Box2 | None
    iterations: list[IterationStats]
    verdict: Verdict
    wall_time: float = 0.0
    source: str | None = None
    refinement_iterations: int = 0
    forward_invariance: dict = field(default_factory=dict)
    reason: str | None = None
    limits: Limits = field(default_factory=Limits)
    config: dict = field(default_factory=dict)
    history: list = field(default_factory=list, repr=False)

    @property
    def proved(self) -> bool:
        return self.verdict is Verdict.PROVED

    @property
    def peak_vertices(self) -> int:
        return max((s.vertex_count for s in self.iterations), default=0)

    @property
    def peak_edges(self) -> int:
        return max((s.edge_count for s in self.iterations), default=0)

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "slice": self.slice.to_json(),
            "region_S": self.region_S.to_json() if self.region_S else None,
            "i0": self.i0,
            "epsilon0": self.epsilon0,
            "epsilon": self.epsilon,
            "neighborhood_U": self.neighborhood_U.to_json() if self.neighborhood_U else None,
            "neighborhood_source": self.source,
            "iterations": [s.to_json() for s in self.iterations],
            "refinement_iterations": self.refinement_iterations,
            "peak_vertices": self.peak_vertices,
            "peak_edges": self.peak_edges,
            "verdict": self.verdict.value,
            "reason": self.reason,
            "soundness": {
                "epsilon_positive": self.epsilon is not None and self.epsilon > 0,
                "final_vertex_set_empty": bool(self.iterations) and self.iterations[-1].vertex_count == 0,
                "forward_invariance": self.forward_invariance,
            },
            "limits": self.limits.to_json(),
            "config": self.config,
        }
        if include_timing:
            out["wall_time"] = self.wall_time
        return out


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def emit_certificate(cert: ProofCertificate, path, include_timing: bool = False) -> None:
    """Write ``cert`` as canonical JSON; timing is left out unless asked for."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(canonical_json(cert.to_json(include_timing)))


def _empty_record(delta: float) -> IterationStats:
    return IterationStats(delta, 0, 0, 0, 0)


def prove_slice(
    sl: ParameterSlice,
    limits: Limits = Limits(),
    dump_path=None,
    config: dict | None = None,
    on_iteration: Callable[[int, IterationStats], None] | None = None,
    keep_history: bool = False,
) -> ProofCertificate:
    """Run the removal loop on one slice.

    Raises SliceTooWide if the slice is not narrower than the attracting
    radius and ConvergenceFailure if the trapping sequences do not settle.
    Running out of iterations or memory gives a ``resource_exceeded``
    certificate, never a proof.
    """
    t0 = time.perf_counter()
    params = RickerParams(sl.alpha)
    state = trapping_sequences(params, tol=limits.trapping_tol)
    region = state.region
    nb = find_attraction_domain(params)
    invariant = verify_forward_invariance(params, region, limits.invariance_grid)
    cert = ProofCertificate(
        slice=sl,
        region_S=region,
        i0=state.index,
        epsilon0=nb.epsilon0,
        epsilon=nb.epsilon,
        neighborhood_U=nb.cube,
        iterations=[],
        verdict=Verdict.INCONCLUSIVE,
        source=nb.source.value,
        forward_invariance={"grid_n": limits.invariance_grid, "passed": invariant},
        limits=limits,
        config=dict(config or {}),
    )
    alpha = sl.alpha
    k = sl.iterate_k
    form = limits.image_form

    def image(xl, xh, yl, yh):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return ricker_image_arrays(alpha, xl, xh, yl, yh, k=k, form=form)

    history: list[tuple[int, CellSet]] = []

    def record(i: int, survivors: CellSet, st: IterationStats) -> None:
        cert.iterations.append(st)
        if dump_path is not None or keep_history:
            history.append((i + 1, survivors))
        if on_iteration is not None:
            on_iteration(i, st)

    try:
        result = enclose_nonwandering(
            region,
            image,
            sl.delta0,
            max_iterations(limits.max_iterations),
            limits=limits.graph_limits(),
            absorb=nb.cube,
            on_iteration=record,
        )
        cert.refinement_iterations = len(cert.iterations)
        if result.is_empty and cert.epsilon > 0:
            cert.iterations.append(_empty_record(cert.iterations[-1].delta / 2.0))
            cert.verdict = Verdict.PROVED
        else:
            cert.verdict = Verdict.RESOURCE_EXCEEDED
            cert.reason = f"cells survive after {limits.max_iterations} iterations"
    except ResourceExceeded as exc:
        cert.refinement_iterations = len(cert.iterations)
        cert.verdict = Verdict.RESOURCE_EXCEEDED
        cert.reason = str(exc)
    if dump_path is not None:
        dump_boxes(dump_path, history)
    if keep_history:
        cert.history = history
    cert.wall_time = time.perf_counter() - t0
    return cert


# -- parameter ranges --------------------------------------------------------

# (upper end of regime, slice width) for the default policy
REGIME_WIDTHS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(95, 100), Fraction(1, 1000)),
    (Fraction(99, 100), Fraction(1, 10000)),
    (Fraction(1), Fraction(1, 100000)),
)


def slice_parameters(
    lo: Fraction,
    hi: Fraction,
    width: Fraction | None = None,
    delta0: float = DEFAULT_DELTA0,
    iterate_k: int = 3,
) -> list[ParameterSlice]:
    """Contiguous slices tiling ``[lo, hi]``.

    With ``width`` None the regime widths ``1e-3`` on ``[0.5, 0.95]``,
    ``1e-4`` on ``[0.95, 0.99]`` and ``1e-5`` on ``[0.99, 1]`` are used and no
    slice crosses a regime boundary.  The last slice is truncated at ``hi``.
    """
    lo, hi = parse_decimal(lo), parse_decimal(hi)
    if not (Fraction(1, 2) <= lo <= hi <= 1):
        raise RegimeError(f"range [{lo}, {hi}] must lie in [0.5, 1]")
    if width is not None and width <= 0:
        raise ValueError("slice width must be positive")
    out: list[ParameterSlice] = []
    start = lo
    while start < hi:
        if width is None:
            top, w = next((t, w) for t, w in REGIME_WIDTHS if start < t)
            end = min(start + w, top, hi)
        else:
            end = min(start + width, hi)
        out.append(ParameterSlice(start, end, delta0, iterate_k))
        start = end
    return out


def _run_one(args) -> ProofCertificate:
    sl, limits, config = args
    try:
        return prove_slice(sl, limits, config=config)
    except (SliceTooWide, ConvergenceFailure, RegimeError) as exc:
        cert = ProofCertificate(sl, None, None, None, None, None, [], Verdict.INCONCLUSIVE,
                                limits=limits, config=dict(config))
        cert.reason = f"{type(exc).__name__}: {exc}"
        return cert


@dataclass
class RangeReport:
    lo: Fraction
    hi: Fraction
    certificates: list[ProofCertificate]
    wall_time: float = 0.0
    cpu_time: float = 0.0

    @property
    def verdict(self) -> Verdict:
        if all(c.proved for c in self.certificates):
            return Verdict.PROVED
        return Verdict.INCONCLUSIVE

    @property
    def failed(self) -> list[ParameterSlice]:
        return [c.slice for c in self.certificates if not c.proved]

    def to_json(self, include_timing: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "range": [_fmt(self.lo), _fmt(self.hi)],
            "verdict": self.verdict.value,
            "slice_count": len(self.certificates),
            "failed_slices": [s.label for s in self.failed],
            "max_vertices": max((c.peak_vertices for c in self.certificates), default=0),
            "max_edges": max((c.peak_edges for c in self.certificates), default=0),
            "certificates": [c.to_json() for c in self.certificates],
        }
        if include_timing:
            out["wall_clock_time"] = self.wall_time
            out["total_cpu_time"] = self.cpu_time
        return out


def prove_range(
    lo,
    hi,
    width: Fraction | None = None,
    workers: int = 1,
    limits: Limits = Limits(),
    delta0: float = DEFAULT_DELTA0,
    iterate_k: int = 3,
    config: dict | None = None,
    on_certificate: Callable[[ProofCertificate], None] | None = None,
) -> RangeReport:
    """Prove every slice of ``[lo, hi]``; certificates come back in slice order."""
    lo, hi = parse_decimal(lo), parse_decimal(hi)
    slices = slice_parameters(lo, hi, width, delta0, iterate_k)
    if not slices:
        warnings.warn(f"range [{_fmt(lo)}, {_fmt(hi)}] contains no slices; vacuously proved", stacklevel=2)
    t0 = time.perf_counter()
    c0 = _cpu()
    jobs = [(s, limits, dict(config or {})) for s in slices]
    certs: list[ProofCertificate] = []
    if workers <= 1 or len(slices) <= 1:
        for job in jobs:
            certs.append(_run_one(job))
            if on_certificate:
                on_certificate(certs[-1])
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for cert in pool.map(_run_one, jobs):
                certs.append(cert)
                if on_certificate:
                    on_certificate(cert)
    cpu = _cpu() - c0
    return RangeReport(lo, hi, certs, time.perf_counter() - t0, cpu)


def _cpu() -> float:
    t = os.times()
    return t.user + t.system + t.children_user + t.children_system


__all__ = [
    "Limits",
    "ParameterSlice",
    "ProofCertificate",
    "RangeReport",
    "Verdict",
    "canonical_json",
    "decimal_interval",
    "emit_certificate",
    "parse_decimal",
    "prove_range",
    "prove_slice",
    "slice_parameters",
]
