"""Command-line front end: ``python -m ricker_proof <subcommand> ...``.

Exit codes: 0 success or proved, 2 domain or convergence error, 3 violated
precondition (slice too wide), 4 certification failure or inconclusive proof,
5 resource limit hit, 64 invalid usage.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .dynamics import RickerParams, bifurcation_data, trapping_sequences
from .errors import CertificationInconclusive, ConvergenceFailure, RegimeError, ResourceExceeded, SliceTooWide
from .interval import IntervalError
from .neighborhood import CHECK_NAMES, certify_constants, find_attraction_domain
from .prover import (
    DEFAULT_DELTA0,
    DEFAULT_INVARIANCE_GRID,
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_MEMORY,
    Limits,
    ParameterSlice,
    Verdict,
    canonical_json,
    decimal_interval,
    emit_certificate,
    parse_decimal,
    prove_range,
    prove_slice,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_PRECONDITION = 3
EXIT_CERTIFICATION = 4
EXIT_RESOURCES = 5
EXIT_USAGE = 64

MEMORY_ENV = "RICKER_PROOF_MEMORY_CAP"
_SUFFIX = {"K": 1024, "M": 1024**2, "G": 1024**3, "T": 1024**4}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_memory(text: str) -> int:
    """Byte count from ``"4096"``, ``"512M"`` or ``"8G"``."""
    t = text.strip().upper().removesuffix("B")
    mult = 1
    if t and t[-1] in _SUFFIX:
        mult, t = _SUFFIX[t[-1]], t[:-1]
    try:
        value = Fraction(t) * mult
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad memory size {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("memory size must be positive")
    return int(value)


def _decimal(text: str) -> Fraction:
    try:
        return parse_decimal(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}") from None


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _params(lo: Fraction, hi: Fraction) -> RickerParams:
    return RickerParams(decimal_interval(lo, hi))


# -- subcommands -------------------------------------------------------------

def cmd_region(args) -> int:
    params = _params(args.alpha_lo, args.alpha_hi)
    state = trapping_sequences(params, tol=args.tol, max_iter=args.max_iter, keep_trace=True)
    out = {
        "alpha": params.alpha.to_json(),
        "i0": state.index,
        "h": state.h.to_json(),
        "g": state.g.to_json(),
        "region_S": state.region.to_json(),
    }
    _write(canonical_json(out), args.out)
    if args.trace:
        rows = ["i,h_lo,h_hi,g_lo,g_hi"]
        for i, (h, g) in enumerate(state.trace):
            rows.append(f"{i},{h.lo!r},{h.hi!r},{g.lo!r},{g.hi!r}")
        _write("\n".join(rows) + "\n", args.trace)
    return EXIT_OK


def cmd_neighborhood(args) -> int:
    nb = find_attraction_domain(_params(args.alpha_lo, args.alpha_hi))
    _write(canonical_json(nb.to_json()), args.out)
    return EXIT_OK


def cmd_certify_constants(args) -> int:
    overrides = {}
    for item in args.override:
        name, sep, value = item.partition("=")
        if not sep or name not in CHECK_NAMES:
            raise UsageError(f"--override expects name=value with name in {', '.join(CHECK_NAMES)}")
        overrides[name] = value
    rng = decimal_interval(args.alpha_lo, args.alpha_hi)
    try:
        cert = certify_constants(rng, max_subdiv=args.max_subdiv, overrides=overrides or None,
                                 extended=args.extended)
        code = EXIT_OK if cert.all_verified else EXIT_CERTIFICATION
    except CertificationInconclusive as exc:
        cert = exc.certificate
        code = EXIT_CERTIFICATION
        print(f"certification inconclusive: {exc}", file=sys.stderr)
    if cert is not None:
        _write(canonical_json(cert.to_json()), args.out)
    return code


def _limits(args) -> Limits:
    return Limits(
        memory_bytes=args.memory_cap,
        max_iterations=args.max_iterations,
        invariance_grid=args.invariance_grid,
        image_form=args.image_form,
    )


def _config(args) -> dict:
    """Flags that determine the result; scheduling and output paths are left out."""
    cfg = {
        "subcommand": "prove",
        "delta0": args.delta0,
        "iterate_k": args.iterate_k,
        "max_iterations": args.max_iterations,
        "memory_cap": args.memory_cap,
        "image_form": args.image_form,
        "invariance_grid": args.invariance_grid,
    }
    if args.slice:
        cfg["slice"] = [str(a) for a in args.slice_text]
    else:
        cfg["range"] = [str(a) for a in args.range_text]
        cfg["width"] = args.width_text
    return cfg


def _log_iteration(label: str):
    def log(i, st):
        print(f"{label} iter {i + 1}: delta={st.delta:.3g} vertices={st.vertex_count} "
              f"edges={st.edge_count} not_in_cycle={st.removed_not_in_cycle} "
              f"absorbed={st.removed_absorbed}", file=sys.stderr)
    return log


def _verdict_code(verdict: Verdict) -> int:
    return {Verdict.PROVED: EXIT_OK, Verdict.RESOURCE_EXCEEDED: EXIT_RESOURCES}.get(verdict, EXIT_CERTIFICATION)


def cmd_prove(args) -> int:
    limits = _limits(args)
    config = _config(args)
    if args.slice:
        lo, hi = args.slice
        sl = ParameterSlice(lo, hi, args.delta0, args.iterate_k)
        cert = prove_slice(sl, limits, dump_path=args.dump_boxes, config=config,
                           on_iteration=_log_iteration(sl.label) if args.verbose else None)
        text = canonical_json(cert.to_json(args.timing))
        _write(text, args.out)
        return _verdict_code(cert.verdict)
    lo, hi = args.range
    if args.dump_boxes:
        raise UsageError("--dump-boxes is only available with --slice")
    report = prove_range(lo, hi, width=args.width, workers=args.workers, limits=limits,
                         delta0=args.delta0, iterate_k=args.iterate_k, config=config)
    if args.cert_dir:
        d = Path(args.cert_dir)
        d.mkdir(parents=True, exist_ok=True)
        for c in report.certificates:
            lo_s, hi_s = c.slice.to_json()["decimal"]
            emit_certificate(c, d / f"slice_{lo_s}_{hi_s}.json", args.timing)
    _write(canonical_json(report.to_json(args.timing)), args.out)
    if report.verdict is Verdict.PROVED:
        return EXIT_OK
    if any(c.verdict is Verdict.RESOURCE_EXCEEDED for c in report.certificates):
        return EXIT_RESOURCES
    return EXIT_CERTIFICATION


def cmd_bifurcation_data(args) -> int:
    rows = bifurcation_data(float(args.alpha_lo), float(args.alpha_hi), args.n_alpha, args.n_iter, args.n_keep)
    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out and args.out != "-" else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["alpha", "t"])
        for a, t in rows:
            w.writerow([repr(a), repr(t)])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _default_memory() -> int:
    env = os.environ.get(MEMORY_ENV)
    if env:
        try:
            return parse_memory(env)
        except argparse.ArgumentTypeError:
            raise UsageError(f"{MEMORY_ENV}={env!r} is not a memory size") from None
    return DEFAULT_MEMORY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ricker-proof", description="Validated proof of global stability for the delayed Ricker map.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("region", help="enclose the trapping square [S] for a parameter slice")
    r.add_argument("alpha_lo", type=_decimal)
    r.add_argument("alpha_hi", type=_decimal)
    r.add_argument("--tol", type=_positive_float, default=1e-9, help="stopping tolerance (default 1e-9)")
    r.add_argument("--max-iter", type=int, default=10**6, help="iteration cap (default 1e6)")
    r.add_argument("--trace", metavar="PATH", help="write the h/g sequence as CSV ('-' for stdout)")
    r.add_argument("--out", metavar="PATH", help="JSON output path (default stdout)")
    r.set_defaults(func=cmd_region)

    n = sub.add_parser("neighborhood", help="certified attracting cube [U] for a slice")
    n.add_argument("alpha_lo", type=_decimal)
    n.add_argument("alpha_hi", type=_decimal)
    n.add_argument("--out", metavar="PATH")
    n.set_defaults(func=cmd_neighborhood)

    c = sub.add_parser("certify-constants", help="re-verify the normal-form inequalities by bisection")
    c.add_argument("alpha_lo", type=_decimal)
    c.add_argument("alpha_hi", type=_decimal)
    c.add_argument("--max-subdiv", type=int, default=10**4, help="bisection budget per inequality (default 1e4)")
    c.add_argument("--override", action="append", default=[], metavar="NAME=VALUE",
                   help="replace a claimed upper bound, e.g. g2nd=1.0 (repeatable)")
    c.add_argument("--extended", action="store_true", help="allow ranges down to 0.875 and report refutations")
    c.add_argument("--out", metavar="PATH")
    c.set_defaults(func=cmd_certify_constants)

    pr = sub.add_parser("prove", help="prove global attraction on a slice or a range of slices")
    grp = pr.add_mutually_exclusive_group(required=True)
    grp.add_argument("--slice", nargs=2, metavar=("LO", "HI"))
    grp.add_argument("--range", nargs=2, metavar=("LO", "HI"))
    pr.add_argument("--width", metavar="W", help="uniform slice width for --range (default: regime table)")
    pr.add_argument("--delta0", type=_positive_float, default=DEFAULT_DELTA0, help="initial cell diameter (default 0.1)")
    pr.add_argument("--iterate-k", type=int, choices=(1, 2, 3), default=3, help="map iterate for transitions (default 3)")
    pr.add_argument("--workers", type=int, default=1, help="concurrent slices for --range (default 1)")
    pr.add_argument("--max-iterations", type=int, default=DEFAULT_MAX_ITERATIONS)
    pr.add_argument("--memory-cap", type=parse_memory, default=None,
                    help=f"cell/edge memory budget, e.g. 8G (default ${MEMORY_ENV} or 8G)")
    pr.add_argument("--image-form", choices=("mean-value", "naive"), default="mean-value",
                    help="image enclosure of the iterate (default mean-value)")
    pr.add_argument("--invariance-grid", type=int, default=DEFAULT_INVARIANCE_GRID,
                    help="grid used for the recorded forward-invariance check")
    pr.add_argument("--dump-boxes", nargs="?", const="survivors.csv", metavar="PATH",
                    help="write survivor boxes per iteration as CSV (default survivors.csv)")
    pr.add_argument("--cert-dir", metavar="DIR", help="with --range, write one certificate per slice here")
    pr.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identical reruns)")
    pr.add_argument("--verbose", action="store_true", help="log one line per iteration to stderr")
    pr.add_argument("--out", metavar="PATH")
    pr.set_defaults(func=cmd_prove)

    b = sub.add_parser("bifurcation-data", help="CSV of tail iterates of tau for a bifurcation plot")
    b.add_argument("alpha_lo", type=_decimal)
    b.add_argument("alpha_hi", type=_decimal)
    b.add_argument("n_alpha", type=int)
    b.add_argument("n_iter", type=int)
    b.add_argument("n_keep", type=int)
    b.add_argument("--out", metavar="PATH")
    b.set_defaults(func=cmd_bifurcation_data)
    return p


def _prepare_prove(args, parser) -> None:
    for name in ("slice", "range"):
        raw = getattr(args, name)
        setattr(args, f"{name}_text", raw)
        if raw is not None:
            try:
                setattr(args, name, tuple(parse_decimal(v) for v in raw))
            except (ValueError, ZeroDivisionError):
                parser.error(f"--{name} expects two decimal numbers")
    args.width_text = args.width
    if args.width is not None:
        try:
            args.width = parse_decimal(args.width)
        except (ValueError, ZeroDivisionError):
            parser.error("--width expects a decimal number")
    if args.memory_cap is None:
        args.memory_cap = _default_memory()
    if args.workers < 1:
        parser.error("--workers must be >= 1")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "prove":
            _prepare_prove(args, parser)
        return args.func(args)
    except UsageError as exc:
        print(f"ricker-proof: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SliceTooWide as exc:
        print(f"ricker-proof: slice too wide: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (RegimeError, ConvergenceFailure, IntervalError) as exc:
        print(f"ricker-proof: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceExceeded as exc:
        print(f"ricker-proof: resources exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCES


if __name__ == "__main__":
    sys.exit(main())
