"""Command-line front end: build | verify | trace | bench.

Exit codes: 0 when every executed check passed, 1 on a check failure,
2 on a usage error (bad flags or an invalid parameter combination).
Reports go to --out (default stdout) and are byte-reproducible for a fixed
invocation; bench wall times are printed to stderr so they never
contaminate the report.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .exact_arith import parse_rational
from .families import (
    SYMBOLIC,
    FamilyKind,
    FamilySpec,
    build,
    check_size_guard,
    verify_identity,
)
from .grids import GridSpec, run_bench, run_verify
from .matrix_core import SizeGuardError
from .reduction import ENGINES, check_certificate, reduce_family


class UsageError(Exception):
    pass


def _parse_range(text: str) -> tuple[int, ...]:
    """"3" -> (3,); "1..4" -> (1, 2, 3, 4)."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise UsageError(f"empty range {text!r}")
        return tuple(range(lo, hi + 1))
    return (int(text),)


def _parse_values(text: str):
    return tuple(parse_rational(part) for part in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exactdet",
        description="Exact determinant identities for structured matrix families.",
    )
    parser.add_argument("--version", action="version", version=f"exactdet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ranged: bool):
        p.add_argument(
            "--family",
            required=True,
            choices=[k.value for k in FamilyKind],
        )
        helper = "integer or A..B range" if ranged else "integer"
        p.add_argument("--m", required=True, help=helper)
        p.add_argument("--n", help=helper)
        p.add_argument("--l", help=helper)
        p.add_argument("--symbolic", action="store_true",
                       help="use indeterminates X1..Xm")
        p.add_argument("--values", help="comma-separated rationals, e.g. 1,1/2,-3")
        p.add_argument("--max-size", type=int, help="override the size guard")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=["json", "text"], default="text")

    p_build = sub.add_parser("build", help="emit one family matrix")
    common(p_build, ranged=False)

    p_verify = sub.add_parser("verify", help="check the identity over a grid")
    common(p_verify, ranged=True)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=1,
                          help="random assignments per grid point")

    p_trace = sub.add_parser("trace", help="replay a proof and emit its certificate")
    common(p_trace, ranged=False)
    p_trace.add_argument("--engine", required=True, choices=list(ENGINES))
    p_trace.add_argument("--snapshots", action="store_true",
                         help="force full matrix snapshots in the trace")

    p_bench = sub.add_parser("bench", help="time closed form vs elimination")
    common(p_bench, ranged=True)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--trials", type=int, default=1)
    return parser


def _single(value: str | None, flag: str) -> int | None:
    if value is None:
        return None
    vals = _parse_range(value)
    if len(vals) != 1:
        raise UsageError(f"{flag} takes a single integer here, got {value!r}")
    return vals[0]


def _assignment(args, m: int):
    if args.symbolic and args.values:
        raise UsageError("--symbolic and --values are mutually exclusive")
    if args.values:
        values = _parse_values(args.values)
        if len(values) != m:
            raise UsageError(f"--values must list {m} rationals")
        return values
    return SYMBOLIC


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _make_spec(args) -> FamilySpec:
    m = _single(args.m, "--m")
    return FamilySpec(
        FamilyKind(args.family),
        m=m,
        n=_single(args.n, "--n"),
        l=_single(args.l, "--l"),
        assignment=_assignment(args, m),
    )


def _cmd_build(args) -> int:
    spec = _make_spec(args)
    matrix = build(spec)
    if args.format == "json":
        _emit(json.dumps(matrix.to_obj()) + "\n", args.out)
    else:
        _emit(matrix.render() + "\n", args.out)
    return 0


def _grid(args) -> GridSpec:
    if args.symbolic and args.values:
        raise UsageError("--symbolic and --values are mutually exclusive")
    if args.symbolic:
        mode, values = "symbolic", None
    elif args.values:
        mode, values = "explicit", _parse_values(args.values)
    else:
        mode, values = "random", None
    return GridSpec(
        family=FamilyKind(args.family),
        m_values=_parse_range(args.m),
        n_values=_parse_range(args.n) if args.n else None,
        l_values=_parse_range(args.l) if args.l else None,
        mode=mode,
        seed=getattr(args, "seed", 0),
        trials=getattr(args, "trials", 1),
        values=values,
        max_size=args.max_size,
    )


def _cmd_verify(args) -> int:
    report = run_verify(_grid(args))
    _emit(report.to_ndjson() if args.format == "json" else report.to_text(), args.out)
    return 0 if report.passed else 1


def _cmd_bench(args) -> int:
    grid = _grid(args)
    if grid.mode == "symbolic":
        raise UsageError("bench runs on numeric assignments only")
    report, timings = run_bench(grid)
    _emit(report.to_ndjson() if args.format == "json" else report.to_text(), args.out)
    for row in timings:
        print(
            f"bench {json.dumps(row['spec'])} "
            f"closed_form {row['closed_form_seconds']:.6f}s "
            f"bareiss {row['bareiss_seconds']:.6f}s",
            file=sys.stderr,
        )
    return 0 if report.passed else 1


def _cmd_trace(args) -> int:
    spec = _make_spec(args)
    check_size_guard(spec, args.max_size)
    cert, trace = reduce_family(spec, args.engine, force_snapshots=args.snapshots)
    matrix = build(spec)
    valid = check_certificate(cert, matrix)
    ring = matrix.ring
    if args.format == "json":
        lines = [json.dumps({"type": "header", "tool": "exactdet",
                             "version": __version__, "command": "trace",
                             "engine": args.engine, "spec": spec.to_obj()})]
        for rec in trace.to_obj():
            rec = {"type": "stage", **rec}
            lines.append(json.dumps(rec))
        lines.append(json.dumps({"type": "certificate", **cert.to_obj()}))
        lines.append(json.dumps({"type": "verdict",
                                 "certificate": "valid" if valid else "invalid"}))
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [f"exactdet {__version__} trace engine={args.engine} "
                 f"spec={json.dumps(spec.to_obj())}"]
        for rec in trace.to_obj():
            parts = [f"  [{rec['context']}] {rec['step_label']:<8}",
                     json.dumps(rec["op"])]
            if "factor" in rec:
                parts.append(f"factor={rec['factor']}")
            if "sign_delta" in rec:
                parts.append(f"sign={rec['sign_delta']:+d}")
            parts.append(f"-> {rec['residual_shape'][0]}x{rec['residual_shape'][1]}")
            lines.append(" ".join(parts))
        lines.append(f"sign: {cert.sign:+d}")
        lines.append("factors:")
        for f in cert.factors:
            lines.append(f"  {f.label:<12} = {ring.render(f.value)}")
        if cert.residual.rows == 0:
            lines.append(f"total: {ring.render(cert.total())}")
        lines.append(f"certificate: {'valid' if valid else 'invalid'}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if valid else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "build": _cmd_build,
        "verify": _cmd_verify,
        "trace": _cmd_trace,
        "bench": _cmd_bench,
    }[args.command]
    try:
        return handler(args)
    except (UsageError, ValueError, SizeGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
