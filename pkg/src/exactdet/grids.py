"""Parameter grids, seeded assignments, and reproducible run reports.

A grid enumerates family instances over ranges of the parameters, in a
fixed order (m, then n, then l, then trial), with one shared seeded RNG for
the whole run.  Reports are line-delimited JSON-shaped records (a header,
one record per grid point, a summary whose counts tally the records) plus
a human summary; identical grid plus identical seed reproduces the report
byte for byte.  Wall-clock timings are therefore never part of a report:
the bench runner returns them separately for the caller to print.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from . import __version__
from .exact_arith import format_rational
from .families import (
    SYMBOLIC,
    FamilyKind,
    FamilySpec,
    build,
    check_size_guard,
    closed_form_det,
    verify_identity,
)
from .matrix_core import SizeGuardError, det_bareiss

RANDOM_NUMERATOR_BOUND = 50
RANDOM_DENOMINATOR_BOUND = 10


def random_assignment(
    rng: random.Random, m: int, *, distinct: bool = True
) -> tuple[Fraction, ...]:
    """m random rationals p/q, p in [-50, 50] without 0, q in [1, 10].

    With distinct=True (generic position) repeated values are rejection
    sampled away, so the result is always safe for the reduction engines.
    """
    values: list[Fraction] = []
    while len(values) < m:
        p = rng.randint(-RANDOM_NUMERATOR_BOUND, RANDOM_NUMERATOR_BOUND)
        if p == 0:
            continue
        q = rng.randint(1, RANDOM_DENOMINATOR_BOUND)
        v = Fraction(p, q)
        if distinct and v in values:
            continue
        values.append(v)
    return tuple(values)


@dataclass(frozen=True)
class GridSpec:
    """A family, parameter ranges, and an assignment mode."""

    family: FamilyKind
    m_values: tuple[int, ...]
    n_values: tuple[int, ...] | None = None
    l_values: tuple[int, ...] | None = None
    mode: str = "symbolic"  # "symbolic" | "random" | "explicit"
    seed: int = 0
    trials: int = 1
    values: tuple[Fraction, ...] | None = None
    max_size: int | None = None

    def __post_init__(self):
        if self.mode not in ("symbolic", "random", "explicit"):
            raise ValueError(f"unknown assignment mode {self.mode!r}")
        if self.mode == "explicit" and not self.values:
            raise ValueError("explicit mode needs values")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    def param_combos(self) -> Iterator[tuple[int, int | None, int | None]]:
        for m in self.m_values:
            for n in self.n_values or (None,):
                for l in self.l_values or (None,):
                    yield m, n, l


def _params_obj(family: FamilyKind, m: int, n: int | None, l: int | None) -> dict:
    obj = {"kind": family.value, "m": m}
    if n is not None:
        obj["n"] = n
    if l is not None:
        obj["l"] = l
    return obj


@dataclass
class RunReport:
    """Deterministic record of one grid run."""

    command: str
    seed: int | None
    records: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.summary.get("mismatch", 0) == 0

    def header(self) -> dict:
        head = {"type": "header", "tool": "exactdet", "version": __version__,
                "command": self.command}
        if self.seed is not None:
            head["seed"] = self.seed
        return head

    def to_ndjson(self) -> str:
        lines = [json.dumps(self.header())]
        lines += [json.dumps(rec) for rec in self.records]
        lines.append(json.dumps(self.summary))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"exactdet {__version__} {self.command}"]
        for rec in self.records:
            if rec["status"] == "skipped":
                where = json.dumps(rec["params"])
                lines.append(f"  skip  {where}  ({rec['reason']})")
            else:
                where = json.dumps(rec["spec"])
                lines.append(f"  {rec['status']:<8}{where}")
        s = self.summary
        lines.append(
            f"points={s['points']} equal={s['equal']} "
            f"mismatch={s['mismatch']} skipped={s['skipped']}"
        )
        return "\n".join(lines) + "\n"


def _assignments(grid: GridSpec, m: int, rng: random.Random | None):
    if grid.family is FamilyKind.BINOMIAL_PASCAL or grid.mode == "symbolic":
        return [SYMBOLIC]
    if grid.mode == "explicit":
        return [grid.values]
    return [random_assignment(rng, m) for _ in range(grid.trials)]


def run_verify(grid: GridSpec) -> RunReport:
    """verify_identity over every grid point; skips are recorded, never
    silently dropped, and never counted as failures."""
    rng = random.Random(grid.seed) if grid.mode == "random" else None
    report = RunReport(
        command="verify", seed=grid.seed if grid.mode == "random" else None
    )
    counts = {"points": 0, "equal": 0, "mismatch": 0, "skipped": 0}
    for m, n, l in grid.param_combos():
        params = _params_obj(grid.family, m, n, l)
        try:
            FamilySpec(grid.family, m=m, n=n, l=l)
        except ValueError as exc:
            counts["points"] += 1
            counts["skipped"] += 1
            report.records.append(
                {"type": "point", "status": "skipped", "params": params,
                 "reason": str(exc)}
            )
            continue
        for assignment in _assignments(grid, m, rng):
            counts["points"] += 1
            spec = FamilySpec(grid.family, m=m, n=n, l=l, assignment=assignment)
            try:
                result = verify_identity(spec, max_size=grid.max_size)
            except SizeGuardError as exc:
                counts["skipped"] += 1
                report.records.append(
                    {"type": "point", "status": "skipped", "params": params,
                     "reason": str(exc)}
                )
                continue
            status = "equal" if result.equal else "mismatch"
            counts[status] += 1
            rec = {"type": "point", "status": status}
            rec.update(result.to_obj())
            report.records.append(rec)
    report.summary = {"type": "summary", **counts}
    return report


def run_bench(grid: GridSpec) -> tuple[RunReport, list[dict]]:
    """Time closed-form evaluation against Bareiss elimination per point.

    Equality of the two results is asserted as a side check and drives the
    report verdict; wall times are returned separately so reports stay
    deterministic.
    """
    if grid.mode == "symbolic":
        raise ValueError("bench runs on numeric assignments only")
    rng = random.Random(grid.seed) if grid.mode == "random" else None
    report = RunReport(
        command="bench", seed=grid.seed if grid.mode == "random" else None
    )
    timings: list[dict] = []
    counts = {"points": 0, "equal": 0, "mismatch": 0, "skipped": 0}
    for m, n, l in grid.param_combos():
        params = _params_obj(grid.family, m, n, l)
        try:
            FamilySpec(grid.family, m=m, n=n, l=l)
        except ValueError as exc:
            counts["points"] += 1
            counts["skipped"] += 1
            report.records.append(
                {"type": "point", "status": "skipped", "params": params,
                 "reason": str(exc)}
            )
            continue
        for assignment in _assignments(grid, m, rng):
            counts["points"] += 1
            spec = FamilySpec(grid.family, m=m, n=n, l=l, assignment=assignment)
            try:
                check_size_guard(spec, grid.max_size)
            except SizeGuardError as exc:
                counts["skipped"] += 1
                report.records.append(
                    {"type": "point", "status": "skipped", "params": params,
                     "reason": str(exc)}
                )
                continue
            matrix = build(spec)
            t0 = time.perf_counter()
            closed = closed_form_det(spec)
            t1 = time.perf_counter()
            eliminated = det_bareiss(matrix)
            t2 = time.perf_counter()
            equal = closed == eliminated
            status = "equal" if equal else "mismatch"
            counts[status] += 1
            report.records.append(
                {
                    "type": "point",
                    "status": status,
                    "spec": spec.to_obj(),
                    "det_closed_form": matrix.ring.render(closed),
                    "det_elimination": matrix.ring.render(eliminated),
                }
            )
            timings.append(
                {
                    "spec": spec.to_obj(),
                    "closed_form_seconds": t1 - t0,
                    "bareiss_seconds": t2 - t1,
                }
            )
    report.summary = {"type": "summary", **counts}
    return report, timings
