"""Determinant reductions that emit machine-checkable certificates.

Each engine replays one inductive determinant evaluation as a sequence of
elementary matrix operations.  Extracted scalar factors and sign changes
are accumulated in a FactorCertificate whose validity,

    sign * (product of factors) * det(residual) == det(original),

is independently checkable with Bareiss elimination at any time. Run to
completion, the residual is the 0x0 matrix (determinant 1 by the empty
product convention) and the certificate total *is* the closed-form product
formula, reconstructed constructively rather than asserted.

Engines:

* ``reduce_power_derivative``: peels one variable per level off the
  2m x 2m power/derivative matrix (two column sweeps, a row move, and four
  groups of row factor-outs per level).
* ``reduce_shifted``: factors X_i^2 / X_i out of the shifted family's rows,
  subtracts the power rows from the derivative rows, then proceeds as
  above.
* ``BinomialReduction.reduce_round``: one unit-row elimination round on the
  block-wise binomial matrix; ``reduce_binomial_induction_m`` drains one
  block at a time, ``reduce_binomial_induction_l`` removes one row from
  every block per sweep.  Both reach the same total through different
  factor sequences.
* ``reduce_pascal``: column-difference sweeps on the integer Pascal
  matrix; the certificate ends with an empty factor list, total 1.

Sign bookkeeping is kept in the certificate and never folded into factors,
so each row move and off-top row deletion records its own (-1)^k where it
happens.

Numeric assignments must be pairwise distinct and nonzero: the engines
divide rows by X_pivot and by differences X_i - X_pivot, which degenerate
assignments would turn into 0/0.  The identities themselves (see
``families``) carry no such restriction.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .families import (
    FamilyKind,
    FamilySpec,
    binomial_block_matrix,
    build,
    family_values,
    power_derivative_matrix,
    shifted_power_matrix,
)
from .matrix_core import (
    AddScaledColumn,
    AddScaledRow,
    DeleteRowCol,
    ElementaryOp,
    FactorOutRow,
    Matrix,
    MoveRow,
    apply,
    describe_op,
    det_bareiss,
)
from .multipoly import MultiPoly
from .rings import QQ, PolyRing, Ring, ZZ

SNAPSHOT_LIMIT = 8


@dataclass(frozen=True)
class ExtractedFactor:
    """One scalar factor pulled out of the matrix, with its step label."""

    label: str
    value: Any


@dataclass(frozen=True)
class FactorCertificate:
    """Witness that det(original) = sign * prod(factors) * det(residual)."""

    ring: Ring
    sign: int
    factors: tuple[ExtractedFactor, ...]
    residual: Matrix

    def factor_product(self):
        result = self.ring.one()
        for f in self.factors:
            result = result * f.value
        return result

    def total(self):
        """sign * product of factors; the determinant once fully reduced."""
        if self.residual.rows != 0:
            raise ValueError(
                f"certificate is not fully reduced (residual {self.residual.rows}x"
                f"{self.residual.cols})"
            )
        p = self.factor_product()
        return -p if self.sign < 0 else p

    def to_obj(self) -> dict:
        return {
            "sign": self.sign,
            "factors": [
                {"label": f.label, "value": self.ring.render(f.value)}
                for f in self.factors
            ],
            "residual": self.residual.to_obj(),
        }


@dataclass(frozen=True)
class TraceStage:
    """One recorded elementary operation and the state it produced."""

    label: str
    context: str
    op: ElementaryOp
    sign_delta: int
    factor: Any | None
    shape: tuple[int, int]
    snapshot: Matrix | None
    digest: str | None
    sign_after: int
    factors_after: int


@dataclass
class ReductionTrace:
    """The recorded stage sequence of one reduction, in order."""

    original: Matrix
    stages: list[TraceStage] = field(default_factory=list)

    def to_obj(self) -> list[dict]:
        ring = self.original.ring
        out = []
        for st in self.stages:
            rec: dict = {
                "step_label": st.label,
                "context": st.context,
                "op": describe_op(st.op, ring),
                "residual_shape": [st.shape[0], st.shape[1]],
            }
            if st.factor is not None:
                rec["factor"] = ring.render(st.factor)
            if st.sign_delta != 1:
                rec["sign_delta"] = st.sign_delta
            if st.snapshot is None and st.digest is not None:
                rec["digest"] = st.digest
            out.append(rec)
        return out


def _digest(matrix: Matrix) -> str:
    blob = json.dumps(matrix.to_obj(), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


class _Reducer:
    """Applies elementary ops while keeping certificate and trace in sync."""

    def __init__(
        self,
        matrix: Matrix,
        *,
        record_trace: bool = True,
        force_snapshots: bool = False,
    ):
        self.ring = matrix.ring
        self.original = matrix
        self.matrix = matrix
        self.sign = 1
        self.factors: list[ExtractedFactor] = []
        self.stages: list[TraceStage] | None = [] if record_trace else None
        self.force_snapshots = force_snapshots

    def apply(
        self,
        op: ElementaryOp,
        *,
        label: str,
        context: str = "",
        factor_label: str | None = None,
    ) -> None:
        applied = apply(self.matrix, op)
        self.matrix = applied.matrix
        self.sign *= applied.sign
        factor = None
        if factor_label is not None:
            if applied.factor is None:
                raise RuntimeError(f"step {label!r} expected a factor, got none")
            factor = applied.factor
            self.factors.append(ExtractedFactor(factor_label, factor))
        elif applied.factor is not None and applied.factor != self.ring.one():
            # unit-row deletions must contribute exactly 1; anything else is
            # an engine bug, not a recordable factor
            raise RuntimeError(
                f"step {label!r} silently produced multiplier "
                f"{self.ring.render(applied.factor)}"
            )
        if self.stages is not None:
            m = self.matrix
            snap = self.force_snapshots or max(m.rows, m.cols, 1) <= SNAPSHOT_LIMIT
            self.stages.append(
                TraceStage(
                    label=label,
                    context=context,
                    op=op,
                    sign_delta=applied.sign,
                    factor=factor,
                    shape=(m.rows, m.cols),
                    snapshot=m if snap else None,
                    digest=None if snap else _digest(m),
                    sign_after=self.sign,
                    factors_after=len(self.factors),
                )
            )

    def certificate(self) -> FactorCertificate:
        return FactorCertificate(
            ring=self.ring,
            sign=self.sign,
            factors=tuple(self.factors),
            residual=self.matrix,
        )

    def trace(self) -> ReductionTrace | None:
        if self.stages is None:
            return None
        return ReductionTrace(original=self.original, stages=self.stages)


def _resolve_ring(xs: Sequence, ring: Ring | None) -> tuple[Ring, list]:
    if ring is not None:
        return ring, list(xs)
    if all(isinstance(x, (int, Fraction)) for x in xs):
        return QQ, [Fraction(x) for x in xs]
    if all(isinstance(x, MultiPoly) for x in xs) and xs:
        nv = xs[0].nvars
        if any(x.nvars != nv for x in xs):
            raise ValueError("mixed variable counts in assignment values")
        return PolyRing(nv), list(xs)
    raise ValueError("cannot infer a ring from the assignment values")


def _require_generic(ring: Ring, xs: Sequence) -> None:
    for i, x in enumerate(xs):
        if ring.is_zero(x):
            raise ValueError(
                f"reduction requires nonzero values; X{i + 1} is zero"
            )
        for j in range(i):
            if xs[j] == x:
                raise ValueError(
                    f"reduction requires pairwise distinct values; "
                    f"X{j + 1} equals X{i + 1}"
                )


# -- power/derivative family ---------------------------------------------------


def _power_derivative_levels(red: _Reducer, vs: list[tuple[int, Any]]) -> None:
    """Run the per-variable levels on a matrix already in family form.

    vs holds (original 1-based index, value) pairs for the variables still
    alive; each level consumes the first one and shrinks the matrix by two.
    """
    while vs:
        mp = len(vs)
        ctx = f"m={mp}"
        s = red.matrix.rows
        p_idx, p_val = vs[0]

        # sweep right to left so each subtraction sees the original neighbor
        for j in range(s - 1, 0, -1):
            red.apply(AddScaledColumn(j - 1, j, -p_val), label="A^(1)", context=ctx)
        red.apply(DeleteRowCol(0, 0), label="A^(1)", context=ctx)
        if mp >= 2:
            red.apply(MoveRow(mp - 1, 0), label="A^(2)", context=ctx)
        for i in range(1, mp):
            red.apply(
                FactorOutRow(i, vs[i][1] - p_val),
                label="A^(3)",
                context=ctx,
                factor_label=f"X{vs[i][0]} - X{p_idx}",
            )
        for i in range(1, mp):
            red.apply(
                AddScaledRow(i, mp - 1 + i, -vs[i][1]), label="A^(4)", context=ctx
            )
            red.apply(
                FactorOutRow(mp - 1 + i, vs[i][1] - p_val),
                label="A^(5)",
                context=ctx,
                factor_label=f"X{vs[i][0]} - X{p_idx}",
            )
        for j in range(s - 2, 0, -1):
            red.apply(AddScaledColumn(j - 1, j, -p_val), label="A^(6)", context=ctx)
        red.apply(
            DeleteRowCol(0, 0), label="A^(7)", context=ctx, factor_label=f"X{p_idx}"
        )
        for i in range(1, mp):
            red.apply(
                FactorOutRow(i - 1, vs[i][1] - p_val),
                label="A^(8)",
                context=ctx,
                factor_label=f"X{vs[i][0]} - X{p_idx}",
            )
        for i in range(1, mp):
            red.apply(
                AddScaledRow(i - 1, mp - 2 + i, -vs[i][1]), label="A^(8)", context=ctx
            )
            red.apply(
                FactorOutRow(mp - 2 + i, vs[i][1] - p_val),
                label="A^(8)",
                context=ctx,
                factor_label=f"X{vs[i][0]} - X{p_idx}",
            )
        vs = vs[1:]


def reduce_power_derivative(
    xs: Sequence,
    *,
    ring: Ring | None = None,
    record_trace: bool = True,
    force_snapshots: bool = False,
) -> tuple[FactorCertificate, ReductionTrace | None]:
    """Reduce the 2m x 2m power/derivative matrix down to 0x0."""
    ring, xs = _resolve_ring(xs, ring)
    _require_generic(ring, xs)
    red = _Reducer(
        power_derivative_matrix(ring, xs),
        record_trace=record_trace,
        force_snapshots=force_snapshots,
    )
    _power_derivative_levels(red, list(enumerate(xs, start=1)))
    return red.certificate(), red.trace()


def reduce_shifted(
    xs: Sequence,
    *,
    ring: Ring | None = None,
    record_trace: bool = True,
    force_snapshots: bool = False,
) -> tuple[FactorCertificate, ReductionTrace | None]:
    """Reduce the shifted family: strip X_i^2 / X_i row factors, subtract
    the power rows from the derivative rows, then run the level engine."""
    ring, xs = _resolve_ring(xs, ring)
    _require_generic(ring, xs)
    m = len(xs)
    red = _Reducer(
        shifted_power_matrix(ring, xs),
        record_trace=record_trace,
        force_snapshots=force_snapshots,
    )
    minus_one = ring.from_int(-1)
    for i, x in enumerate(xs):
        red.apply(
            FactorOutRow(i, x * x),
            label="A^(1)",
            context="prefactor",
            factor_label=f"X{i + 1}^2",
        )
    for i, x in enumerate(xs):
        red.apply(
            FactorOutRow(m + i, x),
            label="A^(1)",
            context="prefactor",
            factor_label=f"X{i + 1}",
        )
    for i in range(m):
        red.apply(AddScaledRow(i, m + i, minus_one), label="A^(2)", context="prefactor")
    _power_derivative_levels(red, list(enumerate(xs, start=1)))
    return red.certificate(), red.trace()


# -- block-wise binomial family --------------------------------------------------


@dataclass
class _Block:
    index: int  # original 1-based variable index
    value: Any
    rows: int


class BinomialReduction:
    """Mid-reduction state of the block-wise binomial matrix.

    After every completed round each surviving block is back in canonical
    form C(n+j-1, k-1) * X_i^(j-1), with the per-block row counts recorded
    in ``blocks``, so rounds compose freely: drain one block completely
    (induction on the block count) or take one row from every block per
    sweep (induction on the block height).
    """

    def __init__(
        self,
        xs: Sequence,
        n: int,
        l: int,
        *,
        ring: Ring | None = None,
        record_trace: bool = True,
        force_snapshots: bool = False,
    ):
        if not (n >= l >= 1):
            raise ValueError(f"requires n >= l >= 1, got n={n}, l={l}")
        ring, xs = _resolve_ring(xs, ring)
        _require_generic(ring, xs)
        self.n = n
        self.l = l
        self.blocks = [_Block(i, x, l) for i, x in enumerate(xs, start=1)]
        matrix = binomial_block_matrix(ring, n, [(x, l) for x in xs])
        self._red = _Reducer(
            matrix, record_trace=record_trace, force_snapshots=force_snapshots
        )
        self._round_no = 0

    @property
    def matrix(self) -> Matrix:
        return self._red.matrix

    @property
    def finished(self) -> bool:
        return self._red.matrix.rows == 0

    def reduce_round(self, pivot: int) -> list[ExtractedFactor]:
        """One unit-row elimination round pivoting on the given block.

        Column-sweep by the pivot's value, delete the unit row it exposes
        (and column 1), factor the pivot value out of the pivot block's
        remaining rows, and cascade every other block back to canonical
        form, extracting (X_i - X_pivot) per row.  The matrix shrinks by
        one; returns the factors extracted this round.
        """
        blk = self.blocks[pivot]
        if blk.rows < 1:
            raise ValueError(f"pivot block {pivot} has no rows left")
        red = self._red
        self._round_no += 1
        r = self._round_no
        ctx = f"round={r},pivot=X{blk.index}"
        before = len(red.factors)

        s = red.matrix.rows
        for j in range(s - 1, 0, -1):
            red.apply(AddScaledColumn(j - 1, j, -blk.value), label="A^(1)", context=ctx)
        unit_row = sum(b.rows for b in self.blocks[:pivot])
        red.apply(DeleteRowCol(unit_row, 0), label="A^(2)", context=ctx)
        blk.rows -= 1

        round_label = f"A^<{r}>"
        for t in range(blk.rows):
            red.apply(
                FactorOutRow(unit_row + t, blk.value),
                label=round_label,
                context=ctx,
                factor_label=f"X{blk.index}",
            )
        pos = 0
        for b_i, b in enumerate(self.blocks):
            if b_i == pivot or b.rows == 0:
                pos += b.rows
                continue
            diff = b.value - blk.value
            flabel = f"X{b.index} - X{blk.index}"
            red.apply(
                FactorOutRow(pos, diff),
                label=round_label,
                context=ctx,
                factor_label=flabel,
            )
            for t in range(1, b.rows):
                red.apply(
                    AddScaledRow(pos + t - 1, pos + t, -b.value),
                    label=round_label,
                    context=ctx,
                )
                red.apply(
                    FactorOutRow(pos + t, diff),
                    label=round_label,
                    context=ctx,
                    factor_label=flabel,
                )
            pos += b.rows
        return red.factors[before:]

    def canonical_blocks(self) -> list[tuple[Any, int]]:
        """(value, row count) per block; feeds binomial_block_matrix."""
        return [(b.value, b.rows) for b in self.blocks]

    def certificate(self) -> FactorCertificate:
        return self._red.certificate()

    def trace(self) -> ReductionTrace | None:
        return self._red.trace()


def reduce_binomial_induction_m(
    xs: Sequence,
    n: int,
    l: int,
    *,
    ring: Ring | None = None,
    record_trace: bool = True,
    force_snapshots: bool = False,
) -> tuple[FactorCertificate, ReductionTrace | None]:
    """Drain the first block completely (l rounds), then the next, until
    nothing is left.  Factor pattern per drained block i:
    X_i^(l(l-1)/2) * prod over later blocks of (X_j - X_i)^(l*l)."""
    state = BinomialReduction(
        xs, n, l, ring=ring, record_trace=record_trace, force_snapshots=force_snapshots
    )
    while state.blocks:
        state.reduce_round(0)
        if state.blocks[0].rows == 0:
            state.blocks.pop(0)
    return state.certificate(), state.trace()


def reduce_binomial_induction_l(
    xs: Sequence,
    n: int,
    l: int,
    *,
    ring: Ring | None = None,
    record_trace: bool = True,
    force_snapshots: bool = False,
) -> tuple[FactorCertificate, ReductionTrace | None]:
    """Take one row from every block per sweep (pivoting X_1, .., X_m in
    turn), so each sweep lowers the block height by one.  Off-top unit rows
    contribute the (-1)^((j-1)(height-1)) signs recorded per deletion."""
    state = BinomialReduction(
        xs, n, l, ring=ring, record_trace=record_trace, force_snapshots=force_snapshots
    )
    while state.blocks:
        for pivot in range(len(state.blocks)):
            state.reduce_round(pivot)
        if state.blocks[0].rows == 0:
            state.blocks.clear()
    return state.certificate(), state.trace()


# -- Pascal family ----------------------------------------------------------------


def reduce_pascal(
    n: int,
    m: int,
    *,
    record_trace: bool = True,
    force_snapshots: bool = False,
) -> tuple[FactorCertificate, ReductionTrace | None]:
    """Column-difference sweeps on the m x m Pascal matrix.

    Each sweep turns column j into column j minus column j-1, which by the
    binomial recurrence C(q, i) - C(q-1, i) = C(q-1, i-1) exposes a unit
    first row; deleting it leaves the same family one size smaller.  No
    factors are ever extracted: the certificate total is exactly 1.
    """
    spec = FamilySpec(FamilyKind.BINOMIAL_PASCAL, m=m, n=n)
    red = _Reducer(
        build(spec), record_trace=record_trace, force_snapshots=force_snapshots
    )
    minus_one = ZZ.from_int(-1)
    for mp in range(m, 0, -1):
        ctx = f"m={mp}"
        s = red.matrix.rows
        for j in range(s - 1, 0, -1):
            red.apply(AddScaledColumn(j - 1, j, minus_one), label="A^(1)", context=ctx)
        red.apply(DeleteRowCol(0, 0), label="A^(2)", context=ctx)
    return red.certificate(), red.trace()


# -- checking and dispatch ---------------------------------------------------------


def check_certificate(
    cert: FactorCertificate, original: Matrix, *, expected_det=None
) -> bool:
    """Does sign * prod(factors) * det(residual) equal det(original)?

    Both determinants go through Bareiss elimination; pass expected_det to
    reuse an already-computed det(original).
    """
    if cert.ring != original.ring:
        raise ValueError(
            f"ring mismatch: certificate over {cert.ring!r}, matrix over "
            f"{original.ring!r}"
        )
    lhs = cert.factor_product() * det_bareiss(cert.residual)
    if cert.sign < 0:
        lhs = -lhs
    rhs = det_bareiss(original) if expected_det is None else expected_det
    return lhs == rhs


ENGINES = ("thm1", "cor2", "thm3-m", "thm3-l", "pascal")

_ENGINE_KINDS = {
    "thm1": FamilyKind.POWER_DERIVATIVE,
    "cor2": FamilyKind.POWER_DERIVATIVE_SHIFTED,
    "thm3-m": FamilyKind.BINOMIAL_POWER,
    "thm3-l": FamilyKind.BINOMIAL_POWER,
    "pascal": FamilyKind.BINOMIAL_PASCAL,
}


def reduce_family(
    spec: FamilySpec,
    engine: str,
    *,
    record_trace: bool = True,
    force_snapshots: bool = False,
) -> tuple[FactorCertificate, ReductionTrace | None]:
    """Run the named engine on a family instance."""
    if engine not in _ENGINE_KINDS:
        raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
    if spec.kind is not _ENGINE_KINDS[engine]:
        raise ValueError(
            f"engine {engine!r} applies to {_ENGINE_KINDS[engine].value}, "
            f"not {spec.kind.value}"
        )
    kwargs = dict(record_trace=record_trace, force_snapshots=force_snapshots)
    if engine == "pascal":
        return reduce_pascal(spec.n, spec.m, **kwargs)
    ring, xs = family_values(spec)
    if engine == "thm1":
        return reduce_power_derivative(xs, ring=ring, **kwargs)
    if engine == "cor2":
        return reduce_shifted(xs, ring=ring, **kwargs)
    if engine == "thm3-m":
        return reduce_binomial_induction_m(xs, spec.n, spec.l, ring=ring, **kwargs)
    return reduce_binomial_induction_l(xs, spec.n, spec.l, ring=ring, **kwargs)
