"""Immutable dense matrices over an exact ring, with determinant oracles.

Elementary row/column operations return a fresh matrix together with the
exact multiplier relating the two determinants, so a sequence of operations
doubles as an auditable determinant computation.  Two independent oracles
are provided: Laplace (cofactor) expansion, capped at 6x6, and fraction-free
Bareiss elimination, which needs nothing from the ring beyond exact
division and therefore runs over the integers, the rationals, and the
polynomial ring alike.

All indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .rings import Ring, ring_from_obj, ring_to_obj


class ShapeError(ValueError):
    """A matrix operation was asked for with out-of-shape indices."""


class SizeGuardError(ValueError):
    """A computation exceeded its configured size guard."""


@dataclass(frozen=True)
class Matrix:
    """A rows x cols matrix with row-major entries over an exact ring."""

    ring: Ring
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("matrix dimensions must be >= 0")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> Matrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        return cls(ring, nrows, ncols, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> Matrix:
        one, zero = ring.one(), ring.zero()
        return cls(
            ring, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n))
        )

    # -- access ---------------------------------------------------------------

    def entry(self, i: int, j: int):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise ShapeError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        if not 0 <= i < self.rows:
            raise ShapeError(f"row {i} outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- shape operations -------------------------------------------------------

    def delete_row(self, i: int) -> Matrix:
        if not 0 <= i < self.rows:
            raise ShapeError(f"row {i} outside {self.rows}x{self.cols}")
        e = self.entries[: i * self.cols] + self.entries[(i + 1) * self.cols :]
        return Matrix(self.ring, self.rows - 1, self.cols, e)

    def delete_col(self, j: int) -> Matrix:
        if not 0 <= j < self.cols:
            raise ShapeError(f"column {j} outside {self.rows}x{self.cols}")
        e = tuple(
            self.entries[i * self.cols + k]
            for i in range(self.rows)
            for k in range(self.cols)
            if k != j
        )
        return Matrix(self.ring, self.rows, self.cols - 1, e)

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> Matrix:
        rows = list(row_idx)
        cols = list(col_idx)
        if any(not 0 <= i < self.rows for i in rows) or any(
            not 0 <= j < self.cols for j in cols
        ):
            raise ShapeError("submatrix index out of range")
        e = tuple(self.entries[i * self.cols + j] for i in rows for j in cols)
        return Matrix(self.ring, len(rows), len(cols), e)

    def transpose(self) -> Matrix:
        e = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return Matrix(self.ring, self.cols, self.rows, e)

    def map_entries(self, fn: Callable, ring: Ring | None = None) -> Matrix:
        return Matrix(
            ring or self.ring, self.rows, self.cols, tuple(fn(e) for e in self.entries)
        )

    # -- rendering / serialization ------------------------------------------------

    def render(self) -> str:
        out = []
        for i in range(self.rows):
            out.append("[" + ", ".join(self.ring.render(e) for e in self.row(i)) + "]")
        return "\n".join(out) if out else "[]"

    def to_obj(self) -> dict:
        obj = {"rows": self.rows, "cols": self.cols}
        obj.update(ring_to_obj(self.ring))
        obj["entries"] = [self.ring.to_obj(e) for e in self.entries]
        return obj

    @classmethod
    def from_obj(cls, obj: dict) -> Matrix:
        ring = ring_from_obj(obj)
        entries = tuple(ring.from_obj(e) for e in obj["entries"])
        return cls(ring, int(obj["rows"]), int(obj["cols"]), entries)


# -- elementary operations ---------------------------------------------------
#
# apply() returns the transformed matrix plus the multiplier relating the
# determinants:  det(old) = sign * factor * det(new).


@dataclass(frozen=True)
class AddScaledRow:
    """row[dst] += scale * row[src]; determinant unchanged."""

    src: int
    dst: int
    scale: Any


@dataclass(frozen=True)
class AddScaledColumn:
    """col[dst] += scale * col[src]; determinant unchanged."""

    src: int
    dst: int
    scale: Any


@dataclass(frozen=True)
class FactorOutRow:
    """Divide every entry of the row by factor; det(old) = factor * det(new)."""

    row: int
    factor: Any


@dataclass(frozen=True)
class FactorOutColumn:
    col: int
    factor: Any


@dataclass(frozen=True)
class SwapRows:
    a: int
    b: int


@dataclass(frozen=True)
class MoveRow:
    """Remove row src and reinsert it at dst; sign (-1)^|src-dst|."""

    src: int
    dst: int


@dataclass(frozen=True)
class DeleteRowCol:
    """Expand along a row with a single nonzero entry at (row, col).

    Only legal when every other entry of the row is zero; then
    det(old) = (-1)^(row+col) * entry * det(minor).
    """

    row: int
    col: int


ElementaryOp = (
    AddScaledRow
    | AddScaledColumn
    | FactorOutRow
    | FactorOutColumn
    | SwapRows
    | MoveRow
    | DeleteRowCol
)


@dataclass(frozen=True)
class AppliedOp:
    """Result of one elementary operation: det(old) = sign * factor * det(new)."""

    matrix: Matrix
    sign: int
    factor: Any | None


def _check_row(m: Matrix, i: int):
    if not 0 <= i < m.rows:
        raise ShapeError(f"row {i} outside {m.rows}x{m.cols}")


def _check_col(m: Matrix, j: int):
    if not 0 <= j < m.cols:
        raise ShapeError(f"column {j} outside {m.rows}x{m.cols}")


def apply(m: Matrix, op: ElementaryOp) -> AppliedOp:
    """Apply one elementary operation, returning the exact det multiplier."""
    ring = m.ring
    ncols = m.cols

    if isinstance(op, AddScaledRow):
        _check_row(m, op.src)
        _check_row(m, op.dst)
        if op.src == op.dst:
            raise ShapeError("AddScaledRow needs distinct rows")
        e = list(m.entries)
        s, d = op.src * ncols, op.dst * ncols
        for j in range(ncols):
            e[d + j] = e[d + j] + op.scale * m.entries[s + j]
        return AppliedOp(Matrix(ring, m.rows, m.cols, tuple(e)), 1, None)

    if isinstance(op, AddScaledColumn):
        _check_col(m, op.src)
        _check_col(m, op.dst)
        if op.src == op.dst:
            raise ShapeError("AddScaledColumn needs distinct columns")
        e = list(m.entries)
        for i in range(m.rows):
            base = i * ncols
            e[base + op.dst] = e[base + op.dst] + op.scale * m.entries[base + op.src]
        return AppliedOp(Matrix(ring, m.rows, m.cols, tuple(e)), 1, None)

    if isinstance(op, FactorOutRow):
        _check_row(m, op.row)
        e = list(m.entries)
        base = op.row * ncols
        for j in range(ncols):
            e[base + j] = ring.exact_div(e[base + j], op.factor)
        return AppliedOp(Matrix(ring, m.rows, m.cols, tuple(e)), 1, op.factor)

    if isinstance(op, FactorOutColumn):
        _check_col(m, op.col)
        e = list(m.entries)
        for i in range(m.rows):
            e[i * ncols + op.col] = ring.exact_div(e[i * ncols + op.col], op.factor)
        return AppliedOp(Matrix(ring, m.rows, m.cols, tuple(e)), 1, op.factor)

    if isinstance(op, SwapRows):
        _check_row(m, op.a)
        _check_row(m, op.b)
        if op.a == op.b:
            raise ShapeError("SwapRows needs distinct rows")
        rows = m.to_rows()
        rows[op.a], rows[op.b] = rows[op.b], rows[op.a]
        return AppliedOp(Matrix.from_rows(ring, rows), -1, None)

    if isinstance(op, MoveRow):
        _check_row(m, op.src)
        _check_row(m, op.dst)
        rows = m.to_rows()
        r = rows.pop(op.src)
        rows.insert(op.dst, r)
        sign = -1 if abs(op.src - op.dst) % 2 else 1
        return AppliedOp(Matrix.from_rows(ring, rows), sign, None)

    if isinstance(op, DeleteRowCol):
        _check_row(m, op.row)
        _check_col(m, op.col)
        if not m.is_square:
            raise ShapeError("DeleteRowCol requires a square matrix")
        base = op.row * ncols
        for j in range(ncols):
            if j != op.col and not ring.is_zero(m.entries[base + j]):
                raise ShapeError(
                    f"row {op.row} is not zero away from column {op.col}; "
                    "single-entry expansion is not legal"
                )
        pivot = m.entries[base + op.col]
        minor = m.delete_row(op.row).delete_col(op.col)
        sign = -1 if (op.row + op.col) % 2 else 1
        return AppliedOp(minor, sign, pivot)

    raise TypeError(f"unknown elementary operation {op!r}")


def describe_op(op: ElementaryOp, ring: Ring) -> dict:
    """JSON-ready description of an elementary operation."""
    if isinstance(op, AddScaledRow):
        return {"op": "add_scaled_row", "src": op.src, "dst": op.dst,
                "scale": ring.render(op.scale)}
    if isinstance(op, AddScaledColumn):
        return {"op": "add_scaled_column", "src": op.src, "dst": op.dst,
                "scale": ring.render(op.scale)}
    if isinstance(op, FactorOutRow):
        return {"op": "factor_out_row", "row": op.row, "factor": ring.render(op.factor)}
    if isinstance(op, FactorOutColumn):
        return {"op": "factor_out_column", "col": op.col, "factor": ring.render(op.factor)}
    if isinstance(op, SwapRows):
        return {"op": "swap_rows", "a": op.a, "b": op.b}
    if isinstance(op, MoveRow):
        return {"op": "move_row", "src": op.src, "dst": op.dst}
    if isinstance(op, DeleteRowCol):
        return {"op": "delete_row_col", "row": op.row, "col": op.col}
    raise TypeError(f"unknown elementary operation {op!r}")


# -- determinant oracles --------------------------------------------------------


def det_cofactor(m: Matrix, max_rows: int = 6):
    """Determinant by Laplace expansion along the first row.

    Factorial cost, so guarded at max_rows (default 6); use det_bareiss for
    anything larger.  The 0x0 determinant is 1 (empty product).
    """
    if not m.is_square:
        raise ShapeError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    if m.rows > max_rows:
        raise SizeGuardError(
            f"cofactor expansion guarded at {max_rows}x{max_rows}, got {m.rows}"
        )
    ring = m.ring

    def expand(rows: list[int], cols: list[int]):
        if not rows:
            return ring.one()
        i = rows[0]
        total = ring.zero()
        for pos, j in enumerate(cols):
            a = m.entries[i * m.cols + j]
            if ring.is_zero(a):
                continue
            minor = expand(rows[1:], cols[:pos] + cols[pos + 1 :])
            term = a * minor
            total = total + term if pos % 2 == 0 else total - term
        return total

    return expand(list(range(m.rows)), list(range(m.cols)))


def det_bareiss(m: Matrix):
    """Determinant by fraction-free (Bareiss) single-step elimination.

    Every division is by the previous pivot and is provably exact in any
    integral domain, so an inexact division signals a ring bug, not a
    numerical issue.  Pivots are the first nonzero entry in the current
    column; each row swap flips the sign.
    """
    if not m.is_square:
        raise ShapeError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    ring = m.ring
    if n == 0:
        return ring.one()
    rows = m.to_rows()
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        pivot_row = next(
            (r for r in range(k, n) if not ring.is_zero(rows[r][k])), None
        )
        if pivot_row is None:
            return ring.zero()
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri, rk = rows[i], rows[k]
            head = ri[k]
            for j in range(k + 1, n):
                ri[j] = ring.exact_div(pivot * ri[j] - head * rk[j], prev)
            ri[k] = ring.zero()
        prev = pivot
    d = rows[n - 1][n - 1]
    return -d if sign < 0 else d
