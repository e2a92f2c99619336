"""Structured matrix families and their closed-form determinants.

Four families are built here, each over either the rational numbers (a
numeric assignment of the variables) or the integer-coefficient polynomial
ring (symbolic assignment):

* ``power_derivative``: 2m x 2m, a block of geometric rows X_i^(j-1)
  stacked over a block of derivative-style rows j*X_i^(j-1); determinant
  (-1)^(m(m-1)/2) * prod X_i * prod_(i<j) (X_j - X_i)^4.
* ``power_derivative_shifted``: the same with rows X_i^(j+1) and
  (j+1)*X_i^j; determinant picks up X_i^4 per variable instead of X_i.
* ``binomial_power``: ml x ml block matrix, block i holding rows
  C(n+j-1, k-1) * X_i^(j-1) for k = 1..l; determinant
  prod X_i^(l(l-1)/2) * prod_(i<j) (X_j - X_i)^(l^2), independent of n.
* ``binomial_pascal``: the m x m integer matrix C(n+j-1, i-1), determinant
  exactly 1 whenever 1 <= m <= n.  This family has no variables and is
  built over the integers.

``verify_identity`` computes both sides independently (Bareiss elimination
on the built matrix vs. direct evaluation of the product formula) and
reports exact equality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_arith import binomial, format_rational, parse_rational
from .matrix_core import Matrix, SizeGuardError, det_bareiss
from .rings import QQ, ZZ, PolyRing, Ring

SYMBOLIC = "symbolic"

SYMBOLIC_SIZE_GUARD = 8
NUMERIC_SIZE_GUARD = 40


class FamilyKind(str, enum.Enum):
    POWER_DERIVATIVE = "power_derivative"
    POWER_DERIVATIVE_SHIFTED = "power_derivative_shifted"
    BINOMIAL_POWER = "binomial_power"
    BINOMIAL_PASCAL = "binomial_pascal"


_NEEDS_N = {FamilyKind.BINOMIAL_POWER, FamilyKind.BINOMIAL_PASCAL}


@dataclass(frozen=True)
class FamilySpec:
    """Descriptor of one family instance: kind, parameters, and assignment."""

    kind: FamilyKind
    m: int
    n: int | None = None
    l: int | None = None
    assignment: str | tuple[Fraction, ...] = SYMBOLIC

    def __post_init__(self):
        object.__setattr__(self, "kind", FamilyKind(self.kind))
        if self.assignment != SYMBOLIC:
            values = tuple(Fraction(v) for v in self.assignment)
            object.__setattr__(self, "assignment", values)
        self._validate()

    def _validate(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        kind = self.kind
        if kind in (FamilyKind.POWER_DERIVATIVE, FamilyKind.POWER_DERIVATIVE_SHIFTED):
            if self.n is not None or self.l is not None:
                raise ValueError(f"{kind.value} takes no n or l parameter")
        elif kind is FamilyKind.BINOMIAL_POWER:
            if self.n is None or self.l is None:
                raise ValueError("binomial_power requires n and l")
            if self.l < 1:
                raise ValueError(f"requires l >= 1, got l={self.l}")
            if self.n < self.l:
                raise ValueError(f"requires n >= l, got n={self.n}, l={self.l}")
        elif kind is FamilyKind.BINOMIAL_PASCAL:
            if self.n is None:
                raise ValueError("binomial_pascal requires n")
            if self.l is not None:
                raise ValueError("binomial_pascal takes no l parameter")
            if not 1 <= self.m <= self.n:
                raise ValueError(
                    f"requires 1 <= m <= n, got m={self.m}, n={self.n}"
                )
            if self.assignment != SYMBOLIC:
                raise ValueError("binomial_pascal has no variables to assign")
        if self.assignment != SYMBOLIC and len(self.assignment) != self.m:
            raise ValueError(
                f"assignment must provide {self.m} values, got {len(self.assignment)}"
            )

    @property
    def is_symbolic(self) -> bool:
        return self.assignment == SYMBOLIC

    def size(self) -> int:
        """Dimension of the built (square) matrix."""
        if self.kind is FamilyKind.BINOMIAL_POWER:
            return self.m * self.l
        if self.kind is FamilyKind.BINOMIAL_PASCAL:
            return self.m
        return 2 * self.m

    def to_obj(self) -> dict:
        obj: dict = {"kind": self.kind.value, "m": self.m}
        if self.n is not None:
            obj["n"] = self.n
        if self.l is not None:
            obj["l"] = self.l
        if self.is_symbolic:
            obj["assignment"] = SYMBOLIC
        else:
            obj["assignment"] = [format_rational(v) for v in self.assignment]
        return obj

    @classmethod
    def from_obj(cls, obj: dict) -> FamilySpec:
        assignment = obj.get("assignment", SYMBOLIC)
        if assignment != SYMBOLIC:
            assignment = tuple(parse_rational(str(v)) for v in assignment)
        return cls(
            kind=FamilyKind(obj["kind"]),
            m=int(obj["m"]),
            n=int(obj["n"]) if obj.get("n") is not None else None,
            l=int(obj["l"]) if obj.get("l") is not None else None,
            assignment=assignment,
        )


def family_values(spec: FamilySpec) -> tuple[Ring, list]:
    """The coefficient ring and the values assigned to X_1..X_m.

    Symbolic specs get the polynomial ring and its indeterminates; numeric
    specs get the rationals.  The Pascal family is constant, so it lives
    over the integers with no values.
    """
    if spec.kind is FamilyKind.BINOMIAL_PASCAL:
        return ZZ, []
    if spec.is_symbolic:
        ring = PolyRing(spec.m)
        return ring, ring.variables()
    return QQ, list(spec.assignment)


def _geometric_rows(xs: Sequence, ncols: int) -> list[list]:
    """Power tables: row i is [x_i^0, ..., x_i^(ncols-1)]."""
    rows = []
    for x in xs:
        row = [x**0]
        for _ in range(ncols - 1):
            row.append(row[-1] * x)
        rows.append(row)
    return rows


def binomial_block_matrix(ring: Ring, n: int, blocks: Sequence[tuple]) -> Matrix:
    """The block-wise binomial matrix for per-block (value, row count) pairs.

    Block i contributes rows C(n+j-1, k-1) * x_i^(j-1) for k = 1..rows_i,
    over j = 1..total rows.  With every block at l rows this is the
    binomial_power family; with fewer rows in some blocks it is the
    canonical mid-reduction shape.
    """
    size = sum(r for _, r in blocks)
    rows: list[list] = []
    for x, nrows in blocks:
        if nrows == 0:
            continue
        powers = _geometric_rows([x], size)[0]
        for k in range(1, nrows + 1):
            rows.append([binomial(n + j - 1, k - 1) * powers[j - 1] for j in range(1, size + 1)])
    if not rows:
        return Matrix(ring, 0, 0, ())
    return Matrix.from_rows(ring, rows)


def power_derivative_matrix(ring: Ring, xs: Sequence) -> Matrix:
    """2m x 2m matrix: rows x_i^(j-1) stacked over rows j * x_i^(j-1)."""
    size = 2 * len(xs)
    powers = _geometric_rows(xs, size)
    rows = [p[:] for p in powers]
    rows += [[j * p[j - 1] for j in range(1, size + 1)] for p in powers]
    return Matrix.from_rows(ring, rows)


def shifted_power_matrix(ring: Ring, xs: Sequence) -> Matrix:
    """2m x 2m matrix: rows x_i^(j+1) stacked over rows (j+1) * x_i^j."""
    size = 2 * len(xs)
    powers = _geometric_rows(xs, size + 2)
    rows = [[p[j + 1] for j in range(1, size + 1)] for p in powers]
    rows += [[(j + 1) * p[j] for j in range(1, size + 1)] for p in powers]
    return Matrix.from_rows(ring, rows)


def pascal_matrix(n: int, m: int) -> Matrix:
    """m x m integer matrix with entry (i, j) = C(n+j-1, i-1), 1-based."""
    rows = [
        [binomial(n + j - 1, i - 1) for j in range(1, m + 1)]
        for i in range(1, m + 1)
    ]
    return Matrix.from_rows(ZZ, rows)


def build(spec: FamilySpec) -> Matrix:
    """The family matrix, blocks stacked in order (first block on top)."""
    kind = spec.kind
    if kind is FamilyKind.BINOMIAL_PASCAL:
        return pascal_matrix(spec.n, spec.m)
    ring, xs = family_values(spec)
    if kind is FamilyKind.BINOMIAL_POWER:
        return binomial_block_matrix(ring, spec.n, [(x, spec.l) for x in xs])
    if kind is FamilyKind.POWER_DERIVATIVE:
        return power_derivative_matrix(ring, xs)
    return shifted_power_matrix(ring, xs)


def closed_form_exponents(spec: FamilySpec) -> tuple[int, int, int]:
    """(exponent of -1, per-variable exponent, per-difference exponent)."""
    m = spec.m
    kind = spec.kind
    if kind is FamilyKind.POWER_DERIVATIVE:
        return (m * (m - 1) // 2, 1, 4)
    if kind is FamilyKind.POWER_DERIVATIVE_SHIFTED:
        return (m * (m - 1) // 2, 4, 4)
    if kind is FamilyKind.BINOMIAL_POWER:
        l = spec.l
        return (0, l * (l - 1) // 2, l * l)
    return (0, 0, 0)


def closed_form_det(spec: FamilySpec):
    """Evaluate sign * prod X_i^a * prod_(i<j) (X_j - X_i)^b directly."""
    ring, xs = family_values(spec)
    sign_exp, var_pow, diff_pow = closed_form_exponents(spec)
    result = ring.one()
    if var_pow:
        for x in xs:
            result = result * x**var_pow
    if diff_pow:
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                result = result * (xs[j] - xs[i]) ** diff_pow
    if sign_exp % 2:
        result = -result
    return result


@dataclass(frozen=True)
class VerificationReport:
    """Both determinants of one family instance and their equality verdict."""

    spec: FamilySpec
    det_elimination: object
    det_closed_form: object
    equal: bool
    ring: Ring = field(compare=False)

    def to_obj(self) -> dict:
        return {
            "spec": self.spec.to_obj(),
            "det_elimination": self.ring.render(self.det_elimination),
            "det_closed_form": self.ring.render(self.det_closed_form),
            "verdict": "equal" if self.equal else "mismatch",
        }


def check_size_guard(spec: FamilySpec, max_size: int | None = None) -> None:
    """Raise SizeGuardError when the instance exceeds its mode's guard."""
    size = spec.size()
    if max_size is None:
        max_size = SYMBOLIC_SIZE_GUARD if spec.is_symbolic and spec.kind is not FamilyKind.BINOMIAL_PASCAL else NUMERIC_SIZE_GUARD
    if size > max_size:
        mode = "symbolic" if spec.is_symbolic else "numeric"
        raise SizeGuardError(
            f"{mode} {size}x{size} instance exceeds size guard {max_size}"
        )


def verify_identity(spec: FamilySpec, max_size: int | None = None) -> VerificationReport:
    """Check the determinant identity for one instance, both sides computed
    independently: Bareiss elimination on the built matrix against the
    closed-form product.  Equality is exact (polynomial canonical equality
    in symbolic mode, rational equality in numeric mode)."""
    check_size_guard(spec, max_size)
    matrix = build(spec)
    lhs = det_bareiss(matrix)
    rhs = closed_form_det(spec)
    return VerificationReport(
        spec=spec,
        det_elimination=lhs,
        det_closed_form=rhs,
        equal=lhs == rhs,
        ring=matrix.ring,
    )
