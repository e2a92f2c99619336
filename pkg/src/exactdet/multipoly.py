"""Sparse multivariate polynomials over the integers.

A polynomial in X1..Xm is a map from exponent tuples (length m) to nonzero
integer coefficients.  The representation is canonical: zero coefficients
are never stored, so two polynomials are equal exactly when their term maps
are equal.  Wherever an order matters (rendering, serderialization, leading
terms for division) terms are compared graded-lexicographically: higher
total degree first, ties broken by the exponent tuple with X1 > X2 > ...

The variable count is fixed per value; operations on polynomials with
different variable counts are errors rather than implicit promotions, which
keeps the X_i symbols aligned with the matrix-family parameters that name
them.  Plain ints are accepted on either side of an operator and lifted to
constant polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .exact_arith import ExactDivisionError


def _grlex_key(exps: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exps), exps)


class MultiPoly:
    """Immutable sparse polynomial over the integers in a fixed variable set."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        if nvars < 0:
            raise ValueError("variable count must be >= 0")
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(
                        f"exponent vector {exps} has length {len(exps)}, expected {nvars}"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if coeff:
                    clean[exps] = clean.get(exps, 0) + coeff
                    if not clean[exps]:
                        del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars)

    @classmethod
    def const(cls, c: int, nvars: int) -> MultiPoly:
        """The constant polynomial c."""
        if c == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: int(c)})

    @classmethod
    def var(cls, i: int, nvars: int) -> MultiPoly:
        """The indeterminate X_i (1-based, 1 <= i <= nvars)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending graded-lex order (leading term first)."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    # -- ring arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        if isinstance(other, int):
            return MultiPoly.const(other, self.nvars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            s = terms.get(exps, 0) + coeff
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return _raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return _raw(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial power must be a non-negative integer")
        result = MultiPoly.const(1, self.nvars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- division and evaluation --------------------------------------------

    def exact_div(self, divisor: MultiPoly) -> MultiPoly:
        """Quotient q with q * divisor == self, or ExactDivisionError.

        Repeated cancellation of graded-lex leading terms.  When the divisor
        really divides self over the integers, every step cancels exactly
        (the leading term of the running remainder is the leading term of
        (q_true - q) * divisor); any monomial or coefficient that fails to
        divide proves inexactness and is reported loudly.
        """
        divisor = self._coerce(divisor)
        if divisor is None or not isinstance(divisor, MultiPoly):
            raise TypeError("divisor must be a MultiPoly or int")
        if divisor.is_zero:
            raise ExactDivisionError("polynomial division by zero")
        lead_e, lead_c = divisor.leading_term()
        quotient: dict[tuple[int, ...], int] = {}
        rem = self
        while not rem.is_zero:
            r_e, r_c = rem.leading_term()
            q_e = tuple(a - b for a, b in zip(r_e, lead_e))
            if any(e < 0 for e in q_e) or r_c % lead_c:
                raise ExactDivisionError(
                    f"({self}) is not divisible by ({divisor})"
                )
            q_c = r_c // lead_c
            quotient[q_e] = q_c
            rem = rem - _raw(self.nvars, {q_e: q_c}) * divisor
        return _raw(self.nvars, quotient)

    def eval(self, point: Sequence[Fraction | int]) -> Fraction:
        """Exact value at X_i := point[i-1]."""
        if len(point) != self.nvars:
            raise ValueError(
                f"point has length {len(point)}, expected {self.nvars}"
            )
        values = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = Fraction(coeff)
            for v, e in zip(values, exps):
                if e:
                    term *= v**e
            total += term
        return total

    # -- rendering and serialization -----------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                f"X{i + 1}^{e}" if e > 1 else f"X{i + 1}"
                for i, e in enumerate(exps)
                if e
            )
            mag = abs(coeff)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self!s})"

    def to_terms(self) -> list[list]:
        """Round-trippable encoding: [[exponent vector, coefficient string], ...]."""
        return [[list(e), str(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_terms(cls, nvars: int, pairs: Iterable) -> MultiPoly:
        return cls(nvars, {tuple(e): int(c) for e, c in pairs})


def _raw(nvars: int, terms: dict) -> MultiPoly:
    """Build without re-normalizing; callers guarantee canonical terms."""
    p = MultiPoly.__new__(MultiPoly)
    object.__setattr__(p, "nvars", nvars)
    object.__setattr__(p, "terms", terms)
    return p
