"""Exact integer and rational scalars.

Python's built-in ``int`` is already an arbitrary-precision integer (a sign
plus a limb sequence, with a unique representation for zero), and
``fractions.Fraction`` keeps rationals reduced with a positive denominator,
so those two types serve directly as the Integer and Rational ground
scalars.  Everything the rest of the library computes with is one of them.

What the built-ins do not provide is added here: division that *fails* when
it is not exact, binomial coefficients by the multiplicative formula, and
the decimal / "p/q" string encodings used by the serialization layer.
"""

from __future__ import annotations

from fractions import Fraction

Integer = int
Rational = Fraction


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


def exact_div(a: int | Fraction, b: int | Fraction):
    """Divide ``a`` by ``b``, requiring the quotient to stay in the ring.

    For integers the division must leave no remainder; for rationals any
    nonzero divisor is fine.  Division by zero is always an error.
    """
    if b == 0:
        raise ExactDivisionError("division by zero")
    if isinstance(a, Fraction) or isinstance(b, Fraction):
        return Fraction(a) / Fraction(b)
    q, r = divmod(a, b)
    if r:
        raise ExactDivisionError(f"{a} is not divisible by {b}")
    return q


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) for n >= 0.

    Out-of-range k (negative, or larger than n) yields 0; this convention
    keeps boundary entries like C(q, -1) in block-matrix formulas at zero
    instead of erroring.  Computed by the multiplicative formula with a
    running division, which is exact at every step because each partial
    product is itself a binomial coefficient.
    """
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        result = result * (n - k + i) // i
    return result


def cmp(a, b) -> int:
    """Three-way comparison: -1, 0, or +1."""
    return (a > b) - (a < b)


def is_zero(a) -> bool:
    return a == 0


def format_integer(a: int) -> str:
    """Decimal string for an integer."""
    return str(a)


def parse_integer(s: str) -> int:
    return int(s, 10)


def format_rational(a: Fraction | int) -> str:
    """Render a rational as "p/q", or just "p" when the denominator is 1."""
    a = Fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


def parse_rational(s: str) -> Fraction:
    """Parse "p" or "p/q" into a reduced, positive-denominator rational."""
    return Fraction(s.strip())
