"""Ring adapters: one uniform handle per exact coefficient domain.

The matrix layer is generic over an exact commutative ring.  Element
arithmetic goes through the normal operators (int, Fraction and MultiPoly
all support +, -, *, unary -), so a ring object only has to supply what
operators cannot: canonical constants, exact division, zero tests, and the
string/JSON encodings.  Three rings cover the library: the integers
("int"), the rationals ("rat"), and integer-coefficient polynomials
("poly", with a fixed variable count).
"""

from __future__ import annotations

from fractions import Fraction

from .exact_arith import ExactDivisionError, exact_div, format_rational, parse_rational
from .multipoly import MultiPoly


class IntegerRing:
    name = "int"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, c: int):
        return int(c)

    def is_zero(self, a) -> bool:
        return a == 0

    def exact_div(self, a, b):
        return exact_div(a, b)

    def render(self, a) -> str:
        return str(a)

    def to_obj(self, a):
        return str(a)

    def from_obj(self, obj):
        return int(obj)

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("int")

    def __repr__(self):
        return "ZZ"


class RationalRing:
    name = "rat"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, c: int):
        return Fraction(c)

    def is_zero(self, a) -> bool:
        return a == 0

    def exact_div(self, a, b):
        if b == 0:
            raise ExactDivisionError("division by zero")
        return Fraction(a) / Fraction(b)

    def render(self, a) -> str:
        return format_rational(a)

    def to_obj(self, a):
        return format_rational(a)

    def from_obj(self, obj):
        return parse_rational(obj)

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("rat")

    def __repr__(self):
        return "QQ"


class PolyRing:
    """Integer-coefficient polynomials in a fixed set of variables X1..Xm."""

    name = "poly"

    def __init__(self, nvars: int):
        if nvars < 0:
            raise ValueError("variable count must be >= 0")
        self.nvars = nvars

    def zero(self):
        return MultiPoly.zero(self.nvars)

    def one(self):
        return MultiPoly.const(1, self.nvars)

    def from_int(self, c: int):
        return MultiPoly.const(c, self.nvars)

    def var(self, i: int) -> MultiPoly:
        """The indeterminate X_i (1-based)."""
        return MultiPoly.var(i, self.nvars)

    def variables(self) -> list[MultiPoly]:
        return [self.var(i) for i in range(1, self.nvars + 1)]

    def is_zero(self, a) -> bool:
        return a.is_zero

    def exact_div(self, a, b):
        return a.exact_div(b)

    def render(self, a) -> str:
        return str(a)

    def to_obj(self, a):
        return a.to_terms()

    def from_obj(self, obj):
        return MultiPoly.from_terms(self.nvars, obj)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.nvars == self.nvars

    def __hash__(self):
        return hash(("poly", self.nvars))

    def __repr__(self):
        return f"PolyRing({self.nvars})"


ZZ = IntegerRing()
QQ = RationalRing()

Ring = IntegerRing | RationalRing | PolyRing


def ring_to_obj(ring: Ring) -> dict:
    obj = {"ring": ring.name}
    if isinstance(ring, PolyRing):
        obj["vars"] = ring.nvars
    return obj


def ring_from_obj(obj: dict) -> Ring:
    name = obj["ring"]
    if name == "int":
        return ZZ
    if name == "rat":
        return QQ
    if name == "poly":
        return PolyRing(int(obj["vars"]))
    raise ValueError(f"unknown ring {name!r}")
