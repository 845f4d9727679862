"""Quaternion algebras (a,b | K) with i^2 = a, j^2 = b, k = ij = -ji."""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import AlgebraMismatch, NotDefinite, ParseError
from .fields import (
    BaseField,
    FieldElement,
    format_field_element,
    parse_field_element,
)


class QuaternionAlgebra:
    __slots__ = ("field", "a", "b")

    def __init__(self, field: BaseField, a: FieldElement, b: FieldElement):
        if not a or not b:
            raise ValueError("algebra parameters must be nonzero")
        # only definite algebras are supported: a and b totally negative
        if not ((-a).is_totally_positive() and (-b).is_totally_positive()):
            raise NotDefinite("algebra parameters must be totally negative")
        self.field = field
        self.a = a
        self.b = b

    def __repr__(self):
        return (
            f"QuaternionAlgebra({format_field_element(self.a)},"
            f"{format_field_element(self.b)} | {self.field.tag})"
        )

    def __eq__(self, other):
        return (
            isinstance(other, QuaternionAlgebra)
            and self.field == other.field
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.field.tag, self.a, self.b))

    @property
    def dim(self):
        """Z-rank of a full lattice: 4 over Q, 8 over the quadratic fields."""
        return 4 * self.field.degree

    def quaternion(self, t, x, y, z):
        f = self.field
        conv = lambda c: c if isinstance(c, FieldElement) else f.element(c)
        return Quaternion(self, conv(t), conv(x), conv(y), conv(z))

    @property
    def zero(self):
        return self.quaternion(0, 0, 0, 0)

    @property
    def one(self):
        return self.quaternion(1, 0, 0, 0)

    @property
    def i(self):
        return self.quaternion(0, 1, 0, 0)

    @property
    def j(self):
        return self.quaternion(0, 0, 1, 0)

    @property
    def k(self):
        return self.quaternion(0, 0, 0, 1)

    def basis(self):
        return (self.one, self.i, self.j, self.k)

    def from_vector(self, vec):
        """Inverse of Quaternion.to_vector."""
        f = self.field
        if f.degree == 1:
            coords = [f.element(c) for c in vec]
        else:
            coords = [
                FieldElement(f, Fraction(vec[2 * m]), Fraction(vec[2 * m + 1]))
                for m in range(4)
            ]
        return Quaternion(self, *coords)


class Quaternion:
    __slots__ = ("algebra", "t", "x", "y", "z")

    def __init__(self, algebra, t, x, y, z):
        self.algebra = algebra
        self.t = t
        self.x = x
        self.y = y
        self.z = z

    def __repr__(self):
        return f"<{format_quaternion(self)}>"

    def coords(self):
        return (self.t, self.x, self.y, self.z)

    def to_vector(self):
        """Rational coordinates over the Z-basis (1,w) x (1,i,j,k)."""
        f = self.algebra.field
        if f.degree == 1:
            return [c.a for c in self.coords()]
        out = []
        for c in self.coords():
            out.append(c.a)
            out.append(c.b)
        return out

    def _check(self, other):
        if self.algebra != other.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")

    def __eq__(self, other):
        return (
            isinstance(other, Quaternion)
            and self.algebra == other.algebra
            and self.coords() == other.coords()
        )

    def __hash__(self):
        return hash((self.algebra, self.coords()))

    def __bool__(self):
        return any(self.coords())

    def __add__(self, other):
        self._check(other)
        return Quaternion(
            self.algebra,
            self.t + other.t,
            self.x + other.x,
            self.y + other.y,
            self.z + other.z,
        )

    def __sub__(self, other):
        self._check(other)
        return Quaternion(
            self.algebra,
            self.t - other.t,
            self.x - other.x,
            self.y - other.y,
            self.z - other.z,
        )

    def __neg__(self):
        return Quaternion(self.algebra, -self.t, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int, Fraction)):
            c = other if isinstance(other, FieldElement) else self.algebra.field.element(
                Fraction(other)
            )
            return Quaternion(
                self.algebra, self.t * c, self.x * c, self.y * c, self.z * c
            )
        self._check(other)
        a = self.algebra.a
        b = self.algebra.b
        t1, x1, y1, z1 = self.coords()
        t2, x2, y2, z2 = other.coords()
        return Quaternion(
            self.algebra,
            t1 * t2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
            t1 * x2 + x1 * t2 - b * y1 * z2 + b * z1 * y2,
            t1 * y2 + y1 * t2 + a * x1 * z2 - a * z1 * x2,
            t1 * z2 + z1 * t2 + x1 * y2 - y1 * x2,
        )

    def __rmul__(self, other):
        # scalar * quaternion (scalars are central)
        if isinstance(other, (FieldElement, int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def conj(self):
        return Quaternion(self.algebra, self.t, -self.x, -self.y, -self.z)

    def nrd(self) -> FieldElement:
        a, b = self.algebra.a, self.algebra.b
        t, x, y, z = self.coords()
        return t * t - a * x * x - b * y * y + a * b * z * z

    def trd(self) -> FieldElement:
        return self.t + self.t

    def inverse(self):
        n = self.nrd()
        if not n:
            raise ZeroDivisionError("quaternion has reduced norm 0")
        c = self.conj()
        return Quaternion(self.algebra, c.t / n, c.x / n, c.y / n, c.z / n)


def quadratic_identity_check(q: Quaternion) -> bool:
    """q^2 - trd(q) q + nrd(q) == 0, a self-test hook."""
    lhs = q * q - q * q.trd() + q.algebra.one * q.nrd()
    return not lhs


# ---------------------------------------------------------------------------
# Literals:  "c0 + c1*i + c2*j + c3*k", coefficients per the field syntax


def _split_top_level(s):
    terms = []
    depth = 0
    cur = ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {s!r}")
        if ch in "+-" and depth == 0 and cur not in ("", "+", "-"):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {s!r}")
    if cur:
        terms.append(cur)
    return terms


def parse_quaternion(text: str, algebra: QuaternionAlgebra) -> Quaternion:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty quaternion literal")
    field = algebra.field
    acc = {None: field.zero, "i": field.zero, "j": field.zero, "k": field.zero}
    for term in _split_top_level(s):
        unit = None
        body = term
        m = re.fullmatch(r"(?P<coef>.*?)\*?(?P<unit>[ijk])", term)
        if m:
            unit = m.group("unit")
            body = m.group("coef")
            if body in ("", "+"):
                body = "1"
            elif body == "-":
                body = "-1"
            if body.endswith("*"):
                body = body[:-1]
        coef = parse_field_element(body, field)
        acc[unit] = acc[unit] + coef
    return Quaternion(algebra, acc[None], acc["i"], acc["j"], acc["k"])


def format_quaternion(q: Quaternion) -> str:
    parts = []
    for coef, unit in zip(q.coords(), (None, "i", "j", "k")):
        if not coef:
            continue
        text = format_field_element(coef)
        if unit is not None:
            if text == "1":
                text = unit
            elif text == "-1":
                text = f"-{unit}"
            else:
                text = f"{text}*{unit}"
        parts.append(text)
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return out
