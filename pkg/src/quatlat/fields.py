"""Exact arithmetic in Q, Q(sqrt 2) and Q(sqrt 5) and their rings of integers.

Elements are stored as a + b*w over the integral basis {1, w}, where w
satisfies w^2 = s*w + t:  w = sqrt(2) for (s,t) = (0,2) and w = (1+sqrt 5)/2
for (s,t) = (1,1).  Everything is a plain Fraction computation; there is no
floating point anywhere.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction

from .errors import (
    FactorLimitExceeded,
    NotATotallyPositiveUnit,
    NotPrime,
    ParseError,
)

DEFAULT_FACTOR_LIMIT = 10**12


class BaseField:
    """One of the three supported totally real fields (use the singletons)."""

    __slots__ = ("tag", "degree", "s", "t", "disc", "_eps")

    def __init__(self, tag, degree, s, t, disc):
        self.tag = tag
        self.degree = degree
        self.s = s          # w^2 = s*w + t
        self.t = t
        self.disc = disc
        self._eps = None

    def __repr__(self):
        return f"BaseField({self.tag})"

    def __eq__(self, other):
        return isinstance(other, BaseField) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def element(self, a, b=0):
        a = Fraction(a)
        b = Fraction(b)
        if self.degree == 1 and b != 0:
            raise ValueError("rational field has no w component")
        return FieldElement(self, a, b)

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    @property
    def omega(self):
        return self.element(0, 1)

    @property
    def omega_trace(self):
        return self.s  # Tr(w) = s for both quadratic fields, 0 unused for Q

    @property
    def fundamental_unit(self):
        """1 + sqrt 2, resp. the golden ratio; norm -1 in both cases."""
        if self._eps is None:
            if self.tag == "Qsqrt2":
                self._eps = self.element(1, 1)
            elif self.tag == "Qsqrt5":
                self._eps = self.element(0, 1)
            else:
                self._eps = self.element(1)
        return self._eps


QQ_FIELD = BaseField("Q", 1, 0, 0, 1)
QSQRT2 = BaseField("Qsqrt2", 2, 0, 2, 8)
QSQRT5 = BaseField("Qsqrt5", 2, 1, 1, 5)

FIELDS_BY_NAME = {
    "Q": QQ_FIELD,
    "Q(sqrt2)": QSQRT2,
    "Q(sqrt5)": QSQRT5,
}


class FieldElement:
    """Immutable element a + b*w of one of the three base fields."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b):
        self.field = field
        self.a = a
        self.b = b

    # -- basic structure ---------------------------------------------------

    def __repr__(self):
        return f"<{format_field_element(self)} in {self.field.tag}>"

    def __eq__(self, other):
        if isinstance(other, int):
            return self.a == other and self.b == 0
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.field.tag, self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other
        if not isinstance(other, (int, Fraction)):
            return None
        return FieldElement(self.field, Fraction(other), Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.field, -self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        return FieldElement(
            f,
            a1 * a2 + b1 * b2 * f.t,
            a1 * b2 + b1 * a2 + b1 * b2 * f.s,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero field element")
        if self.field.degree == 1:
            return FieldElement(self.field, self.a / o.a, Fraction(0))
        n = o.nm()  # = o * galois_conj(o) in the quadratic case
        num = self * o.galois_conj()
        return FieldElement(self.field, num.a / n, num.b / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if k < 0:
            return self.field.one / self.__pow__(-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- field-theoretic maps ----------------------------------------------

    def galois_conj(self):
        """The nontrivial automorphism (identity over Q): w -> s - w."""
        f = self.field
        if f.degree == 1:
            return self
        return FieldElement(f, self.a + self.b * f.s, -self.b)

    def tr(self):
        return 2 * self.a + self.b * self.field.s if self.field.degree == 2 else self.a

    def nm(self):
        f = self.field
        if f.degree == 1:
            return self.a
        # (a + b w)(a + b (s - w)) = a^2 + s a b - t b^2
        return self.a * self.a + f.s * self.a * self.b - f.t * self.b * self.b

    def is_totally_positive(self):
        if self.field.degree == 1:
            return self.a > 0
        return self.tr() > 0 and self.nm() > 0

    def is_integral(self):
        return self.a.denominator == 1 and self.b.denominator == 1

    def is_unit(self):
        return self.is_integral() and abs(self.nm()) == 1

    def denominator(self):
        return _lcm(self.a.denominator, self.b.denominator)


def _gcd(x, y):
    while y:
        x, y = y, x % y
    return abs(x)


def _lcm(x, y):
    return x * y // _gcd(x, y)


# ---------------------------------------------------------------------------
# Canonical associates and the Euclidean structure


def canonical_associate(x: FieldElement) -> FieldElement:
    """The canonical representative of the ideal x*O_K.

    Among all associates, take the totally positive one of minimal trace
    (ties broken by minimal b-coordinate).  Over Q this is |x|.
    """
    f = x.field
    if not x:
        return x
    if f.degree == 1:
        return FieldElement(f, abs(x.a), Fraction(0))
    eps = f.fundamental_unit
    y = x if x.nm() > 0 else x * eps
    if not y.is_totally_positive():
        y = -y
    e2 = eps * eps  # totally positive, so multiplying preserves positivity
    while (y * e2).tr() < y.tr():
        y = y * e2
    while (y / e2).tr() < y.tr():
        y = y / e2
    candidates = [y]
    if (y * e2).tr() == y.tr():
        candidates.append(y * e2)
    if (y / e2).tr() == y.tr():
        candidates.append(y / e2)
    return min(candidates, key=lambda z: (z.tr(), z.b))


def nearest_quotient(x: FieldElement) -> FieldElement:
    """Round both coordinates to the nearest integer (the Euclidean step)."""
    f = x.field

    def rnd(q):
        fl = q.numerator // q.denominator
        return fl + 1 if q - fl > Fraction(1, 2) else fl

    if f.degree == 1:
        return FieldElement(f, Fraction(rnd(x.a)), Fraction(0))
    return FieldElement(f, Fraction(rnd(x.a)), Fraction(rnd(x.b)))


def euclid_gcd(x: FieldElement, y: FieldElement) -> FieldElement:
    """Generator of x*O_K + y*O_K, canonically normalized.

    Both quadratic fields are norm-Euclidean for the nearest-integer
    quotient, so the plain remainder loop terminates.
    """
    if not x and not y:
        raise ValueError("gcd(0, 0) undefined")
    while y:
        q = nearest_quotient(x / y)
        x, y = y, x - q * y
    return canonical_associate(x)


def exact_divide(x: FieldElement, y: FieldElement):
    """x / y when the quotient is integral, else None."""
    q = x / y
    return q if q.is_integral() else None


# ---------------------------------------------------------------------------
# Factorization into prime elements


class IdealFactorization:
    """unit * prod(pi_i ** e_i) with canonically normalized prime elements."""

    __slots__ = ("field", "unit", "pairs")

    def __init__(self, field, unit, pairs):
        self.field = field
        self.unit = unit
        self.pairs = tuple(pairs)  # ((pi, e), ...)

    def __repr__(self):
        parts = " * ".join(
            f"({format_field_element(p)})^{e}" for p, e in self.pairs
        )
        return f"<{format_field_element(self.unit)} * {parts or '1'}>"

    def value(self):
        out = self.unit
        for p, e in self.pairs:
            out = out * p**e
        return out

    def valuation(self, pi):
        key = canonical_associate(pi)
        for p, e in self.pairs:
            if p == key:
                return e
        return 0


def factor_limit():
    raw = os.environ.get("QUATLAT_FACTOR_LIMIT")
    return int(raw) if raw else DEFAULT_FACTOR_LIMIT


def _sqrt_mod(n, p):
    """A square root of n modulo an odd prime p, or None."""
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    from sympy.ntheory.residue_ntheory import sqrt_mod

    return sqrt_mod(n, p)


def primes_above(field, p):
    """The canonical prime elements of O_K above the rational prime p."""
    if field.degree == 1:
        return [field.element(p)]
    s, t = field.s, field.t
    if field.disc % p == 0:
        roots = [r for r in range(p) if (r * r - s * r - t) % p == 0]
        pi = euclid_gcd(field.element(p), field.omega - field.element(roots[0]))
        return [pi]
    if p == 2:
        roots = [r for r in range(2) if (r * r - s * r - t) % 2 == 0]
    else:
        u = _sqrt_mod(s * s + 4 * t, p)
        if u is None:
            roots = []
        else:
            half = pow(2, p - 2, p)
            roots = sorted({(s + u) * half % p, (s - u) * half % p})
    if not roots:
        return [field.element(p)]  # inert
    out = []
    for r in roots:
        pi = euclid_gcd(field.element(p), field.omega - field.element(r))
        out.append(pi)
    out.sort(key=lambda z: (z.tr(), z.b))
    return out


def factor(x: FieldElement) -> IdealFactorization:
    """Complete factorization of a nonzero integral element."""
    if not x:
        raise ValueError("cannot factor zero")
    if not x.is_integral():
        raise ValueError("factor expects an integral element")
    n = abs(x.nm())
    assert n.denominator == 1
    n = n.numerator
    limit = factor_limit()
    if n > limit:
        raise FactorLimitExceeded(f"|nm(x)| = {n} exceeds bound {limit}")
    from sympy import factorint

    pairs = []
    rest = x
    for p in sorted(factorint(n)):
        for pi in primes_above(x.field, p):
            e = 0
            while True:
                q = exact_divide(rest, pi)
                if q is None:
                    break
                rest = q
                e += 1
            if e:
                pairs.append((pi, e))
    assert abs(rest.nm()) == 1, "leftover after factoring must be a unit"
    return IdealFactorization(x.field, rest, pairs)


def is_prime_element(pi: FieldElement) -> bool:
    if not pi or not pi.is_integral():
        return False
    n = int(abs(pi.nm()))
    from sympy import isprime

    if isprime(n):
        return True
    # inert rational primes have norm p^2
    if pi.field.degree == 2:
        r = _isqrt(n)
        if r * r == n and isprime(r):
            return len(primes_above(pi.field, r)) == 1 and canonical_associate(
                pi
            ) == canonical_associate(pi.field.element(r))
    return False


def _isqrt(n):
    import math

    return math.isqrt(n)


def _exceeds_one(x: FieldElement) -> bool:
    """Whether x > 1 in the embedding sending w to its positive value."""
    f = x.field
    # x - 1 = a + b*w with w = sqrt(2) or the golden ratio; rewrite as
    # (u + v*sqrt(d))/2 and compare exactly
    a = x.a - 1
    b = x.b
    if f.s == 0:  # w = sqrt(t)
        u, v, d = a, b, f.t
    else:  # w = (s + sqrt(s*s + 4*t))/2
        u, v, d = 2 * a + f.s * b, b, f.s * f.s + 4 * f.t
    if v == 0:
        return u > 0
    if u >= 0 and v >= 0:
        return u > 0 or v > 0
    if u <= 0 and v <= 0:
        return False
    if v > 0:  # u < 0: u + v*sqrt(d) > 0 iff v^2 d > u^2
        return v * v * d > u * u
    return u * u > v * v * d


def sqrt_totally_positive_unit(u: FieldElement) -> FieldElement:
    """The square root of a totally positive unit (exists by narrow h = 1)."""
    if not (u.is_unit() and u.is_totally_positive()):
        raise NotATotallyPositiveUnit(repr(u))
    f = u.field
    if f.degree == 1:
        if u != 1:
            raise NotATotallyPositiveUnit(repr(u))
        return f.one
    eps = f.fundamental_unit
    e2 = eps * eps
    k = 0
    v = u
    guard = 0
    while v != f.one:
        # v = eps^(2m); m > 0 exactly when v exceeds 1 in the embedding
        # sending w to the positive root
        if _exceeds_one(v):
            v = v / e2
            k += 1
        else:
            v = v * e2
            k -= 1
        guard += 1
        if guard > 100000:
            raise NotATotallyPositiveUnit(repr(u))
    w = eps**k
    if w.tr() < 0:
        w = -w
    return w


# ---------------------------------------------------------------------------
# Residue fields


class ResidueField:
    """O_K / pi for a prime element pi; elements are ints (f=1) or pairs (f=2).

    For split or ramified pi the reduction sends w to a fixed root r of its
    minimal polynomial mod p; for inert pi the quotient is F_p[w].
    """

    __slots__ = ("field", "pi", "p", "f", "r", "s", "t")

    def __init__(self, field, pi):
        self.field = field
        self.pi = pi
        n = abs(pi.nm())
        if n.denominator != 1:
            raise NotPrime(repr(pi))
        n = n.numerator
        from sympy import isprime

        if isprime(n):
            self.p, self.f = n, 1
        else:
            root = _isqrt(n)
            if root * root != n or not isprime(root):
                raise NotPrime(repr(pi))
            self.p, self.f = root, 2
        p = self.p
        self.s, self.t = field.s % p if field.degree == 2 else 0, (
            field.t % p if field.degree == 2 else 0
        )
        if field.degree == 2 and self.f == 1:
            self.r = next(
                r
                for r in range(p)
                if (r * r - field.s * r - field.t) % p == 0
                and exact_divide(field.omega - field.element(r), pi) is not None
            )
        else:
            self.r = 0

    @property
    def size(self):
        return self.p**self.f

    def __repr__(self):
        return f"ResidueField(q={self.size}, pi={format_field_element(self.pi)})"

    # elements: plain int in [0, p) for f == 1, tuple (c0, c1) for f == 2

    @property
    def zero(self):
        return 0 if self.f == 1 else (0, 0)

    @property
    def one(self):
        return 1 if self.f == 1 else (1, 0)

    def reduce(self, x: FieldElement):
        """Reduce an element integral at pi."""
        p = self.p
        if self.field.degree == 1:
            val = x.a
        elif self.f == 1:
            val = x.a + x.b * self.r
        else:
            a, b = x.a, x.b
            return (_frac_mod(a, p), _frac_mod(b, p))
        return _frac_mod(val, p)

    def add(self, u, v):
        p = self.p
        if self.f == 1:
            return (u + v) % p
        return ((u[0] + v[0]) % p, (u[1] + v[1]) % p)

    def sub(self, u, v):
        p = self.p
        if self.f == 1:
            return (u - v) % p
        return ((u[0] - v[0]) % p, (u[1] - v[1]) % p)

    def neg(self, u):
        p = self.p
        if self.f == 1:
            return (-u) % p
        return ((-u[0]) % p, (-u[1]) % p)

    def mul(self, u, v):
        p = self.p
        if self.f == 1:
            return (u * v) % p
        c0 = (u[0] * v[0] + self.t * u[1] * v[1]) % p
        c1 = (u[0] * v[1] + u[1] * v[0] + self.s * u[1] * v[1]) % p
        return (c0, c1)

    def inv(self, u):
        p = self.p
        if self.f == 1:
            if u % p == 0:
                raise ZeroDivisionError
            return pow(u, p - 2, p)
        c0, c1 = u
        # conjugate is (c0 + s c1, -c1); norm is c0^2 + s c0 c1 - t c1^2
        n = (c0 * c0 + self.s * c0 * c1 - self.t * c1 * c1) % p
        if n == 0:
            raise ZeroDivisionError
        ninv = pow(n, p - 2, p)
        return (((c0 + self.s * c1) * ninv) % p, ((-c1) * ninv) % p)

    def scalar(self, n: int):
        if self.f == 1:
            return n % self.p
        return (n % self.p, 0)

    def is_zero(self, u):
        return u == self.zero

    def elements(self):
        if self.f == 1:
            return list(range(self.p))
        return [(c0, c1) for c0 in range(self.p) for c1 in range(self.p)]


def _frac_mod(q: Fraction, p: int) -> int:
    den = q.denominator
    if den % p == 0:
        raise ValueError("element not integral at the prime")
    return q.numerator * pow(den, p - 2, p) % p if den != 1 else q.numerator % p


def residue_field_of(pi: FieldElement) -> ResidueField:
    return ResidueField(pi.field, pi)


# ---------------------------------------------------------------------------
# Parsing / printing  —  "(p + q*w)/r"


_TERM_RE = re.compile(r"^([+-]?\d+)$|^([+-]?\d*)\*?w$")


def _parse_body(body, field, where):
    a = Fraction(0)
    b = Fraction(0)
    chunks = re.findall(r"[+-]?[^+-]+", body)
    if not chunks or "".join(chunks) != body:
        raise ParseError(f"bad field element {where!r}")
    for chunk in chunks:
        m = _TERM_RE.match(chunk)
        if not m:
            raise ParseError(f"bad term {chunk!r} in {where!r}")
        if m.group(1) is not None:
            a += int(m.group(1))
        else:
            coef = m.group(2)
            if coef in ("", "+"):
                coef = "1"
            elif coef == "-":
                coef = "-1"
            if field.degree == 1:
                raise ParseError(f"'w' not allowed over Q in {where!r}")
            b += int(coef)
    return a, b


def parse_field_element(text: str, field: BaseField) -> FieldElement:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty field element")
    sign = 1
    if s[0] in "+-" and len(s) > 1 and s[1] == "(":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    den = 1
    m = re.fullmatch(r"\((?P<body>[^()]*)\)(?:/(?P<den>\d+))?", s)
    if m:
        body = m.group("body")
        den = int(m.group("den") or 1)
    else:
        m = re.fullmatch(r"(?P<body>[^()/]*)(?:/(?P<den>\d+))?", s)
        if not m:
            raise ParseError(f"bad field element {text!r}")
        body = m.group("body")
        den = int(m.group("den") or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    a, b = _parse_body(body, field, text)
    return FieldElement(field, sign * a / den, sign * b / den)


def format_field_element(x: FieldElement) -> str:
    den = _lcm(x.a.denominator, x.b.denominator)
    p = x.a * den
    q = x.b * den
    assert p.denominator == 1 and q.denominator == 1
    p, q = p.numerator, q.numerator
    if q == 0:
        return str(p) if den == 1 else f"({p})/{den}"
    body = f"{p} + {q}*w" if q >= 0 else f"{p} - {-q}*w"
    return f"({body})" if den == 1 else f"({body})/{den}"
