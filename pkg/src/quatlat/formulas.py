"""Closed-form representation-number predictions.

Generalized divisor sums with per-prime caps, the ten kind formulas, the
four-square formula over Q(sqrt5), and a dispatcher that picks the right
formula for a pair of orders from its kind and quotient shape.
"""

from .errors import NoFormula
from .fields import canonical_associate, exact_divide, factor
from .lattices import index_ideal, reduced_discriminant
from .perceptive import kind_of, quotient_shape

MAX = "MAX"
Q = "Q"
P = "P"
Q2 = "Q2"
P2 = "P2"
QQ = "QQ"
PQ = "PQ"
P3 = "P3"
Q3 = "Q3"
Q4 = "Q4"
GOTZKY = "GOTZKY"


class DivisorSumSpec:
    """Per-prime exponent caps for a generalized divisor sum.

    cap 0 excludes the prime's multiples entirely; cap c allows divisors
    with valuation at most c; absent primes are uncapped.
    """

    __slots__ = ("caps",)

    def __init__(self, caps=None):
        self.caps = {}
        for pi, cap in (caps or {}).items():
            self.caps[canonical_associate(pi)] = cap

    def cap(self, pi):
        return self.caps.get(canonical_associate(pi))


def divisor_sum(alpha, spec: DivisorSumSpec = None):
    """Sum of Nm(d) over ideal divisors d of alpha respecting the caps."""
    assert alpha, "divisor sum of zero"
    if spec is None:
        spec = DivisorSumSpec()
    total = 1
    for pi, v in factor(alpha).pairs:
        cap = spec.cap(pi)
        if cap is not None:
            v = min(v, cap)
        q = int(abs(pi.nm()))
        total *= sum(q**i for i in range(v + 1))
    return total


class FormulaDescriptor:
    """A chosen formula: variant, its primes, |G^1|, and the discrd primes."""

    __slots__ = ("variant", "primes", "units", "disc_primes")

    def __init__(self, variant, primes, units, disc_primes):
        self.variant = variant
        self.primes = [canonical_associate(p) for p in primes]
        self.units = units
        self.disc_primes = [canonical_associate(p) for p in disc_primes]

    def __repr__(self):
        return (
            f"FormulaDescriptor({self.variant}, primes={self.primes}, "
            f"units={self.units}, disc={self.disc_primes})"
        )


def _valuation(alpha, pi):
    target = canonical_associate(pi)
    for p, e in factor(alpha).pairs:
        if p == target:
            return e
    return 0


def engine_q(q, i, e):
    """Orbit-weight factor for a chain of i steps at an unramified prime."""
    if e < i:
        return (e + 1) * q**e
    return 2 * sum(q**m for m in range(i - 1, e + 1)) + (i - 1) * q**e - q ** (i - 1)


def engine_p(q, i, e):
    """Orbit-weight factor for a chain of i steps at a ramified prime."""
    if e < i:
        return q**e
    return q**i + q ** (i - 1)


def predict(desc: FormulaDescriptor, alpha):
    """Exact representation count predicted by the descriptor's formula."""
    u = desc.units
    field = alpha.field
    if desc.variant == GOTZKY:
        total = 8 * divisor_sum(alpha)
        two = field.element(2)
        half = exact_divide(alpha, two)
        if half is not None:
            total -= 16 * divisor_sum(half)
            quarter = exact_divide(half, two)
            if quarter is not None:
                total += 128 * divisor_sum(quarter)
        return total

    excl = {p: 0 for p in desc.disc_primes}
    sigma_d = DivisorSumSpec(excl)
    if desc.variant == MAX:
        return u * divisor_sum(alpha, sigma_d)

    if desc.variant in (Q, Q2, Q3, Q4):
        pi = desc.primes[0]
        steps = {Q: 1, Q2: 2, Q3: 3, Q4: 4}[desc.variant]
        e = _valuation(alpha, pi)
        q = int(abs(pi.nm()))
        sigma_qd = DivisorSumSpec({**excl, pi: 0})
        return u * divisor_sum(alpha, sigma_qd) * engine_q(q, steps, e)

    if desc.variant in (P, P2, P3):
        pi = desc.primes[0]
        steps = {P: 1, P2: 2, P3: 3}[desc.variant]
        e = _valuation(alpha, pi)
        q = int(abs(pi.nm()))
        sigma_pd = DivisorSumSpec({**excl, pi: 0})
        return u * divisor_sum(alpha, sigma_pd) * engine_p(q, steps, e)

    if desc.variant == QQ:
        q1, q2 = desc.primes
        s_d = divisor_sum(alpha, sigma_d)
        s_1 = divisor_sum(alpha, DivisorSumSpec({**excl, q1: 0}))
        s_2 = divisor_sum(alpha, DivisorSumSpec({**excl, q2: 0}))
        s_12 = divisor_sum(alpha, DivisorSumSpec({**excl, q1: 0, q2: 0}))
        return u * (4 * s_d - 2 * s_1 - 2 * s_2 + s_12)

    if desc.variant == PQ:
        p, q = desc.primes
        cap_p = {**excl, p: 1}
        s_p = divisor_sum(alpha, DivisorSumSpec(cap_p))
        s_pq = divisor_sum(alpha, DivisorSumSpec({**cap_p, q: 0}))
        return u * (2 * s_p - s_pq)

    raise NoFormula(f"unknown variant {desc.variant!r}")


def formula_for(G, H) -> FormulaDescriptor:
    """Pick the formula for counting representations of G via H."""
    from .enumeration import units1

    disc = reduced_discriminant(H)
    disc_primes = [p for p, _ in factor(disc).pairs]
    units = len(units1(G))

    if G == H:
        return FormulaDescriptor(MAX, [], units, disc_primes)

    def is_named(order, name):
        from .catalog import catalog

        entry = catalog().get(name)
        return entry is not None and order == entry.order

    if is_named(G, "gotzky_g") and is_named(H, "icosian"):
        return FormulaDescriptor(GOTZKY, [], units, disc_primes)

    kinds = kind_of(G, H)
    if len(kinds) == 1:
        pi, e, divides = kinds[0]
        if divides:
            if e == 1:
                return FormulaDescriptor(P, [pi], units, disc_primes)
            if e == 2 and len(quotient_shape(G, H)) == 1:
                return FormulaDescriptor(P2, [pi], units, disc_primes)
            if e == 3 and is_named(G, "g_p3"):
                return FormulaDescriptor(P3, [pi], units, disc_primes)
        else:
            if e == 1:
                return FormulaDescriptor(Q, [pi], units, disc_primes)
            if e == 2 and len(quotient_shape(G, H)) == 1:
                return FormulaDescriptor(Q2, [pi], units, disc_primes)
            if e == 3 and is_named(G, "g_q3"):
                return FormulaDescriptor(Q3, [pi], units, disc_primes)
            if e == 4 and is_named(G, "g_q4"):
                return FormulaDescriptor(Q4, [pi], units, disc_primes)
    elif len(kinds) == 2:
        (p1, e1, d1), (p2, e2, d2) = kinds
        if e1 == 1 and e2 == 1:
            if not d1 and not d2:
                return FormulaDescriptor(QQ, [p1, p2], units, disc_primes)
            if d1 != d2:
                p, q = (p1, p2) if d1 else (p2, p1)
                return FormulaDescriptor(PQ, [p, q], units, disc_primes)
    raise NoFormula(
        f"no closed formula for index {index_ideal(H, G)} of kind {kinds}"
    )
