import random
from fractions import Fraction

import pytest

from quatlat.catalog import catalog
from quatlat.fields import QQ_FIELD, QSQRT2, QSQRT5

ALL_FIELDS = (QQ_FIELD, QSQRT2, QSQRT5)


@pytest.fixture(scope="session")
def orders():
    return {name: entry.order for name, entry in catalog().items()}


@pytest.fixture(scope="session")
def entries():
    return catalog()


def rand_element(rng, field, span=9, nonzero=False):
    while True:
        a = Fraction(rng.randint(-span, span))
        b = Fraction(rng.randint(-span, span)) if field.degree == 2 else Fraction(0)
        x = field.element(a, b)
        if x or not nonzero:
            return x


def rand_integral(rng, field, span=9, nonzero=False):
    return rand_element(rng, field, span=span, nonzero=nonzero)


def rand_quaternion(rng, algebra, span=5):
    return algebra.quaternion(
        *(rand_element(rng, algebra.field, span=span) for _ in range(4))
    )


def rand_order_element(rng, O, span=3):
    q = O.algebra.zero
    for b in O.zbasis():
        q = q + b * rng.randint(-span, span)
    return q


def tp_elements(field, trace_bound):
    """All totally positive integers with trace at most trace_bound."""
    if field.degree == 1:
        return [field.element(n) for n in range(1, trace_bound + 1)]
    out = []
    bound = 3 * trace_bound + 3
    for tr in range(1, trace_bound + 1):
        for b in range(-bound, bound + 1):
            num = tr - field.s * b
            if num % 2:
                continue
            x = field.element(num // 2, b)
            if x and x.is_totally_positive():
                out.append(x)
    return out
