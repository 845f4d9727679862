import random

import pytest

from conftest import rand_order_element
from quatlat.errors import RankDeficient
from quatlat.fields import QQ_FIELD, canonical_associate
from quatlat.lattices import (
    canonicalize,
    colon_right,
    index_ideal,
    index_z,
    is_order,
    lattice_intersection,
    lattice_product,
    lattice_sum,
    left_order,
    reduced_discriminant,
    right_order,
    scale,
)
from quatlat.perceptive import lattice_subset


def test_canonical_equality_congruence(orders):
    rng = random.Random(91)
    for O in orders.values():
        basis = list(O.zbasis())
        for _ in range(20):
            perturbed = list(basis)
            rng.shuffle(perturbed)
            # add random Z-combinations of other generators
            extra = O.algebra.zero
            for b in basis:
                extra = extra + b * rng.randint(-2, 2)
            perturbed.append(extra)
            assert canonicalize(perturbed, O.algebra) == O


def test_rank_deficient():
    from quatlat.catalog import catalog

    H = catalog()["hurwitz"].order
    with pytest.raises(RankDeficient):
        canonicalize([H.algebra.one, H.algebra.i], H.algebra).ok_basis()


def test_membership(orders):
    from fractions import Fraction

    H = orders["hurwitz"]
    hb = H.algebra.quaternion(*([Fraction(1, 2)] * 4))
    assert H.contains(hb)
    assert not orders["lipschitz"].contains(hb)


def test_sum_product_scale(orders):
    L = orders["lipschitz"]
    H = orders["hurwitz"]
    assert lattice_sum(L, H) == H
    assert lattice_product(H, H) == H
    assert lattice_intersection(L, H) == L
    q = H.algebra.one + H.algebra.i
    assert index_z(H, scale(q, H)) == 4


def test_index_ideal_scaling_law(orders):
    rng = random.Random(111)
    for name, O in orders.items():
        for _ in range(100):
            q = rand_order_element(rng, O)
            if not q.nrd():
                continue
            lhs = index_ideal(O, scale(q, O))
            assert lhs == canonical_associate(q.nrd() * q.nrd()), name


def test_discriminant_chain_law(orders, entries):
    for name, entry in entries.items():
        if entry.superorder is None:
            continue
        M = entry.order
        L = entries[entry.superorder].order
        lhs = reduced_discriminant(M)
        rhs = canonical_associate(index_ideal(L, M) * reduced_discriminant(L))
        assert lhs == rhs, name


def test_discriminant_values(orders):
    assert reduced_discriminant(orders["hurwitz"]) == QQ_FIELD.element(2)
    assert reduced_discriminant(orders["lipschitz"]) == QQ_FIELD.element(4)
    assert reduced_discriminant(orders["icosian"]).is_unit()
    assert reduced_discriminant(orders["cubian"]).is_unit()


def test_colon_right_maximality(orders, entries):
    rng = random.Random(121)
    for name, entry in entries.items():
        if entry.superorder is None:
            continue
        G = entry.order
        M = entries[entry.superorder].order
        cond = colon_right(G, M)
        mb = M.ok_basis()
        for _ in range(100):
            x = rand_order_element(rng, cond, span=2)
            assert all(G.contains(h * x) for h in mb), name
        outside = [b for b in M.zbasis() if not cond.contains(b)]
        for b in outside[:100]:
            for x in (b, b + rand_order_element(rng, cond, span=1)):
                assert not all(G.contains(h * x) for h in mb), name


def test_left_right_orders(orders):
    rng = random.Random(131)
    for name, O in orders.items():
        assert is_order(O)
        assert right_order(O) == O and left_order(O) == O
        q = rand_order_element(rng, O)
        if q.nrd():
            assert left_order(scale(q, O, side="right")) == O, name


def test_ok_basis_spans(orders):
    for O in orders.values():
        assert canonicalize(list(O.ok_basis()), O.algebra) == O


def test_containment(orders, entries):
    for name, entry in entries.items():
        if entry.superorder is not None:
            assert lattice_subset(entry.order, entries[entry.superorder].order)
    assert not lattice_subset(orders["hurwitz"], orders["lipschitz"])
