from itertools import product

import pytest

from conftest import tp_elements
from quatlat.enumeration import (
    coprime_split,
    norm_counts,
    orbit_profile,
    principal_generator,
    representations,
    unit_migration_equivalent,
    units1,
)
from quatlat.errors import NoGeneratorFound
from quatlat.fields import (
    QQ_FIELD,
    canonical_associate,
    exact_divide,
    primes_above,
)
from quatlat.lattices import canonicalize, reduced_discriminant, scale
from quatlat.perceptive import ResidueAlgebra


def _small_primes(field, bound):
    if field.degree == 1:
        return [field.element(p) for p in (2, 3, 5, 7, 11, 13) if p <= bound]
    out = []
    for p in (2, 3, 5, 7, 11, 13):
        out.extend(primes_above(field, p))
    return [pi for pi in out if abs(pi.nm()) <= bound]


def test_units_group_laws(orders):
    for name, O in orders.items():
        units = units1(O)
        assert len(units) % 2 == 0
        keys = {u.coords() for u in units}
        assert O.algebra.one.coords() in keys
        assert all(u.conj().coords() in keys for u in units)
        assert all((u1 * u2).coords() in keys for u1 in units for u2 in units)


def test_zero_and_unit_fast_paths(orders):
    H = orders["hurwitz"]
    assert representations(H, QQ_FIELD.zero) == [H.algebra.zero]
    assert len(representations(H, QQ_FIELD.one)) == 24
    assert representations(H, QQ_FIELD.element(-3)) == []


def test_irreducible_counts_maximal_orders(orders, entries):
    for name, entry in entries.items():
        if not entry.maximal:
            continue
        H = entry.order
        disc = reduced_discriminant(H)
        units = len(units1(H))
        for pi in _small_primes(H.algebra.field, 13):
            alpha = canonical_associate(pi)
            count = len(representations(H, alpha))
            q = int(abs(pi.nm()))
            if exact_divide(disc, pi) is None:
                assert count == units * (1 + q), (name, str(pi))
            else:
                assert count == units, (name, str(pi))


def test_norm_counts_matches_representations(orders):
    L = orders["lipschitz"]
    counts = norm_counts(L, 20)
    for n in range(1, 21):
        alpha = QQ_FIELD.element(n)
        assert counts.get(alpha, 0) == len(representations(L, alpha))


def test_parallel_determinism(orders):
    H = orders["hurwitz"]
    alpha = QQ_FIELD.element(15)
    base = representations(H, alpha, jobs=1)
    for jobs in (2, 3):
        assert representations(H, alpha, jobs=jobs) == base


def test_orbit_profile_sums(entries):
    for name, entry in entries.items():
        if entry.superorder is None:
            continue
        G = entry.order
        H = entries[entry.superorder].order
        units = len(units1(H))
        for alpha in tp_elements(G.algebra.field, 4):
            profile = orbit_profile(G, H, alpha)
            assert profile == sorted(profile)
            assert sum(profile) == len(representations(G, alpha)), (name, str(alpha))
            assert len(profile) * units == len(representations(H, alpha))


def test_factorization_migration_nrd9(orders):
    H = orders["hurwitz"]
    three = QQ_FIELD.element(3)
    irr = representations(H, three)
    units = units1(H)
    three_h = scale(three, H)
    by_product = {}
    for p1 in irr:
        for p2 in irr:
            q = p1 * p2
            assert q.nrd() == QQ_FIELD.element(9)
            # q lies in 3H exactly when p1 is a unit multiple of conj(p2)
            in_unit_orbit = any(p1 == u * p2.conj() for u in units)
            assert three_h.contains(q) == in_unit_orbit
            if not in_unit_orbit:
                by_product.setdefault(q.coords(), []).append((p1, p2))
    checked = 0
    for facs in by_product.values():
        first = list(facs[0])
        for other in facs[1:]:
            assert unit_migration_equivalent(first, list(other), H)
            checked += 1
    assert checked > 0


def test_unit_migration_negative(orders):
    H = orders["hurwitz"]
    irr = representations(H, QQ_FIELD.element(3))
    p = irr[0]
    other = next(q for q in irr if (q * p).coords() != (p * q).coords())
    assert not unit_migration_equivalent([p, other], [p, p], H)
    assert not unit_migration_equivalent([p], [p, p], H)


def test_residue_norm_isotropy(orders):
    for name, O in orders.items():
        for pi in _small_primes(O.algebra.field, 7):
            alg = ResidueAlgebra(O, pi)
            k = alg.k
            found = False
            for vec in product(k.elements(), repeat=4):
                if all(k.is_zero(c) for c in vec):
                    continue
                if k.is_zero(alg.nrd_reduced(vec)):
                    found = True
                    break
            assert found, (name, str(pi))


def test_principal_generator(orders):
    H = orders["hurwitz"]
    q = representations(H, QQ_FIELD.element(3))[0]
    ideal = scale(q, H, side="right")  # the left ideal H*q
    g = principal_generator(ideal, H)
    assert canonicalize([h * g for h in H.ok_basis()], H.algebra) == ideal
    with pytest.raises(NoGeneratorFound):
        principal_generator(orders["lipschitz"], H)


def test_coprime_split(orders):
    H = orders["hurwitz"]
    for target, parts in [(6, (2, 3)), (30, (2, 3, 5))]:
        alpha = QQ_FIELD.element(target)
        part_elems = tuple(QQ_FIELD.element(p) for p in parts)
        for q in representations(H, alpha)[:6]:
            factors = coprime_split(q, H, part_elems)
            prod = H.algebra.one
            for f in factors:
                prod = prod * f
            assert prod == q
            for f, p in zip(factors, part_elems):
                assert f.nrd() == p
