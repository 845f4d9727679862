import pytest

from conftest import tp_elements
from quatlat.enumeration import orbit_profile, representations, units1
from quatlat.errors import (
    CapacityError,
    NotCyclic,
    PosetNotLinear,
    PreconditionViolated,
)
from quatlat.fields import QQ_FIELD, canonical_associate, format_field_element
from quatlat.lattices import index_ideal, index_z
from quatlat.perceptive import (
    FiniteQuotient,
    OrderPoset,
    chain_decompose,
    conductor_chain,
    cyclic_criterion,
    field_criterion,
    intermediate_orders,
    is_perceptive_bruteforce,
    kind_of,
    linear_poset_count_criterion,
    quotient_shape,
    search_perceptive,
)

VERDICTS = [
    ("lipschitz", "hurwitz", True),
    ("f31", "m31", True),
    ("g31", "m31", True),
    ("f31", "g31", False),
    ("hurwitz5", "icosian", True),
    ("gotzky_g", "icosian", False),
]


def test_bruteforce_verdicts(orders):
    for g, h, expected in VERDICTS:
        assert is_perceptive_bruteforce(orders[g], orders[h]) == expected, (g, h)


def test_cyclic_criterion_agreement(orders):
    expected = {
        ("lipschitz", "hurwitz"): (3, 3),
        ("f31", "m31"): (6, 6),
        ("g31", "m31"): (3, 3),
        ("f31", "g31"): (3, 2),
        ("hurwitz5", "icosian"): (5, 5),
    }
    for g, h, verdict in VERDICTS:
        if (g, h) not in expected:
            continue
        bound, ratio, perceptive = cyclic_criterion(orders[g], orders[h])
        assert (bound, ratio) == expected[(g, h)]
        assert perceptive == verdict


def test_quotient_shapes(orders):
    def shape(g, h):
        return [
            (format_field_element(pi), e)
            for pi, e in quotient_shape(orders[g], orders[h])
        ]

    assert shape("lipschitz", "hurwitz") == [("2", 1)]
    assert shape("f31", "m31") == [("2", 2)]
    assert shape("g31", "m31") == [("2", 1)]
    assert shape("hurwitz5", "icosian") == [("2", 1)]
    assert shape("gotzky_g", "icosian") == [("2", 1), ("2", 1)]
    assert shape("g_q3", "cubian") == [("(2 - 1*w)", 3)]
    assert shape("g_q4", "cubian") == [("(2 - 1*w)", 4)]
    assert shape("g_p3", "hurwitz") == [("2", 1), ("2", 2)]


def test_criterion_preconditions(orders):
    with pytest.raises(NotCyclic):
        cyclic_criterion(orders["gotzky_g"], orders["icosian"])
    with pytest.raises(PreconditionViolated):
        field_criterion(orders["lipschitz"], orders["hurwitz"])
    # (2,1)^2 shape, but the middle quotient is not a field
    with pytest.raises(PreconditionViolated):
        field_criterion(orders["gotzky_g"], orders["icosian"])


def test_counting_criterion(orders):
    G, H = orders["g_p3"], orders["hurwitz"]
    poset = intermediate_orders(G, H)
    assert linear_poset_count_criterion(G, H, poset) == (12, 12, True)
    G2, H2 = orders["gotzky_g"], orders["icosian"]
    poset2 = intermediate_orders(G2, H2)
    assert linear_poset_count_criterion(G2, H2, poset2) == (20, 15, False)


def test_intermediate_orders(orders):
    poset = intermediate_orders(orders["g_p3"], orders["hurwitz"])
    assert len(poset) == 4 and poset.linear
    chain = poset.chain()
    assert chain[0] == orders["g_p3"] and chain[-1] == orders["hurwitz"]
    assert [index_z(orders["hurwitz"], M) for M in chain] == [8, 4, 2, 1]

    poset5 = intermediate_orders(orders["g_q4"], orders["cubian"])
    assert len(poset5) == 5 and poset5.linear

    poset_g = intermediate_orders(orders["gotzky_g"], orders["icosian"])
    assert len(poset_g) == 3 and poset_g.linear


def test_nonlinear_poset_rejected(orders):
    # the intermediate orders of g_pq sit at two incomparable primes
    G, H = orders["g_pq"], orders["hurwitz"]
    poset = intermediate_orders(G, H)
    assert not poset.linear
    with pytest.raises(PosetNotLinear):
        poset.chain()
    with pytest.raises(PosetNotLinear):
        linear_poset_count_criterion(G, H, poset)


def test_conductor_chain(orders):
    G, H = orders["g_p3"], orders["hurwitz"]
    poset = intermediate_orders(G, H)
    levels = conductor_chain(G, H, poset)
    assert [M for M, _, _ in levels] == poset.chain()
    for M, cond, gen in levels:
        assert index_ideal(G, cond) == index_ideal(M, G)
        assert gen is not None
        assert abs(gen.nrd().nm()) ** 2 == index_z(M, cond)
    # the conductor of the index-4 level is generated by i + k up to units
    mid = levels[1]
    assert mid[2] is not None and mid[2].nrd() == QQ_FIELD.element(2)


def test_chain_decompose(orders):
    G, H = orders["g_pq"], orders["hurwitz"]
    chain = chain_decompose(G, H)
    assert len(chain) == 3
    assert chain[0] == G and chain[-1] == H
    steps = [index_ideal(chain[i + 1], chain[i]) for i in range(2)]
    assert sorted(abs(s.nm()) for s in steps) == [2, 3]


def test_kind_of(orders):
    def kinds(g, h):
        return [
            (format_field_element(pi), e, div)
            for pi, e, div in kind_of(orders[g], orders[h])
        ]

    assert kinds("g_q11", "hurwitz") == [("11", 1, False)]
    assert kinds("g_pq", "hurwitz") == [("2", 1, True), ("3", 1, False)]
    assert kinds("g_p3", "hurwitz") == [("2", 3, True)]
    assert kinds("g31", "m31") == [("2", 1, False)]
    assert kinds("f31", "m31") == [("2", 2, False)]
    assert kinds("g_q3", "cubian") == [("(2 - 1*w)", 3, False)]
    assert kinds("g_q4", "cubian") == [("(2 - 1*w)", 4, False)]
    assert kinds("gotzky_g", "icosian") == [("2", 2, False)]
    assert kinds("hurwitz5", "icosian") == [("2", 1, False)]


def test_quotient_capacity(orders):
    with pytest.raises(CapacityError):
        FiniteQuotient(orders["hurwitz"], QQ_FIELD.element(40))


def test_composition_across_comaximal_indices(orders):
    chain = chain_decompose(orders["g_pq"], orders["hurwitz"])
    links = [
        is_perceptive_bruteforce(chain[i], chain[i + 1])
        for i in range(len(chain) - 1)
    ]
    ends = is_perceptive_bruteforce(chain[0], chain[-1])
    assert all(links) == ends


def test_search_shapes_have_at_most_two_factors_per_prime(orders):
    H = orders["hurwitz"]
    for L in search_perceptive(H):
        per_prime = {}
        for pi, _ in quotient_shape(L, H):
            key = (pi.a, pi.b)
            per_prime[key] = per_prime.get(key, 0) + 1
        assert all(n <= 2 for n in per_prime.values())


def test_orbit_intersection_size_law(orders):
    pairs = [
        ("lipschitz", "hurwitz"),
        ("g31", "m31"),
        ("f31", "m31"),
        ("g_p3", "hurwitz"),
        ("g_q11", "hurwitz"),
        ("hurwitz5", "icosian"),
        ("g_q3", "cubian"),
        ("gotzky_g", "icosian"),
    ]
    for g, h in pairs:
        G, H = orders[g], orders[h]
        poset = intermediate_orders(G, H)
        levels = conductor_chain(G, H, poset)
        units = units1(H)
        for alpha in tp_elements(G.algebra.field, 8):
            seen = set()
            for q in representations(H, alpha):
                if q.coords() in seen:
                    continue
                orbit = [u * q for u in units]
                seen.update(x.coords() for x in orbit)
                inter = sum(1 for x in orbit if G.contains(x))
                # largest intermediate order whose conductor meets the orbit
                best = None
                for M, cond, _ in levels:
                    if any(cond.contains(x) for x in orbit):
                        best = M
                if inter == 0:
                    assert best is None, (g, h, str(alpha))
                else:
                    assert best is not None
                    assert inter == len(units1(best)), (g, h, str(alpha))


def test_orbit_meeting_law(orders):
    # perceptive pairs: every unit orbit of representations meets the suborder
    for g, h, verdict in VERDICTS:
        G, H = orders[g], orders[h]
        witnessed_miss = False
        for alpha in tp_elements(G.algebra.field, 8):
            profile = orbit_profile(G, H, alpha)
            if verdict:
                assert all(n > 0 for n in profile), (g, h, str(alpha))
            elif any(n == 0 for n in profile):
                witnessed_miss = True
        if not verdict:
            assert witnessed_miss, (g, h)
