"""Perceptivity of suborders: brute force, cardinality criteria, posets,
conductor chains, kind classification, and the full search.

A suborder G of H is H-perceptive when every left H^1-orbit in H meets G.
The decision procedures here work in finite quotients H/aH and in the
4-dimensional residue algebra H/piH over the residue field.
"""

from fractions import Fraction
from math import isqrt

from .errors import (
    CapacityError,
    NotContained,
    NotCyclic,
    PosetNotLinear,
    PreconditionViolated,
)
from .fields import (
    FieldElement,
    canonical_associate,
    exact_divide,
    factor,
    primes_above,
    residue_field_of,
)
from .lattices import (
    Lattice,
    canonicalize,
    colon_right,
    index_ideal,
    index_z,
    left_order,
    is_order,
    lattice_sum,
    reduced_discriminant,
    scale,
)
from .enumeration import units1
from .quat import Quaternion

_QUOTIENT_CAP = 1 << 20


# ---------------------------------------------------------------------------
# Small exact linear algebra over the base field and over residue fields


def _k_inverse(rows):
    """Inverse of a 4x4 matrix of FieldElements (Gauss-Jordan)."""
    field = rows[0][0].field
    n = len(rows)
    m = [list(r) + [field.one if i == j else field.zero for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c])
        m[c], m[piv] = m[piv], m[c]
        inv = field.one / m[c][c]
        m[c] = [v * inv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [row[n:] for row in m]


def lattice_subset(M, L):
    """Whether the lattice M is contained in L."""
    return all(L.contains(b) for b in M.zbasis())


# ---------------------------------------------------------------------------
# The residue algebra H/piH over k = O_K/pi


class ResidueAlgebra:
    """F/piF as a four-dimensional algebra over the residue field of pi.

    Elements are 4-tuples of residue-field elements, coordinates taken
    over the O_K-basis of F.
    """

    __slots__ = ("order", "pi", "k", "basis", "binv", "table", "one")

    def __init__(self, order, pi):
        self.order = order
        self.pi = pi
        self.k = residue_field_of(pi)
        self.basis = order.ok_basis()
        self.binv = _k_inverse([list(b.coords()) for b in self.basis])
        self.table = [
            [self.reduce(self.basis[r] * self.basis[s]) for s in range(4)]
            for r in range(4)
        ]
        self.one = self.reduce(order.algebra.one)

    def coords_in_basis(self, q):
        x = list(q.coords())
        return [
            sum((x[m] * self.binv[m][c] for m in range(4)),
                self.order.algebra.field.zero)
            for c in range(4)
        ]

    def reduce(self, q):
        return tuple(self.k.reduce(c) for c in self.coords_in_basis(q))

    def _lift_scalar(self, c):
        field = self.order.algebra.field
        if self.k.f == 2:
            return FieldElement(field, Fraction(c[0]), Fraction(c[1]))
        return field.element(c)

    def lift(self, vec):
        q = self.order.algebra.zero
        for c, b in zip(vec, self.basis):
            if not self.k.is_zero(c):
                q = q + b * self._lift_scalar(c)
        return q

    def add(self, u, v):
        return tuple(self.k.add(a, b) for a, b in zip(u, v))

    def smul(self, a, u):
        return tuple(self.k.mul(a, c) for c in u)

    def mul(self, u, v):
        k = self.k
        out = [k.zero] * 4
        for r in range(4):
            ur = u[r]
            if k.is_zero(ur):
                continue
            for s in range(4):
                vs = v[s]
                if k.is_zero(vs):
                    continue
                coef = k.mul(ur, vs)
                row = self.table[r][s]
                for m in range(4):
                    if not k.is_zero(row[m]):
                        out[m] = k.add(out[m], k.mul(coef, row[m]))
        return tuple(out)

    def zero_vec(self):
        return tuple([self.k.zero] * 4)

    def trd_reduced(self, vec):
        return self.k.reduce(self.lift(vec).trd())

    def nrd_reduced(self, vec):
        return self.k.reduce(self.lift(vec).nrd())

    def char_poly_irreducible(self, vec):
        """Whether X^2 - trd(vec) X + nrd(vec) has no root in k."""
        k = self.k
        a = self.trd_reduced(vec)
        b = self.nrd_reduced(vec)
        for t in k.elements():
            val = k.add(k.sub(k.mul(t, t), k.mul(a, t)), b)
            if k.is_zero(val):
                return False
        return True

    def span_dimension(self, vecs):
        """Dimension of the k-span, and an echelonized basis."""
        k = self.k
        rows = [list(v) for v in vecs]
        basis = []
        pivots = []
        for row in rows:
            for bcol, bvec in zip(pivots, basis):
                if not k.is_zero(row[bcol]):
                    f = row[bcol]
                    row[:] = [k.sub(c, k.mul(f, d)) for c, d in zip(row, bvec)]
            col = next((c for c in range(4) if not k.is_zero(row[c])), None)
            if col is None:
                continue
            inv = k.inv(row[col])
            row[:] = [k.mul(inv, c) for c in row]
            basis.append(row)
            pivots.append(col)
        return len(basis), [tuple(r) for r in basis]


# ---------------------------------------------------------------------------
# Quotient shape (elementary divisors over O_K)


def _coords_over_basis(L, quaternions):
    """K-coordinate rows of the given quaternions over L's O_K-basis."""
    binv = _k_inverse([list(b.coords()) for b in L.ok_basis()])
    field = L.algebra.field
    rows = []
    for q in quaternions:
        x = list(q.coords())
        rows.append(
            [
                sum((x[m] * binv[m][c] for m in range(4)), field.zero)
                for c in range(4)
            ]
        )
    return rows


def oksnf(mat):
    """Diagonal of the Smith normal form over the Euclidean ring O_K."""
    from .fields import nearest_quotient

    m = [list(r) for r in mat]
    n = len(m)
    field = m[0][0].field

    def smallest(t):
        best = None
        for r in range(t, n):
            for c in range(t, n):
                if m[r][c] and (
                    best is None
                    or abs(m[r][c].nm()) < abs(m[best[0]][best[1]].nm())
                ):
                    best = (r, c)
        return best

    diag = []
    for t in range(n):
        while True:
            pos = smallest(t)
            if pos is None:
                diag.append(field.zero)
                break
            r0, c0 = pos
            m[t], m[r0] = m[r0], m[t]
            for r in range(n):
                m[r][t], m[r][c0] = m[r][c0], m[r][t]
            piv = m[t][t]
            dirty = False
            for r in range(t + 1, n):
                if m[r][t]:
                    q = nearest_quotient(m[r][t] / piv)
                    m[r] = [a - q * b for a, b in zip(m[r], m[t])]
                    if m[r][t]:
                        dirty = True
            for c in range(t + 1, n):
                if m[t][c]:
                    q = nearest_quotient(m[t][c] / piv)
                    for r in range(n):
                        m[r][c] = m[r][c] - q * m[r][t]
                    if m[t][c]:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the submatrix for true SNF
            culprit = None
            for r in range(t + 1, n):
                for c in range(t + 1, n):
                    if m[r][c] and exact_divide(m[r][c], piv) is None:
                        culprit = r
                        break
                if culprit is not None:
                    break
            if culprit is None:
                diag.append(canonical_associate(piv))
                break
            m[t] = [a + b for a, b in zip(m[t], m[culprit])]
    return diag


def quotient_shape(G: Lattice, H: Lattice):
    """Elementary divisors of H/G: list of (prime, exponent) cyclic factors."""
    if not lattice_subset(G, H):
        raise NotContained("first order is not inside the second")
    rows = _coords_over_basis(H, G.ok_basis())
    for row in rows:
        if any(not c.is_integral() for c in row):
            raise NotContained("coordinates are not integral")
    shape = []
    for d in oksnf(rows):
        if d.is_unit():
            continue
        for pi, e in factor(d).pairs:
            shape.append((pi, e))
    shape.sort(key=lambda pe: (abs(pe[0].nm()), pe[0].a, pe[0].b, pe[1]))
    return shape


# ---------------------------------------------------------------------------
# Finite quotients H/aH and the brute-force perceptivity check


class FiniteQuotient:
    """H/aH with canonical coset representatives (integer coordinate tuples)."""

    __slots__ = ("order", "modulus", "sub", "diag", "size")

    def __init__(self, H: Lattice, a):
        self.order = H
        self.modulus = a
        rows = _int_coords_in(H, scale(a, H).zbasis())
        from .lattices import zhnf

        hnf, rank = zhnf(rows, H.algebra.dim)
        assert rank == H.algebra.dim
        self.sub = [row[:] for row in hnf[: H.algebra.dim]]
        self.diag = [self.sub[r][r] for r in range(len(self.sub))]
        size = 1
        for d in self.diag:
            size *= d
        if size > _QUOTIENT_CAP:
            raise CapacityError(f"quotient has {size} cosets (cap {_QUOTIENT_CAP})")
        self.size = size

    def reduce(self, vec):
        w = list(vec)
        for r in range(len(w)):
            c = w[r] // self.sub[r][r]
            if c:
                row = self.sub[r]
                for s in range(r, len(w)):
                    w[s] -= c * row[s]
        return tuple(w)

    def subgroup(self, generators):
        """Closure of the given coordinate vectors under addition, reduced."""
        gens = [self.reduce(g) for g in generators]
        seen = {self.reduce([0] * len(self.diag))}
        frontier = [next(iter(seen))]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = self.reduce([a + b for a, b in zip(cur, g)])
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen


def _int_coords_in(H: Lattice, quaternions):
    """Integer coordinates of quaternions over H's Z-basis (must lie in H)."""
    n = H.algebra.dim
    out = []
    for q in quaternions:
        w = [H.den * v for v in q.to_vector()]
        assert all(v.denominator == 1 for v in w), "quaternion not in the lattice"
        w = [int(v) for v in w]
        coords = [0] * n
        for r in range(n):
            c, rem = divmod(w[r], H.mat[r][r])
            assert rem == 0, "quaternion not in the lattice"
            coords[r] = c
            if c:
                row = H.mat[r]
                for s in range(r, n):
                    w[s] -= c * row[s]
        out.append(coords)
    return out


def _left_mul_matrix(H: Lattice, u):
    """Integer matrix of x -> u*x on H's Z-basis (u must stabilize H)."""
    return _int_coords_in(H, [u * b for b in H.zbasis()])


def is_perceptive_bruteforce(G: Lattice, H: Lattice, modulus=None):
    """Whether every left H^1-orbit in H meets G, checked in H/aH."""
    if not lattice_subset(G, H):
        raise NotContained("suborder is not contained in the order")
    if modulus is None:
        modulus = index_ideal(H, G)
    quotient = FiniteQuotient(H, modulus)
    gset = quotient.subgroup(_int_coords_in(H, G.zbasis()))
    union = set()
    n = H.algebra.dim
    for u in units1(H):
        mat = _left_mul_matrix(H, u)
        for v in gset:
            img = [sum(v[r] * mat[r][c] for r in range(n)) for c in range(n)]
            union.add(quotient.reduce(img))
        if len(union) == quotient.size:
            return True
    return len(union) == quotient.size


# ---------------------------------------------------------------------------
# Cardinality criteria


def _unit_ratio(G, H):
    nh = len(units1(H))
    ng = len(units1(G))
    assert nh % ng == 0
    return nh // ng


def cyclic_criterion(G: Lattice, H: Lattice):
    """(bound, ratio, perceptive) for a cyclic quotient H/G = O_K/pi^e."""
    shape = quotient_shape(G, H)
    if len(shape) != 1:
        raise NotCyclic(f"quotient shape {shape} is not a single cyclic factor")
    pi, e = shape[0]
    q = int(abs(pi.nm()))
    bound = q**e + q ** (e - 1)
    ratio = _unit_ratio(G, H)
    return bound, ratio, ratio == bound


def field_criterion(G: Lattice, H: Lattice):
    """(bound, ratio, perceptive) for H/G = (O_K/pi)^2 with G/piH a field."""
    shape = quotient_shape(G, H)
    if len(shape) != 2 or shape[0][1] != 1 or shape[1][1] != 1 or shape[0][0] != shape[1][0]:
        raise PreconditionViolated(f"quotient shape {shape} is not (O_K/pi)^2")
    pi = shape[0][0]
    alg = ResidueAlgebra(H, pi)
    dim, basis = alg.span_dimension([alg.reduce(b) for b in G.ok_basis()])
    if dim != 2:
        raise PreconditionViolated("G/piH is not two-dimensional")
    x = next(v for v in basis if v != alg.one and not _is_scalar(alg, v))
    if not alg.char_poly_irreducible(x):
        raise PreconditionViolated("G/piH is not a field")
    q = int(abs(pi.nm()))
    bound = q * q + 1
    ratio = _unit_ratio(G, H)
    return bound, ratio, ratio == bound


def _is_scalar(alg, vec):
    k = alg.k
    _, basis = alg.span_dimension([alg.one, vec])
    return len(basis) == 1


def linear_poset_count_criterion(G: Lattice, H: Lattice, poset):
    """(bound, ratio, perceptive) via the linear-poset counting formula."""
    if not poset.linear:
        raise PosetNotLinear("intermediate orders do not form a chain")
    chain = poset.chain()
    assert chain[0] == G and chain[-1] == H
    m2 = chain[1]
    bound = int(abs(index_ideal(H, G).nm())) + int(abs(index_ideal(H, m2).nm()))
    ratio = _unit_ratio(G, H)
    return bound, ratio, ratio == bound


# ---------------------------------------------------------------------------
# Intermediate orders and chains


class OrderPoset:
    """All orders between G and H, ordered by inclusion."""

    __slots__ = ("orders", "linear")

    def __init__(self, orders):
        self.orders = sorted(
            orders, key=lambda L: (-L.det_covolume(), L.den, L.mat)
        )
        self.linear = all(
            lattice_subset(self.orders[i], self.orders[i + 1])
            for i in range(len(self.orders) - 1)
        )

    def chain(self):
        if not self.linear:
            raise PosetNotLinear("poset is not a chain")
        return list(self.orders)

    def __len__(self):
        return len(self.orders)

    def __iter__(self):
        return iter(self.orders)

    def __contains__(self, L):
        return L in self.orders


def _ring_closure(gens, H: Lattice):
    """Smallest order inside H containing the given quaternions."""
    L = canonicalize(gens, H.algebra)
    while True:
        basis = L.ok_basis()
        bigger = canonicalize(
            list(basis) + [a * b for a in basis for b in basis], H.algebra
        )
        if bigger == L:
            return L
        L = bigger


def _quotient_transversal(M: Lattice, H: Lattice):
    """Quaternion representatives of H/M (assumes M inside H)."""
    rows = _int_coords_in(H, M.zbasis())
    from .lattices import zhnf

    n = H.algebra.dim
    hnf, rank = zhnf(rows, n)
    assert rank == n
    diag = [hnf[r][r] for r in range(n)]
    size = 1
    for d in diag:
        size *= d
    if size > _QUOTIENT_CAP:
        raise CapacityError(f"transversal has {size} cosets")
    basis = H.zbasis()
    reps = []

    def walk(r, acc):
        if r == n:
            reps.append(acc)
            return
        for c in range(diag[r]):
            walk(r + 1, acc + basis[r] * c if c else acc)

    walk(0, H.algebra.zero)
    return reps


def intermediate_orders(G: Lattice, H: Lattice):
    """The poset of all orders M with G <= M <= H."""
    if not lattice_subset(G, H):
        raise NotContained("suborder is not contained in the order")
    found = {G, H}
    frontier = [G]
    while frontier:
        M = frontier.pop()
        if M == H:
            continue
        for z in _quotient_transversal(M, H):
            if M.contains(z):
                continue
            candidate = _ring_closure(list(M.ok_basis()) + [z], H)
            if candidate not in found:
                assert is_order(candidate)
                found.add(candidate)
                frontier.append(candidate)
    return OrderPoset(found)


def chain_decompose(F: Lattice, H: Lattice):
    """Chain F = G_0 < ... < G_r = H with prime-power O_K-indices."""
    if not lattice_subset(F, H):
        raise NotContained("suborder is not contained in the order")
    fac = factor(index_ideal(H, F))
    pairs = list(fac.pairs)
    if not pairs:
        return [F]
    field = H.algebra.field
    chain = [F]
    for i in range(1, len(pairs)):
        rest = field.one
        for pi, e in pairs[i:]:
            rest = rest * pi**e
        layer = lattice_sum(F, scale(rest, H))
        assert is_order(layer)
        chain.append(layer)
    chain.append(H)
    for i in range(1, len(chain)):
        pi, e = pairs[i - 1]
        assert index_ideal(chain[i], chain[i - 1]) == canonical_associate(pi**e)
    return chain


def kind_of(G: Lattice, H: Lattice):
    """[(prime, exponent, divides_discrd)] for the factorization of [H:G]."""
    fac = factor(index_ideal(H, G))
    disc = reduced_discriminant(H)
    out = []
    for pi, e in fac.pairs:
        divides = bool(disc) and exact_divide(disc, pi) is not None
        out.append((pi, e, divides))
    return out


# ---------------------------------------------------------------------------
# Conductor chains


def conductor_chain(G: Lattice, H: Lattice, poset):
    """[(M, colon_right(G, M), generator-or-None)] along a linear poset."""
    if not poset.linear:
        raise PosetNotLinear("conductor chains require a linear poset")
    from .enumeration import principal_generator
    from .errors import NoGeneratorFound

    out = []
    for M in poset.chain():
        cond = colon_right(G, M)
        # index law [G : (G:M)]_{O_K} = [M : G]_{O_K}
        assert index_ideal(G, cond) == index_ideal(M, G)
        gen = None
        if left_order(cond) == M:
            try:
                gen = principal_generator(cond, M)
            except NoGeneratorFound:
                gen = None
        out.append((M, cond, gen))
    return out


# ---------------------------------------------------------------------------
# The search for perceptive suborders


def _divisors(n):
    out = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
    return sorted(out)


def _candidate_primes(H: Lattice):
    """Primes pi with nm(pi)+1 or nm(pi)^2+1 dividing |H^1|/2."""
    from sympy import isprime

    field = H.algebra.field
    half = len(units1(H)) // 2
    norms = set()
    for m in _divisors(half):
        q = m - 1
        if q >= 2:
            norms.add(q)
        r = isqrt(q)
        if r >= 2 and r * r == q:
            norms.add(r)
    result = []
    seen = set()
    for q in sorted(norms):
        if isprime(q):
            p, f = q, 1
        else:
            r = isqrt(q)
            if r * r == q and isprime(r):
                p, f = r, 2
            else:
                continue
        if field.degree == 1:
            if f == 1:
                candidates = [field.element(p)]
            else:
                continue
        else:
            candidates = primes_above(field, p)
        for pi in candidates:
            if int(abs(pi.nm())) == q and pi not in seen:
                seen.add(pi)
                result.append(pi)
    return result


def _suborders_s1(F: Lattice, pi, alg: ResidueAlgebra):
    """Suborders L < F with F/L = O_K/pi: hyperplane subalgebras of F/piF."""
    k = alg.k
    adapted = _adapted_basis(alg)
    padded = [pi * b for b in F.ok_basis()]
    out = []
    for f_ad in _projective_functionals(k):
        # functional in adapted coordinates, f(1) = 0 by construction
        kernel_ad = _functional_kernel(k, f_ad)
        kernel = [
            _combine(alg, vec, adapted) for vec in kernel_ad
        ]
        f_std = _functional_in_std(alg, f_ad, adapted)
        closed = True
        for v in kernel:
            for w in kernel:
                prod = alg.mul(v, w)
                val = k.zero
                for c, x in zip(f_std, prod):
                    val = k.add(val, k.mul(c, x))
                if not k.is_zero(val):
                    closed = False
                    break
            if not closed:
                break
        if not closed:
            continue
        L = canonicalize([alg.lift(v) for v in kernel] + padded, F.algebra)
        out.append(L)
    return out


def _suborders_s2(F: Lattice, pi, alg: ResidueAlgebra):
    """Suborders L < F with F/L = (O_K/pi)^2 and L/piF a field."""
    k = alg.k
    adapted = _adapted_basis(alg)
    padded = [pi * b for b in F.ok_basis()]
    out = []
    seen = set()
    for x_ad in _projective_functionals(k):
        # x = nonzero adapted vector with zero 1-component, leading coeff 1:
        # each 2-dim subspace k + k*x has exactly one such representative.
        x = _combine(alg, x_ad, adapted)
        if not alg.char_poly_irreducible(x):
            continue
        L = canonicalize([alg.lift(x)] + [F.algebra.one] + padded, F.algebra)
        if L not in seen:
            seen.add(L)
            out.append(L)
    return out


def _adapted_basis(alg: ResidueAlgebra):
    """A k-basis of F/piF whose first vector is 1."""
    k = alg.k
    basis = [alg.one]
    pivcols = [next(c for c in range(4) if not k.is_zero(alg.one[c]))]
    unit_vecs = []
    for c in range(4):
        vec = [k.zero] * 4
        vec[c] = k.one
        unit_vecs.append(tuple(vec))
    for vec in unit_vecs:
        if len(basis) == 4:
            break
        row = list(vec)
        for col, b in zip(pivcols, basis):
            if not k.is_zero(row[col]):
                f = k.mul(row[col], k.inv(b[col]))
                row = [k.sub(c0, k.mul(f, c1)) for c0, c1 in zip(row, b)]
        col = next((c for c in range(4) if not k.is_zero(row[c])), None)
        if col is None:
            continue
        basis.append(tuple(row))
        pivcols.append(col)
    assert len(basis) == 4
    return basis


def _projective_functionals(k):
    """Nonzero triples over k with leading coefficient 1, prefixed by 0."""
    elems = k.elements()
    out = []
    for lead in range(3):
        head = [k.zero] * lead + [k.one]
        tails = [[]]
        for _ in range(2 - lead):
            tails = [t + [e] for t in tails for e in elems]
        for t in tails:
            out.append(tuple([k.zero] + head + t))
    return out


def _functional_kernel(k, f_ad):
    """Basis of ker(f) in adapted coordinates; f_ad[0] = 0, so e_0 is in it."""
    lead = next(c for c in range(1, 4) if not k.is_zero(f_ad[c]))
    basis = []
    e0 = [k.zero] * 4
    e0[0] = k.one
    basis.append(tuple(e0))
    for c in range(1, 4):
        if c == lead:
            continue
        vec = [k.zero] * 4
        vec[c] = k.one
        vec[lead] = k.neg(k.mul(f_ad[c], k.inv(f_ad[lead])))
        basis.append(tuple(vec))
    return basis


def _combine(alg, coeffs, adapted):
    out = alg.zero_vec()
    for c, b in zip(coeffs, adapted):
        if not alg.k.is_zero(c):
            out = alg.add(out, alg.smul(c, b))
    return out


def _functional_in_std(alg, f_ad, adapted):
    """Rewrite a functional from adapted to standard coordinates."""
    k = alg.k
    pmat = [list(b) for b in adapted]
    pinv = _k_mat_inverse(k, pmat)
    return tuple(
        _k_dot(k, [pinv[c][m] for m in range(4)], f_ad) for c in range(4)
    )


def _k_dot(k, u, v):
    out = k.zero
    for a, b in zip(u, v):
        out = k.add(out, k.mul(a, b))
    return out


def _k_mat_inverse(k, rows):
    n = len(rows)
    m = [list(r) + [k.one if i == j else k.zero for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(r for r in range(c, n) if not k.is_zero(m[r][c]))
        m[c], m[piv] = m[piv], m[c]
        inv = k.inv(m[c][c])
        m[c] = [k.mul(inv, v) for v in m[c]]
        for r in range(n):
            if r != c and not k.is_zero(m[r][c]):
                f = m[r][c]
                m[r] = [k.sub(a, k.mul(f, b)) for a, b in zip(m[r], m[c])]
    return [row[n:] for row in m]


def _decide_perceptive(L, G, pi):
    """Steps (13)-(15): decide whether L is G-perceptive."""
    shape = quotient_shape(L, G)
    q = int(abs(pi.nm()))
    ratio = _unit_ratio(L, G)
    if len(shape) == 1:
        e = shape[0][1]
        return ratio == q**e + q ** (e - 1)
    if (
        len(shape) == 2
        and shape[0][1] == 1
        and shape[1][1] == 1
        and shape[0][0] == shape[1][0]
    ):
        alg = ResidueAlgebra(G, pi)
        dim, basis = alg.span_dimension([alg.reduce(b) for b in L.ok_basis()])
        if dim == 2:
            x = next(
                v for v in basis if not _is_scalar(alg, v)
            )
            if alg.char_poly_irreducible(x):
                return ratio == q * q + 1
    e = 1
    while not lattice_subset(scale(pi**e, G), L):
        e += 1
    return is_perceptive_bruteforce(L, G, modulus=pi**e)


def search_perceptive(H: Lattice):
    """All H-perceptive suborders of H (including H itself)."""
    omega = {H}
    for pi in _candidate_primes(H):
        q = int(abs(pi.nm()))
        omega_new = set()
        for G in omega:
            ug = len(units1(G))
            # index < #G^1/#L^1 <= #G^1/2 is necessary, so cap the index early
            max_index = ug // 2
            gamma = [G]
            not_perceptive = set()
            while gamma:
                F = gamma.pop()
                omega_new.add(F)
                base = index_z(G, F)
                candidates = []
                alg = None
                if base * q < max_index:
                    alg = ResidueAlgebra(F, pi)
                    candidates += _suborders_s1(F, pi, alg)
                if base * q * q < max_index:
                    if alg is None:
                        alg = ResidueAlgebra(F, pi)
                    candidates += _suborders_s2(F, pi, alg)
                for L in candidates:
                    if L in not_perceptive:
                        continue
                    idx = index_z(G, L)
                    if idx >= max_index or idx >= ug // len(units1(L)):
                        continue
                    if L in omega_new:
                        continue
                    if _decide_perceptive(L, G, pi):
                        if L not in omega_new and L not in gamma:
                            gamma.append(L)
                    else:
                        not_perceptive.add(L)
        omega = omega_new
    return omega
