"""Full-rank lattices and orders in a definite quaternion algebra.

A lattice is stored as a canonical integer row-HNF matrix of Z-rank 4d
together with one global positive denominator, so structural equality is
lattice equality.  Every lattice built through this module is an
O_K-module (constructors adjoin w-multiples of the generators), and a
free O_K-basis of rank 4 is computed on demand by HNF over the
norm-Euclidean ring O_K.
"""

from fractions import Fraction

from .errors import AlgebraMismatch, RankDeficient
from .fields import (
    FieldElement,
    canonical_associate,
    euclid_gcd,
    nearest_quotient,
)
from .quat import Quaternion, QuaternionAlgebra


# ---------------------------------------------------------------------------
# Integer Hermite normal form (row style, pivots on the diagonal for
# full-rank square results)


def hnf_with_transform(mat, ncols):
    """Row HNF of an integer matrix.

    Returns (rows, transform, rank) where transform is unimodular,
    transform * mat == rows, the first `rank` rows are the HNF basis and
    the remaining rows are zero (their transform rows span the left
    kernel of mat).
    """
    rows = [list(r) for r in mat]
    n = len(rows)
    trans = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r0 = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r0, n) if rows[i][c] != 0]
            if not nz:
                piv = None
                break
            if len(nz) == 1:
                piv = nz[0]
                break
            p = min(nz, key=lambda i: abs(rows[i][c]))
            for i in nz:
                if i == p:
                    continue
                q = rows[i][c] // rows[p][c]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[p])]
                    trans[i] = [a - q * b for a, b in zip(trans[i], trans[p])]
        if piv is None:
            continue
        rows[r0], rows[piv] = rows[piv], rows[r0]
        trans[r0], trans[piv] = trans[piv], trans[r0]
        if rows[r0][c] < 0:
            rows[r0] = [-v for v in rows[r0]]
            trans[r0] = [-v for v in trans[r0]]
        for i in range(r0):
            q = rows[i][c] // rows[r0][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r0])]
                trans[i] = [a - q * b for a, b in zip(trans[i], trans[r0])]
        r0 += 1
    return rows, trans, r0


def zhnf(mat, ncols):
    """Row HNF without the transform; returns (rows, rank)."""
    rows, _, rank = hnf_with_transform(mat, ncols)
    return rows, rank


# ---------------------------------------------------------------------------
# HNF over the Euclidean ring O_K (entries are FieldElements)


def okhnf(mat, ncols):
    """Row echelon form over O_K with unit-normalized canonical pivots.

    Both quadratic rings are norm-Euclidean for the nearest-integer
    quotient, so the remainder loop below terminates; over Q this is the
    ordinary integer HNF.  Returns (rows, rank).
    """
    rows = [list(r) for r in mat]
    n = len(rows)
    r0 = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r0, n) if rows[i][c]]
            if not nz:
                piv = None
                break
            if len(nz) == 1:
                piv = nz[0]
                break
            p = min(nz, key=lambda i: abs(rows[i][c].nm()))
            for i in nz:
                if i == p:
                    continue
                q = nearest_quotient(rows[i][c] / rows[p][c])
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[p])]
        if piv is None:
            continue
        rows[r0], rows[piv] = rows[piv], rows[r0]
        head = rows[r0][c]
        unit = head / canonical_associate(head)
        if unit != head.field.one:
            rows[r0] = [a / unit for a in rows[r0]]
        for i in range(r0):
            q = nearest_quotient(rows[i][c] / rows[r0][c])
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r0])]
        r0 += 1
    return rows, r0


# ---------------------------------------------------------------------------
# The Lattice type


def _gcd(x, y):
    while y:
        x, y = y, x % y
    return abs(x)


def _lcm(x, y):
    return x * y // _gcd(x, y)


class Lattice:
    """Immutable full-rank lattice; use canonicalize() to build one."""

    __slots__ = ("algebra", "mat", "den", "_ok_basis", "_zbasis")

    def __init__(self, algebra, mat, den):
        self.algebra = algebra
        self.mat = mat  # tuple of tuples of ints, canonical row HNF
        self.den = den  # positive int, gcd(mat entries, den) == 1
        self._ok_basis = None
        self._zbasis = None

    def __repr__(self):
        return f"<Lattice den={self.den} diag={[self.mat[r][r] for r in range(len(self.mat))]}>"

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.algebra == other.algebra
            and self.den == other.den
            and self.mat == other.mat
        )

    def __hash__(self):
        return hash((self.algebra, self.den, self.mat))

    def zbasis(self):
        """The 4d quaternions given by the HNF rows over the denominator."""
        if self._zbasis is None:
            den = self.den
            self._zbasis = tuple(
                self.algebra.from_vector([Fraction(v, den) for v in row])
                for row in self.mat
            )
        return self._zbasis

    def ok_basis(self):
        """A free O_K-basis (4 quaternions)."""
        if self._ok_basis is None:
            f = self.algebra.field
            if f.degree == 1:
                krows = [[f.element(v) for v in row] for row in self.mat]
            else:
                krows = [
                    [
                        FieldElement(
                            f, Fraction(row[2 * m]), Fraction(row[2 * m + 1])
                        )
                        for m in range(4)
                    ]
                    for row in self.mat
                ]
            rows, rank = okhnf(krows, 4)
            if rank != 4:
                raise RankDeficient("lattice is not full over O_K")
            den = f.element(self.den)
            self._ok_basis = tuple(
                Quaternion(self.algebra, *(c / den for c in rows[r]))
                for r in range(4)
            )
        return self._ok_basis

    def contains(self, q):
        if q.algebra != self.algebra:
            raise AlgebraMismatch("quaternion from a different algebra")
        w = [self.den * v for v in q.to_vector()]
        if any(v.denominator != 1 for v in w):
            return False
        w = [int(v) for v in w]
        n = len(w)
        for r in range(n):
            c, rem = divmod(w[r], self.mat[r][r])
            if rem:
                return False
            if c:
                w = [a - c * b for a, b in zip(w, self.mat[r])]
        return True

    def det_covolume(self):
        """det of the Z-basis matrix (a positive rational)."""
        d = 1
        for r in range(len(self.mat)):
            d *= self.mat[r][r]
        return Fraction(d, self.den ** len(self.mat))


def _from_rows(algebra, rows):
    """Canonical lattice from rational coordinate rows (must be full rank)."""
    n = algebra.dim
    den = 1
    for row in rows:
        for v in row:
            den = _lcm(den, Fraction(v).denominator)
    imat = [[int(v * den) for v in row] for row in rows]
    hnf, rank = zhnf(imat, n)
    if rank != n:
        raise RankDeficient(f"rank {rank} < {n}")
    hnf = hnf[:n]
    g = den
    for row in hnf:
        for v in row:
            g = _gcd(g, v)
    if g > 1:
        hnf = [[v // g for v in row] for row in hnf]
        den //= g
    return Lattice(algebra, tuple(tuple(row) for row in hnf), den)


def canonicalize(generators, algebra=None):
    """The O_K-lattice spanned by the given quaternions."""
    gens = list(generators)
    if algebra is None:
        if not gens:
            raise RankDeficient("no generators")
        algebra = gens[0].algebra
    f = algebra.field
    rows = []
    for g in gens:
        if g.algebra != algebra:
            raise AlgebraMismatch("generators from different algebras")
        rows.append(g.to_vector())
        if f.degree == 2:
            rows.append((f.omega * g).to_vector())
    return _from_rows(algebra, rows)


# ---------------------------------------------------------------------------
# Arithmetic on lattices


def lattice_sum(L, M):
    _same(L, M)
    den = _lcm(L.den, M.den)
    rows = [[Fraction(v * (den // L.den), den) for v in row] for row in L.mat]
    rows += [[Fraction(v * (den // M.den), den) for v in row] for row in M.mat]
    return _from_rows(L.algebra, rows)


def lattice_product(L, M):
    _same(L, M)
    gens = [a * b for a in L.ok_basis() for b in M.ok_basis()]
    return canonicalize(gens, L.algebra)


def scale(x, L, side="left"):
    """x*L or L*x for a quaternion x, or x*L for a base-field scalar."""
    if isinstance(x, Quaternion):
        if side == "left":
            gens = [x * h for h in L.ok_basis()]
        elif side == "right":
            gens = [h * x for h in L.ok_basis()]
        else:
            raise ValueError(f"side must be left or right, got {side!r}")
    else:
        if not isinstance(x, FieldElement):
            x = L.algebra.field.element(x)
        gens = [x * h for h in L.ok_basis()]
    return canonicalize(gens, L.algebra)


def lattice_intersection(L, M):
    _same(L, M)
    n = L.algebra.dim
    den = _lcm(L.den, M.den)
    amat = [[v * (den // L.den) for v in row] for row in L.mat]
    bmat = [[v * (den // M.den) for v in row] for row in M.mat]
    _, trans, rank = hnf_with_transform(amat + bmat, n)
    # Kernel rows (u, v) satisfy u*A == -v*B, so u*A lies in both lattices.
    rows = []
    for u in trans[rank:]:
        rows.append(
            [
                Fraction(sum(u[i] * amat[i][c] for i in range(n)), den)
                for c in range(n)
            ]
        )
    return _from_rows(L.algebra, rows)


def contains(L, q):
    return L.contains(q)


def _same(L, M):
    if L.algebra != M.algebra:
        raise AlgebraMismatch("lattices live in different algebras")


# ---------------------------------------------------------------------------
# Colon lattices and orders


def colon_right(L, M):
    """{x : M*x is contained in L} (the right conductor of M into L)."""
    _same(L, M)
    out = None
    for h in M.ok_basis():
        piece = scale(h.inverse(), L, "left")
        out = piece if out is None else lattice_intersection(out, piece)
    return out


def colon_left(L, M):
    """{x : x*M is contained in L}."""
    _same(L, M)
    out = None
    for h in M.ok_basis():
        piece = scale(h.inverse(), L, "right")
        out = piece if out is None else lattice_intersection(out, piece)
    return out


def right_order(L):
    return colon_right(L, L)


def left_order(L):
    return colon_left(L, L)


def is_order(L):
    if not L.contains(L.algebra.one):
        return False
    basis = L.ok_basis()
    return all(L.contains(a * b) for a in basis for b in basis)


# ---------------------------------------------------------------------------
# Indices and discriminants


def _kdet(rows):
    """Determinant of a 4x4 matrix over the base field."""
    m = [list(r) for r in rows]
    field = m[0][0].field
    det = field.one
    for c in range(4):
        piv = next((r for r in range(c, 4) if m[r][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        for r in range(c + 1, 4):
            fac = m[r][c] / m[c][c]
            if fac:
                m[r] = [a - fac * b for a, b in zip(m[r], m[c])]
    return det


def _ok_coord_matrix(L):
    return [list(h.coords()) for h in L.ok_basis()]


def index_z(L, M):
    """The Z-index [L:M] as a positive rational (integer when M <= L)."""
    _same(L, M)
    return M.det_covolume() / L.det_covolume()


def index_ideal(L, M):
    """Totally positive generator of the O_K-index ideal [L:M]_{O_K}."""
    _same(L, M)
    det_l = _kdet(_ok_coord_matrix(L))
    det_m = _kdet(_ok_coord_matrix(M))
    gen = canonical_associate(det_m / det_l)
    if all(L.contains(h) for h in M.ok_basis()):
        assert abs(gen.nm()) == index_z(L, M), "index generator norm mismatch"
    return gen


def reduced_discriminant(L):
    """Generator of the ideal of trd((x_a x_b - x_b x_a) * conj(x_c))."""
    basis = L.ok_basis()
    field = L.algebra.field
    g = field.zero
    for a in range(4):
        for b in range(a + 1, 4):
            comm = basis[a] * basis[b] - basis[b] * basis[a]
            for c in range(4):
                v = (comm * basis[c].conj()).trd()
                if v:
                    g = v if not g else euclid_gcd(g, v)
    return canonical_associate(g)
