"""Exact lattice-point enumeration driven by the trace form.

All arithmetic is rational; vector ranges come from an exact Cholesky
decomposition of the positive-definite form v -> Tr_{K/Q}(nrd(sum v_r b_r))
with integer square roots, never floating point.
"""

from fractions import Fraction
from math import isqrt

from .errors import (
    NoGeneratorFound,
    NotDefinite,
    PreconditionViolated,
)
from .fields import (
    FieldElement,
    canonical_associate,
    euclid_gcd,
    factor,
    sqrt_totally_positive_unit,
)
from .lattices import Lattice, canonicalize, index_ideal, scale

# ---------------------------------------------------------------------------
# Trace form and exact Cholesky data


def trace_form(L: Lattice):
    """Gram matrix of Tr(nrd) on the Z-basis, as Fractions."""
    basis = L.zbasis()
    n = len(basis)
    gram = [[Fraction(0)] * n for _ in range(n)]
    for r in range(n):
        gram[r][r] = Fraction(basis[r].nrd().tr())
        for s in range(r + 1, n):
            v = Fraction((basis[r] * basis[s].conj()).trd().tr(), 2)
            gram[r][s] = v
            gram[s][r] = v
    return gram


def cholesky(gram):
    """Rational Cholesky data q with Q(v) = sum q[i][i](v_i + sum_{j>i} q[i][j] v_j)^2.

    Raises NotDefinite unless the form is positive definite.
    """
    n = len(gram)
    q = [[Fraction(v) for v in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise NotDefinite("trace form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] = q[k][l] - q[k][i] * q[i][l]
    return q


def _lcm(x, y):
    g = x
    b = y
    while b:
        g, b = b, g % b
    return x // abs(g) * y


def _int_cholesky(chol):
    """Clear denominators: q[i][i] -> diag[i]/M, q[i][j] -> off[i][j]/M.

    With this scaling M^3 * Q(v) = sum diag[i]*(M*v_i + C_i)^2 where
    C_i = sum off[i][j]*v_j over j > i; everything is an integer.
    """
    n = len(chol)
    m = 1
    for i in range(n):
        m = _lcm(m, chol[i][i].denominator)
        for j in range(i + 1, n):
            m = _lcm(m, chol[i][j].denominator)
    diag = [int(chol[i][i] * m) for i in range(n)]
    off = [[int(chol[i][j] * m) if j > i else 0 for j in range(n)] for i in range(n)]
    return diag, off, m


def _enumerate(chol, bound, exact, top_values=None):
    """Integer vectors v with Q(v) <= bound (or == bound when exact).

    top_values optionally restricts the outermost coordinate (the work
    split used for parallel runs).
    """
    n = len(chol)
    diag, off, m = _int_cholesky(chol)
    scaled = Fraction(bound) * m**3
    if exact and scaled.denominator != 1:
        return []
    budget = scaled.numerator // scaled.denominator
    if budget < 0:
        return []
    out = []
    v = [0] * n

    def rec(i, spent):
        center = sum(off[i][j] * v[j] for j in range(i + 1, n))
        left = budget - spent
        d = diag[i]
        if i == 0 and exact:
            if left % d:
                return
            t = left // d
            r = isqrt(t)
            if r * r != t:
                return
            for num in {-center - r, -center + r}:
                if num % m == 0:
                    v[0] = num // m
                    out.append(tuple(v))
            return
        r = isqrt(left // d)
        lo = -((center + r) // m)  # ceil((-center - r) / m)
        hi = (r - center) // m  # floor((-center + r) / m)
        if i == n - 1 and top_values is not None:
            values = [t for t in range(lo, hi + 1) if t in top_values]
        else:
            values = range(lo, hi + 1)
        for val in values:
            e = m * val + center
            term = d * e * e
            if term > left:
                continue
            if i == 0:
                if not exact:
                    v[0] = val
                    out.append(tuple(v))
            else:
                v[i] = val
                rec(i - 1, spent + term)
        v[i] = 0

    rec(n - 1, 0)
    return out


def solve_target(gram, bound):
    """All integer vectors with Q(v) exactly = bound."""
    return _enumerate(cholesky(gram), Fraction(bound), True)


def solve_bounded(gram, bound):
    """All integer vectors with Q(v) <= bound (including 0)."""
    return _enumerate(cholesky(gram), Fraction(bound), False)


# ---------------------------------------------------------------------------
# Representations and unit groups


def _vector_to_quaternion(L, v):
    n = len(v)
    mat = L.mat
    den = L.den
    coords = [
        Fraction(sum(v[r] * mat[r][c] for r in range(n)), den)
        for c in range(n)
    ]
    return L.algebra.from_vector(coords)


def _nrd_int_form(L):
    """(mat_a, mat_b, den) with nrd(sum v_r b_r) = (v A v^T + w * v B v^T)/den."""
    basis = L.zbasis()
    n = len(basis)
    half_gram = [
        [(basis[r] * basis[s].conj()).trd() for s in range(n)] for r in range(n)
    ]
    den = 1
    for row in half_gram:
        for e in row:
            den = _lcm(den, Fraction(e.a, 2).denominator)
            den = _lcm(den, Fraction(e.b, 2).denominator)
    mat_a = [[int(Fraction(e.a, 2) * den) for e in row] for row in half_gram]
    mat_b = [[int(Fraction(e.b, 2) * den) for e in row] for row in half_gram]
    return mat_a, mat_b, den


def _nrd_int_eval(form, v):
    mat_a, mat_b, _ = form
    n = len(v)
    val_a = 0
    val_b = 0
    for r in range(n):
        vr = v[r]
        if vr:
            row_a = mat_a[r]
            row_b = mat_b[r]
            val_a += vr * sum(row_a[s] * v[s] for s in range(n))
            val_b += vr * sum(row_b[s] * v[s] for s in range(n))
    return val_a, val_b


def _sorted_quats(quats):
    return sorted(quats, key=lambda q: q.to_vector())


_UNITS_CACHE = {}


def units1(O: Lattice):
    """All elements of reduced norm 1 (a finite group in a definite algebra)."""
    cached = _UNITS_CACHE.get(O)
    if cached is not None:
        return cached
    field = O.algebra.field
    one = field.one
    found = []
    for v in solve_target(trace_form(O), field.degree):
        q = _vector_to_quaternion(O, v)
        if q.nrd() == one:
            found.append(q)
    units = tuple(_sorted_quats(found))
    keys = {u.coords() for u in units}
    assert O.algebra.one.coords() in keys and len(units) % 2 == 0
    assert all((u1 * u2).coords() in keys for u1 in units for u2 in units)
    _UNITS_CACHE[O] = units
    return units


def representations(O: Lattice, alpha, jobs=1):
    """All q in O with nrd(q) = alpha, sorted by coordinate vector."""
    field = O.algebra.field
    if not isinstance(alpha, FieldElement):
        alpha = field.element(alpha)
    if not alpha:
        return [O.algebra.zero]
    if not alpha.is_totally_positive():
        return []
    if alpha.is_unit():
        root = sqrt_totally_positive_unit(alpha)
        return _sorted_quats([u * root for u in units1(O)])
    gram = trace_form(O)
    target = Fraction(alpha.tr())
    if jobs > 1:
        vecs = _parallel_solve_target(gram, target, jobs)
    else:
        vecs = solve_target(gram, target)
    form = _nrd_int_form(O)
    den = form[2]
    want = (alpha.a * den, alpha.b * den)
    if want[0].denominator != 1 or want[1].denominator != 1:
        return []
    want = (int(want[0]), int(want[1]))
    found = [
        _vector_to_quaternion(O, v)
        for v in vecs
        if _nrd_int_eval(form, v) == want
    ]
    return _sorted_quats(found)


def norm_counts(O: Lattice, trace_bound):
    """Map nrd-value -> count over all q in O with Tr(nrd(q)) <= trace_bound.

    One bounded enumeration pass; nrd is evaluated through integer Gram
    matrices of its bilinear form, which keeps the loop in plain ints.
    """
    field = O.algebra.field
    form = _nrd_int_form(O)
    den = form[2]
    counts = {}
    for v in solve_bounded(trace_form(O), Fraction(trace_bound)):
        key = _nrd_int_eval(form, v)
        counts[key] = counts.get(key, 0) + 1
    return {
        FieldElement(field, Fraction(a, den), Fraction(b, den)): c
        for (a, b), c in counts.items()
    }


def _solve_chunk(args):
    chol, bound, chunk = args
    return _enumerate(chol, bound, True, top_values=frozenset(chunk))


def _parallel_solve_target(gram, bound, jobs):
    from concurrent.futures import ProcessPoolExecutor

    chol = cholesky(gram)
    n = len(chol)
    cap = bound / chol[n - 1][n - 1]
    radius = isqrt(cap.numerator // cap.denominator) if cap >= 0 else -1
    top = list(range(-radius, radius + 1))
    chunks = [top[w::jobs] for w in range(jobs) if top[w::jobs]]
    vecs = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(
            _solve_chunk, [(chol, bound, c) for c in chunks]
        ):
            vecs.extend(part)
    return vecs


# ---------------------------------------------------------------------------
# Principal generators and coprime splitting


def principal_generator(I: Lattice, H: Lattice):
    """g with H*g = I, for a left ideal I of a class-number-one order H."""
    idx = index_ideal(H, I)
    fac = factor(idx)
    if any(e % 2 for _, e in fac.pairs):
        raise NoGeneratorFound("index ideal is not a square")
    gamma = H.algebra.field.one
    for pi, e in fac.pairs:
        gamma = gamma * pi ** (e // 2)
    gamma = canonical_associate(gamma)
    for g in representations(I, gamma):
        if canonicalize([h * g for h in H.ok_basis()], H.algebra) == I:
            return g
    raise NoGeneratorFound("no generator with the canonical reduced norm")


def coprime_split(q, H: Lattice, parts):
    """Factor q = a_1 ... a_n with nrd(a_i) ~ parts[i], built right to left."""
    field = H.algebra.field
    parts = [p if not isinstance(p, int) else field.element(p) for p in parts]
    total = field.one
    for p in parts:
        if not p.is_totally_positive():
            raise PreconditionViolated("parts must be totally positive")
        total = total * p
    ratio = q.nrd() / total
    if not (ratio.is_unit() and ratio.is_totally_positive()):
        raise PreconditionViolated("nrd(q) != product of parts up to a unit square")
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            g = euclid_gcd(parts[a], parts[b])
            if not g.is_unit():
                raise PreconditionViolated("parts are not pairwise coprime")
    factors = []
    rest = q
    for part in reversed(parts[1:]):
        gens = [h * rest for h in H.ok_basis()]
        gens += [h * part for h in H.ok_basis()]
        ideal = canonicalize(gens, H.algebra)
        g = principal_generator(ideal, H)
        unit = g.nrd() / part
        if not (unit.is_unit() and unit.is_totally_positive()):
            raise PreconditionViolated("gcd norm does not match the part")
        g = g * (field.one / sqrt_totally_positive_unit(unit))
        rest = rest * g.inverse()
        if not H.contains(rest):
            raise PreconditionViolated("split left a non-integral cofactor")
        factors.append(g)
    factors.append(rest)
    factors.reverse()
    prod = H.algebra.one
    for f in factors:
        prod = prod * f
    assert prod == q
    return factors


def unit_migration_equivalent(f1, f2, H: Lattice) -> bool:
    """Whether f2 arises from f1 by migrating units of H through the factors."""
    if len(f1) != len(f2):
        return False
    p1 = H.algebra.one
    p2 = H.algebra.one
    for a, b in zip(f1, f2):
        p1 = p1 * a
        p2 = p2 * b
    if p1 != p2:
        return False
    unit_keys = {u.coords() for u in units1(H)}
    carried = H.algebra.one
    for idx in range(len(f1) - 1):
        a = carried * f1[idx]
        b = f2[idx]
        # b = a * u^{-1}, so u = b^{-1} * a is forced.
        u = b.inverse() * a
        if u.coords() not in unit_keys:
            return False
        carried = u
    return carried * f1[-1] == f2[-1]


# ---------------------------------------------------------------------------
# Orbit profiles


def orbit_profile(G: Lattice, H: Lattice, alpha):
    """Sizes of (H^1 q) intersected with G, one entry per left H^1-orbit."""
    reps = representations(H, alpha)
    units = units1(H)
    all_keys = {q.coords() for q in reps}
    seen = set()
    profile = []
    for q in reps:
        if q.coords() in seen:
            continue
        orbit = [u * q for u in units]
        for x in orbit:
            key = x.coords()
            assert key in all_keys
            seen.add(key)
        profile.append(sum(1 for x in orbit if G.contains(x)))
    return sorted(profile)
