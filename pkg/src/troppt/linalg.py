"""Exact integer/rational linear algebra: Hermite and Smith normal forms,
kernels, determinants.  Everything works on lists of tuples; no floats."""

from fractions import Fraction
from math import gcd


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def vec_dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vec_is_zero(u):
    return all(a == 0 for a in u)


def primitive(v):
    """Scale a rational vector to a primitive integer vector (same ray)."""
    v = tuple(Fraction(a) for a in v)
    if all(a == 0 for a in v):
        return tuple(0 for _ in v)
    den = 1
    for a in v:
        den = den * a.denominator // gcd(den, a.denominator)
    w = [int(a * den) for a in v]
    g = 0
    for a in w:
        g = gcd(g, a)
    return tuple(a // g for a in w)


def mat_mul_vec(m, v):
    return tuple(vec_dot(row, v) for row in m)


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(vec_dot(row, col) for col in bt) for row in a)


def transpose(m):
    return tuple(zip(*m))


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def rank(rows):
    """Rank of a matrix with rational entries, by fraction Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(rows):
    """Exact determinant of a square rational matrix."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * d


def solve(rows, target):
    """One rational solution x of rows^T-style system  M x = target, or None.

    ``rows`` is a list of equations (each a coefficient tuple)."""
    m = [[Fraction(x) for x in row] + [Fraction(t)]
         for row, t in zip(rows, target)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [a / m[r][c] for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return tuple(x)


def kernel_basis(rows):
    """Basis of the rational kernel {x : M x = 0}, as integer primitive vectors."""
    ncols = len(rows[0]) if rows else 0
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [a / m[r][c] for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][f]
        basis.append(primitive(v))
    return basis


def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix.

    Returns (H, U) with U unimodular and U*M = H; H is upper staircase with
    positive pivots."""
    m = [list(map(int, row)) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    u = [list(row) for row in identity(nrows)]
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, nrows) if m[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, nrows):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if r < nrows and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-a for a in m[r]]
                u[r] = [-a for a in u[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
            r += 1
            if r == nrows:
                break
    return tuple(tuple(row) for row in m), tuple(tuple(row) for row in u)


def _xgcd(a, b):
    """g, x, y with x*a + y*b = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def smith_invariants(rows):
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    m = [list(map(int, row)) for row in rows]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    invariants = []
    s = 0
    while s < min(nrows, ncols):
        piv = None
        for i in range(s, nrows):
            for j in range(s, ncols):
                if m[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        m[s], m[i0] = m[i0], m[s]
        for row in m:
            row[s], row[j0] = row[j0], row[s]
        while True:
            # clear column s with unimodular row ops (pivot becomes the gcd)
            for i in range(s + 1, nrows):
                if m[i][s] != 0:
                    a, b = m[s][s], m[i][s]
                    if b % a == 0:
                        q = b // a
                        m[i] = [p - q * r for p, r in zip(m[i], m[s])]
                        continue
                    g, x, y = _xgcd(a, b)
                    rs = [x * p + y * q for p, q in zip(m[s], m[i])]
                    ri = [(-b // g) * p + (a // g) * q for p, q in zip(m[s], m[i])]
                    m[s], m[i] = rs, ri
            # clear row s with unimodular column ops
            for j in range(s + 1, ncols):
                if m[s][j] != 0:
                    a, b = m[s][s], m[s][j]
                    if b % a == 0:
                        q = b // a
                        for row in m:
                            row[j] -= q * row[s]
                        continue
                    g, x, y = _xgcd(a, b)
                    for row in m:
                        cs, cj = row[s], row[j]
                        row[s] = x * cs + y * cj
                        row[j] = (-b // g) * cs + (a // g) * cj
            if all(m[i][s] == 0 for i in range(s + 1, nrows)):
                # row s is clean by construction; enforce divisibility
                bad = None
                for i in range(s + 1, nrows):
                    for j in range(s + 1, ncols):
                        if m[i][j] % m[s][s] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                m[s] = [p + q for p, q in zip(m[s], m[bad])]
        invariants.append(abs(m[s][s]))
        s += 1
    return invariants


def integer_kernel(rows):
    """Basis of the saturated integer kernel {x in Z^n : M x = 0}."""
    ncols = len(rows[0]) if rows else 0
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(ncols))
                for i in range(ncols)]
    transpose_m = [tuple(row[i] for row in rows) for i in range(ncols)]
    h, u = hermite_normal_form(transpose_m)
    out = []
    for hrow, urow in zip(h, u):
        if all(x == 0 for x in hrow):
            out.append(tuple(urow))
    return out


def lattice_index(ambient_rank, generators):
    """Index [Z^n : <generators>], or the string "infinite" if rank-deficient.

    Raises ValueError on dimension mismatch."""
    for g in generators:
        if len(g) != ambient_rank:
            raise ValueError("rank mismatch")
    inv = smith_invariants(list(generators))
    if len(inv) < ambient_rank:
        return "infinite"
    idx = 1
    for d in inv:
        idx *= d
    return idx


def saturation_index(generators):
    """Index of <generators> inside its rational saturation in Z^n.

    For a full-rank-in-their-span set this is prod of invariant factors."""
    inv = smith_invariants(list(generators))
    idx = 1
    for d in inv:
        idx *= d
    return idx
