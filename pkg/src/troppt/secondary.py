"""Regular subdivisions of a marked lattice polytope, secondary cones, and
the tropical curves dual to it.

Lifts live in N = Z^Delta / constants; we fix coordinates once and for all by
basing at point 0, so u_i = phi(p_i) - phi(p_0) for i = 1..m.  The min-plus
convention is used throughout: the tropical polynomial is
min over (i,j) of (i x + j y + phi(i,j))."""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd

from .cones import Cone
from .fans import Fan
from .linalg import solve, rank, primitive, vec_dot, vec_sub
from .polyhedra import feasible


class BudgetError(RuntimeError):
    """Raised when an enumeration guard is exceeded."""


def _hull_vertices_2d(points):
    """Convex hull vertices (counterclockwise), monotone chain, exact."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def lattice_length(a, b):
    return gcd(abs(a[0] - b[0]), abs(a[1] - b[1])) if len(a) == 2 \
        else abs(a[0] - b[0])


class LatticePolytope:
    """Marked lattice point configuration Delta with its convex hull."""

    def __init__(self, points):
        pts = []
        for p in points:
            p = tuple(int(x) for x in p)
            pts.append(p)
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        self.points = tuple(pts)
        self.dim = 2 if len(pts[0]) == 2 else 1
        if self.dim == 1:
            lo = min(p[0] for p in pts)
            hi = max(p[0] for p in pts)
            self.hull = (lo, hi)
        else:
            self.hull = tuple(_hull_vertices_2d(pts))
            if len(self.hull) < 3:
                self.dim = 1

    @property
    def m(self):
        """Rank of N = Z^Delta / constants."""
        return len(self.points) - 1

    def index(self, p):
        return self.points.index(tuple(p))

    @cached_property
    def hull_edges(self):
        """1-dim hull faces: list of (start, end, inward_normal, face_points).

        face_points are the configuration points lying on the face, ordered."""
        if self.dim == 1:
            return []
        vs = list(self.hull)
        out = []
        k = len(vs)
        for i in range(k):
            a, b = vs[i], vs[(i + 1) % k]
            d = (b[0] - a[0], b[1] - a[1])
            normal = primitive((-d[1], d[0]))  # CCW order: this points inward
            on_face = [p for p in self.points
                       if (p[0] - a[0]) * d[1] == (p[1] - a[1]) * d[0]
                       and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                       and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])]
            on_face.sort(key=lambda p: (p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1])
            out.append((a, b, normal, tuple(on_face)))
        return out

    def interior_points(self):
        if self.dim == 1:
            return tuple(p for p in self.points if self.hull[0] < p[0] < self.hull[1])
        boundary = set()
        for a, b, _, face in self.hull_edges:
            boundary.update(face)
        return tuple(p for p in self.points if p not in boundary)

    # ---- lift-space coordinate conventions -------------------------------

    def embed_lift(self, values):
        """Values per point (aligned with self.points) -> u-coordinates."""
        v0 = Fraction(values[0])
        return tuple(Fraction(v) - v0 for v in values[1:])

    def lift_values(self, u):
        """u-coordinates -> canonical values with minimum 0."""
        vals = [Fraction(0)] + [Fraction(x) for x in u]
        lo = min(vals)
        return tuple(v - lo for v in vals)

    def diff_functional(self, i, j):
        """Covector of phi_i - phi_j in u-coordinates."""
        row = [0] * self.m
        if i > 0:
            row[i - 1] += 1
        if j > 0:
            row[j - 1] -= 1
        return tuple(row)

    def monomial_vector(self, a, b=0):
        """u-vector of the lift (i,j) -> a*i + b*j (the functions e_x, e_y)."""
        p0 = self.points[0]
        if self.dim == 1 and len(p0) == 1:
            return tuple(a * (p[0] - p0[0]) for p in self.points[1:])
        return tuple(a * (p[0] - p0[0]) + b * (p[1] - p0[1])
                     for p in self.points[1:])

    def above_functional(self, cell, q_idx):
        """Integer covector L with L(u) proportional to phi_q - h_cell(q).

        h_cell is the affine interpolation of the lift over the cell."""
        cell = sorted(cell)
        pts = [self.points[i] for i in cell]
        q = self.points[q_idx]
        base = self._affine_basis(pts)
        bpts = [pts[i] for i in base]
        bidx = [cell[i] for i in base]
        lam = _barycentric(bpts, q)
        den = 1
        for l in lam:
            den = den * l.denominator // gcd(den, l.denominator)
        row = [0] * self.m
        if q_idx > 0:
            row[q_idx - 1] += den
        for l, i in zip(lam, bidx):
            c = int(l * den)
            if i > 0:
                row[i - 1] -= c
        return tuple(row)

    def _affine_basis(self, pts):
        """Indices into pts of an affinely independent spanning subset."""
        need = self.dim + 1 if self.dim == 2 else 2
        for combo in combinations(range(len(pts)), min(need, len(pts))):
            sel = [pts[i] for i in combo]
            if _affinely_independent(sel):
                return list(combo)
        raise ValueError("degenerate cell")


def _affinely_independent(pts):
    if len(pts) == 1:
        return True
    base = pts[0]
    rows = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    return rank(rows) == len(rows)


def _barycentric(basis_pts, q):
    """q as an affine combination of basis_pts (exact)."""
    k = len(basis_pts)
    cols = []
    for p in basis_pts:
        cols.append(tuple(p) + (1,))
    rows = list(zip(*cols))
    target = tuple(q) + (1,)
    sol = solve(rows, target)
    if sol is None:
        raise ValueError("point not in affine span")
    return sol


@dataclass(frozen=True)
class Subdivision:
    """Regular polyhedral subdivision with marked cells (point-index sets)."""
    polytope: LatticePolytope
    cells: tuple  # tuple of frozensets of point indices

    def __hash__(self):
        return hash((id(self.polytope), self.cells))

    @staticmethod
    def make(polytope, cells):
        canon = tuple(sorted((frozenset(c) for c in cells),
                             key=lambda s: tuple(sorted(s))))
        return Subdivision(polytope, canon)

    @cached_property
    def walls(self):
        """Interior walls: (cell_i, cell_j, endpoints, lattice length)."""
        pts = self.polytope.points
        out = []
        for i, j in combinations(range(len(self.cells)), 2):
            shared = self._shared_face(i, j)
            if shared is not None:
                a, b = shared
                out.append((i, j, (a, b), lattice_length(a, b)))
        return out

    def _cell_hull(self, i):
        pts = [self.polytope.points[k] for k in self.cells[i]]
        if self.polytope.dim == 1:
            lo = min(p[0] for p in pts)
            hi = max(p[0] for p in pts)
            return [(lo,), (hi,)]
        return _hull_vertices_2d(pts)

    def _shared_face(self, i, j):
        """Endpoints of the shared wall of cells i, j, or None.

        For 1-dim configurations the wall is a point, returned twice."""
        if self.polytope.dim == 1:
            hi = self._cell_hull(i)
            hj = self._cell_hull(j)
            common = set(hi) & set(hj)
            if len(common) == 1:
                p = common.pop()
                return (p, p)
            return None
        ei = _cell_edges(self._cell_hull(i))
        ej = _cell_edges(self._cell_hull(j))
        for (a, b) in ei:
            if (b, a) in ej or (a, b) in ej:
                return (a, b)
        return None

    @cached_property
    def boundary_walls(self):
        """Per cell: its hull edges lying on the boundary of |Delta|."""
        out = []
        interior = set()
        for _, _, (a, b), _ in self.walls:
            interior.add(frozenset((a, b)))
        for i in range(len(self.cells)):
            if self.polytope.dim == 1:
                continue
            for (a, b) in _cell_edges(self._cell_hull(i)):
                if frozenset((a, b)) not in interior:
                    out.append((i, (a, b), lattice_length(a, b)))
        return out

    def dual_edge_weights(self):
        return {frozenset((a, b)): w for _, _, (a, b), w in self.walls}

    def is_trivial(self):
        return len(self.cells) == 1

    def omitted_points(self):
        used = set()
        for c in self.cells:
            used |= set(c)
        return tuple(i for i in range(len(self.polytope.points))
                     if i not in used)


def _cell_edges(hull_ccw):
    k = len(hull_ccw)
    return [(hull_ccw[i], hull_ccw[(i + 1) % k]) for i in range(k)]


def induced_subdivision(polytope, values):
    """Regular subdivision from the lower convex hull of the lifted points."""
    pts = polytope.points
    vals = [Fraction(v) for v in values]
    n = len(pts)
    cells = set()
    if polytope.dim == 1:
        # lower hull of points on a line
        order = sorted(range(n), key=lambda i: pts[i][0])
        xs = [pts[i][0] for i in order]
        ys = [vals[i] for i in order]
        hull = [0]
        for i in range(1, len(order)):
            while len(hull) >= 2:
                a, b = hull[-2], hull[-1]
                if (ys[b] - ys[a]) * (xs[i] - xs[b]) >= (ys[i] - ys[b]) * (xs[b] - xs[a]):
                    hull.pop()
                else:
                    break
            hull.append(i)
        for a, b in zip(hull, hull[1:]):
            cell = {order[k] for k in range(len(order))
                    if xs[a] <= xs[k] <= xs[b]
                    and (ys[k] - ys[a]) * (xs[b] - xs[a]) == (ys[b] - ys[a]) * (xs[k] - xs[a])}
            cells.add(frozenset(cell))
        return Subdivision.make(polytope, cells)

    for combo in combinations(range(n), 3):
        sel = [pts[i] for i in combo]
        if not _affinely_independent(sel):
            continue
        # affine h with h(p_i) = v_i on the triple
        rows = [(p[0], p[1], 1) for p in sel]
        coeffs = solve(rows, tuple(vals[i] for i in combo))
        if coeffs is None:
            continue
        a, b, c = coeffs
        if any(a * p[0] + b * p[1] + c > vals[i] for i, p in enumerate(pts)):
            continue
        tight = frozenset(i for i, p in enumerate(pts)
                          if a * p[0] + b * p[1] + c == vals[i])
        cells.add(tight)
    # keep maximal tight sets only (each is one lower facet)
    maximal = [c for c in cells if not any(c < d for d in cells)]
    return Subdivision.make(polytope, maximal)


def secondary_raw_system(polytope, subdivision):
    """(equalities, inequalities) cutting out the closed secondary cone."""
    eqs = []
    ineqs = []
    cell_list = [sorted(c) for c in subdivision.cells]
    for cell in cell_list:
        pts = [polytope.points[i] for i in cell]
        base = polytope._affine_basis(pts)
        basis_idx = [cell[i] for i in base]
        for i in cell:
            if i not in basis_idx:
                eqs.append(polytope.above_functional(basis_idx, i))
    for ci, cj, (a, b), _ in subdivision.walls:
        other = next(iter(set(subdivision.cells[cj]) -
                          set(subdivision.cells[ci])), None)
        if other is None:
            continue
        ineqs.append(polytope.above_functional(sorted(subdivision.cells[ci]), other))
    for q in subdivision.omitted_points():
        qpt = polytope.points[q]
        for k, cell in enumerate(cell_list):
            if _cell_contains_point(subdivision, k, qpt):
                ineqs.append(polytope.above_functional(cell, q))
                break
        else:
            raise ValueError("invalid cell complex")
    return eqs, ineqs


def secondary_cone(polytope, subdivision):
    """Closed cone in N of lifts compatible with the given subdivision."""
    eqs = []
    ineqs = []
    cell_list = [sorted(c) for c in subdivision.cells]
    for cell in cell_list:
        pts = [polytope.points[i] for i in cell]
        base = polytope._affine_basis(pts)
        basis_idx = [cell[i] for i in base]
        for i in cell:
            if i not in basis_idx:
                eqs.append(polytope.above_functional(basis_idx, i))
    for ci, cj, (a, b), _ in subdivision.walls:
        other = next(iter(set(subdivision.cells[cj]) -
                          set(subdivision.cells[ci])), None)
        if other is None:
            continue
        ineqs.append(polytope.above_functional(sorted(subdivision.cells[ci]), other))
    # omitted points lie above the hull
    for q in subdivision.omitted_points():
        qpt = polytope.points[q]
        for k, cell in enumerate(cell_list):
            if _cell_contains_point(subdivision, k, qpt):
                ineqs.append(polytope.above_functional(cell, q))
                break
        else:
            raise ValueError("invalid cell complex")
    return Cone.from_constraints(polytope.m, eqs, ineqs)


def _cell_contains_point(subdivision, k, q):
    hull = subdivision._cell_hull(k)
    if subdivision.polytope.dim == 1:
        return hull[0][0] <= q[0] <= hull[1][0]
    edges = _cell_edges(hull)
    for a, b in edges:
        cr = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0])
        if cr < 0:
            return False
    return True


def _secondary_open_system(polytope, subdivision):
    """Strict system whose feasibility certifies regularity of the subdivision."""
    eqs = []
    strict = []
    cell_list = [sorted(c) for c in subdivision.cells]
    for cell in cell_list:
        pts = [polytope.points[i] for i in cell]
        base = polytope._affine_basis(pts)
        basis_idx = [cell[i] for i in base]
        for i in cell:
            if i not in basis_idx:
                eqs.append(polytope.above_functional(basis_idx, i))
    for ci, cj, _, _ in subdivision.walls:
        other = next(iter(set(subdivision.cells[cj]) - set(subdivision.cells[ci])), None)
        if other is not None:
            strict.append(polytope.above_functional(sorted(subdivision.cells[ci]), other))
    for q in subdivision.omitted_points():
        qpt = polytope.points[q]
        for k, cell in enumerate(cell_list):
            if _cell_contains_point(subdivision, k, qpt):
                strict.append(polytope.above_functional(cell, q))
                break
        else:
            return None
    cons = []
    for e in eqs:
        cons.append((e, 0, False))
        cons.append((tuple(-x for x in e), 0, False))
    for s in strict:
        cons.append((s, 0, True))
    return cons


def is_regular(polytope, subdivision):
    sys = _secondary_open_system(polytope, subdivision)
    if sys is None:
        return False
    return feasible(sys, polytope.m)


def _candidate_cells(polytope):
    """All (vertex set, marking) pairs usable as subdivision cells."""
    pts = polytope.points
    n = len(pts)
    out = []
    if polytope.dim == 1:
        xs = sorted(p[0] for p in pts)
        for a, b in combinations(range(n), 2):
            lo, hi = sorted((pts[a][0], pts[b][0]))
            inside = [i for i in range(n) if lo < pts[i][0] < hi]
            for mark in _subsets(inside):
                out.append(frozenset({a, b} | set(mark)))
        return out
    for size in range(3, n + 1):
        for combo in combinations(range(n), size):
            sel = [pts[i] for i in combo]
            hull = _hull_vertices_2d(sel)
            if len(hull) != size or len(hull) < 3:
                continue
            # combo is in convex position; enumerate markings of inner points
            inside = [i for i in range(n) if i not in combo
                      and _point_in_polygon(pts[i], hull)]
            for mark in _subsets(inside):
                out.append(frozenset(set(combo) | set(mark)))
    return sorted(set(out), key=lambda s: tuple(sorted(s)))


def _subsets(items):
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def _point_in_polygon(q, hull_ccw):
    edges = _cell_edges(hull_ccw)
    return all((b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]) >= 0
               for a, b in edges)


def _primitive_steps(a, b):
    """Unit lattice steps along the segment from a to b."""
    d = (b[0] - a[0], b[1] - a[1])
    g = gcd(abs(d[0]), abs(d[1]))
    u = (d[0] // g, d[1] // g)
    return [((a[0] + k * u[0], a[1] + k * u[1]),
             (a[0] + (k + 1) * u[0], a[1] + (k + 1) * u[1]))
            for k in range(g)]


def enumerate_subdivisions(polytope, budget=20000):
    """All marked polyhedral subdivisions of the configuration (not nec. regular)."""
    pts = polytope.points
    if polytope.dim == 1:
        return _enumerate_subdivisions_1d(polytope)
    cells = _candidate_cells(polytope)
    hull = list(polytope.hull)
    cell_steps = []
    cell_hulls = []
    for c in cells:
        ch = _hull_vertices_2d([pts[i] for i in c])
        cell_hulls.append(ch)
        steps = []
        for a, b in _cell_edges(ch):
            steps.extend(_primitive_steps(a, b))
        cell_steps.append(frozenset(steps))
    cones = [Cone([p + (1,) for p in ch], ambient=3) for ch in cell_hulls]
    memo = {}

    def completions(frontier):
        """All cell-index sets tiling the region bounded by the frontier."""
        if not frontier:
            return {frozenset()}
        if frontier in memo:
            return memo[frontier]
        if len(memo) > budget:
            raise BudgetError("enumeration budget exceeded")
        out = set()
        edge = min(frontier)
        for i, steps in enumerate(cell_steps):
            if edge not in steps:
                continue
            new_frontier = set(frontier)
            ok = True
            for (u, v) in steps:
                if (u, v) in new_frontier:
                    new_frontier.remove((u, v))
                elif (v, u) in new_frontier:
                    ok = False
                    break
                else:
                    new_frontier.add((v, u))
            if not ok:
                continue
            for rest in completions(frozenset(new_frontier)):
                out.add(rest | {i})
        memo[frontier] = out
        return out

    frontier0 = set()
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        frontier0.update(_primitive_steps(a, b))
    results = completions(frozenset(frontier0))

    out = []
    seen_cellsets = set()
    for placed in results:
        placed = sorted(placed)
        # the frontier bookkeeping does not see interior overlaps; check
        if not all(cones[i].intersect(cones[j]).dim < 3
                   for a_, i in enumerate(placed) for j in placed[a_ + 1:]):
            continue
        cellset = frozenset(cells[i] for i in placed)
        if cellset in seen_cellsets:
            continue
        seen_cellsets.add(cellset)
        if _cells_meet_properly([cones[i] for i in placed]):
            out.append(cellset)
    return [Subdivision.make(polytope, cells_) for cells_ in sorted(
        out, key=lambda cs: sorted(tuple(sorted(c)) for c in cs))]


def _cells_meet_properly(cell_cones):
    for a, b in combinations(cell_cones, 2):
        meet = a.intersect(b)
        if meet.dim == 0:
            continue
        if not (meet.is_face_of(a) and meet.is_face_of(b)):
            return False
    return True


def _enumerate_subdivisions_1d(polytope):
    pts = sorted(range(len(polytope.points)), key=lambda i: polytope.points[i][0])
    out = []

    def recurse(pos, cells):
        if pos == len(pts) - 1:
            out.append(frozenset(cells))
            return
        for nxt in range(pos + 1, len(pts)):
            inside = pts[pos + 1:nxt]
            for mark in _subsets(inside):
                cell = frozenset({pts[pos], pts[nxt]} | set(mark))
                recurse(nxt, cells + [cell])

    recurse(0, [])
    return [Subdivision.make(polytope, cells_) for cells_ in sorted(
        out, key=lambda cs: sorted(tuple(sorted(c)) for c in cs))]


def enumerate_regular_subdivisions(polytope, budget=None):
    """All regular marked subdivisions, coarse-to-fine by cell count."""
    limit = 16 if budget is None else budget
    if len(polytope.points) > limit:
        raise BudgetError("enumeration budget exceeded")
    subs = [s for s in enumerate_subdivisions(polytope)
            if is_regular(polytope, s)]
    return subs


# ---- tropical curves ------------------------------------------------------

@dataclass(frozen=True)
class TropicalCurve:
    """Embedded min-plus plane curve: exact vertices, weighted edges and rays."""
    vertices: tuple            # tuple of (x, y) Fractions
    edges: tuple               # (vi, vj, primitive direction from vi, weight)
    rays: tuple                # (vi, primitive direction, weight)
    subdivision: Subdivision

    def balanced(self):
        for k in range(len(self.vertices)):
            acc = [Fraction(0), Fraction(0)]
            for (i, j, d, w) in self.edges:
                if i == k:
                    acc[0] += w * d[0]
                    acc[1] += w * d[1]
                elif j == k:
                    acc[0] -= w * d[0]
                    acc[1] -= w * d[1]
            for (i, d, w) in self.rays:
                if i == k:
                    acc[0] += w * d[0]
                    acc[1] += w * d[1]
            if acc != [0, 0]:
                return False
        return True

    def combinatorial_type(self):
        """Canonical hashable encoding: per-vertex sorted (direction, weight) stars."""
        stars = []
        for k in range(len(self.vertices)):
            st = []
            for (i, j, d, w) in self.edges:
                if i == k:
                    st.append((d, w, "e"))
                elif j == k:
                    st.append(((-d[0], -d[1]), w, "e"))
            for (i, d, w) in self.rays:
                if i == k:
                    st.append((d, w, "r"))
            stars.append(tuple(sorted(st)))
        return tuple(sorted(stars))


def cell_vertex_position(polytope, cell, values):
    """Exact position of the dual vertex of a 2-cell: the common tie point."""
    cell = sorted(cell)
    pts = [polytope.points[i] for i in cell]
    base = polytope._affine_basis(pts)
    p0 = pts[base[0]]
    v0 = Fraction(values[cell[base[0]]])
    rows, rhs = [], []
    for bi in base[1:]:
        p = pts[bi]
        rows.append((p[0] - p0[0], p[1] - p0[1]))
        rhs.append(v0 - Fraction(values[cell[bi]]))
    sol = solve(rows, tuple(rhs))
    return sol


def dual_tropical_curve(polytope, values):
    """The tropical curve dual to Delta for the given lift (exact)."""
    sub = induced_subdivision(polytope, values)
    vals = [Fraction(v) for v in values]
    if polytope.dim == 1:
        raise ValueError("dual curves need a 2-dimensional polytope")
    verts = []
    for k in range(len(sub.cells)):
        verts.append(cell_vertex_position(polytope, sub.cells[k], vals))
    edges = []
    for ci, cj, (a, b), w in sub.walls:
        d = vec_sub(verts[cj], verts[ci])
        if all(x == 0 for x in d):
            continue
        edges.append((ci, cj, primitive(d), w))
    rays = []
    interior = _interior_sample(polytope)
    for ci, (a, b), w in sub.boundary_walls:
        d = (b[0] - a[0], b[1] - a[1])
        u = primitive((-d[1], d[0]))
        # orient inward w.r.t. |Delta|
        if vec_dot(u, vec_sub(interior, a)) < 0:
            u = (-u[0], -u[1])
        rays.append((ci, u, w))
    return TropicalCurve(tuple(verts), tuple(edges), tuple(rays), sub)


def _interior_sample(polytope):
    vs = polytope.hull
    sx = sum(Fraction(v[0]) for v in vs) / len(vs)
    sy = sum(Fraction(v[1]) for v in vs) / len(vs)
    return (sx, sy)


def projective_fan(polytope):
    """Fan of P^m on N: maximal cones delta_p = {lifts minimal at p}."""
    m = polytope.m
    n = len(polytope.points)
    tops = []
    for p in range(n):
        ineqs = [polytope.diff_functional(r, p) for r in range(n) if r != p]
        tops.append(Cone.from_constraints(m, [], ineqs))
    return Fan(tops, m)


def min_set(polytope, u):
    """Points where the lift (in u-coordinates) attains its minimum."""
    vals = [Fraction(0)] + [Fraction(x) for x in u]
    lo = min(vals)
    return frozenset(i for i, v in enumerate(vals) if v == lo)


def delta_cone(polytope, s):
    """The cone delta_S of lifts minimal on all of S."""
    s = sorted(s)
    m = polytope.m
    n = len(polytope.points)
    eqs = [polytope.diff_functional(s[0], q) for q in s[1:]]
    ineqs = [polytope.diff_functional(r, s[0]) for r in range(n) if r not in s]
    return Cone.from_constraints(m, eqs, ineqs)
