"""Torus-fixed combinatorial types of pre-expansion curves for the 1 x d
rectangle (the (1, d) class on P^1 x P^1).

Dual curves of the rectangle are caterpillars: a strictly descending chain of
vertices v_1 ... v_r carrying horizontal rays, a top and a bottom vertical
ray, and slanted path edges.  A fixed type is a subdivision chain together
with the vertex sign data against the surface fan; all of it is enumerated
symbolically, with exact cones on demand."""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

from .cones import Cone
from .secondary import (LatticePolytope, Subdivision, secondary_cone,
                        secondary_raw_system)
from .loglinear import _vertex_matrix


def rectangle(d):
    pts = [(0, j) for j in range(d + 1)] + [(1, j) for j in range(d + 1)]
    return LatticePolytope(pts)


def wall_chains(d):
    """Strictly increasing chains (0,0) < w_1 < ... < (d,d) in product order."""
    out = []

    def rec(cur, chain):
        if cur == (d, d):
            out.append(tuple(chain))
            return
        for s in range(cur[0], d + 1):
            for t in range(cur[1], d + 1):
                if (s, t) == cur or (s, t) == (0, 0):
                    continue
                if s < cur[0] or t < cur[1]:
                    continue
                rec((s, t), chain + [(s, t)])

    rec((0, 0), [])
    # drop the final (d, d) from the stored chain: walls are the inner ones
    return [c[:-1] for c in out]


@dataclass(frozen=True)
class FixedType:
    """A torus-fixed chamber of the logarithmic linear system for (1, d)."""
    d: int
    walls: tuple        # inner walls (s_k, t_k)
    marks: tuple        # per cell: (frozenset left marks, frozenset right marks)
    xsigns: tuple       # +1 / -1 per vertex
    m: int              # number of vertices with positive height
    cross_sign: int     # x-sign of the height-zero path crossing; 0 if forced

    @property
    def r(self):
        return len(self.walls) + 1

    def cell_sides(self, k):
        """(left length, right length) of cell k (1-based)."""
        chain = ((0, 0),) + self.walls + ((self.d, self.d),)
        s0, t0 = chain[k - 1]
        s1, t1 = chain[k]
        return s1 - s0, t1 - t0

    def slopes(self):
        return tuple(t - s for s, t in self.walls)

    def vertex_data(self, k):
        """Block data of vertex k: toward/away weights and side markings."""
        lk, rk = self.cell_sides(k)
        left_marked, right_marked = self.marks[k - 1]
        if self.xsigns[k - 1] > 0:
            # axis is to the left; the leftward ray is dual to the right side
            return {"a": rk, "b": lk, "a_marks": right_marked,
                    "b_marks": left_marked}
        return {"a": lk, "b": rk, "a_marks": left_marked, "b_marks": right_marked}

    def plain_slots(self):
        """Weight-one curve segments away from horizontal lines.

        Returns the number of decoration slots on the vertical rays and the
        path edges (each split at axis crossings)."""
        r = self.r
        slots = 0
        slots += 2 if self.m == 0 else 1          # top vertical ray
        slots += 2 if self.m == r else 1          # bottom vertical ray
        q = self.slopes()
        for k in range(1, r):
            pieces = 1
            if self.xsigns[k - 1] != self.xsigns[k]:
                pieces += 1                       # crosses the vertical axis
            if k == self.m:
                pieces += 1                       # crosses the horizontal axis
            slots += pieces
        return slots

    def is_maximal(self):
        return all(not lm or len(lm) == 0 for lm, rm in self.marks) and \
            self.dim() == 2 * self.d + 1

    def dim(self):
        r = self.r
        omitted = 0
        for k in range(1, r + 1):
            lk, rk = self.cell_sides(k)
            lm, rm = self.marks[k - 1]
            omitted += (lk - 1 - len(lm) if lk >= 1 else 0)
            omitted += (rk - 1 - len(rm) if rk >= 1 else 0)
        return r + 1 + omitted

    def subdivision(self, polytope):
        chain = ((0, 0),) + self.walls + ((self.d, self.d),)
        cells = []
        for k in range(1, self.r + 1):
            s0, t0 = chain[k - 1]
            s1, t1 = chain[k]
            lm, rm = self.marks[k - 1]
            cell = {polytope.index((0, s0)), polytope.index((0, s1)),
                    polytope.index((1, t0)), polytope.index((1, t1))}
            for off in lm:
                cell.add(polytope.index((0, s0 + off)))
            for off in rm:
                cell.add(polytope.index((1, t0 + off)))
            cells.append(frozenset(cell))
        return Subdivision.make(polytope, cells)

    def chamber_system(self, polytope):
        """(equalities, inequalities) of the closed chamber cone in N."""
        sub = self.subdivision(polytope)
        eqs, ineqs = secondary_raw_system(polytope, sub)
        rows = {}
        for k in range(1, self.r + 1):
            rows[k] = _vertex_matrix(polytope, sub.cells[self._cell_order(sub, k)])
        for k in range(1, self.r + 1):
            rx, ry = rows[k]
            sx = self.xsigns[k - 1]
            ineqs.append(tuple(sx * x for x in rx))
            sy = 1 if k <= self.m else -1
            ineqs.append(tuple(sy * y for y in ry))
        if self.cross_sign:
            k = self.m
            rx, ry = rows[k]
            q = self.slopes()[k - 1]
            cov = tuple(x + q * y for x, y in zip(rx, ry))
            ineqs.append(tuple(self.cross_sign * x for x in cov))
        return eqs, ineqs

    def chamber_rays(self, polytope):
        """Extreme rays and lineality of the closed chamber cone."""
        from .cones import dd_generators_from_constraints
        eqs, ineqs = self.chamber_system(polytope)
        return dd_generators_from_constraints(polytope.m, eqs, ineqs)

    def multiplicity(self, polytope):
        """Lattice index of the chamber cone's ray span (simplicial cones)."""
        from .linalg import smith_invariants
        rays, lin = self.chamber_rays(polytope)
        if len(rays) + len(lin) != self.dim():
            return None
        inv = smith_invariants(list(rays) + list(lin))
        out = 1
        for v in inv:
            out *= v
        return out

    def chamber_cone(self, polytope):
        """The exact closed cone of this chamber in N."""
        eqs, ineqs = self.chamber_system(polytope)
        return Cone.from_constraints(polytope.m, eqs, ineqs)

    def _cell_order(self, sub, k):
        """Index in sub.cells of the k-th cell from the bottom."""
        chain = ((0, 0),) + self.walls + ((self.d, self.d),)
        s0 = chain[k - 1][0]
        t0 = chain[k - 1][1]
        want_pts = {(0, s0), (1, t0), (0, chain[k][0]), (1, chain[k][1])}
        for idx, cell in enumerate(sub.cells):
            pts = {sub.polytope.points[i] for i in cell}
            if want_pts <= pts:
                return idx
        raise LookupError("cell not found")


def _xsign_sequences(slopes):
    """Vertex x-sign sequences compatible with the path edge monotonicities."""
    r = len(slopes) + 1
    seqs = [[1], [-1]]
    for q in slopes:
        new = []
        for seq in seqs:
            last = seq[-1]
            for nxt in (1, -1):
                if q > 0 and last > nxt:
                    continue
                if q < 0 and last < nxt:
                    continue
                if q == 0 and last != nxt:
                    continue
                new.append(seq + [nxt])
        seqs = new
    return [tuple(s) for s in seqs]


def _markings(d, walls):
    """All (left, right) interior-point markings per cell."""
    chain = ((0, 0),) + tuple(walls) + ((d, d),)
    per_cell = []
    for k in range(1, len(chain)):
        lk = chain[k][0] - chain[k - 1][0]
        rk = chain[k][1] - chain[k - 1][1]
        lefts = _all_subsets(range(1, lk)) if lk >= 2 else [frozenset()]
        rights = _all_subsets(range(1, rk)) if rk >= 2 else [frozenset()]
        per_cell.append([(l, rr) for l in lefts for rr in rights])
    return [tuple(combo) for combo in product(*per_cell)]


def _all_subsets(rng):
    items = list(rng)
    out = []
    for mask in range(1 << len(items)):
        out.append(frozenset(items[i] for i in range(len(items))
                             if mask >> i & 1))
    return out


def enumerate_fixed_types(d, markings=False):
    """All torus-fixed chambers for the (1, d) class.

    With markings=False only geometric subdivisions are listed (lifted-above
    points are summed out of the weight formula); with markings=True every
    marked variant appears as its own type."""
    out = []
    for walls in wall_chains(d):
        slopes = tuple(t - s for s, t in walls)
        r = len(walls) + 1
        mark_choices = _markings(d, walls) if markings else \
            [tuple((frozenset(), frozenset()) for _ in range(r))]
        for marks in mark_choices:
            for xsigns in _xsign_sequences(slopes):
                for m in range(0, r + 1):
                    ambiguous = 1 <= m <= r - 1 and xsigns[m - 1] != xsigns[m]
                    for cs in ((1, -1) if ambiguous else (0,)):
                        out.append(FixedType(d, walls, marks, xsigns, m, cs))
    return out
