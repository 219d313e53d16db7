"""The fan of the logarithmic linear system: pre-expansion tropical curves,
their combinatorial types, torus-fixed strata, evaluation maps, and weighted
decorations.

A pre-expansion curve is the superimposition of a dual tropical curve onto the
(inner) normal fan of the surface; cones of the logarithmic linear system
biject with combinatorial types of such curves."""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product

from .cones import Cone
from .fans import Fan, LatticeMap, FanError
from .linalg import primitive, vec_dot, vec_sub, solve
from .polyhedra import feasible
from .secondary import (LatticePolytope, Subdivision, BudgetError,
                        enumerate_regular_subdivisions, secondary_cone,
                        dual_tropical_curve, cell_vertex_position,
                        projective_fan, delta_cone, min_set, TropicalCurve)


@dataclass(frozen=True)
class ToricSurfaceFan:
    """Complete fan of the toric surface of Delta: rays are inward normals."""
    polytope: LatticePolytope
    rays: tuple      # primitive inward normals, counterclockwise
    fan: Fan

    @staticmethod
    def make(polytope):
        return normal_fan(polytope)


def normal_fan(polytope):
    """Inner normal fan of |Delta|; one ray per 1-dimensional hull face."""
    if polytope.dim != 2:
        raise ValueError("degenerate hull")
    rays = [e[2] for e in polytope.hull_edges]
    k = len(rays)
    tops = [Cone([rays[i], rays[(i + 1) % k]]) for i in range(k)]
    return ToricSurfaceFan(polytope, tuple(rays), Fan(tops, 2))


# ---------------------------------------------------------------------------
# superimposition complexes
# ---------------------------------------------------------------------------

def _on_segment(p, a, b):
    """p on the closed segment [a, b] (all rational pairs)."""
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    if cross != 0:
        return False
    d0 = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])
    d1 = (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2
    return 0 <= d0 <= d1


def _on_ray(p, a, d):
    """p on the closed ray a + t*d, t >= 0."""
    cross = d[0] * (p[1] - a[1]) - d[1] * (p[0] - a[0])
    if cross != 0:
        return False
    return d[0] * (p[0] - a[0]) + d[1] * (p[1] - a[1]) >= 0


def _intersect_param(a, d, b, e):
    """Solve a + s d = b + t e exactly; None if parallel."""
    det = -d[0] * e[1] + d[1] * e[0]
    if det == 0:
        return None
    rx, ry = b[0] - a[0], b[1] - a[1]
    s = Fraction(-rx * e[1] + ry * e[0], det)
    t = Fraction(d[0] * ry - d[1] * rx, det)
    return s, t


@dataclass
class Piece:
    """A maximal straight piece of the complex before subdivision."""
    name: tuple          # canonical, position independent
    start: tuple         # rational point
    direction: tuple     # primitive integer direction
    length: object       # Fraction in units of `direction`, or None for a ray
    weight: int          # curve multiplicity, 0 for fan-only pieces
    kind: str            # "curve" or "fan"

    def point_at(self, t):
        return (self.start[0] + t * self.direction[0],
                self.start[1] + t * self.direction[1])

    def param_of(self, p):
        """Parameter of p on the supporting line (direction units)."""
        if self.direction[0] != 0:
            return Fraction(p[0] - self.start[0], self.direction[0])
        return Fraction(p[1] - self.start[1], self.direction[1])

    def contains_param(self, t):
        if t < 0:
            return False
        return self.length is None or t <= self.length


class PreExpansionCurve:
    """Superimposition of a dual tropical curve with the surface fan.

    Nodes and arcs of the common refinement's 1-skeleton are computed exactly;
    node names are position independent so that the combinatorial type is a
    canonical hashable object."""

    def __init__(self, curve, xfan, origin=(0, 0)):
        self.curve = curve
        self.xfan = xfan
        self.origin = (Fraction(origin[0]), Fraction(origin[1]))
        self._build()

    def _cell_name(self, ci):
        return tuple(sorted(self.curve.subdivision.cells[ci]))

    def _build(self):
        curve = self.curve
        pieces = []
        for (ci, cj, d, w) in curve.edges:
            a, b = curve.vertices[ci], curve.vertices[cj]
            length = None
            t = Piece(("edge", self._cell_name(ci), self._cell_name(cj)),
                      a, d, None, w, "curve")
            t.length = t.param_of(b)
            pieces.append(t)
        for (ci, d, w) in curve.rays:
            pieces.append(Piece(("ray", self._cell_name(ci), d),
                                curve.vertices[ci], d, None, w, "curve"))
        for d in self.xfan.rays:
            pieces.append(Piece(("fanray", d), self.origin, d, None, 0, "fan"))
        self.pieces = pieces

        nodes = {}

        def node(p, label):
            p = (Fraction(p[0]), Fraction(p[1]))
            if p not in nodes:
                nodes[p] = set()
            nodes[p].add(label)
            return p

        for k in range(len(curve.vertices)):
            node(curve.vertices[k], ("v", self._cell_name(k)))
        node(self.origin, ("origin",))
        # pairwise intersections of pieces
        for i, j in combinations(range(len(pieces)), 2):
            pi, pj = pieces[i], pieces[j]
            if pi.kind == pj.kind == "curve":
                continue  # curve pieces only meet at shared vertices
            hit = _intersect_param(pi.start, pi.direction, pj.start, pj.direction)
            if hit is None:
                continue
            s, t = hit
            if pi.contains_param(s) and pj.contains_param(t):
                node(pi.point_at(s), ("x",))
        # collinear overlaps: endpoints of each piece landing on others
        for p in pieces:
            node(p.start, ("end",))
            if p.length is not None:
                node(p.point_at(p.length), ("end",))
        self.node_positions = sorted(nodes)
        # subdivide pieces into arcs at the nodes lying on them
        arcs = []
        for pc in pieces:
            params = []
            for p in self.node_positions:
                if _piece_contains_point(pc, p):
                    params.append(pc.param_of(p))
            params = sorted(set(params))
            for t0, t1 in zip(params, params[1:]):
                arcs.append((pc.point_at(t0), pc.point_at(t1), pc))
            if pc.length is None:
                arcs.append((pc.point_at(params[-1]), None, pc))
        # merge coincident arcs (curve piece running along a fan ray)
        merged = {}
        for a, b, pc in arcs:
            key = (a, b if b is not None else ("inf", pc.direction))
            if key not in merged:
                merged[key] = []
            merged[key].append(pc)
        self.arcs = []
        for (a, bkey), pcs in sorted(merged.items(), key=lambda kv: str(kv[0])):
            b = None if isinstance(bkey, tuple) and bkey and bkey[0] == "inf" else bkey
            weight = sum(pc.weight for pc in pcs)
            kinds = frozenset(pc.kind for pc in pcs)
            direction = pcs[0].direction
            self.arcs.append({"start": a, "end": b, "direction": direction,
                              "weight": weight, "kinds": kinds,
                              "names": tuple(sorted(pc.name for pc in pcs))})

    def curve_vertices(self):
        return list(self.curve.vertices)

    def combinatorial_type(self):
        """Canonical position-independent encoding of the superimposition."""
        # name nodes: curve vertices by cell, origin, crossings by their
        # position along the pieces containing them
        names = {}
        for k in range(len(self.curve.vertices)):
            names.setdefault(self.curve.vertices[k], []).append(
                ("v", self._cell_name(k)))
        names.setdefault(self.origin, []).append(("o",))
        per_piece_nodes = {}
        for pc in self.pieces:
            on = [p for p in self.node_positions if _piece_contains_point(pc, p)]
            on.sort(key=pc.param_of)
            per_piece_nodes[pc.name] = on
            for rank_, p in enumerate(on):
                names.setdefault(p, []).append(("on", pc.name, rank_))
        canon = {p: tuple(sorted(map(str, v))) for p, v in names.items()}
        arc_data = []
        for a in self.arcs:
            endname = canon[a["end"]] if a["end"] is not None else "inf"
            arc_data.append((canon[a["start"]], endname, a["direction"],
                             a["weight"], tuple(sorted(a["kinds"])),
                             a["names"]))
        return (self.curve.subdivision.cells,
                tuple(sorted(map(str, arc_data))))


def _piece_contains_point(pc, p):
    if pc.length is None:
        return _on_ray(p, pc.start, pc.direction)
    return _on_segment(p, pc.start, pc.point_at(pc.length))


def superimpose(curve, xfan, origin=(0, 0)):
    """Common refinement of the curve complex with the fan centred at origin."""
    return PreExpansionCurve(curve, xfan, origin)


# ---------------------------------------------------------------------------
# extended main component and fixed strata
# ---------------------------------------------------------------------------

def _segment_in_complex(gamma, p):
    """True iff the segment [origin-of-fan? no: [0, p]] lies inside |Gamma|."""
    o = (Fraction(0), Fraction(0))
    p = (Fraction(p[0]), Fraction(p[1]))
    if p == o:
        return True
    # cut [0,p] at every node and piece-boundary along it, test midpoints
    cuts = {Fraction(0), Fraction(1)}
    d = (p[0], p[1])
    for pc in gamma.pieces:
        hit = _intersect_param(o, d, pc.start, pc.direction)
        if hit is None:
            # parallel: if collinear, piece endpoints cut the segment
            if _on_ray(pc.start, o, d) or _on_ray(pc.start, o, (-d[0], -d[1])):
                for q in (pc.start,
                          pc.point_at(pc.length) if pc.length is not None else None):
                    if q is None:
                        continue
                    t = (q[0] / d[0]) if d[0] else (q[1] / d[1])
                    if 0 <= t <= 1:
                        cuts.add(Fraction(t))
            continue
        s, t = hit
        if 0 <= s <= 1 and pc.contains_param(t):
            cuts.add(Fraction(s))
    cuts = sorted(cuts)
    for t0, t1 in zip(cuts, cuts[1:]):
        mid = ((t0 + t1) / 2 * d[0], (t0 + t1) / 2 * d[1])
        if not any(_piece_contains_point(pc, mid) for pc in gamma.pieces):
            return False
    return True


def extended_main_component(gamma):
    """Points p of |Gamma| with [0, p] inside |Gamma|, as radial intervals.

    Returns a list of (primitive direction, reach) where reach is a Fraction
    in units of the direction, or None for a full ray."""
    o = (Fraction(0), Fraction(0))
    intervals = {}
    for pc in gamma.pieces:
        # only pieces whose supporting line passes through 0 can cover
        cr = pc.direction[0] * (o[1] - pc.start[1]) - \
            pc.direction[1] * (o[0] - pc.start[0])
        if cr != 0:
            continue
        t0 = pc.param_of(o)          # origin's parameter on the piece's line
        hi = pc.length               # piece covers parameters [0, hi] (or ray)
        d = pc.direction
        # split the piece's coverage into the two radial directions from 0
        # direction +d covers radii [max(0, -t0), hi - t0] in +d units
        plus_lo = max(Fraction(0), -t0)
        plus_hi = None if hi is None else Fraction(hi) - t0
        if plus_hi is None or plus_hi > plus_lo:
            intervals.setdefault(d, []).append((plus_lo, plus_hi))
        # direction -d covers radii [max(0, t0 - hi), t0]
        minus_lo = Fraction(0) if hi is None else max(Fraction(0), t0 - Fraction(hi))
        minus_hi = t0
        if minus_hi > minus_lo:
            md = (-d[0], -d[1])
            intervals.setdefault(md, []).append((minus_lo, minus_hi))
    out = []
    for dd, ivs in sorted(intervals.items()):
        reach = Fraction(0)
        progressed = True
        while progressed:
            progressed = False
            for lo, hi in ivs:
                if lo <= reach and (hi is None or hi > reach):
                    if hi is None:
                        reach = None
                        progressed = False
                        break
                    if hi > reach:
                        reach = hi
                        progressed = True
            if reach is None:
                break
        if reach is None or reach > 0:
            out.append((dd, reach))
    return out


def is_fixed_stratum(gamma):
    """True iff no vertex of the dual curve lies in the extended main component."""
    for v in gamma.curve.vertices:
        if _segment_in_complex(gamma, v):
            return False
    return True


# ---------------------------------------------------------------------------
# the fan of the logarithmic linear system
# ---------------------------------------------------------------------------

def secondary_fan_in_lift_space(polytope):
    """Secondary cones of all regular subdivisions, as a fan on N."""
    subs = enumerate_regular_subdivisions(polytope)
    by_dim = {}
    cones = []
    for s in subs:
        cones.append((s, secondary_cone(polytope, s)))
    maxdim = max(c.dim for _, c in cones)
    tops = [c for _, c in cones if c.dim == maxdim]
    return Fan(tops, polytope.m), cones


def build_xdagger_fan(polytope, budget=None):
    """Coarsest subdivision of (P^m)^t with constant induced subdivision."""
    from .fans import common_refinement
    sec_fan, _ = secondary_fan_in_lift_space(polytope)
    return common_refinement(projective_fan(polytope), sec_fan)


def _vertex_matrix(polytope, cell):
    """2 x m matrix of the linear map u -> dual vertex of the 2-cell."""
    m = polytope.m
    cols = []
    for k in range(m):
        u = tuple(1 if i == k else 0 for i in range(m))
        vals = [Fraction(0)] + [Fraction(x) for x in u]
        cols.append(cell_vertex_position(polytope, cell, vals))
    rows = [tuple(c[0] for c in cols), tuple(c[1] for c in cols)]
    return rows


def _linear_comb(row, u):
    return sum(a * b for a, b in zip(row, u))


class ConePT:
    """A cone of the logarithmic linear system with its combinatorial data."""

    def __init__(self, polytope, subdivision, cone, sample, xfan):
        self.polytope = polytope
        self.subdivision = subdivision
        self.cone = cone
        self.sample = sample
        self.xfan = xfan

    @cached_property
    def min_set(self):
        return min_set(self.polytope, self.sample)

    @cached_property
    def gamma(self):
        vals = self.polytope.lift_values(self.sample)
        curve = dual_tropical_curve(self.polytope, vals)
        return superimpose(curve, self.xfan)

    @cached_property
    def combinatorial_type(self):
        return self.gamma.combinatorial_type()

    @property
    def dim(self):
        return self.cone.dim


def build_pt0_fan(polytope, xfan=None, budget=50000, check=False):
    """The fan of PT0(X, beta): maximal cones are combinatorial-type chambers.

    Enumerates, per maximal regular subdivision, the sign chambers of the
    vertex/ray incidence functionals together with the position of the origin
    in the minimum-set stratification, then merges chambers with equal
    superimposition type."""
    if polytope.dim == 1:
        return _build_pt0_fan_segment(polytope, budget)
    if xfan is None:
        xfan = normal_fan(polytope)
    m = polytope.m
    n = len(polytope.points)
    subs = enumerate_regular_subdivisions(polytope)
    maxdim = max(secondary_cone(polytope, s).dim for s in subs)
    chambers = []
    for s in subs:
        sc = secondary_cone(polytope, s)
        if sc.dim != maxdim:
            continue
        base_cons = []
        for e in sc.equations:
            base_cons.append((e, 0, False))
            base_cons.append((tuple(-x for x in e), 0, False))
        for a in sc.facets:
            base_cons.append((a, 0, True))
        vrows = {ci: _vertex_matrix(polytope, s.cells[ci])
                 for ci in range(len(s.cells))}
        functionals = []
        for ci, rows in sorted(vrows.items()):
            for u in xfan.rays:
                # cross(u, v_C(phi)) as a covector in u-space
                cov = tuple(u[0] * rows[1][k] - u[1] * rows[0][k]
                            for k in range(m))
                functionals.append(cov)
        # arg-min structure: enumerate the minimal point p*
        for p_star in range(n):
            cons0 = list(base_cons)
            for q in range(n):
                if q != p_star:
                    cons0.append((polytope.diff_functional(q, p_star), 0, True))
            if not feasible(cons0, m):
                continue
            for cons in _sign_chambers(functionals, cons0, m, budget):
                chambers.append((s, cons))
                if len(chambers) > budget:
                    raise BudgetError("enumeration budget exceeded")
    # build exact chamber cones and group them by combinatorial type
    groups = {}
    for s, cons in chambers:
        cone = Cone.from_constraints(m, [], [c for c, _, _ in cons])
        sample = _strict_sample(cons, cone)
        vals = polytope.lift_values(sample)
        curve = dual_tropical_curve(polytope, vals)
        gamma = superimpose(curve, xfan)
        key = gamma.combinatorial_type()
        groups.setdefault(key, []).append((s, cone, sample))
    tops = []
    for key, members in sorted(groups.items(), key=lambda kv: str(kv[0])):
        rays = []
        for _, cone, _ in members:
            rays.extend(cone.rays)
        merged = Cone(rays, ambient=m)
        tops.append(ConePT(polytope, members[0][0], merged, members[0][2], xfan))
    if check:
        for pc in tops:
            vals = polytope.lift_values(pc.cone.relint_point())
            curve = dual_tropical_curve(polytope, vals)
            if superimpose(curve, xfan).combinatorial_type() != \
                    pc.combinatorial_type:
                raise FanError("chamber merge produced a non-convex type class")
    fan = Fan([c.cone for c in tops], m)
    if check:
        fan.check_fan()
    fan.pt_cones = tops
    fan.pt_by_key = {c.cone._key: c for c in tops}
    return fan


def _build_pt0_fan_segment(polytope, budget):
    """PT0 fan for a one-dimensional Delta (the P_k systems of boundary points).

    Types are (marked subdivision, arg-min point, signs of the dual points)."""
    m = polytope.m
    n = len(polytope.points)
    subs = enumerate_regular_subdivisions(polytope)
    maxdim = max(secondary_cone(polytope, s).dim for s in subs)
    tops = []
    for s in subs:
        sc = secondary_cone(polytope, s)
        if sc.dim != maxdim:
            continue
        base_cons = [(a, 0, True) for a in sc.facets]
        for e in sc.equations:
            base_cons.append((e, 0, False))
            base_cons.append((tuple(-x for x in e), 0, False))
        functionals = [tuple(_segment_vertex_row(polytope, cell))
                       for cell in s.cells]
        for p_star in range(n):
            cons0 = list(base_cons)
            for q in range(n):
                if q != p_star:
                    cons0.append((polytope.diff_functional(q, p_star), 0, True))
            if not feasible(cons0, m):
                continue
            for cons in _sign_chambers(functionals, cons0, m, budget):
                cone = Cone.from_constraints(m, [], [c for c, _, _ in cons])
                sample = _strict_sample(cons, cone)
                tops.append(ConePT(polytope, s, cone, sample, None))
    fan = Fan([c.cone for c in tops], m)
    fan.pt_cones = tops
    fan.pt_by_key = {c.cone._key: c for c in tops}
    return fan


def _segment_vertex_row(polytope, cell):
    """Covector of the dual point position of a 1-dim cell."""
    m = polytope.m
    out = []
    for k in range(m):
        u = tuple(1 if i == k else 0 for i in range(m))
        vals = [Fraction(0)] + [Fraction(x) for x in u]
        cell_s = sorted(cell)
        a, b = cell_s[0], cell_s[-1]
        xa, xb = polytope.points[a][0], polytope.points[b][0]
        # tie of the two end points: xa*t + v_a = xb*t + v_b
        out.append(Fraction(vals[a] - vals[b], xb - xa))
    return out


def _sign_chambers(functionals, base_cons, m, budget):
    """All strict sign assignments of the functionals feasible over base_cons."""
    out = []

    def rec(i, cons):
        if i == len(functionals):
            out.append(list(cons))
            return
        f = functionals[i]
        if all(x == 0 for x in f):
            rec(i + 1, cons)
            return
        for sgn in (1, -1):
            cov = tuple(sgn * x for x in f)
            trial = cons + [(cov, 0, True)]
            if feasible(trial, m):
                rec(i + 1, trial)

    rec(0, list(base_cons))
    return out


def _strict_sample(cons, cone):
    """Interior rational point of a full-dimensional chamber."""
    pt = cone.relint_point()
    for c, _, strict in cons:
        val = vec_dot(c, pt)
        if (strict and val <= 0) or val < 0:
            raise FanError("chamber sample escaped its strict system")
    return pt


# ---------------------------------------------------------------------------
# evaluation maps and weighted types
# ---------------------------------------------------------------------------

def ev_map(polytope, face_index):
    """Restriction of lifts to the points on hull face i, modulo constants."""
    edges = polytope.hull_edges
    if not 0 <= face_index < len(edges):
        raise ValueError("invalid face index")
    a, b, normal, face_pts = edges[face_index]
    if len(face_pts) < 2:
        raise ValueError("invalid face index")
    idxs = [polytope.index(p) for p in face_pts]
    rows = []
    for j in idxs[1:]:
        rows.append(polytope.diff_functional(j, idxs[0]))
    return LatticeMap(rows, source_rank=polytope.m)


@dataclass(frozen=True)
class WeightedCurveType:
    """Combinatorial type of an n-weighted pre-expansion tropical curve."""
    base_type: object
    placements: tuple     # sorted ((location descriptor, weight tuple), ...)
    n: int


def _curve_arcs_and_vertices(gamma):
    """Marked-point slots: curve arcs and curve vertices of the complex."""
    arcs = [a for a in gamma.arcs if "curve" in a["kinds"]]
    verts = []
    seen = set()
    for k, v in enumerate(gamma.curve.vertices):
        if v not in seen:
            seen.add(v)
            verts.append((("v", gamma._cell_name(k)), v))
    return arcs, verts


def _compositions(total):
    """Ordered tuples of positive integers summing to total."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def weighted_types(polytope, xfan, n, fan=None):
    """All combinatorial types of n-weighted pre-expansion tropical curves."""
    if fan is None:
        fan = build_pt0_fan(polytope, xfan)
    out = []
    for pc in fan.pt_cones:
        gamma = pc.gamma
        arcs, verts = _curve_arcs_and_vertices(gamma)
        slots = [("arc", i) for i in range(len(arcs))] + \
                [("vertex", name) for name, _ in verts]
        for assignment in _weight_assignments(slots, n,
                                               vertex_max_one={i for i, s in
                                                               enumerate(slots)
                                                               if s[0] == "vertex"}):
            placements = tuple(sorted(
                (str(slots[i]), tuple(ws)) for i, ws in assignment.items()))
            out.append(WeightedCurveType(pc.combinatorial_type, placements, n))
    return out


def _weight_assignments(slots, n, vertex_max_one=frozenset()):
    """Distribute total weight n over slots; arcs take ordered tuples of
    positive weights, vertices a single weight."""
    results = []

    def rec(i, remaining, current):
        if i == len(slots):
            if remaining == 0:
                results.append(dict(current))
            return
        # slot gets nothing
        rec(i + 1, remaining, current)
        if remaining == 0:
            return
        if i in vertex_max_one:
            for w in range(1, remaining + 1):
                current[i] = (w,)
                rec(i + 1, remaining - w, current)
            current.pop(i, None)
        else:
            for total in range(1, remaining + 1):
                for comp in _compositions(total):
                    current[i] = comp
                    rec(i + 1, remaining - total, current)
                current.pop(i, None)

    rec(0, n, {})
    return results
