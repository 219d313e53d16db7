"""Tautological insertions on the logarithmic linear system: the universal
family fan, the ideal-sheaf and point weights of the coarse universal curve,
the hyperplane pullback, the direct point-insertion pushforward, boundary
point classes, and the triple-boundary-point integral."""

from fractions import Fraction
from math import factorial

from .cones import Cone
from .fans import Fan, LatticeMap, fiber_product_fans, pullback_fan_structure
from .linalg import integer_kernel, vec_sub, solve
from .minkowski import (MinkowskiWeight, ChowCycle, fundamental_cycle,
                        cap, cup, pullback_weight, pushforward_cycle,
                        DisplacementStream, check_balancing)
from .secondary import (LatticePolytope, min_set, dual_tropical_curve,
                        delta_cone)
from .loglinear import build_pt0_fan, normal_fan, superimpose, _piece_contains_point


def quotient_to_secondary(polytope):
    """Projection N -> N-dagger killing the lifts of linear functions."""
    if polytope.dim == 2:
        gens = [polytope.monomial_vector(1, 0), polytope.monomial_vector(0, 1)]
    else:
        gens = [polytope.monomial_vector(1)]
    rows = integer_kernel(gens)
    return LatticeMap(rows, source_rank=polytope.m)


def monomial_coordinates_map(polytope):
    """Map N + N -> N_X, (phi, psi) |-> coordinates of phi - psi in (e_x, e_y)."""
    m = polytope.m
    ex = polytope.monomial_vector(1, 0)
    ey = polytope.monomial_vector(0, 1)
    # rows r with r . (ex) = (1,0), r . (ey) = (0,1); use rational solve then clear
    rows = []
    for target in ((1, 0), (0, 1)):
        sol = _functional_with_values([ex, ey], target, m)
        rows.append(sol)
    full = [tuple(r) + tuple(-x for x in r) for r in rows]
    return LatticeMap(full, source_rank=2 * m)


def _functional_with_values(vectors, values, m):
    """Integer functional taking prescribed values on the given vectors."""
    # solve r . v_i = value_i with r integral; the system is underdetermined,
    # any solution works since downstream only uses it on span(v_i)
    cols = list(zip(*vectors))
    aug_rows = [tuple(v) for v in vectors]
    sol = solve(aug_rows, values)
    if sol is None or any(Fraction(x).denominator != 1 for x in sol):
        # fall back to scaled integral solve on the saturation
        sol = solve(aug_rows, values)
        if sol is None:
            raise ValueError("inconsistent functional")
        den = 1
        for x in sol:
            den = den * Fraction(x).denominator
        if den != 1:
            raise ValueError("functional not integral")
    return tuple(int(x) for x in sol)


def secondary_fan_on_quotient(polytope):
    """The secondary fan as a complete fan on N-dagger."""
    from .secondary import enumerate_regular_subdivisions, secondary_cone
    q = quotient_to_secondary(polytope)
    subs = enumerate_regular_subdivisions(polytope)
    tops = []
    maxdim = 0
    for s in subs:
        c = secondary_cone(polytope, s)
        img = q.image_cone(c) if (c.rays or c.lineality) else \
            Cone((), (), ambient=q.target_rank)
        tops.append(img)
        maxdim = max(maxdim, img.dim)
    tops = [c for c in tops if c.dim == maxdim]
    return Fan(tops, q.target_rank)


def build_universal_fan(polytope, pt0=None, xfan=None):
    """Fan of the coarse universal expansion over the logarithmic linear system.

    Fiber product of the system's fan with the subdivided linear system over
    the secondary fan, refined by the pullback of the surface fan."""
    from .loglinear import build_xdagger_fan
    if xfan is None:
        xfan = normal_fan(polytope)
    if pt0 is None:
        pt0 = build_pt0_fan(polytope, xfan)
    xd = build_xdagger_fan(polytope)
    q = quotient_to_secondary(polytope)
    sec = secondary_fan_on_quotient(polytope)
    fp = fiber_product_fans(q, q, pt0, xd, sec)
    coords = monomial_coordinates_map(polytope)
    uni = pullback_fan_structure(coords, xfan.fan, fp)
    uni.projection_to_base = LatticeMap(
        [tuple(1 if j == i else 0 for j in range(2 * polytope.m))
         for i in range(polytope.m)], source_rank=2 * polytope.m)
    uni.coords_map = coords
    return uni


def _sample_split(polytope, cone):
    pt = cone.relint_point()
    m = polytope.m
    return pt[:m], pt[m:]


def ideal_sheaf_weight(polytope, uni, xfan=None):
    """First Chern weight of the universal subscheme's ideal sheaf.

    Codimension-one cones whose fiber point lies on an arc of the fiber curve
    carry the arc's multiplicity (the wall lattice length); fan-only arcs and
    horizontal strata carry zero."""
    if xfan is None:
        xfan = normal_fan(polytope)
    entries = {}
    for kappa in uni.cones_of_codim(1):
        phi, psi = _sample_split(polytope, kappa)
        ab = uni.coords_map(kappa.relint_point())
        vals = polytope.lift_values(psi)
        curve = dual_tropical_curve(polytope, vals)
        gamma = superimpose(curve, xfan)
        w = _arc_weight_at(gamma, ab)
        if w:
            entries[kappa._key] = Fraction(w)
    return MinkowskiWeight(uni, 1, entries)


def _arc_weight_at(gamma, point):
    pt = (Fraction(point[0]), Fraction(point[1]))
    best = 0
    for pc in gamma.pieces:
        if pc.kind == "curve" and _piece_contains_point(pc, pt):
            best += pc.weight
    return best


def point_pullback_weight(polytope, uni, xfan=None):
    """pi_X^*[pt] as a codimension-two weight on the universal fan."""
    if xfan is None:
        xfan = normal_fan(polytope)
    ptw = MinkowskiWeight(xfan.fan, 2,
                          {Cone((), (), ambient=2)._key: Fraction(1)})
    return pullback_weight(uni.coords_map, ptw, uni)


def hyperplane_pullback(polytope, pt0):
    """Pullback of the hyperplane class: one on maximal pair-locus cones."""
    entries = {}
    for sigma in pt0.cones_of_codim(1):
        s = min_set(polytope, sigma.relint_point())
        if len(s) == 2:
            entries[sigma._key] = Fraction(1)
    return MinkowskiWeight(pt0, 1, entries)


def tau0_direct(polytope, pt0=None, uni=None, xfan=None, seed=0, cycle=None):
    """Pushforward of c1(J_Z) cup pi_X^*[pt] cap the pulled-back cycle.

    With cycle=None acts on the fundamental class; returns the cycle on the
    system's fan (the direct route to the point insertion)."""
    if xfan is None:
        xfan = normal_fan(polytope)
    if pt0 is None:
        pt0 = build_pt0_fan(polytope, xfan)
    if uni is None:
        uni = build_universal_fan(polytope, pt0, xfan)
    c1 = ideal_sheaf_weight(polytope, uni, xfan)
    cpt = point_pullback_weight(polytope, uni, xfan)
    support_basis = _support_basis(uni)
    stream = _SubspaceStream(uni.ambient, support_basis, seed)
    w = cup(c1, cpt, v=stream.draw_generic_cup(c1.support(), cpt.support(),
                                               uni.maximal_dim))
    base = fundamental_cycle(uni) if cycle is None else cycle
    v2 = stream.draw()
    capped = cap(w, base, v=v2)
    return pushforward_cycle(uni.projection_to_base, capped, pt0)


def _support_basis(fan):
    top = fan.cones_of_dim(fan.maximal_dim)[0]
    return top.span_lattice_basis()


class _SubspaceStream(DisplacementStream):
    """Displacement vectors drawn inside the support span of a fan."""

    def __init__(self, ambient, basis, seed=0):
        super().__init__(ambient, seed)
        self.basis = basis

    def draw(self):
        coeffs = [Fraction(self.rng.randrange(10 ** 6, 10 ** 7) * 2 + 1,
                           self.rng.randrange(1, 50) * 2 + 1)
                  for _ in self.basis]
        out = [Fraction(0)] * self.ambient
        for c, b in zip(coeffs, self.basis):
            for i, x in enumerate(b):
                out[i] += c * x
        return tuple(out)

    def draw_generic_cup(self, sup_a, sup_b, n):
        from .minkowski import _cup_generic
        for _ in range(32):
            v = self.draw()
            if _cup_generic(v, sup_a, sup_b, n):
                return v
        raise RuntimeError("displacement not generic")


def point_insertion_power(polytope, pt0, sigma, k):
    """Degree of the k-th hyperplane power against V(sigma): one iff sigma
    carries a minimum set of size k + 1, else zero."""
    if pt0.maximal_dim - sigma.dim != k:
        raise ValueError("codim mismatch")
    s = min_set(polytope, sigma.relint_point())
    support = 1 if len(s) == k + 1 else 0
    return Fraction(support)


def boundary_point_weight(d, fan=None):
    """Single-support-point class on the boundary system of d points on P^1.

    Codimension d-1 weight: d! on the two rays of the distinguished line of
    lifts of powers of a single root, zero elsewhere."""
    if d < 1:
        raise ValueError("need d >= 1")
    seg = LatticePolytope([(i,) for i in range(d + 1)])
    if fan is None:
        fan = build_pt0_fan(seg)
    line = tuple(range(1, d + 1))  # e_x in based coordinates
    plus = Cone([line], ambient=d)
    minus = Cone([tuple(-x for x in line)], ambient=d)
    entries = {}
    for c in fan.cones_of_codim(d - 1):
        if c == plus or c == minus:
            entries[c._key] = Fraction(factorial(d))
    if len(entries) != 2:
        raise RuntimeError("distinguished rays missing from the fan")
    return MinkowskiWeight(fan, d - 1, entries)