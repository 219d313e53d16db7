"""Rational polyhedral cones with exact dual descriptions.

A cone is stored by primitive integer ray generators plus a lineality basis;
facet inequalities and defining equations are computed on demand by a double
description pass and cached.  All arithmetic is exact."""

from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .linalg import (vec_dot, vec_is_zero, vec_scale, vec_sub, primitive,
                     rank, kernel_basis, hermite_normal_form, smith_invariants)


def _dd_add_halfspace(lin, rays, a, processed):
    """One double-description step: intersect (lin, rays) with {x : a.x >= 0}.

    ``processed`` is the list of constraints already imposed; incidence sets
    for the adjacency test are recomputed exactly against it."""
    pivot = None
    for l in lin:
        if vec_dot(a, l) != 0:
            pivot = l
            break
    if pivot is not None:
        if vec_dot(a, pivot) < 0:
            pivot = vec_scale(-1, pivot)
        ap = vec_dot(a, pivot)
        new_lin = []
        for l in lin:
            al = vec_dot(a, l)
            if al == 0:
                new_lin.append(l)
                continue
            w = primitive(vec_sub(vec_scale(ap, l), vec_scale(al, pivot)))
            if not vec_is_zero(w):
                new_lin.append(w)
        new_rays = []
        for r in rays:
            ar = vec_dot(a, r)
            w = primitive(vec_sub(vec_scale(ap, r), vec_scale(ar, pivot)))
            if not vec_is_zero(w):
                new_rays.append(w)
        new_rays.append(primitive(pivot))
        return new_lin, new_rays

    def tightset(r):
        return frozenset(i for i, c in enumerate(processed) if vec_dot(c, r) == 0)

    vals = [vec_dot(a, r) for r in rays]
    pos = [r for r, v in zip(rays, vals) if v > 0]
    zero = [r for r, v in zip(rays, vals) if v == 0]
    neg = [r for r, v in zip(rays, vals) if v < 0]
    if not neg:
        return lin, pos + zero
    tights = {id(r): tightset(r) for r in rays}
    combos = []
    for rp in pos:
        for rn in neg:
            common = tights[id(rp)] & tights[id(rn)]
            adjacent = True
            for r3 in rays:
                if r3 is rp or r3 is rn:
                    continue
                if common <= tights[id(r3)]:
                    adjacent = False
                    break
            if not adjacent:
                continue
            ap, an = vec_dot(a, rp), vec_dot(a, rn)
            new = primitive(vec_sub(vec_scale(ap, rn), vec_scale(an, rp)))
            if not vec_is_zero(new):
                combos.append(new)
    out, seen = [], set()
    for r in pos + zero + combos:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return lin, out


def dd_generators_from_constraints(n, equalities, inequalities):
    """Extreme rays and lineality of {x in R^n : E x = 0, A x >= 0}."""
    lin = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    rays = []
    processed = []
    for e in equalities:
        if vec_is_zero(e):
            continue
        lin, rays = _dd_add_halfspace(lin, rays, e, processed)
        processed.append(e)
        me = vec_scale(-1, e)
        lin, rays = _dd_add_halfspace(lin, rays, me, processed)
        processed.append(me)
    for a in inequalities:
        if vec_is_zero(a):
            continue
        lin, rays = _dd_add_halfspace(lin, rays, a, processed)
        processed.append(a)
    if lin:
        rk = rank(lin)
        rays = [r for r in rays if rank(lin + [r]) > rk]
    return _canonical_rays(rays), _canonical_lineality(lin)


def _canonical_rays(rays):
    return tuple(sorted(set(primitive(r) for r in rays
                            if not vec_is_zero(primitive(r)))))


def _canonical_lineality(lin):
    lin = [primitive(l) for l in lin if not vec_is_zero(primitive(l))]
    if not lin:
        return ()
    h, _ = hermite_normal_form(lin)
    rows = [r for r in h if not vec_is_zero(r)]
    return tuple(primitive(r) for r in rows)


class Cone:
    """Rational polyhedral cone: nonneg span of ``rays`` plus span of ``lineality``."""

    def __init__(self, rays=(), lineality=(), ambient=None):
        rays = [primitive(r) for r in rays]
        if any(vec_is_zero(r) for r in rays):
            raise ValueError("zero vector rejected as ray")
        if ambient is None:
            if rays:
                ambient = len(rays[0])
            elif lineality:
                ambient = len(lineality[0])
            else:
                raise ValueError("ambient rank required for the zero cone")
        self.ambient = ambient
        lin = [primitive(l) for l in lineality if not vec_is_zero(primitive(l))]
        # canonicalize through the dual: catches lineality hidden in the rays
        dual_rays, dual_lin = dd_generators_from_constraints(ambient, lin, rays)
        self._dd = (tuple(dual_lin), tuple(dual_rays))
        prim_rays, prim_lin = dd_generators_from_constraints(
            ambient, list(dual_lin), list(dual_rays))
        self.rays = prim_rays
        self.lineality = prim_lin
        self._key = (self.ambient, self.rays, self.lineality)

    @classmethod
    def from_constraints(cls, n, equalities=(), inequalities=()):
        rays, lin = dd_generators_from_constraints(n, list(equalities),
                                                   list(inequalities))
        return cls(rays, lin, ambient=n)

    def __eq__(self, other):
        return isinstance(other, Cone) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Cone(rays={list(self.rays)}, lin={list(self.lineality)})"

    @cached_property
    def dim(self):
        gens = list(self.rays) + list(self.lineality)
        if not gens:
            return 0
        return rank(gens)

    @property
    def _dual_description(self):
        """(equations, facet inequalities): the cone is {x : E x = 0, A x >= 0}."""
        return self._dd

    @property
    def equations(self):
        return self._dual_description[0]

    @property
    def facets(self):
        return self._dual_description[1]

    def contains(self, v):
        """Exact membership of a rational vector."""
        v = tuple(Fraction(x) for x in v)
        eqs, facets = self._dual_description
        return all(vec_dot(e, v) == 0 for e in eqs) and \
            all(vec_dot(a, v) >= 0 for a in facets)

    def contains_in_relint(self, v):
        v = tuple(Fraction(x) for x in v)
        eqs, facets = self._dual_description
        return all(vec_dot(e, v) == 0 for e in eqs) and \
            all(vec_dot(a, v) > 0 for a in facets)

    def relint_point(self):
        """A rational point in the relative interior."""
        acc = tuple(Fraction(0) for _ in range(self.ambient))
        for r in self.rays:
            acc = tuple(a + b for a, b in zip(acc, r))
        return acc

    def intersect(self, other):
        if self.ambient != other.ambient:
            raise ValueError("lattice mismatch")
        e1, f1 = self._dual_description
        e2, f2 = other._dual_description
        return Cone.from_constraints(self.ambient, list(e1) + list(e2),
                                     list(f1) + list(f2))

    def is_face_of(self, other):
        """True iff self is a face of other (including other itself)."""
        if self.ambient != other.ambient:
            return False
        if not all(other.contains(r) for r in self.rays):
            return False
        if not all(other.contains(l) and other.contains(vec_scale(-1, l))
                   for l in self.lineality):
            return False
        eqs, facets = other._dual_description
        tight = [a for a in facets
                 if all(vec_dot(a, r) == 0 for r in self.rays)
                 and all(vec_dot(a, l) == 0 for l in self.lineality)]
        face = Cone.from_constraints(other.ambient, list(eqs) + tight,
                                     list(facets))
        return face == self

    def face_spanned_by(self, tight_facets):
        eqs, facets = self._dual_description
        return Cone.from_constraints(self.ambient, list(eqs) + list(tight_facets),
                                     list(facets))

    def all_faces(self):
        """All faces of the cone, self included, by facet descent."""
        seen = {self._key: self}
        frontier = [self]
        while frontier:
            nxt = []
            for c in frontier:
                _, facets = c._dual_description
                for a in facets:
                    face = c.face_spanned_by([a])
                    if face._key not in seen:
                        seen[face._key] = face
                        nxt.append(face)
            frontier = nxt
        return list(seen.values())

    def span_lattice_basis(self):
        """Integer basis of the saturated lattice spanned by the cone."""
        if self.dim == 0:
            return []
        eqs = self.equations
        if not eqs:
            return [tuple(1 if i == j else 0 for j in range(self.ambient))
                    for i in range(self.ambient)]
        return kernel_basis(list(eqs))

    def is_simplicial(self):
        return len(self.rays) + len(self.lineality) == self.dim

    def multiplicity(self):
        """Index of the subgroup generated by the rays in the span lattice.

        Defined for simplicial cones; this is the order of the stabilizer of
        the associated stacky point on the canonical smooth stack."""
        if not self.is_simplicial():
            raise ValueError("multiplicity of a non-simplicial cone")
        inv = smith_invariants(list(self.rays) + list(self.lineality))
        m = 1
        for d in inv:
            m *= d
        return m
