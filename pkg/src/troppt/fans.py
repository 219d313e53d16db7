"""Polyhedral fans: explicit cone collections closed under faces, with common
refinement, fiber products, fan-structure pullback, and stars."""

from .cones import Cone
from .linalg import mat_mul_vec, rank


class FanError(ValueError):
    pass


class LatticeMap:
    """Integer-matrix map between lattices; rows are target coordinates."""

    def __init__(self, matrix, source_rank=None, target_rank=None):
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        self.target_rank = len(self.matrix) if target_rank is None else target_rank
        if self.matrix:
            src = len(self.matrix[0])
        else:
            src = source_rank
        self.source_rank = src if source_rank is None else source_rank
        for row in self.matrix:
            if len(row) != self.source_rank:
                raise ValueError("rank mismatch")

    def __call__(self, v):
        return mat_mul_vec(self.matrix, v)

    def is_surjective(self):
        from .linalg import smith_invariants
        inv = smith_invariants(self.matrix)
        return len(inv) == self.target_rank and all(d == 1 for d in inv)

    def image_cone(self, cone):
        imgs = [self(r) for r in cone.rays]
        lins = [self(l) for l in cone.lineality]
        imgs = [r for r in imgs if any(r)]
        lins = [l for l in lins if any(l)]
        return Cone(imgs, lins, ambient=self.target_rank)

    def preimage_cone(self, cone):
        """{x : f(x) in cone} as a cone in the source."""
        eqs = [mat_mul_vec(tuple(zip(*self.matrix)), e) for e in cone.equations]
        ineqs = [mat_mul_vec(tuple(zip(*self.matrix)), a) for a in cone.facets]
        return Cone.from_constraints(self.source_rank, eqs, ineqs)


class Fan:
    """Explicit fan: stores every cone (faces included)."""

    def __init__(self, maximal_cones, ambient, check=False):
        self.ambient = ambient
        cones = {}
        for c in maximal_cones:
            if c.ambient != ambient:
                raise FanError("lattice mismatch")
            cones[c._key] = c
        # face closure
        frontier = list(cones.values())
        while frontier:
            new = []
            for c in frontier:
                for f in c.all_faces():
                    if f._key not in cones:
                        cones[f._key] = f
                        new.append(f)
            frontier = new
        zero = Cone((), (), ambient=ambient)
        cones.setdefault(zero._key, zero)
        self.cones = sorted(cones.values(), key=lambda c: (c.dim, c._key))
        self._by_dim = {}
        for c in self.cones:
            self._by_dim.setdefault(c.dim, []).append(c)
        if check:
            self.check_fan()

    @property
    def maximal_dim(self):
        return max(self._by_dim)

    def maximal_cones(self):
        """Cones that are not proper faces of any other cone."""
        out = []
        for c in self.cones:
            if not any(c is not d and c.dim < d.dim and c.is_face_of(d)
                       for d in self.cones):
                out.append(c)
        return out

    def cones_of_dim(self, d):
        return list(self._by_dim.get(d, []))

    def cones_of_codim(self, k):
        return self.cones_of_dim(self.maximal_dim - k)

    def __contains__(self, cone):
        return cone._key in {c._key for c in self.cones}

    def has_cone(self, cone):
        return any(c == cone for c in self.cones)

    def cone_containing(self, v, require_relint=False):
        """Smallest cone containing v (None if outside the support)."""
        best = None
        for c in self.cones:
            if c.contains(v):
                if best is None or c.dim < best.dim:
                    best = c
        if best is not None and require_relint and not best.contains_in_relint(v):
            return None
        return best

    def check_fan(self, max_pairs=None):
        """Verify pairwise intersections are common faces.  Exact."""
        tops = self.maximal_cones()
        count = 0
        for i in range(len(tops)):
            for j in range(i + 1, len(tops)):
                count += 1
                if max_pairs is not None and count > max_pairs:
                    return True
                meet = tops[i].intersect(tops[j])
                if not (meet.is_face_of(tops[i]) and meet.is_face_of(tops[j])):
                    raise FanError(
                        f"cones intersect improperly: {tops[i]} vs {tops[j]}")
        return True

    def star(self, sigma):
        """All cones of the fan having sigma as a face."""
        if not self.has_cone(sigma):
            raise FanError("cone not in fan")
        return [c for c in self.cones if sigma.is_face_of(c)]


def common_refinement(a, b):
    """Fan of all pairwise intersections of cones of a and b."""
    if a.ambient != b.ambient:
        raise FanError("lattice mismatch")
    tops = []
    for s in a.maximal_cones():
        for t in b.maximal_cones():
            c = s.intersect(t)
            tops.append(c)
    # drop cones that are faces of others
    keep = []
    for c in tops:
        if not any(c is not d and c != d and c.is_face_of(d) for d in tops):
            keep.append(c)
    seen = set()
    uniq = []
    for c in keep:
        if c._key not in seen:
            seen.add(c._key)
            uniq.append(c)
    return Fan(uniq, a.ambient)


def fiber_product_fans(f, g, fan1, fan2, fan0):
    """Fiber product of fans over fan0 along maps f: N1 -> N0, g: N2 -> N0.

    Cones are {(x, y) : x in sigma, y in tau, f(x) = g(y)} in N1 + N2."""
    n1, n2 = f.source_rank, g.source_rank
    for fan, h in ((fan1, f), (fan2, g)):
        for c in fan.maximal_cones():
            img = h.image_cone(c) if (c.rays or c.lineality) else None
            if img is None:
                continue
            pt = img.relint_point()
            if fan0.cone_containing(pt) is None:
                raise FanError("not combinatorially compatible")
    eq_rows = [tuple(f.matrix[i]) + tuple(-x for x in g.matrix[i])
               for i in range(f.target_rank)]
    tops = []
    for s in fan1.maximal_cones():
        s_eqs = [e + (0,) * n2 for e in s.equations]
        s_ineqs = [a + (0,) * n2 for a in s.facets]
        for t in fan2.maximal_cones():
            t_eqs = [(0,) * n1 + e for e in t.equations]
            t_ineqs = [(0,) * n1 + a for a in t.facets]
            c = Cone.from_constraints(n1 + n2,
                                      s_eqs + t_eqs + eq_rows,
                                      s_ineqs + t_ineqs)
            tops.append(c)
    keep = []
    for c in tops:
        if not any(c != d and c.is_face_of(d) for d in tops):
            keep.append(c)
    seen, uniq = set(), []
    for c in keep:
        if c._key not in seen:
            seen.add(c._key)
            uniq.append(c)
    return Fan(uniq, n1 + n2)


def pullback_fan_structure(f, target_fan, source_fan):
    """Coarsest refinement of source_fan whose cones map into cones of target_fan."""
    tops = []
    for s in source_fan.maximal_cones():
        pt = s.relint_point()
        if target_fan.cone_containing(f(pt)) is None:
            raise FanError("image escapes target support")
        for t in target_fan.maximal_cones():
            c = s.intersect(f.preimage_cone(t))
            if c.dim == s.dim or (c.rays or c.lineality):
                tops.append(c)
    keep = []
    for c in tops:
        if not any(c != d and c.is_face_of(d) for d in tops):
            keep.append(c)
    seen, uniq = set(), []
    for c in keep:
        if c._key not in seen:
            seen.add(c._key)
            uniq.append(c)
    return Fan(uniq, source_fan.ambient)


def fan_from_rays_and_cones(rays, cones_by_ray_index, ambient):
    """Fan from the JSON-style description: ray list + per-cone ray indices."""
    tops = []
    for idx in cones_by_ray_index:
        if idx:
            tops.append(Cone([rays[i] for i in idx], ambient=ambient))
        else:
            tops.append(Cone((), (), ambient=ambient))
    return Fan(tops, ambient)
