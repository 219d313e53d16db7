import random
from fractions import Fraction

import pytest

from troppt.secondary import (LatticePolytope, Subdivision, induced_subdivision,
                              secondary_cone, enumerate_regular_subdivisions,
                              dual_tropical_curve, projective_fan, delta_cone,
                              min_set, is_regular)


def unit_square():
    return LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])


def segment(k):
    return LatticePolytope([(i,) for i in range(k + 1)])


def test_trivial_subdivision_of_square():
    sq = unit_square()
    s = induced_subdivision(sq, [0, 0, 0, 0])
    assert len(s.cells) == 1
    assert s.cells[0] == frozenset({0, 1, 2, 3})


def test_square_diagonal_split():
    sq = unit_square()
    s = induced_subdivision(sq, [0, 0, 0, 1])
    cells = set(s.cells)
    assert cells == {frozenset({0, 1, 2}), frozenset({1, 2, 3})}
    # the wall is the antidiagonal (1,0)-(0,1) with lattice length 1
    assert len(s.walls) == 1
    _, _, (a, b), w = s.walls[0]
    assert {a, b} == {(1, 0), (0, 1)}
    assert w == 1


def test_segment_lower_hull():
    seg = segment(2)
    s = induced_subdivision(seg, [0, -1, 0])
    assert set(s.cells) == {frozenset({0, 1}), frozenset({1, 2})}
    s2 = induced_subdivision(seg, [0, 1, 0])
    assert set(s2.cells) == {frozenset({0, 2})}
    assert s2.omitted_points() == (1,)


def test_secondary_cone_trivial_is_lineality():
    sq = unit_square()
    s = induced_subdivision(sq, [0, 0, 0, 0])
    c = secondary_cone(sq, s)
    # lifts of linear functions: e_x, e_y span the cone (mod constants)
    assert c.rays == ()
    assert c.dim == 2
    assert c.contains(sq.monomial_vector(1, 0))
    assert c.contains(sq.monomial_vector(0, 1))


def test_secondary_cone_halfspace_inequality():
    sq = unit_square()
    s = induced_subdivision(sq, [0, 0, 0, 1])
    c = secondary_cone(sq, s)
    # phi(0,0) + phi(1,1) >= phi(1,0) + phi(0,1) modulo lineality
    assert c.dim == 3
    assert c.contains(sq.embed_lift([0, 0, 0, 5]))
    assert not c.contains(sq.embed_lift([0, 0, 0, -5]))


def test_membership_roundtrip():
    sq = unit_square()
    vals = [0, 0, 0, 1]
    s = induced_subdivision(sq, vals)
    c = secondary_cone(sq, s)
    assert c.contains_in_relint(sq.embed_lift(vals))


def test_enumerate_unit_square():
    sq = unit_square()
    subs = enumerate_regular_subdivisions(sq)
    assert len(subs) == 3
    maximal = [s for s in subs if secondary_cone(sq, s).dim == 3]
    assert len(maximal) == 2


def test_enumerate_segment_three_points():
    seg = segment(2)
    subs = enumerate_regular_subdivisions(seg)
    # split at 1, coarse omitting 1, and the coarse cell with 1 marked
    assert len(subs) == 3
    dims = sorted(secondary_cone(seg, s).dim for s in subs)
    assert dims == [1, 2, 2]


def test_enumerate_rectangle_against_lift_oracle():
    rect = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)])
    subs = enumerate_regular_subdivisions(rect)
    # oracle: every subdivision induced by an integer lift must appear
    rng = random.Random(11)
    seen = set()
    for _ in range(400):
        vals = [rng.randrange(-4, 5) for _ in range(6)]
        s = induced_subdivision(rect, vals)
        seen.add(s.cells)
    found = {s.cells for s in subs}
    assert seen <= found
    # and every enumerated subdivision is regular with a realizing lift
    for s in subs:
        assert is_regular(rect, s)


def test_dual_curve_zero_lift_is_cross():
    sq = unit_square()
    c = dual_tropical_curve(sq, [0, 0, 0, 0])
    assert len(c.vertices) == 1
    assert c.vertices[0] == (0, 0)
    assert sorted(d for _, d, _ in c.rays) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert all(w == 1 for _, _, w in c.rays)
    assert c.balanced()


def test_dual_curve_two_trivalent_vertices():
    sq = unit_square()
    c = dual_tropical_curve(sq, [0, 0, 0, 1])
    assert len(c.vertices) == 2
    assert len(c.edges) == 1
    (i, j, d, w) = c.edges[0]
    assert w == 1
    assert d in ((1, 1), (-1, -1))
    assert c.balanced()


def test_dual_curve_translation_equivariance():
    sq = unit_square()
    base = [0, 2, -1, 3]
    a, b = 2, -3
    c0 = dual_tropical_curve(sq, base)
    shifted = [v + a * p[0] + b * p[1] for v, p in zip(base, sq.points)]
    c1 = dual_tropical_curve(sq, shifted)
    for v0, v1 in zip(c0.vertices, c1.vertices):
        assert v1 == (v0[0] - a, v0[1] - b)


def test_duality_roundtrip_random():
    rng = random.Random(5)
    polys = [unit_square(),
             LatticePolytope([(0, 0), (1, 0), (0, 1)]),
             LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)])]
    for _ in range(200):
        poly = polys[rng.randrange(len(polys))]
        vals = [rng.randrange(-5, 6) for _ in poly.points]
        curve = dual_tropical_curve(poly, vals)
        assert curve.balanced()
        assert curve.subdivision.cells == induced_subdivision(poly, vals).cells
        # edge weight equals the lattice length of the dual wall
        for ci, cj, (a, b), w in curve.subdivision.walls:
            from troppt.secondary import lattice_length
            assert w == lattice_length(a, b)


def test_secondary_cones_tile():
    sq = unit_square()
    subs = enumerate_regular_subdivisions(sq)
    rng = random.Random(13)
    for _ in range(50):
        vals = [rng.randrange(-9, 10) for _ in range(4)]
        u = sq.embed_lift(vals)
        hits = [s for s in subs
                if secondary_cone(sq, s).dim == 3
                and secondary_cone(sq, s).contains(u)]
        interior_hits = [s for s in hits
                         if secondary_cone(sq, s).contains_in_relint(u)]
        s_true = induced_subdivision(sq, vals)
        if secondary_cone(sq, s_true).dim == 3:
            assert len(interior_hits) == 1
            assert interior_hits[0].cells == s_true.cells


def test_projective_fan_small():
    seg1 = segment(1)
    fan = projective_fan(seg1)
    assert len(fan.cones_of_dim(1)) == 2
    tri = LatticePolytope([(0, 0), (1, 0), (0, 1)])
    fan2 = projective_fan(tri)
    assert len(fan2.cones_of_dim(2)) == 3
    sq = unit_square()
    fan3 = projective_fan(sq)
    assert len(fan3.cones_of_dim(3)) == 4
    # delta_S for two diagonal points is 2-dimensional
    dc = delta_cone(sq, [sq.index((1, 0)), sq.index((0, 1))])
    assert dc.dim == 2


def test_min_set():
    sq = unit_square()
    u = sq.embed_lift([0, 1, 1, 2])
    assert min_set(sq, u) == frozenset({0})
    u2 = sq.embed_lift([0, 0, 1, 1])
    assert min_set(sq, u2) == frozenset({0, 1})
