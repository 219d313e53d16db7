import random
from fractions import Fraction

import pytest

from troppt.linalg import (lattice_index, smith_invariants, primitive,
                           hermite_normal_form, det, kernel_basis)
from troppt.cones import Cone
from troppt.fans import (Fan, LatticeMap, common_refinement,
                         fiber_product_fans, pullback_fan_structure, FanError)
from troppt.polyhedra import cones_meet_translated, feasible


def test_lattice_index_identity():
    assert lattice_index(2, [(1, 0), (0, 1)]) == 1


def test_lattice_index_determinant():
    assert lattice_index(2, [(2, 0), (0, 1)]) == 2


def test_lattice_index_rank_deficient():
    assert lattice_index(2, [(1, 0)]) == "infinite"


def test_lattice_index_mismatch():
    with pytest.raises(ValueError):
        lattice_index(2, [(1, 0, 0)])


def test_lattice_index_multiplicative_on_chains():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randrange(2, 5)
        # random unimodular times diagonal gives a known index
        d1 = [rng.randrange(1, 4) for _ in range(n)]
        d2 = [rng.randrange(1, 4) for _ in range(n)]
        m1 = [[d1[i] if i == j else rng.randrange(-2, 3) * 0 for j in range(n)]
              for i in range(n)]
        m2 = [[d2[i] if i == j else 0 for j in range(n)] for i in range(n)]
        prod = [[sum(m1[i][k] * m2[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)]
        i1 = lattice_index(n, m1)
        i2 = lattice_index(n, m2)
        i12 = lattice_index(n, prod)
        assert i12 == i1 * i2


def test_hermite_reproduces_lattice():
    m = [(12, 6, 4), (3, 9, 6), (2, 16, 14)]
    h, u = hermite_normal_form(m)
    assert abs(det(u)) == 1
    assert smith_invariants(m) == smith_invariants(list(h))


def test_primitive():
    assert primitive((4, -6)) == (2, -3)
    assert primitive((Fraction(1, 2), Fraction(1, 3))) == (3, 2)


def test_cone_contains_quadrant():
    c = Cone([(1, 0), (0, 1)])
    assert c.contains((2, 3))
    assert not c.contains((-1, 0))


def test_cone_lineality_two_sided():
    c = Cone((), [(1, 1)], ambient=2)
    assert c.contains((-2, -2))
    assert c.contains((2, 2))
    assert not c.contains((1, 0))


def test_cone_rejects_zero_ray():
    with pytest.raises(ValueError):
        Cone([(0, 0)])


def test_cone_facets_of_quadrant():
    c = Cone([(1, 0), (0, 1)])
    assert set(c.facets) == {(1, 0), (0, 1)}
    assert c.equations == ()
    assert c.dim == 2


def test_cone_from_constraints_roundtrip():
    c = Cone.from_constraints(3, [(1, 1, 1)], [(1, 0, 0), (0, 1, 0)])
    assert c.dim == 2
    for r in c.rays:
        assert sum(r) == 0
    # containment matches the constraint system
    assert c.contains((1, 0, -1))
    assert not c.contains((1, 0, 0))


def test_cone_intersection_is_face():
    a = Cone([(1, 0), (0, 1)])
    b = Cone([(0, 1), (-1, 0)])
    m = a.intersect(b)
    assert m.rays == ((0, 1),)
    assert m.is_face_of(a) and m.is_face_of(b)


def test_cone_multiplicity():
    assert Cone([(1, 0), (0, 1)]).multiplicity() == 1
    assert Cone([(1, 0), (1, 2)]).multiplicity() == 2


def fan_p1():
    return Fan([Cone([(1,)]), Cone([(-1,)])], 1)


def fan_p2():
    rays = [(1, 0), (0, 1), (-1, -1)]
    return Fan([Cone([rays[i], rays[(i + 1) % 3]]) for i in range(3)], 2)


def test_common_refinement_idempotent():
    a = fan_p1()
    r = common_refinement(a, a)
    assert {c._key for c in r.cones} == {c._key for c in a.cones}


def test_common_refinement_with_trivial():
    triv = Fan([Cone((), [(1, 0), (0, 1)], ambient=2)], 2)
    b = fan_p2()
    r = common_refinement(triv, b)
    assert {c._key for c in r.cones} == {c._key for c in b.cones}


def test_common_refinement_halfplanes():
    a = Fan([Cone([(1, 0)], [(0, 1)], ambient=2), Cone([(-1, 0)], [(0, 1)], ambient=2)], 2)
    b = Fan([Cone([(0, 1)], [(1, 0)], ambient=2), Cone([(0, -1)], [(1, 0)], ambient=2)], 2)
    r = common_refinement(a, b)
    quads = [c for c in r.cones if c.dim == 2]
    assert len(quads) == 4
    r.check_fan()


def test_common_refinement_lattice_mismatch():
    with pytest.raises(FanError):
        common_refinement(fan_p1(), fan_p2())


def test_star():
    fan = fan_p2()
    ray = Cone([(1, 0)])
    st = fan.star(ray)
    assert len([c for c in st if c.dim == 2]) == 2
    assert ray in st
    zero = Cone((), (), ambient=2)
    assert len(fan.star(zero)) == len(fan.cones)
    top = fan.cones_of_dim(2)[0]
    assert fan.star(top) == [top]


def test_fiber_product_with_identity():
    fan0 = fan_p1()
    ident = LatticeMap([(1,)])
    fp = fiber_product_fans(ident, ident, fan_p1(), fan_p1(), fan0)
    # diagonal fan in Z^2, isomorphic to fan of P^1
    tops = fp.maximal_cones()
    assert sorted(c.rays for c in tops) == [(((-1, -1),)), (((1, 1),))]


def test_fiber_product_over_zero_is_product():
    zerofan = Fan([Cone((), (), ambient=0)], 0)
    to0 = LatticeMap([], source_rank=1, target_rank=0)
    fp = fiber_product_fans(to0, to0, fan_p1(), fan_p1(), zerofan)
    assert len(fp.cones_of_dim(2)) == 4  # quadrants


def test_pullback_fan_structure_trivial_target():
    triv = Fan([Cone((), [(1,)], ambient=1)], 1)
    src = fan_p1()
    ident = LatticeMap([(1,)])
    r = pullback_fan_structure(ident, triv, src)
    assert {c._key for c in r.cones} == {c._key for c in src.cones}


def test_pullback_fan_structure_projection():
    # f: Z^2 -> Z, (a,b) |-> a; target fan of P^1; source = trivial fan on R^2
    f = LatticeMap([(1, 0)])
    src = Fan([Cone((), [(1, 0), (0, 1)], ambient=2)], 2)
    r = pullback_fan_structure(f, fan_p1(), src)
    halves = r.cones_of_dim(2)
    assert len(halves) == 2
    assert all(c.lineality == ((0, 1),) for c in halves)


def test_pullback_refinement_of_identity():
    fine = fan_p2()
    coarse = Fan([Cone((), [(1, 0), (0, 1)], ambient=2)], 2)
    ident = LatticeMap([(1, 0), (0, 1)])
    r = pullback_fan_structure(ident, fine, coarse)
    assert {c._key for c in r.cones} == {c._key for c in fine.cones}


def test_cones_meet_translated():
    quad = Cone([(1, 0), (0, 1)])
    neg = Cone([(-1, 0), (0, -1)])
    assert cones_meet_translated(quad, quad, (0, 0))
    assert cones_meet_translated(quad, neg, (5, 5))      # translate reaches
    assert not cones_meet_translated(quad, neg, (-1, -1))


def test_feasible_strict():
    # x > 0 and x < 0 infeasible; x > 0, x < 1 feasible
    assert not feasible([((1,), 0, True), ((-1,), 0, True)], 1)
    assert feasible([((1,), 0, True), ((-1,), -1, True)], 1)


def test_fan_check_detects_bad_pair():
    a = Cone([(1, 0), (0, 1)])
    b = Cone([(1, 1), (-1, 1)])
    with pytest.raises(FanError):
        Fan([a, b], 2).check_fan()


def test_random_cone_duality_roundtrip():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randrange(2, 5)
        rays = []
        for _ in range(rng.randrange(1, n + 2)):
            v = tuple(rng.randrange(-3, 4) for _ in range(n))
            if any(v):
                rays.append(v)
        if not rays:
            continue
        c = Cone(rays, ambient=n)
        c2 = Cone.from_constraints(n, c.equations, c.facets)
        assert c == c2
        for r in rays:
            assert c.contains(r)
