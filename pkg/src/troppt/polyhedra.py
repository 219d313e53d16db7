"""Exact feasibility of small affine systems by Fourier-Motzkin elimination.

A constraint is (coeffs, rhs, strict) meaning coeffs . x >= rhs, with > when
strict.  Equalities are passed as pairs of opposite inequalities."""

from fractions import Fraction


def _normalize(c):
    coeffs, rhs, strict = c
    return tuple(Fraction(a) for a in coeffs), Fraction(rhs), bool(strict)


def feasible(constraints, n):
    """True iff {x in Q^n : all constraints} is nonempty."""
    cons = [_normalize(c) for c in constraints]
    for k in range(n - 1, -1, -1):
        lower, upper, rest = [], [], []
        for coeffs, rhs, strict in cons:
            a = coeffs[k]
            if a > 0:
                lower.append((coeffs, rhs, strict))
            elif a < 0:
                upper.append((coeffs, rhs, strict))
            else:
                rest.append((coeffs[:k], rhs, strict))
        new = rest
        for cl, rl, sl in lower:
            for cu, ru, su in upper:
                al, au = cl[k], -cu[k]
                coeffs = tuple(au * cl[i] + al * cu[i] for i in range(k))
                rhs = au * rl + al * ru
                new.append((coeffs, rhs, sl or su))
        seen = set()
        cons = []
        for c in new:
            if c not in seen:
                seen.add(c)
                cons.append(c)
        if len(cons) > 6000:
            cons = _prune(cons)
    for coeffs, rhs, strict in cons:
        if strict:
            if not 0 > rhs:
                return False
        else:
            if not 0 >= rhs:
                return False
    return True


def _prune(cons):
    """Drop constraints dominated by an identical-direction stronger one."""
    best = {}
    for coeffs, rhs, strict in cons:
        key = coeffs
        cur = best.get(key)
        if cur is None or (rhs, strict) > (cur[0], cur[1]):
            best[key] = (rhs, strict)
    return [(k, v[0], v[1]) for k, v in best.items()]


def cone_system(cone, shift=None, strict_interior=False):
    """Constraints expressing x - shift in cone (shift defaults to 0)."""
    n = cone.ambient
    if shift is None:
        shift = tuple(Fraction(0) for _ in range(n))
    out = []
    eqs, facets = cone.equations, cone.facets
    for e in eqs:
        rhs = sum(Fraction(a) * Fraction(s) for a, s in zip(e, shift))
        out.append((e, rhs, False))
        out.append((tuple(-a for a in e), -rhs, False))
    for a in facets:
        rhs = sum(Fraction(x) * Fraction(s) for x, s in zip(a, shift))
        out.append((a, rhs, strict_interior))
    return out


def cones_meet_translated(rho, tau, v):
    """True iff rho intersects (tau + v); exact."""
    sys = cone_system(rho) + cone_system(tau, shift=v)
    return feasible(sys, rho.ambient)
