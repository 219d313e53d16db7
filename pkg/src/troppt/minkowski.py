"""Minkowski-weight calculus on fans: balancing, cup and cap products via the
fan displacement rule, pullback along fan maps, and cycle pushforward.

Weights of codimension k assign rationals to cones of codimension k; a weight
is balanced when, across every codimension k+1 cone, the weighted sum of
primitive quotient generators of its facets lies in the span of the cone.
All displacement computations are exact; displacement vectors come from a
seeded deterministic stream and carry a genericity certificate."""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cones import Cone
from .fans import Fan, LatticeMap
from .linalg import (rank, solve, smith_invariants, vec_dot, vec_scale,
                     kernel_basis, primitive)
from .polyhedra import cones_meet_translated, cone_system, feasible


class DisplacementError(RuntimeError):
    pass


def saturated_basis(cone):
    """Integer basis of span(cone) cap Z^n."""
    return cone.span_lattice_basis()


def lattice_sum_index(ambient, cone_a, cone_b):
    """[N : N_a + N_b] for cones whose spans together fill N, else None."""
    gens = list(saturated_basis(cone_a)) + list(saturated_basis(cone_b))
    if not gens:
        return None
    if rank(gens) < ambient:
        return None
    inv = smith_invariants(gens)
    idx = 1
    for v in inv:
        idx *= v
    return idx


def quotient_generator(tau, sigma):
    """Lattice point of N_tau generating N_tau / N_sigma, pointing into tau.

    Requires dim tau = dim sigma + 1 and sigma a face of tau."""
    bt = saturated_basis(tau)
    bs = saturated_basis(sigma)
    k = len(bt)
    if len(bs) != k - 1:
        raise ValueError("tau must exceed sigma by one dimension")
    if bs:
        rows = [solve(list(zip(*bt)), v) for v in bs]
        mat = [tuple(int(x) for x in r) for r in rows]
        psi = kernel_basis(mat)[0]
    else:
        psi = (1,) * 1 if k == 1 else None
        psi = tuple(1 if i == 0 else 0 for i in range(k))
    # coordinates c with psi . c = 1 (psi is primitive)
    c = _bezout_vector(psi)
    u = tuple(sum(c[i] * bt[i][j] for i in range(k))
              for j in range(tau.ambient))
    side = Cone(tau.rays, list(tau.lineality) + list(bs), ambient=tau.ambient) \
        if (bs or tau.lineality) else tau
    if side.contains(u):
        return u
    return vec_scale(-1, u)


def _bezout_vector(psi):
    """Integer c with sum(c_i * psi_i) = 1 for a primitive integer vector."""
    from math import gcd

    def xgcd(a, b):
        x0, x1, y0, y1 = 1, 0, 0, 1
        while b:
            q, a, b = a // b, b, a % b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        return a, x0, y0

    c = [0] * len(psi)
    g = 0
    gcoef = [0] * len(psi)
    for i, a in enumerate(psi):
        if a == 0:
            continue
        if g == 0:
            g = a
            gcoef = [0] * len(psi)
            gcoef[i] = 1
            continue
        gg, x, y = xgcd(g, a)
        gcoef = [x * t for t in gcoef]
        gcoef[i] += y
        g = gg
    if g < 0:
        g = -g
        gcoef = [-t for t in gcoef]
    if g != 1:
        raise ValueError("psi not primitive")
    return gcoef


@dataclass
class MinkowskiWeight:
    fan: Fan
    codim: int
    entries: dict  # cone key -> Fraction

    def value(self, cone):
        return self.entries.get(cone._key, Fraction(0))

    def support(self):
        n = self.fan.maximal_dim
        return [c for c in self.fan.cones_of_codim(self.codim)
                if self.entries.get(c._key, 0) != 0]


@dataclass
class ChowCycle:
    fan: Fan
    dim: int      # dimension of the cycle V(sigma), so cones have dim n - dim
    terms: dict   # cone key -> Fraction

    def coefficient(self, cone):
        return self.terms.get(cone._key, Fraction(0))

    def degree(self):
        """Sum of coefficients; the honest degree for 0-cycles."""
        return sum(self.terms.values(), Fraction(0))


def fundamental_weight(fan):
    return MinkowskiWeight(fan, 0, {c._key: Fraction(1)
                                    for c in fan.cones_of_codim(0)})


def fundamental_cycle(fan):
    zero = Cone((), (), ambient=fan.ambient)
    return ChowCycle(fan, fan.maximal_dim, {zero._key: Fraction(1)})


def check_balancing(weight):
    """Exact Minkowski balancing across every wall of one higher codimension."""
    fan = weight.fan
    n = fan.maximal_dim
    k = weight.codim
    for sigma in fan.cones_of_codim(k + 1):
        acc = None
        span_sigma = saturated_basis(sigma)
        for tau in fan.cones_of_codim(k):
            if not sigma.is_face_of(tau) or sigma == tau:
                continue
            c = weight.value(tau)
            if c == 0:
                continue
            u = quotient_generator(tau, sigma)
            term = vec_scale(c, u)
            acc = term if acc is None else tuple(a + b for a, b in zip(acc, term))
        if acc is None:
            continue
        if span_sigma:
            if solve(list(zip(*span_sigma)), acc) is None:
                return False
        else:
            if any(x != 0 for x in acc):
                return False
    return True


class DisplacementStream:
    """Deterministic generic vectors with exact excess-intersection detection."""

    def __init__(self, ambient, seed=0):
        self.rng = random.Random(100003 + seed)
        self.ambient = ambient

    def draw(self):
        # large, generically independent integer entries
        return tuple(Fraction(self.rng.randrange(10 ** 6, 10 ** 7) * 2 + 1,
                              self.rng.randrange(1, 50) * 2 + 1)
                     for _ in range(self.ambient))

    def generic_for_cap(self, fan, weight_support, targets, base):
        """Vector v with rho cap (gamma + v) nonempty only in expected excess."""
        for _ in range(32):
            v = self.draw()
            if _cap_generic(v, weight_support, targets, base, fan.maximal_dim,
                            fan.ambient):
                return v
        raise DisplacementError("displacement not generic")


def _cap_generic(v, support, targets, base_dim_sum, n, ambient):
    """No pair meets in excess dimension after displacing by v."""
    for rho in support:
        for gamma in targets:
            if rho.dim + gamma.dim < base_dim_sum:
                if cones_meet_translated(rho, gamma, v):
                    return False
    return True


def cap(weight, cycle, v=None, seed=0):
    """Fan displacement rule for weight \\cap cycle (Fulton-Sturmfels)."""
    fan = weight.fan
    n = fan.maximal_dim
    p = weight.codim
    out_dim = cycle.dim - p
    if out_dim < 0:
        return ChowCycle(fan, 0, {})
    support = weight.support()
    result = {}
    by_key = {c._key: c for c in fan.cones}
    for delta_key, lam in cycle.terms.items():
        if lam == 0:
            continue
        delta = by_key[delta_key]
        targets = [g for g in fan.cones_of_dim(delta.dim + p)
                   if delta.is_face_of(g)]
        cands = [r for r in support if delta.is_face_of(r)]
        if v is None:
            stream = DisplacementStream(fan.ambient, seed)
            vv = stream.generic_for_cap(fan, cands, targets, n + delta.dim)
        else:
            vv = v
            if not _cap_generic(vv, cands, targets, n + delta.dim, fan.ambient):
                raise DisplacementError("displacement not generic")
        for gamma in targets:
            coeff = Fraction(0)
            for rho in cands:
                if rho.dim + gamma.dim != n + delta.dim:
                    continue
                if not cones_meet_translated(rho, gamma, vv):
                    continue
                idx = lattice_sum_index(fan.ambient, rho, gamma)
                if idx is None:
                    raise DisplacementError("displacement not generic")
                coeff += weight.value(rho) * idx
            if coeff != 0:
                result[gamma._key] = result.get(gamma._key, Fraction(0)) + lam * coeff
    return ChowCycle(fan, out_dim, {k: c for k, c in result.items() if c != 0})


def cup(a, b, v=None, seed=0):
    """Cup product of Minkowski weights by the displacement rule."""
    if a.fan is not b.fan:
        raise ValueError("weights on different fans")
    fan = a.fan
    n = fan.maximal_dim
    k = a.codim + b.codim
    entries = {}
    sup_a, sup_b = a.support(), b.support()
    if v is None:
        stream = DisplacementStream(fan.ambient, seed)
        for _ in range(32):
            v = stream.draw()
            if _cup_generic(v, sup_a, sup_b, n):
                break
        else:
            raise DisplacementError("displacement not generic")
    else:
        if not _cup_generic(v, sup_a, sup_b, n):
            raise DisplacementError("displacement not generic")
    for gamma in fan.cones_of_codim(k):
        total = Fraction(0)
        for sigma in sup_a:
            if not gamma.is_face_of(sigma):
                continue
            for tau in sup_b:
                if not gamma.is_face_of(tau):
                    continue
                if sigma.dim + tau.dim != n + gamma.dim:
                    continue
                if not cones_meet_translated(sigma, tau, v):
                    continue
                idx = lattice_sum_index(fan.ambient, sigma, tau)
                if idx is None:
                    raise DisplacementError("displacement not generic")
                total += a.value(sigma) * b.value(tau) * idx
        if total != 0:
            entries[gamma._key] = total
    return MinkowskiWeight(fan, k, entries)


def _cup_generic(v, sup_a, sup_b, n):
    for sigma in sup_a:
        for tau in sup_b:
            if sigma.dim + tau.dim < n:
                if cones_meet_translated(sigma, tau, v):
                    return False
    return True


def pullback_weight(f, weight, source_fan):
    """Pull a Minkowski weight back along a surjective morphism of fans."""
    if not f.is_surjective():
        raise ValueError("pullback undefined: use Kunneth route")
    target_fan = weight.fan
    k = weight.codim
    n_t = target_fan.maximal_dim
    entries = {}
    for sigma_p in source_fan.cones_of_codim(k):
        pt = sigma_p.relint_point()
        img = f(pt)
        sigma = target_fan.cone_containing(img)
        if sigma is None:
            raise ValueError("image escapes target support")
        if n_t - sigma.dim != k:
            continue
        val = weight.value(sigma)
        if val == 0:
            continue
        # index of the image lattice of N_{sigma'} inside N_sigma
        bs = saturated_basis(sigma_p)
        imgs = [f(b) for b in bs]
        bt = saturated_basis(sigma)
        if bt:
            coords = [solve(list(zip(*bt)), w) for w in imgs]
            if any(c is None for c in coords):
                continue
            inv = smith_invariants([[int(x) for x in c] for c in coords])
            idx = 1
            for d in inv:
                idx *= d
            if len(inv) < len(bt):
                continue
        else:
            idx = 1
        entries[sigma_p._key] = val * idx
    return MinkowskiWeight(source_fan, k, entries)


def pushforward_cycle(f, cycle, target_fan):
    """Toric pushforward of cycles: degree-index on dimension-preserving cones."""
    fan = cycle.fan
    by_key = {c._key: c for c in fan.cones}
    n_s = fan.maximal_dim
    n_t = target_fan.maximal_dim
    out_dim = cycle.dim
    terms = {}
    for key, lam in cycle.terms.items():
        sigma = by_key[key]
        img_pt = f(sigma.relint_point())
        tau = target_fan.cone_containing(img_pt)
        if tau is None:
            raise ValueError("image escapes target support")
        # V(sigma) has dim n_s - dim sigma; V(tau) has dim n_t - dim tau
        if n_s - sigma.dim != n_t - tau.dim:
            continue
        # generic finiteness degree: index of image lattice in N_tau
        bs = saturated_basis(sigma)
        imgs = [f(b) for b in bs]
        bt = saturated_basis(tau)
        if bt:
            coords = [solve(list(zip(*bt)), w) for w in imgs]
            if any(c is None for c in coords):
                continue
            mat = [[int(x) for x in c] for c in coords]
            inv = smith_invariants(mat)
            if len(inv) < len(bt):
                continue
            idx = 1
            for d in inv:
                idx *= d
        else:
            idx = 1
        terms[tau._key] = terms.get(tau._key, Fraction(0)) + lam * idx
    return ChowCycle(target_fan, out_dim, {k: v for k, v in terms.items() if v})
