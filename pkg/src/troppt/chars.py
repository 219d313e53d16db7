"""Euler-characteristic building blocks: Stirling numbers, configuration
space recursions, punctual Hilbert counts on thickened lines, and the
rubber-Hilbert numbers h(k, n).  Everything is an exact Fraction."""

from fractions import Fraction
from functools import lru_cache
from math import factorial


@lru_cache(maxsize=None)
def stirling2(n, k):
    """Partitions of an n-set into k nonempty blocks."""
    if n < 0 or k < 0:
        raise ValueError("negative arguments")
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def chi_config(n, chi_c):
    """Euler characteristic of n distinct labelled points on a space with
    compactly supported Euler characteristic chi_c."""
    if n < 1:
        raise ValueError("need n >= 1")
    chi_c = Fraction(chi_c)
    memo = {}

    def rec(k):
        if k == 1:
            return chi_c
        if k in memo:
            return memo[k]
        val = chi_c ** k - sum(stirling2(k, j) * rec(j) for j in range(1, k))
        memo[k] = val
        return val

    return rec(n)


@lru_cache(maxsize=None)
def c_seq(n):
    """chi of n distinct labelled points on C* modulo the diagonal torus."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return Fraction(1)
    return Fraction((-1) ** (n - 1)) - sum(
        stirling2(n - 1, k - 1) * c_seq(k) for k in range(2, n))


def partitions(total, max_part=None):
    """Weakly decreasing tuples of positive integers summing to total."""
    if total == 0:
        yield ()
        return
    top = total if max_part is None else min(max_part, total)
    for first in range(top, 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def punctual_count(length, n):
    """Monomial ideals of colength `length` in C[X, eps]/(X^length, eps^n).

    Brute-force staircase enumeration; this is the oracle the closed form P
    is calibrated against."""
    if length < 1 or n < 1:
        raise ValueError("need positive arguments")
    count = 0
    for lam in partitions(length):
        if len(lam) <= n and lam[0] <= length:
            count += 1
    return count


def P(q, length):
    """Partitions of `length` with all parts at most q.

    This is the closed form matching punctual_count(length, q); the naive
    strict reading (parts < q) fails the oracle and is not used."""
    if length == 0:
        return 1
    return sum(1 for lam in partitions(length) if lam[0] <= q)


def N_of(partition):
    """Product of factorials of part multiplicities."""
    out = 1
    for v in set(partition):
        out *= factorial(partition.count(v))
    return out


@lru_cache(maxsize=None)
def h(k, n):
    """Euler-Satake characteristic of Hilb^k(C* x thickening of order n)/C*."""
    if k == 0:
        return Fraction(1)
    total = Fraction(0)
    for lam in partitions(k):
        term = c_seq(len(lam)) / N_of(lam)
        for part in lam:
            term *= P(n, part)
        total += term
    return total
