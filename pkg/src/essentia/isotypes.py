"""Deterministic enumeration of isomorphism types of finite modules.

Types are enumerated as multisets of prime powers per prime (exponent
partitions) and assembled into invariant-factor chains, so each type is
visited exactly once.  Over Z this walks all finite abelian groups of
order up to a bound; over F_p[x] all finite module types whose order
p**(total degree) stays within the bound.
"""

from __future__ import annotations

from functools import lru_cache

from . import pid
from .errors import DomainError
from .fgmod import FGModule, _from_prime_exponents
from .pid import PIDElement, Ring, ZZ


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n as non-increasing tuples, lexicographically
    descending; partitions(0) is the single empty partition."""
    if n == 0:
        return ((),)
    out = []

    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for k in range(min(rest, maxpart), 0, -1):
            acc.append(k)
            rec(rest - k, k, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def abelian_type_count(order: int) -> int:
    """Number of abelian groups of the given order (product of partition
    counts of the prime exponents) - an independent counting oracle."""
    count = 1
    for _, e in pid.factor(ZZ.element(order)).factors:
        count *= len(partitions(e))
    return count


def integer_types(max_order: int) -> list[FGModule]:
    """Every isomorphism type of finite abelian group of order 1..max_order."""
    out = []
    for n in range(1, max_order + 1):
        primes = pid.factor(ZZ.element(n)).factors
        choices = [[(p, part) for part in partitions(e)] for p, e in primes]
        for combo in _product(choices):
            exps = {p: list(part) for p, part in combo}
            out.append(_from_prime_exponents(ZZ, 0, exps))
    return out


def _product(choices):
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for tail in _product(choices[1:]):
            yield (head,) + tail


def irreducible_polynomials(p: int, max_degree: int) -> list[PIDElement]:
    """Monic irreducibles of degree 1..max_degree over F_p, sorted by
    (degree, coefficients)."""
    ring = pid.polynomial_ring(p)
    out = []
    for d in range(1, max_degree + 1):
        for coeffs in pid.monic_polynomials(p, d):
            el = PIDElement(ring, coeffs)
            if pid.is_prime(el):
                out.append(el)
    return out


def polynomial_types(p: int, max_order: int) -> list[FGModule]:
    """Every finite F_p[x]-module type of order <= max_order (the order
    is p**(sum of the factor degrees))."""
    ring = pid.polynomial_ring(p)
    dmax = 0
    while p ** (dmax + 1) <= max_order:
        dmax += 1
    irred = irreducible_polynomials(p, dmax)

    def rec(i: int, budget: int):
        if i == len(irred):
            yield {}
            return
        q = irred[i]
        d = q.size()
        for total in range(0, budget // d + 1):
            for part in partitions(total):
                for tail in rec(i + 1, budget - d * total):
                    if part:
                        yield {q: list(part), **tail}
                    else:
                        yield tail

    out = [_from_prime_exponents(ring, 0, exps) for exps in rec(0, dmax)]
    out.sort(key=lambda m: (m.element_count(), tuple(a.sort_key() for a in m.factors)))
    return out


def module_types(ring: Ring, max_order: int) -> list[FGModule]:
    if max_order < 1:
        raise DomainError("max order must be at least 1")
    if ring.is_int:
        return integer_types(max_order)
    return polynomial_types(ring.p, max_order)
