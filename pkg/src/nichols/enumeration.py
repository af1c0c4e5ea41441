"""Iteration over triples of roots of unity.

A triple (q11, q12q21, q22) of roots of unity is stored as exponents
(e11, ec, e22) of zeta_L, with L the lcm of the three orders.  The Galois
group of Q(zeta_L) acts on such triples by e -> k e for k a unit mod L.
Every decision made by the classifiers is a polynomial identity with rational
coefficients, so verdicts are constant on these orbits and one
representative per orbit carries the information of the whole orbit.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator

from .cyclo import canonical_conductor, prime_factors


@lru_cache(maxsize=None)
def units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1) if n > 1 else (1,)


def euler_phi(n: int) -> int:
    return len(units(n)) if n > 1 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def primitive_exponents(n: int) -> tuple[int, ...]:
    """Exponents k with zeta_n^k of exact order n."""
    return (0,) if n == 1 else units(n)


def jordan_totient_3(n: int) -> int:
    """Number of exponent triples mod n whose lcm of orders is exactly n."""
    total = n ** 3
    for p in prime_factors(n):
        total = total * (p ** 3 - 1) // p ** 3
    return total


def moduli_with_joint_conductor(bound: int) -> list[int]:
    """All L whose roots of unity generate a field of conductor <= bound."""
    return [L for L in range(1, 2 * bound + 1) if canonical_conductor(L) <= bound]


def _orbit_representatives(n: int, group: list[int]) -> list[int]:
    """Least element of each orbit of ``group`` acting on Z/n by multiplication."""
    seen = bytearray(n)
    reps = []
    for x in range(n):
        if not seen[x]:
            reps.append(x)
            for k in group:
                seen[(k * x) % n] = 1
    return reps


def galois_representatives(L: int) -> Iterator[tuple[int, int, int]]:
    """One triple (e11, ec, e22) mod L per Galois orbit, over triples of exact lcm order L.

    The action is free on these triples, so each orbit has euler_phi(L) elements.
    """
    group = list(units(L)) if L > 1 else [1]
    for d in divisors(L):
        e11 = d % L
        stab1 = [k for k in group if (k * e11) % L == e11]
        for ec in _orbit_representatives(L, stab1):
            stab2 = [k for k in stab1 if (k * ec) % L == ec]
            g = math.gcd(math.gcd(e11, ec), L)
            for e22 in _orbit_representatives(L, stab2):
                if math.gcd(g, e22) == 1:
                    yield e11, ec, e22


def galois_orbit(L: int, triple: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    return sorted({tuple((k * e) % L for e in triple) for k in units(L)})  # type: ignore[misc]


def roots_up_to(max_order: int) -> list[tuple[int, int]]:
    """(order, exponent) for every root of unity of order <= max_order, orders ascending."""
    return [(n, k) for n in range(1, max_order + 1) for k in (range(1) if n == 1 else units(n))]
