"""q-integers, q-factorials and q-binomial coefficients."""

from __future__ import annotations

from .cyclo import ONE, ZERO, CyclotomicNumber, as_cyclotomic


def q_int(i: int, p) -> CyclotomicNumber:
    """(i)_p = 1 + p + ... + p^(i-1)."""
    if i < 0:
        raise ValueError("q_int needs a nonnegative index")
    p = as_cyclotomic(p)
    total = ZERO
    power = ONE
    for _ in range(i):
        total = total + power
        power = power * p
    return total


def q_fact(i: int, p) -> CyclotomicNumber:
    """(i)!_p = (1)_p (2)_p ... (i)_p."""
    if i < 0:
        raise ValueError("q_fact needs a nonnegative index")
    p = as_cyclotomic(p)
    result = ONE
    bracket = ZERO
    power = ONE
    for _ in range(i):
        bracket = bracket + power
        power = power * p
        result = result * bracket
    return result


def q_binom(i: int, j: int, p) -> CyclotomicNumber:
    """Gaussian binomial via the q-Pascal rule, so it is defined at roots of unity."""
    if j > i or j < 0 or i < 0:
        raise IndexError(f"q_binom({i}, {j}) is outside 0 <= j <= i")
    p = as_cyclotomic(p)
    powers = [ONE]
    for _ in range(j):
        powers.append(powers[-1] * p)
    row = [ONE]  # row n holds binom(n, 0..min(n, j))
    for n in range(1, i + 1):
        width = min(n, j) + 1
        new = []
        for k in range(width):
            if k == 0 or k == n:
                new.append(ONE)
            else:
                upper = row[k] if k < len(row) else ZERO
                new.append(row[k - 1] + powers[k] * upper)
        row = new
    return row[j]
