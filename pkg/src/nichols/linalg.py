"""Exact linear algebra over a fixed cyclotomic field.

Entries are raw ``flint.fmpq_poly`` values reduced modulo Phi_n; working on
the raw polynomials avoids wrapper overhead inside elimination loops.
"""

from __future__ import annotations

from typing import Sequence

import flint

from .cyclo import CyclotomicNumber, DivisionByZero, cyclotomic_poly

Poly = flint.fmpq_poly


class FieldKernel:
    """Arithmetic in Q(zeta_n) on power-basis polynomials."""

    def __init__(self, n: int):
        self.n = n
        self.modulus = cyclotomic_poly(n)
        self.zero = flint.fmpq_poly(0)
        self.one = flint.fmpq_poly(1)

    def reduce(self, a: Poly) -> Poly:
        return a % self.modulus

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b) % self.modulus

    def inv(self, a: Poly) -> Poly:
        if a.is_zero():
            raise DivisionByZero("pivot is zero")
        if self.n == 1:
            return flint.fmpq_poly([1 / a[0]])
        g, s, _ = a.xgcd(self.modulus)
        return (s / g[0]) % self.modulus

    def embed(self, x: CyclotomicNumber) -> Poly:
        return x.poly_at(self.n)

    def number(self, a: Poly) -> CyclotomicNumber:
        return CyclotomicNumber._raw(self.n, a)


def bareiss_rank(kernel: FieldKernel, matrix: Sequence[Sequence[Poly]]) -> int:
    """Rank by fraction-free elimination; pivots are the first nonzero row in order."""
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = kernel.one
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        top = rows[rank]
        piv = top[col]
        prev_inv = kernel.inv(prev)
        for r in range(rank + 1, len(rows)):
            row = rows[r]
            factor = row[col]
            if factor.is_zero():
                for j in range(col + 1, ncols):
                    if not row[j].is_zero():
                        row[j] = kernel.mul(kernel.reduce(piv * row[j]), prev_inv)
            else:
                for j in range(col + 1, ncols):
                    row[j] = kernel.mul(kernel.reduce(piv * row[j] - factor * top[j]), prev_inv)
            row[col] = kernel.zero
        prev = piv
        rank += 1
        if rank == len(rows):
            break
    return rank


def row_reduce(kernel: FieldKernel, rows: Sequence[Sequence[Poly]]) -> tuple[list[int], list[list[Poly]], list[int]]:
    """Gauss-Jordan elimination.

    Returns (pivot columns, reduced basis rows, indices of the input rows that
    were independent of the rows before them).  The reduced rows satisfy
    ``reduced[k][pivots[k]] == 1`` and vanish at the other pivot columns.
    """
    basis: list[list[Poly]] = []
    pivots: list[int] = []
    independent: list[int] = []
    reduce = kernel.reduce
    for index, row in enumerate(rows):
        # basis rows vanish at each other's pivots, so the multipliers can be
        # read off the original row and the reduction done once at the end
        v = list(row)
        for b, p in zip(basis, pivots):
            f = row[p]
            if f.is_zero():
                continue
            for j, x in enumerate(b):
                if not x.is_zero():
                    v[j] = v[j] - f * x
        v = [reduce(x) for x in v]
        lead = next((j for j, x in enumerate(v) if not x.is_zero()), None)
        if lead is None:
            continue
        scale = kernel.inv(v[lead])
        v = [x if x.is_zero() else kernel.mul(x, scale) for x in v]
        nz = [(j, x) for j, x in enumerate(v) if not x.is_zero()]
        for k, b in enumerate(basis):
            f = b[lead]
            if not f.is_zero():
                nb = list(b)
                for j, x in nz:
                    nb[j] = reduce(nb[j] - f * x)
                basis[k] = nb
        basis.append(v)
        pivots.append(lead)
        independent.append(index)
    return pivots, basis, independent
