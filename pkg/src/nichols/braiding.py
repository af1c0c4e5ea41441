"""Rank-two diagonal braidings and their bicharacter on Z^2."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .cyclo import (
    CyclotomicNumber,
    ParseError,
    RootOfUnity,
    as_cyclotomic,
    cyc_root,
    format_literal,
    parse_literal,
)


class MultiDegree(NamedTuple):
    a: int
    b: int

    @property
    def total(self) -> int:
        return self.a + self.b

    def __add__(self, other) -> "MultiDegree":  # type: ignore[override]
        return MultiDegree(self.a + other[0], self.b + other[1])

    def __sub__(self, other) -> "MultiDegree":
        return MultiDegree(self.a - other[0], self.b - other[1])

    def scale(self, k: int) -> "MultiDegree":
        return MultiDegree(k * self.a, k * self.b)


E1 = MultiDegree(1, 0)
E2 = MultiDegree(0, 1)


@dataclass(frozen=True)
class ExponentData:
    """All four entries as powers of one primitive root zeta_modulus."""

    modulus: int
    e11: int
    e12: int
    e21: int
    e22: int

    def chi(self, alpha, beta) -> int:
        a, b = alpha
        c, d = beta
        return (self.e11 * a * c + self.e12 * a * d + self.e21 * b * c + self.e22 * b * d) % self.modulus


@dataclass(frozen=True)
class DiagonalBraiding:
    q11: CyclotomicNumber
    q12: CyclotomicNumber
    q21: CyclotomicNumber
    q22: CyclotomicNumber
    exponents: ExponentData | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for name in ("q11", "q12", "q21", "q22"):
            value = as_cyclotomic(getattr(self, name))
            if value.is_zero():
                raise ValueError(f"braiding entry {name} must be nonzero")
            object.__setattr__(self, name, value)
        if self.exponents is None:
            object.__setattr__(self, "exponents", _detect_exponents(self))

    @classmethod
    def from_exponents(cls, modulus: int, e11: int, e12: int, e21: int, e22: int) -> "DiagonalBraiding":
        data = ExponentData(modulus, e11 % modulus, e12 % modulus, e21 % modulus, e22 % modulus)
        return cls(
            cyc_root(e11, modulus), cyc_root(e12, modulus), cyc_root(e21, modulus), cyc_root(e22, modulus), data
        )

    def entry(self, i: int, j: int) -> CyclotomicNumber:
        return (self.q11, self.q12, self.q21, self.q22)[2 * (i - 1) + (j - 1)]

    @property
    def entries(self) -> tuple[CyclotomicNumber, ...]:
        return (self.q11, self.q12, self.q21, self.q22)

    @property
    def conductor(self) -> int:
        n = 1
        for q in self.entries:
            n = n * q.conductor // math.gcd(n, q.conductor)
        return n

    def to_json(self) -> dict:
        return {k: format_literal(v) for k, v in zip(("q11", "q12", "q21", "q22"), self.entries)}

    @classmethod
    def from_json(cls, doc: dict) -> "DiagonalBraiding":
        try:
            values = [doc[k] for k in ("q11", "q12", "q21", "q22")]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"braiding document needs q11, q12, q21, q22: {exc}") from exc
        return cls(*[_value(v) for v in values])

    def __str__(self) -> str:
        return "(" + ", ".join(format_literal(v) for v in self.entries) + ")"


def _value(v) -> CyclotomicNumber:
    if isinstance(v, dict):
        return CyclotomicNumber.from_json(v)
    if isinstance(v, int):
        return as_cyclotomic(v)
    return parse_literal(str(v))


def _detect_exponents(br: DiagonalBraiding) -> ExponentData | None:
    roots = []
    for q in br.entries:
        r = RootOfUnity.from_cyclotomic(q)
        if r is None:
            return None
        roots.append(r)
    n = 1
    for r in roots:
        n = n * r.order // math.gcd(n, r.order)
    return ExponentData(n, *(r.exponent_mod(n) for r in roots))


@dataclass(frozen=True)
class TwistClass:
    q11: CyclotomicNumber
    q12q21: CyclotomicNumber
    q22: CyclotomicNumber

    def __post_init__(self):
        for name in ("q11", "q12q21", "q22"):
            value = as_cyclotomic(getattr(self, name))
            if value.is_zero():
                raise ValueError(f"twist class entry {name} must be nonzero")
            object.__setattr__(self, name, value)

    def swapped(self) -> "TwistClass":
        return TwistClass(self.q22, self.q12q21, self.q11)

    def representative(self) -> DiagonalBraiding:
        """The braiding (q11, q12q21, 1, q22) in this class."""
        return DiagonalBraiding(self.q11, self.q12q21, as_cyclotomic(1), self.q22)

    def to_json(self) -> dict:
        return {"q11": format_literal(self.q11), "q12q21": format_literal(self.q12q21), "q22": format_literal(self.q22)}


def chi(br: DiagonalBraiding, alpha, beta) -> CyclotomicNumber:
    """The bicharacter: q11^(a a') q12^(a b') q21^(b a') q22^(b b')."""
    ex = br.exponents
    if ex is not None:
        return cyc_root(ex.chi(alpha, beta), ex.modulus)
    a, b = alpha
    c, d = beta
    return br.q11 ** (a * c) * br.q12 ** (a * d) * br.q21 ** (b * c) * br.q22 ** (b * d)


def swap_basis(br: DiagonalBraiding) -> DiagonalBraiding:
    ex = br.exponents
    swapped_ex = None if ex is None else ExponentData(ex.modulus, ex.e22, ex.e21, ex.e12, ex.e11)
    return DiagonalBraiding(br.q22, br.q21, br.q12, br.q11, swapped_ex)


def twist_class(br: DiagonalBraiding) -> TwistClass:
    return TwistClass(br.q11, br.q12 * br.q21, br.q22)
