"""Membership in the list of finite-dimensional rank-two Nichols algebras of diagonal type.

``classify_theorem`` transcribes the list item by item.  The item predicates
are written once against a small value interface with two backends: exact
cyclotomic numbers, and integer exponents of a fixed root of unity for fast
sweeps over roots of unity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .braiding import TwistClass
from .cyclo import ONE, root_order


class CaseLabel(NamedTuple):
    part: int
    item: int

    def __str__(self) -> str:
        return "1" if self.part == 1 else f"{self.part}.{self.item}"

    @classmethod
    def parse(cls, text: str) -> "CaseLabel":
        part, _, item = text.partition(".")
        label = cls(int(part), int(item or 1))
        if label not in ALL_LABELS:
            raise ValueError(f"no item {text} in the list")
        return label


ITEM_COUNTS = {1: 1, 2: 7, 3: 7, 4: 8, 5: 5}
ALL_LABELS = tuple(CaseLabel(p, i) for p, n in ITEM_COUNTS.items() for i in range(1, n + 1))
# items whose parameters range over finitely many roots of unity
FINITE_ITEMS = tuple(
    CaseLabel(*x)
    for x in [(2, 5), (2, 6), (2, 7), (3, 3), (3, 4), (3, 5), (3, 6), (3, 7), (4, 5), (4, 6), (4, 7), (4, 8)]
    + [(5, 1), (5, 2), (5, 3), (5, 4), (5, 5)]
)


class Outcome(str, Enum):
    FINITE = "Finite"
    NOT_IN_LIST = "NotInList"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    labels: frozenset = frozenset()
    basis_swapped: bool = False
    evidence: tuple = ()

    def __post_init__(self):
        if (self.outcome is Outcome.FINITE) != bool(self.labels):
            raise ValueError("a verdict is Finite exactly when it carries labels")

    @property
    def canonical_label(self) -> CaseLabel | None:
        return min(self.labels) if self.labels else None

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "labels": [list(lb) for lb in sorted(self.labels)],
            "swapped": self.basis_swapped,
            "evidence": list(self.evidence),
        }


# --------------------------------------------------------------------------
# value backends


class _CyclotomicOps:
    """Exact values; orders through root_order."""

    def __init__(self):
        self._orders: dict = {}

    one = ONE

    def mul(self, x, y):
        return x * y

    def pow(self, x, k: int):
        return x ** k

    def neg(self, x):
        return -x

    def eq(self, x, y) -> bool:
        return x == y

    def order(self, x) -> int:
        o = self._orders.get(x)
        if o is None:
            o = root_order(x) or 0
            self._orders[x] = o
        return o


class ExponentOps:
    """Roots of unity as exponents of zeta_m for one fixed even modulus m."""

    def __init__(self, modulus: int):
        if modulus % 2:
            modulus *= 2
        self.modulus = modulus
        self.one = 0
        self.half = modulus // 2

    def mul(self, x: int, y: int) -> int:
        return (x + y) % self.modulus

    def pow(self, x: int, k: int) -> int:
        return (x * k) % self.modulus

    def neg(self, x: int) -> int:
        return (x + self.half) % self.modulus

    def eq(self, x: int, y: int) -> bool:
        return x == y

    def order(self, x: int) -> int:
        return self.modulus // math.gcd(self.modulus, x)


def _in_R(ops, x, *orders: int) -> bool:
    return ops.order(x) in orders


def _order_at_least(ops, x, n: int) -> bool:
    return ops.order(x) >= n


def list_labels(ops, q, c, r) -> list[CaseLabel]:
    """Items of the list satisfied by (q11, q12q21, q22) = (q, c, r) in this basis order."""
    one = ops.one
    found: list[CaseLabel] = []
    if ops.eq(c, one):
        if _order_at_least(ops, q, 2) and _order_at_least(ops, r, 2):
            found.append(CaseLabel(1, 1))
        return found
    minus_one = ops.neg(one)
    cr = ops.mul(c, r)
    qc = ops.mul(q, c)
    if ops.eq(cr, one):
        if ops.eq(qc, one) and _order_at_least(ops, c, 2):
            found.append(CaseLabel(2, 1))
        if ops.eq(q, minus_one) and _order_at_least(ops, c, 3):
            found.append(CaseLabel(2, 2))
        if _in_R(ops, q, 3) and _order_at_least(ops, c, 2) and not ops.eq(qc, one):
            found.append(CaseLabel(2, 3))
        if _order_at_least(ops, q, 4) and (ops.eq(c, ops.pow(q, -2)) or ops.eq(c, ops.pow(q, -3))):
            found.append(CaseLabel(2, 4))
        if _in_R(ops, c, 8) and ops.eq(q, ops.pow(c, 2)):
            found.append(CaseLabel(2, 5))
        if _in_R(ops, c, 24) and ops.eq(q, ops.pow(c, 6)):
            found.append(CaseLabel(2, 6))
        if _in_R(ops, c, 30) and ops.eq(q, ops.pow(c, 12)):
            found.append(CaseLabel(2, 7))
        return found
    if ops.eq(qc, one):
        return found
    if ops.eq(r, minus_one):
        if _in_R(ops, q, 2, 3):
            if ops.eq(q, minus_one) and _order_at_least(ops, c, 3):
                found.append(CaseLabel(3, 1))
            if _in_R(ops, q, 3) and (ops.eq(c, q) or ops.eq(c, ops.neg(q))):
                found.append(CaseLabel(3, 2))
            if _in_R(ops, qc, 12) and ops.eq(q, ops.pow(qc, 4)):
                found.append(CaseLabel(3, 3))
            if _in_R(ops, c, 12) and ops.eq(q, ops.neg(ops.pow(c, 2))):
                found.append(CaseLabel(3, 4))
            if _in_R(ops, c, 9) and ops.eq(q, ops.pow(c, -3)):
                found.append(CaseLabel(3, 5))
            if _in_R(ops, c, 24) and ops.eq(q, ops.neg(ops.pow(c, 4))):
                found.append(CaseLabel(3, 6))
            if _in_R(ops, c, 30) and ops.eq(q, ops.neg(ops.pow(c, 5))):
                found.append(CaseLabel(3, 7))
        else:
            if _order_at_least(ops, q, 5) and ops.eq(c, ops.pow(q, -2)):
                found.append(CaseLabel(4, 1))
            if _in_R(ops, q, 5, 8, 12, 14, 20) and ops.eq(c, ops.pow(q, -3)):
                found.append(CaseLabel(4, 2))
            if _in_R(ops, q, 10, 18) and ops.eq(c, ops.pow(q, -4)):
                found.append(CaseLabel(4, 3))
            if _in_R(ops, q, 14, 24) and ops.eq(c, ops.pow(q, -5)):
                found.append(CaseLabel(4, 4))
            if _in_R(ops, c, 8) and ops.eq(q, ops.pow(c, -2)):
                found.append(CaseLabel(4, 5))
            if _in_R(ops, c, 12) and ops.eq(q, ops.pow(c, -3)):
                found.append(CaseLabel(4, 6))
            if _in_R(ops, c, 20) and ops.eq(q, ops.pow(c, -4)):
                found.append(CaseLabel(4, 7))
            if _in_R(ops, c, 30) and ops.eq(q, ops.pow(c, -6)):
                found.append(CaseLabel(4, 8))
    if not ops.eq(q, minus_one) and _in_R(ops, r, 3):
        if _in_R(ops, qc, 12) and ops.eq(q, ops.pow(qc, 4)) and ops.eq(r, ops.neg(ops.pow(qc, 2))):
            found.append(CaseLabel(5, 1))
        if _in_R(ops, c, 12) and ops.eq(q, ops.neg(ops.pow(c, 2))) and ops.eq(r, q):
            found.append(CaseLabel(5, 2))
        if _in_R(ops, c, 24) and ops.eq(q, ops.pow(c, -6)) and ops.eq(r, ops.pow(c, -8)):
            found.append(CaseLabel(5, 3))
        if _in_R(ops, q, 18) and ops.eq(c, ops.pow(q, -2)) and ops.eq(r, ops.neg(ops.pow(q, 3))):
            found.append(CaseLabel(5, 4))
        if _in_R(ops, q, 30) and ops.eq(c, ops.pow(q, -3)) and ops.eq(r, ops.neg(ops.pow(q, 5))):
            found.append(CaseLabel(5, 5))
    return found


def headline_gate(ops, c, r) -> bool:
    """q12q21 = 1, q12q21 q22 = 1, q22 = -1 or q22 in R_3; every item satisfies one of these."""
    one = ops.one
    return ops.eq(c, one) or ops.eq(ops.mul(c, r), one) or ops.eq(r, ops.neg(one)) or _in_R(ops, r, 3)


def _verdict(direct: list[CaseLabel], swapped: list[CaseLabel]) -> Verdict:
    labels = frozenset(direct) | frozenset(swapped)
    if not labels:
        return Verdict(Outcome.NOT_IN_LIST, evidence=({"reason": "no item matches either basis order"},))
    best = min(labels)
    evidence = tuple(
        {"label": str(lb), "order": order}
        for order, group in (("given", direct), ("swapped", swapped))
        for lb in sorted(group)
    )
    return Verdict(Outcome.FINITE, labels, best not in direct, evidence)


def classify_theorem(tc: TwistClass) -> Verdict:
    """Test tc and its swap against every item of the list."""
    ops = _CyclotomicOps()
    q, c, r = tc.q11, tc.q12q21, tc.q22
    return _verdict(list_labels(ops, q, c, r), list_labels(ops, r, c, q))


def classify_exponents(modulus: int, e11: int, ec: int, e22: int) -> Verdict:
    """classify_theorem for q11 = zeta_m^e11, q12q21 = zeta_m^ec, q22 = zeta_m^e22."""
    ops = ExponentOps(modulus)
    k = ops.modulus // modulus
    q, c, r = (e11 * k) % ops.modulus, (ec * k) % ops.modulus, (e22 * k) % ops.modulus
    return _verdict(list_labels(ops, q, c, r), list_labels(ops, r, c, q))


__all__ = [
    "ALL_LABELS",
    "FINITE_ITEMS",
    "CaseLabel",
    "ExponentOps",
    "Outcome",
    "Verdict",
    "classify_exponents",
    "classify_theorem",
    "headline_gate",
    "list_labels",
]
