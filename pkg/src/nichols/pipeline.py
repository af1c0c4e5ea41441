"""Deciding membership in the list from the necessary conditions.

This path never looks at the list itself.  It evaluates A1-A8, the further
necessary conditions coming from the elements s_i and t_i, computes the
invariant a, sorts the braiding into one of six relation families and then
follows the case analysis for that family down to a list item.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .braiding import DiagonalBraiding, TwistClass, swap_basis
from .classifier import CaseLabel, Outcome, Verdict
from .conditions import ConditionLimits, evaluate_conditions, necessary_conditions
from .cyclo import format_literal
from .root_vectors import RootVectorContext, deg_s, deg_t, deg_w, deg_z, deg_z1
from .subquotients import UnrecognizedFamily, descent_chain, subquotient_braiding

FAMILY_RELATIONS = {
    1: "q22 = q11^(a+1), q12q21 = q11^(-a-1)",
    2: "q22 = -1, q12q21 = q11^(-a-1)",
    3: "q22 = -q11^(2a+1), q12q21 = q11^(-a-1)",
    4: "q11^(a+2) = 1, q22 = q11^-3 (q12q21)^-a",
    5: "q11^(a+2) = 1, q22 = -q11^-6 (q12q21)^(1-a)",
    6: "q11^(a+2) = 1, q22 = -q11^-1 (q12q21)^(-a-1)",
}


@dataclass(frozen=True)
class SixFamily:
    family: int
    a: int

    @property
    def parameters(self) -> str:
        return FAMILY_RELATIONS[self.family]

    def to_json(self) -> dict:
        return {"family": self.family, "a": self.a, "relations": self.parameters}


def six_families(tc: TwistClass, a: int) -> set[SixFamily]:
    """The relation families among the six that (q11, q12q21, q22) satisfies for this a."""
    if a < 1:
        raise ValueError("a must be positive")
    q, c, r = tc.q11, tc.q12q21, tc.q22
    tests = {
        1: lambda: r == q ** (a + 1) and c == q ** (-a - 1),
        2: lambda: r == -1 and c == q ** (-a - 1),
        3: lambda: r == -(q ** (2 * a + 1)) and c == q ** (-a - 1),
        4: lambda: q ** (a + 2) == 1 and r == q ** -3 * c ** (-a),
        5: lambda: q ** (a + 2) == 1 and r == -(q ** -6) * c ** (1 - a),
        6: lambda: q ** (a + 2) == 1 and r == -(q ** -1) * c ** (-a - 1),
    }
    return {SixFamily(f, a) for f, test in tests.items() if test()}


class _Exponents:
    """q11, q12q21, q22 as exponents of zeta_n with n even."""

    def __init__(self, ctx: RootVectorContext):
        n, e1, ec, e2 = ctx.twist_exponents
        k = 2 if n % 2 else 1
        self.n = n * k
        self.q, self.c, self.r = e1 * k, ec * k, e2 * k
        self.minus = self.n // 2

    def eq(self, x: int, y: int) -> bool:
        return (x - y) % self.n == 0

    def order(self, x: int) -> int:
        return self.n // math.gcd(self.n, x % self.n)

    def families(self, a: int) -> set[int]:
        q, c, r, h = self.q, self.c, self.r, self.minus
        eq = self.eq
        out = set()
        if eq(c, -q * (a + 1)):
            if eq(r, q * (a + 1)):
                out.add(1)
            if eq(r, h):
                out.add(2)
            if eq(r, h + q * (2 * a + 1)):
                out.add(3)
        if eq(q * (a + 2), 0):
            if eq(r, -3 * q - a * c):
                out.add(4)
            if eq(r, h - 6 * q + (1 - a) * c):
                out.add(5)
            if eq(r, h - q - (a + 1) * c):
                out.add(6)
        return out


class _Decision:
    """Outcome of the case analysis on one basis order."""

    def __init__(self, kind: Outcome, label: CaseLabel | None = None, swapped: bool = False, note: str = ""):
        self.kind = kind
        self.label = label
        self.swapped = swapped
        self.note = note


def _finite(label: tuple[int, int], note: str, swapped: bool = False) -> _Decision:
    return _Decision(Outcome.FINITE, CaseLabel(*label), swapped, note)


def _infinite(note: str) -> _Decision:
    return _Decision(Outcome.NOT_IN_LIST, note=note)


def _stuck(note: str) -> _Decision:
    return _Decision(Outcome.INDETERMINATE, note=note)


# --------------------------------------------------------------------------
# conditions beyond A1-A8


def s_t_obstruction(ctx: RootVectorContext) -> dict | None:
    """First index where the s_i or t_i criterion forces an infinite-dimensional algebra.

    Assumes A5-A7 hold for the basis order of ``ctx``.
    """
    zmin = ctx.first_z_zero()
    if zmin is None:
        return None
    for i in range(1, zmin - 1):
        d0 = ctx.d0(i)
        if not d0.is_zero():
            p = ctx.p(i)
            if not (1 - p + p * p).is_zero():
                s = ctx.s_test_scalar(i)
                if not s.is_zero():
                    return {"criterion": "s", "i": i, "value": format_literal(s)}
        if not ctx.z2_vanishes(i):
            if ctx.chi_z1_self(i) == -1:
                return {"criterion": "t", "i": i, "chi_z1_z1": "-1"}
            t = ctx.t_test_scalar(i)
            if not t.is_zero():
                return {"criterion": "t", "i": i, "value": format_literal(t)}
    return None


# --------------------------------------------------------------------------
# the case analysis


def _decide(ctx: RootVectorContext, limits: ConditionLimits, depth: int = 0) -> _Decision:
    ex = _Exponents(ctx)
    q, c, r, h = ex.q, ex.c, ex.r, ex.minus
    eq, order = ex.eq, ex.order

    if ctx.z_vanishes(2):
        if eq(c, 0):
            return _finite((1, 1), "q12q21 = 1")
        if eq(q + c, 0):
            if eq(c + r, 0):
                return _finite((2, 1), "z_2 = 0 with q11 q12q21 = 1 and q12q21 q22 = 1")
            if eq(r, h):
                return _finite((2, 2), "z_2 = 0 with q11 q12q21 = 1, q22 = -1; basis exchanged", swapped=True)
        elif eq(q, h):
            if eq(c + r, 0):
                return _finite((2, 2), "z_2 = 0 with q11 = -1 and q12q21 q22 = 1")
            if eq(r, h):
                return _finite((3, 1), "z_2 = 0 with q11 = q22 = -1")
        return _stuck("z_2 = 0 but A4 gives none of its alternatives")

    a = ctx.first_z_zero() - 2
    families = ex.families(a)
    if not families:
        return _stuck(f"a = {a}: no relation family holds although w_a = 0")
    family = min(families)
    where = f"family {family}, a = {a}"
    umin = ctx.first_u_zero()

    if family == 1:
        if a == 1:
            return _finite((2, 3) if order(q) == 3 else (2, 4), f"{where}: Cartan type")
        if a == 2:
            return _finite((2, 4), f"{where}: Cartan type")
        if a == 3:
            return _stuck(f"{where}: chi(z_2, z_2) = 1 should have failed A5")
        return _infinite(f"{where}: Cartan type with a >= 4 is infinite dimensional (trusted fact)")

    if family == 2:
        if a == 1:
            if order(q) == 4:
                return _finite((2, 4), f"{where}: q11 in R_4")
            return _finite((3, 2) if order(q) == 3 else (4, 1), where)
        if a == 2:
            if ctx.z2_vanishes(1):
                return _finite((4, 2), f"{where}: z_(1,2) = 0")
            if ctx.t_test_scalar(1).is_zero():
                return _finite((4, 2), f"{where}: <z^_1, t_1> = 0")
            return _stuck(f"{where}: t_1 criterion should have failed")
        if a in (3, 4):
            return _finite((4, 3) if a == 3 else (4, 4), f"{where}: w_2 = 0")
        return _stuck(f"{where}: w_3 = 0 is impossible for a >= 5")

    if family == 3:
        if umin == 2:
            return _stuck(f"{where}: u_2 = 0 belongs to families 1 or 2")
        if a == 1:
            if order(q) == 18:
                return _finite((5, 4), f"{where}: u_3 = 0, q11 in R_18")
            return _stuck(f"{where}: u_3 = 0 forces q11 in R_18")
        if a == 2:
            if ctx.z2_vanishes(1):
                return _finite((5, 5), f"{where}: z_(1,2) = 0")
            return _stuck(f"{where}: <z^_1, t_1> = 0 contradicts u_4 = 0")
        return _stuck(f"{where}: w_2 = 0 is impossible for a >= 3")

    if eq(c * (a + 2), 0):
        return _stuck(f"{where}: (q12q21)^(a+2) = 1 belongs to families 1-3")

    if family == 4:
        if a == 1:
            return _finite((2, 3), f"{where}: q11 in R_3")
        if a == 2:
            if umin == 2:
                if eq(r, h):
                    return _finite((4, 5), f"{where}: u_2 = 0, q22 = -1")
                return _stuck(f"{where}: u_2 = 0 with q12q21 q22 = 1 is excluded")
            if umin == 3:
                return _finite((5, 3), f"{where}: u_3 = 0")
            if umin == 4:
                if eq(2 * r, h):
                    return _stuck(f"{where}: q22^2 = -1 forces (q12q21)^4 = 1")
                return _exchange(ctx, limits, depth, f"{where}: u_4 = 0")
            return _stuck(f"{where}: A3 requires u_4 = 0")
        if a == 3 and eq(r, h):
            return _finite((4, 8), f"{where}: w_1 = w_2 = 0")
        return _stuck(f"{where}: w_(a-1) = w_(a-2) = 0 leave only a = 3")

    if family == 5:
        if a == 1:
            if ctx.d0(1).is_zero():
                if eq(c, h):
                    return _stuck(f"{where}: q12q21 = -1 belongs to family 4")
                return _finite((3, 2), f"{where}: d_(1,0) = 0")
            if ctx.z2_vanishes(1):
                if eq(2 * c, h):
                    return _finite((3, 3), f"{where}: d_(1,1) = 0, (q12q21)^2 = -1")
                if eq(2 * c, h + q):
                    return _finite((3, 4), f"{where}: d_(1,1) = 0, (q12q21)^2 = -q11")
                if eq(q, -3 * c):
                    return _finite((3, 5), f"{where}: d_(1,1) = 0, q11 = (q12q21)^-3")
                return _stuck(f"{where}: d_(1,1) = 0 has three solutions only")
            if eq(q, h + 4 * c):
                return _finite((3, 6), f"{where}: <z^_1, t_1> = 0, q11 = -(q12q21)^4")
            if order(c) == 30 and eq(q, h + 5 * c):
                return _finite((3, 7), f"{where}: <z^_1, t_1> = 0, q11 = -(q12q21)^5")
            return _stuck(f"{where}: <z^_1, t_1> = 0 has two solutions only")
        if a == 2:
            if order(h + c) == 3:
                return _stuck(f"{where}: (3)_(-q12q21) = 0 should have failed the t_2 criterion")
            if ctx.d0(2).is_zero():
                return _finite((2, 5), f"{where}: s_2 = 0 through d_(2,0) = 0")
            return _finite((2, 6), f"{where}: s_2 = 0 through (3)_(q11^-1 (q12q21)^-2) = 0")
        return _stuck(f"{where}: w_(a-1) = 0 is impossible for a >= 3")

    # family 6
    if a == 1:
        if umin == 3:
            if eq(c + 2 * r, 0):
                return _exchange(ctx, limits, depth, f"{where}: q12q21 q22^2 = 1")
            if order(r) == 3:
                if eq(q + r, 0):
                    return _finite((5, 1), f"{where}: u_3 = 0, q11 = q22^-1")
                if eq(q, r):
                    return _finite((5, 2), f"{where}: u_3 = 0, q11 = q22")
            return _stuck(f"{where}: u_3 = 0 has no further solutions")
        return _stuck(f"{where}: A3 forces u_3 = 0 and u_2 != 0")
    if a == 2:
        return _finite((4, 6), f"{where}: w_1 = 0")
    if a == 3:
        if eq(r, h):
            return _finite((4, 7), f"{where}: w_1 = w_2 = 0, q22 = -1")
        return _finite((2, 7), f"{where}: w_1 = w_2 = 0")
    return _stuck(f"{where}: w_1 = w_2 = 0 leave only a = 3")


def _exchange(ctx: RootVectorContext, limits: ConditionLimits, depth: int, note: str) -> _Decision:
    if depth:
        return _stuck(f"{note}: second basis exchange")
    other = RootVectorContext(swap_basis(ctx.braiding), limits.max_index)
    result = _decide(other, limits, depth + 1)
    result.note = f"{note}; after exchanging the basis: {result.note}"
    result.swapped = not result.swapped
    return result


# generator degrees of the two-dimensional subquotient behind each criterion
_SUBQUOTIENT_DEGREES = {
    "w": lambda i: (deg_w(i), deg_z(i)),
    "s": lambda i: (deg_z(i), deg_s(i)),
    "t": lambda i: (deg_t(i), deg_z1(i)),
}


def _descent_evidence(br: DiagonalBraiding, criterion: str, i: int) -> dict:
    """Run the descent on the subquotient W behind a w/s/t obstruction.

    W outside both descent families is recorded as "cited": its infinite
    dimension is taken as known rather than recomputed.
    """
    d1, d2 = _SUBQUOTIENT_DEGREES[criterion](i)
    sub = subquotient_braiding(br, d1, d2)
    doc: dict = {"step": "descent", "criterion": criterion, "i": i, "W": sub.to_json()}
    try:
        outcome = descent_chain(sub)
    except UnrecognizedFamily:
        doc["result"] = "cited"
        return doc
    doc.update(result=outcome.verdict.value, blocked_step=outcome.blocked_step, length=len(outcome.chain))
    return doc


def classify_pipeline(br: DiagonalBraiding, limits: ConditionLimits | None = None, descend: bool = True) -> Verdict:
    """Decide br from the necessary conditions and the case analysis.

    With ``descend`` the subquotient behind a w, s or t obstruction is followed
    through the descent map and the outcome is added to the evidence.
    """
    limits = limits or ConditionLimits()
    report = evaluate_conditions(br, limits)
    failed = report.first_failure
    if failed is not None:
        evidence = [{"step": "conditions", "failed": failed, "witness": report.results[failed].witness}]
        if descend and failed == "A7":
            witness = report.results[failed].witness or {}
            source = br if witness.get("ordering") == "input" else report.normalized
            evidence.append(_descent_evidence(source, "w", witness["i"]))
        return Verdict(Outcome.NOT_IN_LIST, evidence=tuple(evidence))
    evidence: list[dict] = [{"step": "conditions", "result": "A1-A8 hold", "swapped": report.swapped, "a": report.a_value}]
    ctx = RootVectorContext(report.normalized, limits.max_index)
    other = RootVectorContext(swap_basis(report.normalized), limits.max_index)
    if not report.swapped:
        hit = necessary_conditions(other, limits)
        if hit is not None:
            name, result = hit
            evidence.append({"step": "conditions in the exchanged basis", "failed": name, "witness": result.witness})
            if descend and name == "A7":
                evidence.append(_descent_evidence(other.braiding, "w", result.witness["i"]))
            return Verdict(Outcome.NOT_IN_LIST, evidence=tuple(evidence))
    for order_name, c in (("normalized", ctx), ("exchanged", other)):
        obstruction = s_t_obstruction(c)
        if obstruction is not None:
            evidence.append({"step": f"s/t criteria in the {order_name} basis", **obstruction})
            if descend:
                evidence.append(_descent_evidence(c.braiding, obstruction["criterion"], obstruction["i"]))
            return Verdict(Outcome.NOT_IN_LIST, evidence=tuple(evidence))

    decisions = [(report.swapped, _decide(ctx, limits))]
    if ctx.first_u_zero() == ctx.first_z_zero():
        # A3 holds in both orders; follow the analysis in each
        decisions.append((not report.swapped, _decide(other, limits)))

    labels: dict[CaseLabel, bool] = {}
    kinds = set()
    for base_swapped, d in decisions:
        kinds.add(d.kind)
        evidence.append({"step": "case analysis", "outcome": d.kind.value, "detail": d.note})
        if d.kind is Outcome.FINITE:
            labels.setdefault(d.label, base_swapped != d.swapped)
    if Outcome.INDETERMINATE in kinds or len(kinds) > 1:
        return Verdict(Outcome.INDETERMINATE, evidence=tuple(evidence))
    if labels:
        best = min(labels)
        return Verdict(Outcome.FINITE, frozenset(labels), labels[best], tuple(evidence))
    return Verdict(Outcome.NOT_IN_LIST, evidence=tuple(evidence))


__all__ = ["FAMILY_RELATIONS", "SixFamily", "classify_pipeline", "s_t_obstruction", "six_families"]
