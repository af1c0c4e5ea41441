"""Necessary conditions A1-A8 for a finite-dimensional Nichols algebra of rank two.

Each condition is a predicate on the braiding with a witness that pins down
why it fails.  Conditions are evaluated in order; once one fails the later
ones are reported as not applicable, since they refer to elements that are
only well defined under the earlier ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .braiding import DiagonalBraiding, swap_basis
from .cyclo import CyclotomicNumber, format_literal, root_order
from .root_vectors import DEFAULT_MAX_INDEX, RootVectorContext, deg_z

CONDITION_NAMES = ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8")


class NoTermination(RuntimeError):
    """Neither the z- nor the u-sequence vanishes within the index cap."""


class Inapplicable(ValueError):
    """The invariant a is only defined when z_2 does not vanish."""


class ConditionStatus(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class ConditionResult:
    status: ConditionStatus
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"status": self.status.value, "witness": self.witness}


HOLDS = ConditionResult(ConditionStatus.HOLDS)
NOT_APPLICABLE = ConditionResult(ConditionStatus.NOT_APPLICABLE)


@dataclass(frozen=True)
class ConditionLimits:
    # only used when the vanishing indices cannot be read off root-of-unity exponents
    max_index: int = DEFAULT_MAX_INDEX
    # off: witnesses carry indices only, skipping the exact value of the failing scalar
    detailed_witnesses: bool = True


@dataclass
class ConditionReport:
    braiding: DiagonalBraiding
    normalized: DiagonalBraiding | None
    results: dict[str, ConditionResult] = field(default_factory=dict)
    swapped: bool = False
    a_value: int | None = None

    @property
    def all_hold(self) -> bool:
        return all(r.status is not ConditionStatus.FAILS for r in self.results.values())

    @property
    def first_failure(self) -> str | None:
        for name in CONDITION_NAMES:
            if self.results[name].status is ConditionStatus.FAILS:
                return name
        return None

    def to_json(self) -> dict:
        doc: dict = {name: self.results[name].to_json() for name in CONDITION_NAMES}
        doc["swapped"] = self.swapped
        doc["a"] = self.a_value
        return doc


def _fail(**witness) -> ConditionResult:
    return ConditionResult(ConditionStatus.FAILS, witness)


def _lit(x: CyclotomicNumber) -> str:
    return format_literal(x)


def is_nontrivial_root(x: CyclotomicNumber) -> bool:
    """x lies in R_n for some n >= 2."""
    order = root_order(x)
    return order is not None and order >= 2


# --------------------------------------------------------------------------
# individual predicates


def check_a1(br: DiagonalBraiding) -> ConditionResult:
    ex = br.exponents
    for name, value, e in (("q11", br.q11, ex and ex.e11), ("q22", br.q22, ex and ex.e22)):
        nontrivial = e % ex.modulus != 0 if ex is not None else is_nontrivial_root(value)
        if not nontrivial:
            return _fail(entry=name, value=_lit(value))
    return HOLDS


def check_a2(br: DiagonalBraiding) -> ConditionResult:
    ex = br.exponents
    if ex is not None:
        n = ex.modulus
        if (ex.e12 + ex.e21) % n == 0 or (ex.e11 + ex.e12 + ex.e21 + ex.e22) % n != 0:
            return HOLDS
    c = br.q12 * br.q21
    if c == 1:
        return HOLDS
    product = br.q11 * c * br.q22
    if not is_nontrivial_root(product):
        return _fail(q12q21=_lit(c), q11q12q21q22=_lit(product))
    return HOLDS


def _vanishing_minima(ctx: RootVectorContext, limits: ConditionLimits) -> tuple[int, int]:
    zmin = ctx.first_z_zero() if ctx.twist_exponents is not None else ctx.min_z_index(limits.max_index)
    umin = ctx.first_u_zero() if ctx.twist_exponents is not None else ctx.min_u_index(limits.max_index)
    if zmin is None and umin is None:
        raise NoTermination(f"no z_i or u_i vanishes for i <= {limits.max_index}")
    inf = float("inf")
    return (zmin if zmin is not None else inf), (umin if umin is not None else inf)  # type: ignore[return-value]


def normalize_A3(br: DiagonalBraiding, limits: ConditionLimits | None = None) -> tuple[DiagonalBraiding, bool]:
    """Order the basis so that min{i | u_i = 0} <= min{i | z_i = 0}; ties keep the given order."""
    limits = limits or ConditionLimits()
    zmin, umin = _vanishing_minima(RootVectorContext(br), limits)
    if umin <= zmin:
        return br, False
    return swap_basis(br), True


def check_a4(ctx: RootVectorContext) -> ConditionResult:
    if ctx.c == 1 or not ctx.z_vanishes(2):
        return HOLDS
    f1 = (1 - ctx.q11 * ctx.c) * (1 + ctx.q11)
    f2 = (1 - ctx.c * ctx.q22) * (1 + ctx.q22)
    if f1.is_zero() and f2.is_zero():
        return HOLDS
    return _fail(z2_vanishes=True, factor_z=_lit(f1), factor_u=_lit(f2))


def _z_horizon(ctx: RootVectorContext, limits: ConditionLimits) -> int:
    """Number of indices i >= 1 with z_i != 0."""
    zmin = ctx.first_z_zero() if ctx.twist_exponents is not None else ctx.min_z_index(limits.max_index)
    if zmin is None:
        raise NoTermination("z-sequence does not vanish")
    return zmin - 1


def check_a5(ctx: RootVectorContext, limits: ConditionLimits) -> ConditionResult:
    last = _z_horizon(ctx, limits)
    fast = ctx.twist_exponents is not None
    n = ctx.twist_exponents[0] if fast else 0
    for i in range(1, last + 1):
        if fast:
            k = -ctx.p_exponent(i) % n
            is_one = k == 0
            is_minus_one = 2 * k == n
        else:
            value = ctx.chi(deg_z(i), deg_z(i))
            is_one = value == 1
            is_minus_one = value == -1
        if is_one:
            return _fail(i=i, chi_zi_zi="1", rule="chi(z_i,z_i) = 1 with z_i != 0")
        if is_minus_one and i < last:
            return _fail(i=i, chi_zi_zi="-1", rule="chi(z_i,z_i) = -1 with z_{i+1} != 0")
    return HOLDS


def check_a6(ctx: RootVectorContext, limits: ConditionLimits) -> ConditionResult:
    last = _z_horizon(ctx, limits)
    for i in range(1, last):
        if ctx.p_order(i) == 3:
            d = ctx.d0(i)
            if not d.is_zero():
                return _fail(i=i, p_order=3, d0=_lit(d))
    return HOLDS


def check_a7(ctx: RootVectorContext, limits: ConditionLimits) -> ConditionResult:
    """w_i = 0 for all i, via the scalar <z^_{i+1} z^_{i-1}, w_i> taken in increasing i."""
    last = _z_horizon(ctx, limits)
    for i in range(1, last):
        if not ctx.w_test_vanishes(i):
            if not limits.detailed_witnesses:
                return _fail(i=i)
            return _fail(i=i, value=_lit(ctx.w_test_scalar(i)))
    return HOLDS


def check_a8(ctx: RootVectorContext, a: int) -> ConditionResult:
    n, e11, _, _ = ctx.twist_exponents if ctx.twist_exponents is not None else (0, 0, 0, 0)
    for m in range(1, a + 2):
        hit = (e11 * m) % n == 0 if n else ctx.q11 ** m == 1
        if hit:
            return _fail(m=m)
    return HOLDS


def necessary_conditions(ctx: RootVectorContext, limits: ConditionLimits) -> tuple[str, ConditionResult] | None:
    """A5, A6 and A7 for the ordering of ``ctx``; the first failure or None."""
    for name, check in (("A5", check_a5), ("A6", check_a6), ("A7", check_a7)):
        result = check(ctx, limits)
        if result.status is ConditionStatus.FAILS:
            return name, result
    return None


def a_invariant(ctx: RootVectorContext) -> int:
    """min{i >= 1 | z_{i+2} = 0}."""
    if ctx.z_vanishes(2) or ctx.z_vanishes(1):
        raise Inapplicable("z_2 = 0")
    zmin = ctx.first_z_zero() if ctx.twist_exponents is not None else ctx.min_z_index(ctx.max_index)
    if zmin is None:
        raise Inapplicable("the z-sequence does not vanish within the cap")
    return zmin - 2


def evaluate_conditions(br: DiagonalBraiding, limits: ConditionLimits | None = None) -> ConditionReport:
    limits = limits or ConditionLimits()
    report = ConditionReport(br, None, {name: NOT_APPLICABLE for name in CONDITION_NAMES})
    results = report.results

    results["A1"] = check_a1(br)
    if results["A1"].status is ConditionStatus.FAILS:
        return report
    results["A2"] = check_a2(br)
    if results["A2"].status is ConditionStatus.FAILS:
        return report
    try:
        normalized, swapped = normalize_A3(br, limits)
    except NoTermination as exc:
        results["A3"] = _fail(reason=str(exc))
        return report
    report.normalized, report.swapped = normalized, swapped
    ctx = RootVectorContext(normalized, limits.max_index)
    zmin, umin = _vanishing_minima(ctx, limits)
    results["A3"] = ConditionResult(ConditionStatus.HOLDS, {"u_min": umin, "z_min": zmin, "swapped": swapped})

    results["A4"] = check_a4(ctx)
    if results["A4"].status is ConditionStatus.FAILS:
        return report
    # A5-A7 do not depend on the basis order, so both orders are checked;
    # the input order first keeps witnesses in the caller's basis
    contexts = [("input", RootVectorContext(br, limits.max_index))] if swapped else []
    contexts.append(("normalized", ctx))
    for name, check in (("A5", check_a5), ("A6", check_a6), ("A7", check_a7)):
        for ordering, c in contexts:
            result = check(c, limits)
            if result.status is ConditionStatus.FAILS:
                results[name] = ConditionResult(result.status, {**(result.witness or {}), "ordering": ordering})
                return report
        results[name] = HOLDS
    if not ctx.z_vanishes(2):
        report.a_value = a_invariant(ctx)
        results["A8"] = check_a8(ctx, report.a_value)
    return report
