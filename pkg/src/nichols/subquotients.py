"""Braidings of two-dimensional subquotients and the descent through them.

A pair of homogeneous elements of B(V) spanning a Yetter-Drinfeld submodule W
gives a braided vector space whose matrix is chi on their degrees.  Two
one-parameter families of braidings map into themselves under such a step;
``descent_chain`` follows that map until the parameter repeats or a side
condition rules the current braiding out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import product

from .braiding import DiagonalBraiding, MultiDegree, chi
from .cyclo import ZERO, CyclotomicNumber, RootOfUnity, format_literal
from .root_vectors import DegenerateDenominator, RootVectorContext, deg_u, deg_z
from .tensor import NicholsOracle, NotHomogeneous, TensorElement, group_act, multiply, pair

DEFAULT_SKEW_CUTOFF = 8
DEFAULT_MAX_STEPS = 64

# generator degrees used by the step map of both families: w_1 and x_21
STEP_DEGREES = (MultiDegree(2, 2), MultiDegree(1, 1))


class UnrecognizedFamily(ValueError):
    """The braiding is in neither descent family."""


class DescentFamily(str, Enum):
    # (q^4, q^2; q^2, q)
    QUARTIC = "quartic"
    # (q, q^3; q^3, q^9)
    NONIC = "nonic"


class DescentVerdict(str, Enum):
    INFINITE_CHAIN_CYCLE = "InfiniteChainCycle"
    REACHED_KNOWN_INFINITE = "ReachedKnownInfinite"
    BLOCKED = "Blocked"


def subquotient_braiding(br: DiagonalBraiding, d1, d2) -> DiagonalBraiding:
    """The matrix (chi(d_i, d_j)) of the span of two homogeneous elements of degrees d1, d2."""
    d1, d2 = MultiDegree(*d1), MultiDegree(*d2)
    if d1.total <= 0 or d2.total <= 0:
        raise ValueError("generator degrees must be nonzero")
    ex = br.exponents
    if ex is not None:
        return DiagonalBraiding.from_exponents(
            ex.modulus, ex.chi(d1, d1), ex.chi(d1, d2), ex.chi(d2, d1), ex.chi(d2, d2)
        )
    return DiagonalBraiding(chi(br, d1, d1), chi(br, d1, d2), chi(br, d2, d1), chi(br, d2, d2))


@dataclass(frozen=True)
class SubquotientStep:
    source: DiagonalBraiding
    generator_degrees: tuple[MultiDegree, MultiDegree]
    target: DiagonalBraiding
    generators: tuple[TensorElement, TensorElement] | None = None

    def __post_init__(self):
        if subquotient_braiding(self.source, *self.generator_degrees) != self.target:
            raise ValueError("target braiding must be chi on the generator degrees")

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "degrees": [list(d) for d in self.generator_degrees],
            "target": self.target.to_json(),
        }


# --------------------------------------------------------------------------
# validation of a candidate pair of generators


@dataclass
class SubquotientValidation:
    pairing: list[list[CyclotomicNumber]]
    pairing_ok: bool
    skew_primitive_ok: bool
    checked_degree: int
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.pairing_ok and self.skew_primitive_ok

    def to_json(self) -> dict:
        return {
            "pairing": [[format_literal(x) for x in row] for row in self.pairing],
            "pairing_ok": self.pairing_ok,
            "skew_primitive_ok": self.skew_primitive_ok,
            "verified_to_degree": self.checked_degree,
            "counterexample": self.counterexample,
        }


def _monomials(gens, degrees, cutoff: int):
    """Nonempty products of the generators of total degree <= cutoff, with their degrees."""
    found = []
    frontier = [((), None, MultiDegree(0, 0))]
    while frontier:
        nxt = []
        for word, elem, deg in frontier:
            for k, (g, d) in enumerate(zip(gens, degrees)):
                nd = deg + d
                if nd.total > cutoff:
                    continue
                ne = g if elem is None else multiply(elem, g)
                entry = (word + (k,), ne, nd)
                found.append(entry)
                nxt.append(entry)
        frontier = nxt
    return found


def validate_subquotient(
    ctx: RootVectorContext, gens: tuple[TensorElement, TensorElement], cutoff: int = DEFAULT_SKEW_CUTOFF
) -> SubquotientValidation:
    """Check <iota(w_i), w_j> = delta_ij lambda_i with lambda_i != 0, and that <iota(w_i), .>
    is skew-primitive on products of the generators up to total degree ``cutoff``."""
    if cutoff < 1:
        raise ValueError("cutoff must be positive")
    oracle: NicholsOracle = ctx.oracle
    degrees = []
    for g in gens:
        if g.is_zero_tensor():
            raise ValueError("subquotient generators must be nonzero")
        if not g.is_homogeneous():
            raise NotHomogeneous("subquotient generators must be homogeneous")
        d = g.multidegree
        if d.total <= 0:
            raise ValueError("subquotient generators must have positive degree")
        degrees.append(d)

    pairing = [[pair(gi, gj).scalar_part() if degrees[i] == degrees[j] else ZERO
                for j, gj in enumerate(gens)] for i, gi in enumerate(gens)]
    pairing_ok = all(
        (not pairing[i][j].is_zero()) == (i == j) for i in range(2) for j in range(2)
    ) and not any(oracle.is_zero(g) for g in gens)

    counterexample = None
    monomials = _monomials(gens, degrees, cutoff)
    for (i, g), (wa, a, da), (wb, b, db) in product(enumerate(gens), monomials, monomials):
        if da.total + db.total > cutoff:
            continue
        lhs = pair(g, multiply(a, b))
        shift = (-degrees[i][0], -degrees[i][1])
        rhs = multiply(pair(g, a), b) + multiply(group_act(shift, a), pair(g, b))
        diff = lhs - rhs
        if diff.terms and not oracle.is_zero(diff):
            counterexample = {"dual": i, "left": list(wa), "right": list(wb)}
            break
    return SubquotientValidation(pairing, pairing_ok, counterexample is None, cutoff, counterexample)


# --------------------------------------------------------------------------
# descent families


def family_braiding(family: DescentFamily, q: RootOfUnity) -> DiagonalBraiding:
    n, k = q.order, q.exponent
    if family is DescentFamily.QUARTIC:
        return DiagonalBraiding.from_exponents(n, 4 * k, 2 * k, 2 * k, k)
    return DiagonalBraiding.from_exponents(n, k, 3 * k, 3 * k, 9 * k)


def recognize_family(br: DiagonalBraiding) -> tuple[DescentFamily, RootOfUnity]:
    """The family and parameter of br; the quartic family wins when both match."""
    ex = br.exponents
    if ex is None:
        raise UnrecognizedFamily("entries are not all roots of unity")
    m = ex.modulus
    k = ex.e22
    if (ex.e11 - 4 * k) % m == 0 and (ex.e12 - 2 * k) % m == 0 and (ex.e21 - 2 * k) % m == 0:
        return DescentFamily.QUARTIC, RootOfUnity(k, m)
    k = ex.e11
    if (ex.e12 - 3 * k) % m == 0 and (ex.e21 - 3 * k) % m == 0 and (ex.e22 - 9 * k) % m == 0:
        return DescentFamily.NONIC, RootOfUnity(k, m)
    raise UnrecognizedFamily(f"{br} is not of the form (q^4, q^2; q^2, q) or (q, q^3; q^3, q^9)")


@dataclass
class SideCondition:
    family: DescentFamily
    parameter: RootOfUnity
    step: int
    condition: str
    fired: bool
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "parameter": f"z{self.parameter.order}:{self.parameter.exponent}",
            "step": self.step,
            "condition": self.condition,
            "fired": self.fired,
            "evidence": self.evidence,
        }


def _power_is(q: RootOfUnity, k: int, target: int) -> bool:
    """q^k == 1 (target 1) or q^k == -1 (target -1)."""
    r = q ** k
    return r.order == 1 if target == 1 else r.order == 2


def _lit(x: CyclotomicNumber) -> str:
    return format_literal(x)


def _self_chi(ctx: RootVectorContext, d) -> str:
    return _lit(ctx.chi(d, d))


def _quartic_conditions(q: RootOfUnity, ctx: RootVectorContext) -> list[tuple[int, str, bool, dict]]:
    out = []
    fired = _power_is(q, 4, 1)
    out.append((1, "q^4 = 1", fired, {"q11": _lit(ctx.q11)} if fired else {}))
    fired = _power_is(q, 5, 1) and q.order != 1
    out.append((2, "q^5 = 1, q != 1", fired,
                {"z_2_nonzero": not ctx.z_vanishes(2), "chi(z_2,z_2)": _self_chi(ctx, deg_z(2))} if fired else {}))
    fired = _power_is(q, 4, -1)
    out.append((3, "q^4 = -1", fired,
                {"u_2_nonzero": not ctx.u_vanishes(2), "chi(u_2,u_2)": _self_chi(ctx, deg_u(2))} if fired else {}))
    fired = _power_is(q, 9, -1)
    out.append((4, "q^9 = -1", fired,
                {"z_2_nonzero": not ctx.z_vanishes(2), "chi(z_1,z_1)": _self_chi(ctx, deg_z(1))} if fired else {}))
    fired = _power_is(q, 13, -1) and q.order != 2
    out.append((5, "q^13 = -1, q != -1", fired,
                {"z_7_nonzero": not ctx.z_vanishes(7), "chi(z_6,z_6)": _self_chi(ctx, deg_z(6))} if fired else {}))
    return out


def _nonic_conditions(q: RootOfUnity, ctx: RootVectorContext) -> list[tuple[int, str, bool, dict]]:
    out = []
    fired = _power_is(q, 3, -1)
    out.append((1, "q^3 = -1 (outside the family's hypotheses)", fired, {}))
    fired = _power_is(q, 9, 1)
    out.append((1, "q^9 = 1", fired, {"q22": _lit(ctx.q22)} if fired else {}))
    fired = q.order == 7
    out.append((2, "q in R_7", fired,
                {"u_2_nonzero": not ctx.u_vanishes(2), "chi(u_2,u_2)": _self_chi(ctx, deg_u(2))} if fired else {}))
    fired = q.order == 18
    out.append((3, "q in R_18", fired,
                {"z_3_nonzero": not ctx.z_vanishes(3), "chi(z_3,z_3)": _self_chi(ctx, deg_z(3))} if fired else {}))
    fired = q.order in (5, 15)
    evidence: dict = {}
    if q.order == 5:
        evidence = {"z_2_nonzero": not ctx.z_vanishes(2), "chi(z_2,z_2)": _self_chi(ctx, deg_z(2))}
    elif q.order == 15:
        evidence = {
            "first_vanishing_z": ctx.first_z_zero(),
            "chi(z_2,z_2)^3": _lit(ctx.chi(deg_z(2), deg_z(2)) ** 3),
            "d_2,0": _lit(ctx.d0(2)),
        }
    out.append((4, "q^15 = 1, q^3 != 1", fired, evidence))
    fired = _power_is(q, 22, -1)
    evidence = {}
    if q.order == 4:
        evidence = {"q11q12q21q22": _lit(ctx.q11 * ctx.c * ctx.q22)}
    elif q.order == 44:
        evidence = {"first_vanishing_z": ctx.first_z_zero(), "chi(z_19,z_19)": _self_chi(ctx, deg_z(19))}
    out.append((5, "q^22 = -1", fired, evidence))
    return out


def _step_six_evidence(ctx: RootVectorContext) -> tuple[bool, dict]:
    x21 = not ctx.z_vanishes(1)
    # w_1 is defined as 0 when z_2 = 0, and <y_2, w_1> lies in k z_2
    z2 = not ctx.z_vanishes(2)
    try:
        y2w1 = z2 and not ctx.y2_on_w1_vanishes()
    except DegenerateDenominator:
        return False, {"<y_2,w_1>": "undefined", "x_21_nonzero": x21, "z_2_nonzero": z2}
    return y2w1 and x21, {"<y_2,w_1>_nonzero": y2w1, "x_21_nonzero": x21, "z_2_nonzero": z2}


def _next_parameter(family: DescentFamily, q: RootOfUnity) -> RootOfUnity:
    return q ** (9 if family is DescentFamily.QUARTIC else 16)


@dataclass
class DescentOutcome:
    chain: list[SubquotientStep]
    verdict: DescentVerdict
    blocked_step: int | None = None
    reason: str = ""
    conditions: list[SideCondition] = field(default_factory=list)
    # the chain went past a fired side condition, so it only computes the step map
    formal: bool = False

    def __post_init__(self):
        for a, b in zip(self.chain, self.chain[1:]):
            if a.target != b.source:
                raise ValueError("consecutive subquotient steps must chain target to source")

    @property
    def parameters(self) -> list[tuple[DescentFamily, RootOfUnity]]:
        out = []
        for step in self.chain:
            out.append(recognize_family(step.source))
        if self.chain:
            out.append(recognize_family(self.chain[-1].target))
        return out

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "blocked_step": self.blocked_step,
            "reason": self.reason,
            "formal": self.formal,
            "chain": [s.to_json() for s in self.chain],
            "side_conditions": [c.to_json() for c in self.conditions],
        }


def _any_fired(conditions: list[SideCondition]) -> bool:
    return any(c.fired for c in conditions)


def descent_chain(
    br: DiagonalBraiding, max_steps: int = DEFAULT_MAX_STEPS, continue_past_contradictions: bool = False
) -> DescentOutcome:
    """Follow the step map of the family of br.

    Each iterate has its side conditions evaluated first.  If one fires on the
    starting braiding the outcome is Blocked at that step; on a later iterate
    the chain has reached a braiding whose algebra is infinite-dimensional.
    With ``continue_past_contradictions`` fired conditions are only recorded.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    family, q = recognize_family(br)
    chain: list[SubquotientStep] = []
    conditions: list[SideCondition] = []
    seen = {(family, q)}
    current = br
    for _ in range(max_steps):
        ctx = RootVectorContext(current)
        checks = _quartic_conditions(q, ctx) if family is DescentFamily.QUARTIC else _nonic_conditions(q, ctx)
        for step, text, fired, evidence in checks:
            conditions.append(SideCondition(family, q, step, text, fired, evidence))
            if fired and not continue_past_contradictions:
                verdict = DescentVerdict.REACHED_KNOWN_INFINITE if chain else DescentVerdict.BLOCKED
                return DescentOutcome(chain, verdict, step, text, conditions)
        ok, evidence = _step_six_evidence(ctx)
        conditions.append(SideCondition(family, q, 6, "<y_2,w_1> and x_21 nonzero", not ok, evidence))
        if not ok and not continue_past_contradictions:
            return DescentOutcome(chain, DescentVerdict.BLOCKED, 6, "<y_2,w_1> or x_21 vanishes", conditions)
        target = subquotient_braiding(current, *STEP_DEGREES)
        chain.append(SubquotientStep(current, STEP_DEGREES, target))
        q = _next_parameter(family, q)
        family = DescentFamily.QUARTIC
        current = target
        if (family, q) in seen:
            return DescentOutcome(chain, DescentVerdict.INFINITE_CHAIN_CYCLE, None, "parameter repeats", conditions, _any_fired(conditions))
        seen.add((family, q))
    return DescentOutcome(chain, DescentVerdict.BLOCKED, None, f"no repetition within {max_steps} steps", conditions, _any_fired(conditions))


__all__ = [
    "DEFAULT_MAX_STEPS",
    "DEFAULT_SKEW_CUTOFF",
    "STEP_DEGREES",
    "DescentFamily",
    "DescentOutcome",
    "DescentVerdict",
    "SideCondition",
    "SubquotientStep",
    "SubquotientValidation",
    "UnrecognizedFamily",
    "descent_chain",
    "family_braiding",
    "recognize_family",
    "subquotient_braiding",
    "validate_subquotient",
]
