"""Job configuration, sweeps over roots of unity, the invariant suite and JSON reports."""

from __future__ import annotations

import math
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from . import __version__, cyclo
from .braiding import DiagonalBraiding, MultiDegree, chi, swap_basis, twist_class
from .classifier import (
    ALL_LABELS,
    ExponentOps,
    Verdict,
    _verdict,
    classify_exponents,
    classify_theorem,
    headline_gate,
    list_labels,
)
from .conditions import ConditionLimits
from .cyclo import ConductorCeilingExceeded, CyclotomicNumber, cyc_root, parse_literal, root_order
from .enumeration import galois_representatives, moduli_with_joint_conductor, roots_up_to
from .pipeline import classify_pipeline
from .qcomb import q_binom, q_fact, q_int
from .root_vectors import RootVectorContext
from .subquotients import DescentFamily, DescentVerdict, descent_chain, family_braiding, subquotient_braiding
from .tensor import NicholsOracle, TensorElement, derive, group_act, hilbert_series, multiply

DEFAULT_PIPELINE_CONDUCTOR = 60


@dataclass(frozen=True)
class JobConfig:
    max_degree: int = 10
    max_index: int = 16
    max_order: int = 30
    conductor_ceiling: int = 360
    workers: int = 1
    seed: int = 0

    def __post_init__(self):
        for name in ("max_degree", "max_index", "max_order", "conductor_ceiling", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_env(cls, **overrides) -> "JobConfig":
        env = os.environ.get("NICHOLS_WORKERS")
        if env:
            overrides["workers"] = int(env)
        return cls(**overrides)

    def apply(self) -> None:
        cyclo.CONDUCTOR_CEILING = self.conductor_ceiling

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class ReportDocument:
    command: str
    config: JobConfig
    results: dict
    seconds: float = 0.0
    alarm: bool = False
    tool_version: str = __version__

    def to_json(self) -> dict:
        return {
            "tool": "nichols",
            "version": self.tool_version,
            "command": self.command,
            "config": self.config.to_json(),
            "results": self.results,
            "alarm": self.alarm,
            "timing": {"seconds": round(self.seconds, 3)},
        }


def parse_scalar_literal(text: str) -> CyclotomicNumber:
    return parse_literal(text)


def _map(fn: Callable, items: list, workers: int) -> list:
    """Order-preserving map, over a process pool when workers > 1."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# --------------------------------------------------------------------------
# the literal sweep


def _root_literal(n: int, k: int) -> str:
    return f"z{n}:{k}"


@dataclass
class LabelCounts:
    direct: Counter = field(default_factory=Counter)
    swapped: Counter = field(default_factory=Counter)
    canonical: Counter = field(default_factory=Counter)

    def to_json(self) -> dict:
        return {
            str(lb): {"direct": self.direct[lb], "swapped": self.swapped[lb], "canonical": self.canonical[lb]}
            for lb in ALL_LABELS
        }


def _literal_slice(args: tuple[int, int, bool]) -> tuple[list, LabelCounts, int]:
    """All triples whose q11 is the root with index ``qi``."""
    max_order, qi, keep_records = args
    roots = roots_up_to(max_order)
    modulus = math.lcm(*range(1, max_order + 1))
    ops = ExponentOps(modulus)
    scale = ops.modulus // modulus
    exps = [k * scale * (modulus // n) % ops.modulus for n, k in roots]
    gates = _gate_table(ops, exps)
    q = exps[qi]
    counts = LabelCounts()
    records = []
    evaluated = 0
    for ci, c in enumerate(exps):
        passing = gates[ci]
        rs = range(len(exps)) if qi in passing else sorted(passing)
        for ri in rs:
            r = exps[ri]
            evaluated += 1
            direct = list_labels(ops, q, c, r)
            swapped = list_labels(ops, r, c, q)
            if not direct and not swapped:
                continue
            v = _verdict(direct, swapped)
            counts.direct.update(direct)
            counts.swapped.update(swapped)
            counts.canonical[v.canonical_label] += 1
            if keep_records:
                records.append(
                    {
                        "triple": [_root_literal(*roots[i]) for i in (qi, ci, ri)],
                        "labels": [str(lb) for lb in sorted(v.labels)],
                        "swapped": v.basis_swapped,
                    }
                )
    return records, counts, evaluated


_GATES: dict = {}


def _gate_table(ops: ExponentOps, exps: list[int]) -> list[set[int]]:
    key = (ops.modulus, len(exps))
    table = _GATES.get(key)
    if table is None:
        table = [{ri for ri, r in enumerate(exps) if headline_gate(ops, c, r)} for c in exps]
        _GATES[key] = table
    return table


def literal_sweep(max_order: int, workers: int = 1, keep_records: bool = True) -> dict:
    """classify_theorem over every triple of roots of unity of order <= max_order.

    Triples failing the headline gate in both basis orders satisfy no item and
    are counted without being evaluated.
    """
    roots = roots_up_to(max_order)
    parts = _map(_literal_slice, [(max_order, qi, keep_records) for qi in range(len(roots))], workers)
    counts = LabelCounts()
    records: list = []
    evaluated = 0
    for recs, cnt, ev in parts:
        records.extend(recs)
        counts.direct.update(cnt.direct)
        counts.swapped.update(cnt.swapped)
        counts.canonical.update(cnt.canonical)
        evaluated += ev
    finite = sum(counts.canonical.values())
    return {
        "max_order": max_order,
        "roots": len(roots),
        "triples": len(roots) ** 3,
        "evaluated": evaluated,
        "finite": finite,
        "labels": counts.to_json(),
        "records": records,
    }


# --------------------------------------------------------------------------
# the cross-validation sweep


def _verdict_key(v: Verdict) -> tuple[str, str | None]:
    lb = v.canonical_label
    return v.outcome.value, None if lb is None else str(lb)


def compare_triple(modulus: int, e11: int, ec: int, e22: int, limits: ConditionLimits | None = None) -> dict | None:
    """None when both classifiers agree on (zeta^e11, zeta^ec, zeta^e22), else a disagreement record."""
    literal = classify_exponents(modulus, e11, ec, e22)
    piped = classify_pipeline(DiagonalBraiding.from_exponents(modulus, e11, ec, 0, e22), limits, descend=False)
    if _verdict_key(literal) == _verdict_key(piped):
        return None
    return {
        "triple": [_root_literal(modulus, e) for e in (e11, ec, e22)],
        "theorem": literal.to_json(),
        "pipeline": piped.to_json(),
    }


def _pipeline_modulus(args: tuple[int, int, bool]) -> tuple[list, Counter, int, int]:
    L, max_index, orbits = args
    limits = ConditionLimits(max_index, detailed_witnesses=False)
    disagreements = []
    outcomes: Counter = Counter()
    skipped = 0
    count = 0
    triples: Iterable = galois_representatives(L)
    if not orbits:
        triples = (t for t in _all_triples(L))
    for e in triples:
        count += 1
        try:
            rec = compare_triple(L, *e, limits=limits)
        except ConductorCeilingExceeded:
            skipped += 1
            continue
        outcomes["agree" if rec is None else "disagree"] += 1
        if rec is not None:
            disagreements.append(rec)
    return disagreements, outcomes, skipped, count


def _all_triples(L: int):
    for e11 in range(L):
        for ec in range(L):
            for e22 in range(L):
                if math.gcd(math.gcd(math.gcd(e11, ec), e22), L) == 1:
                    yield e11, ec, e22


def pipeline_sweep(bound: int = DEFAULT_PIPELINE_CONDUCTOR, max_index: int = 16, workers: int = 1, orbits: bool = True) -> dict:
    """Compare both classifiers on every triple of roots of unity with joint conductor <= bound.

    With ``orbits`` one triple per Galois orbit is compared; the verdicts of
    both classifiers are constant on orbits.
    """
    moduli = moduli_with_joint_conductor(bound)
    parts = _map(_pipeline_modulus, [(L, max_index, orbits) for L in moduli], workers)
    disagreements: list = []
    outcomes: Counter = Counter()
    skipped = compared = 0
    for dis, out, sk, cnt in parts:
        disagreements.extend(dis)
        outcomes.update(out)
        skipped += sk
        compared += cnt
    return {
        "conductor_bound": bound,
        "galois_orbits": orbits,
        "moduli": len(moduli),
        "compared": compared,
        "agreements": outcomes["agree"],
        "disagreement_count": len(disagreements),
        "ceiling_skipped": skipped,
        "disagreements": disagreements,
    }


# --------------------------------------------------------------------------
# the invariant suite


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str | None = None

    def record(self, ok: bool, detail: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = detail

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "failed": self.failed, "first_failure": self.first_failure}


def _random_number(rng: random.Random, n: int) -> CyclotomicNumber:
    return CyclotomicNumber(n, [rng.randint(-3, 3) for _ in range(rng.randint(1, n))])


def _random_roots_braiding(rng: random.Random, moduli=(2, 3, 4, 5, 6, 8, 10, 12)) -> DiagonalBraiding:
    n = rng.choice(moduli)
    return DiagonalBraiding.from_exponents(n, *[rng.randrange(n) for _ in range(4)])


def _check_field(rng, samples, out: CheckResult):
    for _ in range(samples):
        n = rng.choice([3, 4, 5, 7, 8, 9, 12, 15, 20, 24])
        a, b, c = (_random_number(rng, n) for _ in range(3))
        out.record((a + b) * c == a * c + b * c, f"distributivity at conductor {n}")
        out.record(parse_literal(cyclo.format_literal(a)) == a, f"literal round trip {cyclo.format_literal(a)}")
        out.record(CyclotomicNumber.from_json(a.to_json()) == a, "json round trip")
        if not a.is_zero():
            out.record(a * a.inverse() == 1, f"inverse at conductor {n}")


def _check_roots(rng, samples, out: CheckResult):
    for _ in range(samples):
        n = rng.randint(1, 60)
        k = rng.randrange(n)
        out.record(root_order(cyc_root(k, n)) == n // math.gcd(n, k), f"order of z{n}:{k}")


def _check_qcomb(rng, samples, out: CheckResult):
    for _ in range(samples):
        n = rng.choice([3, 4, 5, 6, 7, 8, 12])
        p = cyc_root(rng.randrange(n), n)
        i = rng.randint(1, 8)
        j = rng.randint(1, i)
        pascal = q_binom(i - 1, j - 1, p) + p ** j * (q_binom(i - 1, j, p) if j <= i - 1 else 0)
        out.record(q_binom(i, j, p) == pascal, f"q-Pascal at ({i},{j})")
        out.record(q_fact(i, p) == q_int(i, p) * q_fact(i - 1, p), f"factorial step at {i}")


def _check_braiding(rng, samples, out: CheckResult):
    for _ in range(samples):
        br = _random_roots_braiding(rng)
        a, b, c = (MultiDegree(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(3))
        out.record(chi(br, a + b, c) == chi(br, a, c) * chi(br, b, c), "bicharacter in the first slot")
        out.record(chi(br, a, b + c) == chi(br, a, b) * chi(br, a, c), "bicharacter in the second slot")
        out.record(swap_basis(swap_basis(br)) == br, "basis exchange is an involution")
        out.record(twist_class(swap_basis(br)) == twist_class(br).swapped(), "twist class of the exchange")


def _check_tensor(rng, samples, out: CheckResult):
    for _ in range(samples):
        br = _random_roots_braiding(rng)
        u = TensorElement.word(br, [rng.choice((1, 2)) for _ in range(rng.randint(1, 3))])
        v = TensorElement.word(br, [rng.choice((1, 2)) for _ in range(rng.randint(1, 3))])
        i = rng.choice((1, 2))
        e = (-1, 0) if i == 1 else (0, -1)
        lhs = derive(i, multiply(u, v))
        rhs = multiply(derive(i, u), v) + multiply(group_act(e, u), derive(i, v))
        out.record(lhs == rhs, f"skew Leibniz rule for d_{i}")
    out.record(hilbert_series(DiagonalBraiding(-1, 1, 1, -1), 3) == [1, 2, 1, 0], "exterior algebra dimensions")


def _check_root_vectors(rng, samples, out: CheckResult):
    for _ in range(max(1, samples // 4)):
        br = _random_roots_braiding(rng, (3, 4, 5, 6, 8))
        ctx = RootVectorContext(br, oracle=NicholsOracle(br))
        for i in range(1, 4):
            for j in range(0, i + 1):
                got = ctx.pair_hat(ctx.z_elem(j), ctx.z_elem(i)).coefficient((1,) * (i - j))
                out.record(got == ctx.zhat_on_z(j, i), f"<z^_{j}, z_{i}> on {br}")
            oracle_zero = ctx.oracle.is_zero(ctx.z_elem(i))
            out.record(oracle_zero == ctx.z_vanishes(i), f"z_{i} vanishing on {br}")


def _check_classifiers(rng, samples, out: CheckResult):
    for _ in range(samples):
        L = rng.choice([4, 6, 8, 9, 10, 12, 14, 15, 18, 20, 24, 30])
        e = tuple(rng.randrange(L) for _ in range(3))
        tc = twist_class(DiagonalBraiding.from_exponents(L, e[0], e[1], 0, e[2]))
        out.record(_verdict_key(classify_theorem(tc)) == _verdict_key(classify_exponents(L, *e)), f"backends on {e} mod {L}")
        ops = ExponentOps(L)
        k = ops.modulus // L
        q, c, r = (x * k % ops.modulus for x in e)
        if list_labels(ops, q, c, r):
            out.record(headline_gate(ops, c, r), f"gate admits every list member ({e} mod {L})")
        out.record(compare_triple(L, *e) is None, f"pipeline agrees on {e} mod {L}")
        swapped = classify_exponents(L, e[2], e[1], e[0])
        out.record(_verdict_key(swapped) == _verdict_key(classify_exponents(L, *e)), "swap invariance")


def _check_subquotients(rng, samples, out: CheckResult):
    for n in (7, 11, 22, 26):
        q = cyclo.RootOfUnity(1, n)
        br = family_braiding(DescentFamily.QUARTIC, q)
        target = subquotient_braiding(br, (2, 2), (1, 1))
        out.record(target == family_braiding(DescentFamily.QUARTIC, q ** 9), f"quartic step map at order {n}")
        br2 = family_braiding(DescentFamily.NONIC, q)
        out.record(subquotient_braiding(br2, (2, 2), (1, 1)) == family_braiding(DescentFamily.QUARTIC, q ** 16),
                   f"nonic step map at order {n}")
    out.record(descent_chain(family_braiding(DescentFamily.QUARTIC, cyclo.RootOfUnity(1, 11))).verdict
               is DescentVerdict.INFINITE_CHAIN_CYCLE, "quartic family cycles at order 11")
    blocked = descent_chain(family_braiding(DescentFamily.QUARTIC, cyclo.RootOfUnity(1, 26)))
    out.record(blocked.verdict is DescentVerdict.BLOCKED and blocked.blocked_step == 5, "order 26 blocked at step 5")


VERIFY_CHECKS: dict[str, Callable] = {
    "cyclo_field.arithmetic": _check_field,
    "cyclo_field.root_orders": _check_roots,
    "qcombinatorics.identities": _check_qcomb,
    "braided_space.bicharacter": _check_braiding,
    "tensor_oracle.derivations": _check_tensor,
    "root_vectors.closed_forms": _check_root_vectors,
    "classifier.agreement": _check_classifiers,
    "subquotients.descent": _check_subquotients,
}


def run_verify(seed: int = 0, samples: int = 20) -> dict:
    results = []
    for name, check in VERIFY_CHECKS.items():
        out = CheckResult(name)
        check(random.Random(f"{seed}:{name}"), samples, out)
        results.append(out.to_json())
    return {
        "seed": seed,
        "samples": samples,
        "checks": results,
        "passed": sum(r["passed"] for r in results),
        "failed": sum(r["failed"] for r in results),
    }


def timed(fn: Callable[[], dict]) -> tuple[dict, float]:
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


__all__ = [
    "DEFAULT_PIPELINE_CONDUCTOR",
    "JobConfig",
    "ReportDocument",
    "compare_triple",
    "literal_sweep",
    "parse_scalar_literal",
    "pipeline_sweep",
    "run_verify",
]
