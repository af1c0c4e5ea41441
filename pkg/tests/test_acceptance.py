"""Acceptance criteria 1-7, one PASS/FAIL line each.

The lines are printed as the tests run (visible with ``-s``) and repeated in
the terminal summary.
"""

import os
import random
import sys
import time
from contextlib import contextmanager
from math import gcd, lcm

import pytest

from conftest import ACCEPTANCE_LINES, zeta
from rv_samples import a5_a7_hold, a7_holds, sample_contexts
from nichols.braiding import DiagonalBraiding
from nichols.classifier import Outcome, classify_exponents
from nichols.cyclo import RootOfUnity
from nichols.harness import literal_sweep, pipeline_sweep
from nichols.qcomb import q_int
from nichols.root_vectors import DegenerateDenominator, RootVectorContext, deg_z
from nichols.subquotients import (
    STEP_DEGREES,
    DescentFamily,
    DescentVerdict,
    descent_chain,
    family_braiding,
    recognize_family,
    subquotient_braiding,
)
from nichols.tensor import TensorElement, hilbert_report, hilbert_series, multiply, pair

Q, N = DescentFamily.QUARTIC, DescentFamily.NONIC


@contextmanager
def criterion(number, title):
    start = time.perf_counter()
    notes = []
    try:
        yield notes
    except BaseException:
        line = f"FAIL criterion {number}: {title}"
        raise
    else:
        line = f"PASS criterion {number}: {title}"
    finally:
        line += f" ({time.perf_counter() - start:.1f}s{'; ' + '; '.join(notes) if notes else ''})"
        ACCEPTANCE_LINES.append(line)
        print(line)


def units(n):
    return [k for k in range(1, n) if gcd(k, n) == 1]


def test_criterion_1_cross_validation():
    workers = int(os.environ.get("NICHOLS_WORKERS") or os.cpu_count() or 1)
    with criterion(1, "both classifiers agree on every triple of joint conductor <= 60") as notes:
        start = time.perf_counter()
        r = pipeline_sweep(60, workers=workers)
        elapsed = time.perf_counter() - start
        notes.append(f"{r['compared']} orbit representatives, {r['disagreement_count']} disagreements")
        assert r["disagreement_count"] == 0, r["disagreements"][:5]
        assert r["ceiling_skipped"] == 0
        assert elapsed < 600


def test_criterion_2_regressions():
    with criterion(2, "displayed values reproduce exactly") as notes:
        checked = 0
        for k in units(5):
            ctx = RootVectorContext(family_braiding(Q, RootOfUnity(k, 5)))
            assert ctx.chi(deg_z(2), deg_z(2)) == 1
            checked += 1
        for k in units(26):
            ctx = RootVectorContext(family_braiding(Q, RootOfUnity(k, 26)))
            assert zeta(26, k) ** 13 == -1
            assert ctx.chi(deg_z(6), deg_z(6)) == -1
            checked += 1
        for k in units(18):
            ctx = RootVectorContext(family_braiding(N, RootOfUnity(k, 18)))
            assert ctx.chi(deg_z(3), deg_z(3)) == 1
            checked += 1
        for k in units(15):
            q = zeta(15, k)
            ctx = RootVectorContext(family_braiding(N, RootOfUnity(k, 15)))
            assert ctx.d0(2) == q ** -3 * (1 - q ** 8) * (1 + q ** -1 + q ** -2)
            checked += 1
        for n in (7, 11, 13, 19, 22, 35):
            q = zeta(n)
            for family, powers in ((Q, (36, 18, 18, 9)), (N, (64, 32, 32, 16))):
                got = subquotient_braiding(family_braiding(family, RootOfUnity(1, n)), *STEP_DEGREES)
                assert got == DiagonalBraiding(*(q ** p for p in powers))
                checked += 1
        for a in range(1, 5):
            for n in (5, 7, 9, 11, 12, 13):
                q = zeta(n)
                ctx = RootVectorContext(DiagonalBraiding(q, q ** (-a - 1), 1, q ** (a + 1)))
                assert ctx.d0(a) == 0
                checked += 1
        # the display for a = 2, q12 q21 = q11^-3, q22 = -1 at three values of q11
        for n, k in ((7, 1), (11, 2), (13, 5)):
            q11, q21 = zeta(n, k), zeta(5)
            ctx = RootVectorContext(DiagonalBraiding(q11, q11 ** -3 / q21, q21, -1))
            display = (
                q11 ** -10 * q21 ** -2 * (1 - q11 ** 5) * (1 + q11 ** 7) * q_int(5, -(q11 ** 2))
                / (1 - q11 ** 3 + q11 ** 6)
            )
            assert ctx.t_test_scalar(1) == ctx.pair_zz(1) * display
            checked += 1
        notes.append(f"{checked} exact identities")


def _t_defined(ctx, i):
    return not ctx.z2_vanishes(i) and ctx.chi_z1_self(i) != -1


def test_criterion_3_closed_forms():
    with criterion(3, "closed-form pairings match the oracle") as notes:
        start = time.perf_counter()
        eq = lambda ctx, a, b: ctx.equal_in_nichols(a, b)
        counts = dict.fromkeys(("zhat_j z_i", "y2 u_i", "y2 w_1", "zhat_i z_i1", "norm z_i2", "zhat_i t_i"), 0)
        for ctx in sample_contexts(20, 301):
            br = ctx.braiding
            for i in range(5):
                for j in range(i + 1):
                    expected = TensorElement.word(br, (1,) * (i - j), ctx.zhat_on_z(j, i))
                    assert ctx.pair_hat(ctx.z_elem(j), ctx.z_elem(i)) == expected
                expected = ctx.u_elem(i - 1).scale(ctx.y2_on_u(i)) if i else TensorElement.zero(br)
                assert pair((2,), ctx.u_elem(i)) == expected
            for i in range(1, 5):
                got = ctx.pair_hat(ctx.z_elem(i), ctx.z1_elem(i))
                assert eq(ctx, got, ctx.z_elem(i + 1).scale(ctx.zhat_on_z1(i)))
                got = ctx.pair_hat(ctx.z_elem(i + 1), ctx.z_elem(i), ctx.z2_elem(i))
                assert eq(ctx, got, ctx.z_elem(i + 1).scale(ctx.normzi2(i)))
            counts["zhat_j z_i"] += 1
            counts["y2 u_i"] += 1
            counts["zhat_i z_i1"] += 1
            counts["norm z_i2"] += 1
        w_ok = lambda c: _defined(c.y2_on_w1)
        for ctx in sample_contexts(20, 302, w_ok):
            assert eq(ctx, pair((2,), ctx.w_elem(1)), ctx.z_elem(2).scale(ctx.y2_on_w1()))
            counts["y2 w_1"] += 1
        t_ok = lambda c: a5_a7_hold(c) and (_t_defined(c, 1) or _t_defined(c, 2))
        for ctx in sample_contexts(20, 303, t_ok):
            for i in (1, 2):
                if _t_defined(ctx, i):
                    got = ctx.pair_hat(ctx.z_elem(i), ctx.t_elem(i))
                    assert eq(ctx, got, ctx.z2_elem(i).scale(ctx.t_test_scalar(i)))
            counts["zhat_i t_i"] += 1
        # higher indices: every braiding of conductor <= 24 where t_3 or t_4 is defined
        higher = {3: 0, 4: 0}
        for n in range(2, 25):
            for e11 in range(n):
                for ec in range(n):
                    for e22 in range(n):
                        ctx = RootVectorContext(DiagonalBraiding.from_exponents(n, e11, ec, 0, e22))
                        if ctx.z_vanishes(4) or not a5_a7_hold(ctx):
                            continue
                        for i in (3, 4):
                            if _t_defined(ctx, i):
                                got = ctx.pair_hat(ctx.z_elem(i), ctx.t_elem(i))
                                assert eq(ctx, got, ctx.z2_elem(i).scale(ctx.t_test_scalar(i)))
                                higher[i] += 1
        notes.append(", ".join(f"{k}: {v}" for k, v in counts.items()))
        notes.append(f"t_3 at {higher[3]} braidings, t_4 at {higher[4]}")
        assert all(v >= 20 for v in counts.values())
        assert time.perf_counter() - start < 300


def _defined(fn):
    try:
        fn()
        return True
    except DegenerateDenominator:
        return False


def test_criterion_4_equivalences():
    with criterion(4, "zero criteria agree with the oracle") as notes:
        stats = {}

        def tally(name, truth, scalar):
            assert truth == scalar, name
            stats.setdefault(name, [0, 0])[truth] += 1

        for ctx in sample_contexts(25, 401):
            for i in range(1, 6):
                tally("z_i", ctx.oracle.is_zero(ctx.z_elem(i)), (ctx.b(i) * ctx.fact_q11(i)).is_zero())
                tally("z_i", ctx.pair_zz(i).is_zero(), ctx.z_vanishes(i))
        # the extra draws are biased towards nonzero elements so both sides get exercised
        nonzero_z1 = lambda c: a7_holds(c) and any(not c.z1_vanishes(i) for i in (1, 2, 3))
        nonzero_z2 = lambda c: a5_a7_hold(c) and any(not c.z2_vanishes(i) for i in (1, 2))
        for ctx in sample_contexts(25, 402, a7_holds) + sample_contexts(10, 404, nonzero_z1, attempts=200000):
            for i in range(1, 4):
                tally("z_i1", ctx.oracle.is_zero(ctx.z1_elem(i)), ctx.z_vanishes(i + 1) or ctx.d0(i).is_zero())
                zi = ctx.z_elem(i)
                tally("z_i^2", ctx.oracle.is_zero(multiply(zi, zi)), ctx.z_vanishes(i) or (1 + ctx.p(i)).is_zero())
        for ctx in sample_contexts(25, 403, a5_a7_hold) + sample_contexts(10, 405, nonzero_z2, attempts=200000):
            for i in range(1, 3):
                scalar = ctx.z_vanishes(i + 1) or (ctx.d0(i) * ctx.d1(i) * (1 + ctx.p(i + 1))).is_zero()
                tally("z_i2", ctx.oracle.is_zero(ctx.z2_elem(i)), scalar)
        notes.append(", ".join(f"{k}: {v[1]} zero / {v[0]} nonzero" for k, v in stats.items()))
        assert all(sum(v) >= 20 and min(v) > 0 for v in stats.values())


def test_criterion_5_dimensions():
    with criterion(5, "oracle dimensions") as notes:
        minus = -zeta(1)
        cases = [((minus, minus), 4), ((zeta(3), minus), 6), ((zeta(3), zeta(3, 2)), 9)]
        for (q11, q22), total in cases:
            start = time.perf_counter()
            series = hilbert_series(DiagonalBraiding(q11, 1, 1, q22), 6)
            # x_i^N = 0 for N the order of q_ii, and the two generators commute up to a scalar
            o1, o2 = (2 if x == minus else 3 for x in (q11, q22))
            product = [sum(1 for a in range(o1) for b in range(o2) if a + b == d) for d in range(7)]
            assert series == product and sum(series) == total
            assert time.perf_counter() - start < 60
        a2 = DiagonalBraiding(zeta(3), zeta(3), zeta(3), zeta(3))
        start = time.perf_counter()
        report = hilbert_report(a2, 10)
        top = max(d for d, v in enumerate(report.by_total) if v)
        # positive roots a1, a2, a1 + a2, each with nilpotency order 3
        assert top == (3 - 1) * (1 + 1 + 2)
        assert report.total_dimension == 27 and top == 8
        assert time.perf_counter() - start < 60
        notes.append(f"A2 total {report.total_dimension}, top degree {top}")
        rng = random.Random(501)
        moduli = (5, 7, 8, 9, 10, 12, 14, 15, 16, 18, 20, 24)
        done = 0
        while done < 10:
            n = rng.choice(moduli)
            e = [rng.randrange(n) for _ in range(3)]
            if classify_exponents(n, *e).outcome is not Outcome.NOT_IN_LIST:
                continue
            start = time.perf_counter()
            series = hilbert_series(DiagonalBraiding.from_exponents(n, e[0], e[1], 0, e[2]), 10)
            assert all(v > 0 for v in series), (n, e, series)
            assert time.perf_counter() - start < 60
            done += 1
        notes.append("10 NotInList series positive to degree 10")


def test_criterion_6_descent():
    with criterion(6, "descent detector") as notes:
        for k in units(11):
            out = descent_chain(family_braiding(Q, RootOfUnity(k, 11)))
            assert out.verdict is DescentVerdict.INFINITE_CHAIN_CYCLE and len(out.chain) <= 5
        for k in units(26):
            out = descent_chain(family_braiding(Q, RootOfUnity(k, 26)))
            assert (out.verdict, out.blocked_step) == (DescentVerdict.BLOCKED, 5)
        for k in units(7):
            start = family_braiding(N, RootOfUnity(k, 7))
            default = descent_chain(start)
            assert (default.verdict, default.blocked_step) == (DescentVerdict.BLOCKED, 2)
            out = descent_chain(start, continue_past_contradictions=True)
            assert recognize_family(out.chain[0].target) == (Q, RootOfUnity(16 * k % 7, 7))
            assert len(out.chain) > 1 and out.verdict is DescentVerdict.INFINITE_CHAIN_CYCLE
            assert out.formal
        notes.append("R_7 nonic start is blocked by default and reaches the quartic family when continued")


def _scan(label, order):
    """Count exponent triples mod lcm(order, 6) meeting the item and its part's guards."""
    M = lcm(order, 6)
    h = M // 2
    o = lambda x: M // gcd(M, x % M)
    m = lambda x: x % M
    part = label[0]
    hits = 0
    for q in range(M):
        for c in range(1, M):
            for r in range(M):
                if part == "2":
                    if m(c + r):
                        continue
                else:
                    if not m(q + c) or not m(c + r):
                        continue
                    if part == "3" and not (r == h and o(q) in (2, 3)):
                        continue
                    if part == "4" and not (r == h and o(q) not in (2, 3)):
                        continue
                    if part == "5" and not (q != h and o(r) == 3):
                        continue
                q0 = m(q + c)
                hits += {
                    "2.5": o(c) == 8 and q == m(2 * c),
                    "2.6": o(c) == 24 and q == m(6 * c),
                    "2.7": o(c) == 30 and q == m(12 * c),
                    "3.3": o(q0) == 12 and q == m(4 * q0),
                    "3.4": o(c) == 12 and q == m(h + 2 * c),
                    "3.5": o(c) == 9 and q == m(-3 * c),
                    "3.6": o(c) == 24 and q == m(h + 4 * c),
                    "3.7": o(c) == 30 and q == m(h + 5 * c),
                    "4.5": o(c) == 8 and q == m(-2 * c),
                    "4.6": o(c) == 12 and q == m(-3 * c),
                    "4.7": o(c) == 20 and q == m(-4 * c),
                    "4.8": o(c) == 30 and q == m(-6 * c),
                    "5.1": o(q0) == 12 and q == m(4 * q0) and r == m(h + 2 * q0),
                    "5.2": o(c) == 12 and q == m(h + 2 * c) and r == q,
                    "5.3": o(c) == 24 and q == m(-6 * c) and r == m(-8 * c),
                    "5.4": o(q) == 18 and c == m(-2 * q) and r == m(h + 3 * q),
                    "5.5": o(q) == 30 and c == m(-3 * q) and r == m(h + 5 * q),
                }[label]
    return hits


# the root order fixing each item; all entries of a solution lie in mu_lcm(order, 6)
ITEM_ORDERS = {
    "2.5": 8, "2.6": 24, "2.7": 30, "3.3": 12, "3.4": 12, "3.5": 9, "3.6": 24, "3.7": 30,
    "4.5": 8, "4.6": 12, "4.7": 20, "4.8": 30, "5.1": 12, "5.2": 12, "5.3": 24, "5.4": 18, "5.5": 30,
}


def test_criterion_7_counts():
    with criterion(7, "finitely constrained item counts at max_order 30") as notes:
        labels = literal_sweep(30, keep_records=False)["labels"]
        mismatches = {}
        for label, order in ITEM_ORDERS.items():
            expected = _scan(label, order)
            phi = len(units(order)) if order > 1 else 1
            assert expected % phi == 0
            if labels[label]["direct"] != expected:
                mismatches[label] = (labels[label]["direct"], expected)
        notes.append(f"{len(ITEM_ORDERS)} items checked")
        assert not mismatches, mismatches


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
