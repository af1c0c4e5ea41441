"""Deterministic braiding samples for the root-vector and zero-criterion tests."""

import random

from nichols.braiding import DiagonalBraiding
from nichols.conditions import ConditionLimits, ConditionStatus, NoTermination, check_a5, check_a7
from nichols.root_vectors import DegenerateDenominator, RootVectorContext

# every modulus here has conductor at most 24
MODULI = (5, 7, 8, 9, 10, 12, 14, 15, 16, 18, 20, 24)
LIMITS = ConditionLimits()


def sample_contexts(count, seed, accept=lambda ctx: True, moduli=MODULI, attempts=20000):
    rng = random.Random(seed)
    out = []
    for _ in range(attempts):
        n = rng.choice(moduli)
        br = DiagonalBraiding.from_exponents(n, *[rng.randrange(n) for _ in range(4)])
        ctx = RootVectorContext(br)
        if accept(ctx):
            out.append(ctx)
            if len(out) == count:
                return out
    raise AssertionError(f"only {len(out)} of {count} samples found")


def holds(check, ctx):
    try:
        return check(ctx, LIMITS).status is ConditionStatus.HOLDS
    except (DegenerateDenominator, NoTermination):
        return False


def a7_holds(ctx):
    return not ctx.z_vanishes(1) and holds(check_a7, ctx)


def a5_a7_hold(ctx):
    return a7_holds(ctx) and holds(check_a5, ctx)
