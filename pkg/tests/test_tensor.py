import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nichols.braiding import DiagonalBraiding, swap_basis
from nichols.cyclo import CyclotomicNumber, cyc_root
from nichols.qcomb import q_binom, q_int
from nichols.root_vectors import RootVectorContext
from nichols.tensor import (
    BraidingMismatch,
    CutoffExceeded,
    NicholsOracle,
    NotHomogeneous,
    TensorElement,
    derive,
    group_act,
    hilbert_report,
    hilbert_series,
    is_zero_in_nichols,
    multiply,
    nichols_dim,
    pair,
    power,
    words_of_degree,
)

from conftest import roots_braidings, zeta

GENERIC = DiagonalBraiding(zeta(7), zeta(7, 3), zeta(7, 2), zeta(7, 5))


def x(br, i):
    return TensorElement.generator(br, i)


def random_element(rng, br, d):
    return TensorElement(br, {w: rng.randint(-2, 2) for w in words_of_degree(d)})


def test_multiply_examples():
    br = GENERIC
    assert multiply(x(br, 1), x(br, 2)) == TensorElement.word(br, (1, 2))
    s = multiply(x(br, 1) + x(br, 2), x(br, 1))
    assert s == TensorElement.word(br, (1, 1)) + TensorElement.word(br, (2, 1))
    e = random_element(random.Random(3), br, (2, 1))
    assert multiply(TensorElement.one(br), e) == e == multiply(e, TensorElement.one(br))


def test_multiply_rejects_mixed_braidings():
    other = DiagonalBraiding(zeta(5), 1, 1, zeta(5))
    with pytest.raises(BraidingMismatch):
        multiply(x(GENERIC, 1), x(other, 1))


def test_group_act_examples():
    br = GENERIC
    assert group_act((1, 0), x(br, 2)) == x(br, 2).scale(br.q12)
    assert group_act((0, -1), x(br, 1)) == x(br, 1).scale(br.q21.inverse())
    assert group_act((1, 0), TensorElement.word(br, (1, 2))) == TensorElement.word(br, (1, 2), br.q11 * br.q12)


def test_derive_examples():
    br = GENERIC
    x21 = TensorElement.word(br, (1, 2)) - TensorElement.word(br, (2, 1), br.q12)
    assert derive(2, x21) == x(br, 1).scale(br.q21.inverse() - br.q12)
    for m in range(1, 6):
        expected = sum((br.q11 ** -j for j in range(m)), CyclotomicNumber.rational(0))
        assert derive(1, TensorElement.word(br, (1,) * m)) == TensorElement.word(br, (1,) * (m - 1), expected)
    assert derive(1, x(br, 2)).is_zero_tensor()


def test_pair_examples():
    br = GENERIC
    x21 = TensorElement.word(br, (1, 2)) - TensorElement.word(br, (2, 1), br.q12)
    y21 = TensorElement.word(br, (1, 2)) - TensorElement.word(br, (2, 1), br.q12)
    assert pair(y21, x21).scalar_part() == br.q21.inverse() - br.q12
    e = TensorElement.word(br, (1, 2, 1))
    assert pair((2, 2), e).is_zero_tensor()
    assert pair((1, 1, 1, 1), e).is_zero_tensor()


def test_pair_zhat_closed_form():
    ctx = RootVectorContext(GENERIC)
    for i in range(5):
        for j in range(i + 1):
            word = pair((1,) * j + (2,), ctx.z_elem(i))
            dual = ctx.pair_hat(ctx.z_elem(j), ctx.z_elem(i))
            expected = TensorElement.word(GENERIC, (1,) * (i - j), ctx.zhat_on_z(j, i))
            assert word == dual == expected


def test_zero_test_examples():
    for n in (3, 4, 5):
        br = DiagonalBraiding(zeta(n), zeta(7), zeta(7, 3), zeta(5, 2))
        ctx = RootVectorContext(br)
        assert not ctx.b(n).is_zero()
        assert is_zero_in_nichols(ctx.z_elem(n))
        assert not is_zero_in_nichols(ctx.z_elem(n - 1))
    br = DiagonalBraiding(zeta(5), zeta(7), zeta(7, 6), zeta(3))
    x21 = TensorElement.word(br, (1, 2)) - TensorElement.word(br, (2, 1), br.q12)
    assert is_zero_in_nichols(x21)
    assert not is_zero_in_nichols(TensorElement.word(GENERIC, (1, 2)))


def test_zero_test_methods_agree():
    rng = random.Random(11)
    for br in (GENERIC, DiagonalBraiding(zeta(3), zeta(3, 2), 1, -1)):
        ctx = RootVectorContext(br)
        for e in [ctx.z_elem(2), ctx.z_elem(3), random_element(rng, br, (2, 2)), ctx.u_elem(2)]:
            assert is_zero_in_nichols(e, method="coordinates") == is_zero_in_nichols(e, method="words")


def test_zero_test_needs_homogeneous():
    with pytest.raises(NotHomogeneous):
        is_zero_in_nichols(x(GENERIC, 1) + TensorElement.word(GENERIC, (1, 2)))


def test_nichols_dim_examples():
    assert nichols_dim(GENERIC, (1, 0)) == 1
    for n in (2, 3, 4, 6):
        br = DiagonalBraiding(zeta(n), zeta(5), zeta(5, 2), zeta(7))
        assert nichols_dim(br, (n, 0)) == 0
        assert nichols_dim(br, (n - 1, 0)) == 1
    br = DiagonalBraiding(zeta(5), zeta(9), zeta(9, 8), zeta(3))
    assert nichols_dim(br, (1, 1)) == 1


def test_dim_methods_agree():
    br = DiagonalBraiding(zeta(3), zeta(3), zeta(3), zeta(3))
    for d in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        assert nichols_dim(br, d, method="recursive") == nichols_dim(br, d, method="matrix")


def test_hilbert_examples():
    minus = CyclotomicNumber.rational(-1)
    assert hilbert_series(DiagonalBraiding(minus, 1, 1, minus), 4) == [1, 2, 1, 0, 0]
    assert hilbert_series(DiagonalBraiding(zeta(3), 1, 1, minus), 5) == [1, 2, 2, 1, 0, 0]
    a2 = DiagonalBraiding(zeta(3), zeta(3), zeta(3), zeta(3))
    report = hilbert_report(a2, 10)
    assert report.total_dimension == 27
    assert report.by_total == [1, 2, 4, 4, 5, 4, 4, 2, 1, 0, 0]
    assert not report.truncated


def test_hilbert_report_json_and_cutoff():
    doc = hilbert_report(GENERIC, 3).to_json()
    assert set(doc) == {"braiding", "max_total", "by_multidegree", "by_total", "truncated"}
    assert doc["truncated"] is True
    assert [3, 0, 1] in doc["by_multidegree"]
    with pytest.raises(CutoffExceeded):
        hilbert_report(GENERIC, 13)


@given(roots_braidings(moduli=(3, 4, 5, 6)), st.integers(0, 2**32), st.data())
def test_leibniz(br, seed, data):
    rng = random.Random(seed)
    du = data.draw(st.tuples(st.integers(0, 3), st.integers(0, 3)))
    dv = data.draw(st.tuples(st.integers(0, 3), st.integers(0, 3)))
    u, v = random_element(rng, br, du), random_element(rng, br, dv)
    for i, e in ((1, (-1, 0)), (2, (0, -1))):
        lhs = derive(i, multiply(u, v))
        rhs = multiply(derive(i, u), v) + multiply(group_act(e, u), derive(i, v))
        assert lhs == rhs


def test_twist_invariance_of_dimensions():
    rng = random.Random(5)
    for _ in range(6):
        n = rng.choice([3, 4, 5, 6])
        br = DiagonalBraiding.from_exponents(n, *[rng.randrange(n) for _ in range(4)])
        lam = cyc_root(rng.randrange(12), 12)
        twisted = DiagonalBraiding(br.q11, lam * br.q12, br.q21 / lam, br.q22)
        for d in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)]:
            assert nichols_dim(br, d) == nichols_dim(twisted, d)


def test_swap_symmetry_of_dimensions():
    rng = random.Random(6)
    for _ in range(6):
        n = rng.choice([3, 4, 5, 6, 8])
        br = DiagonalBraiding.from_exponents(n, *[rng.randrange(n) for _ in range(4)])
        for d in [(2, 1), (3, 1), (2, 2), (3, 2)]:
            assert nichols_dim(br, d) == nichols_dim(swap_basis(br), d[::-1])


def test_coproduct_expansion():
    rng = random.Random(8)
    checked = 0
    while checked < 25:
        n = rng.choice([5, 7, 8, 9, 12])
        br = DiagonalBraiding.from_exponents(n, *[rng.randrange(n) for _ in range(4)])
        ctx = RootVectorContext(br)
        i = rng.randint(1, 4)
        if any(ctx.b(m).is_zero() for m in range(i + 1)):
            continue
        d1 = (rng.randint(0, 3), rng.randint(0, 1))
        d2 = (rng.randint(0, 4 - d1[0]), rng.randint(0, 1))
        if 0 in (sum(d1), sum(d2)):
            continue
        r, rp = random_element(rng, br, d1), random_element(rng, br, d2)
        lhs = ctx.pair_hat(ctx.z_elem(i), multiply(r, rp))
        rhs = multiply(ctx.pair_hat(ctx.z_elem(i), r), rp)
        for m in range(i + 1):
            coef = q_binom(i, m, br.q11) * ctx.b(i) / ctx.b(m)
            left = pair((1,) * (i - m), group_act((-m, -1), r))
            rhs = rhs + multiply(left, ctx.pair_hat(ctx.z_elem(m), rp)).scale(coef)
        assert lhs == rhs
        checked += 1


def test_pair_with_powers_of_z():
    rng = random.Random(9)
    for _ in range(8):
        n = rng.choice([5, 7, 8, 9])
        br = DiagonalBraiding.from_exponents(n, *[rng.randrange(n) for _ in range(4)])
        ctx = RootVectorContext(br)
        for i in range(1, 4):
            zi, zhat = ctx.z_elem(i), ctx.z_elem(i)
            base = ctx.pair_hat(zhat, zi).scalar_part()
            for m in range(1, 5):
                got = ctx.pair_hat(zhat, power(zi, m))
                assert got == power(zi, m - 1).scale(q_int(m, ctx.p(i)) * base)


def test_oracle_dim_matches_pairing_rank():
    oracle = NicholsOracle(GENERIC)
    for d in [(2, 1), (1, 2), (2, 2)]:
        assert oracle.dim(d) == nichols_dim(GENERIC, d, method="matrix")
