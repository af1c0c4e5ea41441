"""The root vectors z_i, u_i and the derived elements w_i, z_{i,1}, z_{i,2}, s_i, t_i.

Besides the tensor-algebra constructions, :class:`RootVectorContext` gives
closed forms for the scalars that control them and for the pairings of the
hatted duals with these elements.  The closed forms are what the
classification pipeline evaluates; the tensor constructions let tests check
them against the derivation oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

from .braiding import DiagonalBraiding, MultiDegree, chi
from .cyclo import ONE, ZERO, CyclotomicNumber, RootOfUnity, cyc_root, root_order, root_power_sum
from .tensor import NicholsOracle, TensorElement, multiply, pair

DEFAULT_MAX_INDEX = 16


class DegenerateDenominator(ArithmeticError):
    """A defining formula divides by zero; an earlier condition should have caught it."""


class IndexCapExceeded(ValueError):
    """An element index is above the configured recursion cap."""


def deg_z(i: int) -> MultiDegree:
    return MultiDegree(i, 1)


def deg_u(i: int) -> MultiDegree:
    return MultiDegree(1, i)


def deg_z1(i: int) -> MultiDegree:
    return MultiDegree(2 * i + 1, 2)


def deg_z2(i: int) -> MultiDegree:
    return MultiDegree(3 * i + 2, 3)


def deg_w(i: int) -> MultiDegree:
    return MultiDegree(2 * i, 2)


def deg_s(i: int) -> MultiDegree:
    return MultiDegree(3 * i, 3)


def deg_t(i: int) -> MultiDegree:
    return MultiDegree(4 * i + 2, 4)


@dataclass(frozen=True)
class Scalars:
    b: CyclotomicNumber
    c: CyclotomicNumber
    p: CyclotomicNumber
    d0: CyclotomicNumber
    d1: CyclotomicNumber
    pair_zz: CyclotomicNumber


class RootVectorContext:
    """Root vectors and their scalars for one braiding.

    Scalar methods work for any index.  Element constructions are capped at
    ``max_index`` because their size grows quickly.
    """

    def __init__(self, braiding: DiagonalBraiding, max_index: int = DEFAULT_MAX_INDEX, oracle: NicholsOracle | None = None):
        self.braiding = braiding
        self.max_index = max_index
        self._oracle = oracle
        br = braiding
        self.q11, self.q12, self.q21, self.q22 = br.q11, br.q12, br.q21, br.q22
        ex = br.exponents
        if ex is not None:
            n = ex.modulus
            self.c = cyc_root(ex.e12 + ex.e21, n)
            self.q11_inv, self.q22_inv, self.q21_inv = cyc_root(-ex.e11, n), cyc_root(-ex.e22, n), cyc_root(-ex.e21, n)
        else:
            self.c = br.q12 * br.q21
            self.q11_inv = br.q11.inverse()
            self.q22_inv = br.q22.inverse()
            self.q21_inv = br.q21.inverse()
        self._chi: dict = {}
        self._z: list[TensorElement] = [TensorElement.generator(br, 2)]
        self._u: list[TensorElement] = [TensorElement.generator(br, 1)]
        self._elements: dict = {}
        # running products, extended on demand
        self._b = [ONE]
        self._cc = [ONE]
        self._fact11 = [ONE]  # (i)!_{q11}
        self._fact11_inv = [ONE]  # (i)!_{q11^-1}
        self._fact22 = [ONE]
        self._pair_zz: dict[int, CyclotomicNumber] = {}
        # with q11, q12q21, q22 roots of unity, vanishing indices are integer questions
        self.twist_exponents = _twist_exponents(br, self.c)
        self._zmin: int | None = None
        self._umin: int | None = None
        if self.twist_exponents is not None:
            n, e11, ec, e22 = self.twist_exponents
            self._zmin = _first_vanishing(n, e11, ec)
            self._umin = _first_vanishing(n, e22, ec)

    # -- helpers ------------------------------------------------------------
    @property
    def oracle(self) -> NicholsOracle:
        if self._oracle is None:
            self._oracle = NicholsOracle(self.braiding)
        return self._oracle

    def chi(self, alpha, beta) -> CyclotomicNumber:
        key = (tuple(alpha), tuple(beta))
        v = self._chi.get(key)
        if v is None:
            v = chi(self.braiding, alpha, beta)
            self._chi[key] = v
        return v

    def chi_inv(self, alpha, beta) -> CyclotomicNumber:
        return self.chi((-alpha[0], -alpha[1]), beta)

    @staticmethod
    def _extend(table: list, i: int, factor) -> CyclotomicNumber:
        while len(table) <= i:
            table.append(table[-1] * factor(len(table)))
        return table[i]

    def _check_index(self, i: int) -> None:
        if i > self.max_index:
            raise IndexCapExceeded(f"index {i} exceeds the cap {self.max_index}")

    # -- basic scalars ------------------------------------------------------
    def q_int(self, i: int, p: CyclotomicNumber) -> CyclotomicNumber:
        tw = self.twist_exponents
        if tw is not None:
            n, e11, _, e22 = tw
            if p is self.q11:
                return root_power_sum(e11, i, n)
            if p is self.q11_inv:
                return root_power_sum(-e11, i, n)
            if p is self.q22:
                return root_power_sum(e22, i, n)
            if p is self.q22_inv:
                return root_power_sum(-e22, i, n)
        total, power = ZERO, ONE
        for _ in range(i):
            total = total + power
            power = power * p
        return total

    def b(self, i: int) -> CyclotomicNumber:
        return self._extend(self._b, i, lambda n: 1 - self.q11 ** (n - 1) * self.c)

    def c_coef(self, i: int) -> CyclotomicNumber:
        return self._extend(self._cc, i, lambda n: 1 - self.c * self.q22 ** (n - 1))

    def fact_q11(self, i: int) -> CyclotomicNumber:
        return self._extend(self._fact11, i, lambda n: self.q_int(n, self.q11))

    def fact_q11_inv(self, i: int) -> CyclotomicNumber:
        return self._extend(self._fact11_inv, i, lambda n: self.q_int(n, self.q11_inv))

    def fact_q22(self, i: int) -> CyclotomicNumber:
        return self._extend(self._fact22, i, lambda n: self.q_int(n, self.q22))

    def z_vanishes(self, i: int) -> bool:
        """z_i = 0 in B(V), decided by b_i (i)!_{q11} = 0."""
        if self.twist_exponents is not None:
            return i >= 1 and self._zmin is not None and i >= self._zmin
        return self.b(i).is_zero() or self.fact_q11(i).is_zero()

    def u_vanishes(self, i: int) -> bool:
        """u_i = 0 in B(V), decided by c_i (i)!_{q22} = 0."""
        if self.twist_exponents is not None:
            return i >= 1 and self._umin is not None and i >= self._umin
        return self.c_coef(i).is_zero() or self.fact_q22(i).is_zero()

    def min_z_index(self, limit: int) -> int | None:
        """Smallest i >= 1 with z_i = 0, searching up to ``limit``."""
        if self.twist_exponents is not None:
            return self._zmin if self._zmin is not None and self._zmin <= limit else None
        for i in range(1, limit + 1):
            if self.z_vanishes(i):
                return i
        return None

    def min_u_index(self, limit: int) -> int | None:
        if self.twist_exponents is not None:
            return self._umin if self._umin is not None and self._umin <= limit else None
        for i in range(1, limit + 1):
            if self.u_vanishes(i):
                return i
        return None

    def p_exponent(self, i: int) -> int | None:
        """p_i as a power of zeta_modulus, when exponent data is available."""
        if self.twist_exponents is None:
            return None
        n, e11, ec, e22 = self.twist_exponents
        return -(e11 * i * i + ec * i + e22) % n

    def p_order(self, i: int) -> int:
        """Multiplicative order of p_i (0 when p_i is not a root of unity)."""
        k = self.p_exponent(i)
        if k is None:
            return root_order(self.p(i)) or 0
        n = self.twist_exponents[0]
        return n // math.gcd(n, k)

    def first_z_zero(self) -> int | None:
        """Least i >= 1 with z_i = 0; exact when q11 and q12q21 are roots of unity, else None."""
        return self._zmin

    def first_u_zero(self) -> int | None:
        return self._umin

    def pair_zz(self, i: int) -> CyclotomicNumber:
        """The scalar of <z^_i, z_i> = q21^{-i} b_i (i)!_{q11^{-1}}."""
        v = self._pair_zz.get(i)
        if v is None:
            v = self.q21_inv ** i * self.b(i) * self.fact_q11_inv(i)
            self._pair_zz[i] = v
        return v

    def p(self, i: int) -> CyclotomicNumber:
        """p_i = chi(z_i, z_i)^{-1}."""
        return self.chi_inv(deg_z(i), deg_z(i))

    def d0(self, i: int) -> CyclotomicNumber:
        zi, zi1 = deg_z(i), deg_z(i + 1)
        head = self.q21_inv * (1 - self.q11 ** i * self.c) * self.q_int(i + 1, self.q11_inv)
        return head + self.chi_inv(zi, zi1) - self.chi(zi1, zi)

    def d1(self, i: int) -> CyclotomicNumber:
        zi, zi1 = deg_z(i), deg_z(i + 1)
        head = self.q21_inv * (1 - self.q11 ** i * self.c) * self.q_int(i + 1, self.q11_inv)
        return head + (1 + self.p(i + 1)) * (self.chi_inv(zi, zi1) - self.chi(zi1, zi + zi1))

    def scalars(self, i: int) -> Scalars:
        return Scalars(self.b(i), self.c_coef(i), self.p(i), self.d0(i), self.d1(i), self.pair_zz(i))

    # -- closed-form pairings ----------------------------------------------
    def zhat_on_z(self, j: int, i: int) -> CyclotomicNumber:
        """Coefficient of x1^{i-j} in <z^_j, z_i> (zero when j > i)."""
        if j > i:
            return ZERO
        ratio = ONE
        for k in range(i - j + 1, i + 1):
            ratio = ratio * self.q_int(k, self.q11_inv)
        return self.q21_inv ** i * self.b(i) * ratio

    def y2_on_u(self, i: int) -> CyclotomicNumber:
        """Coefficient of u_{i-1} in <y_2, u_i>."""
        if i == 0:
            return ZERO
        return self.q21_inv * (1 - self.c * self.q22 ** (i - 1)) * self.q_int(i, self.q22_inv)

    def y2_on_w1(self) -> CyclotomicNumber:
        """Coefficient of z_2 in <y_2, w_1>."""
        q11, q22, c = self.q11, self.q22, self.c
        num = self.q21_inv ** 2 * (1 - c * q22) * (1 + self.q22_inv) * (1 + q11 * c * c * q22)
        den = 1 + q11 * c * q22
        if den.is_zero():
            raise DegenerateDenominator("1 + q11 q12 q21 q22 vanishes")
        return num / den

    def y2_on_w1_vanishes(self) -> bool:
        """Whether y2_on_w1() is zero, read off its factors."""
        q11, q22, c = self.q11, self.q22, self.c
        if (1 + q11 * c * q22).is_zero():
            raise DegenerateDenominator("1 + q11 q12 q21 q22 vanishes")
        return any(f.is_zero() for f in (1 - c * q22, 1 + self.q22_inv, 1 + q11 * c * c * q22))

    def zhat_prev_on_w(self, i: int) -> CyclotomicNumber:
        """Coefficient of z_{i+1} in <z^_{i-1}, w_i>."""
        p = self.p(i)
        two_p = 1 + p
        two_q = 1 + self.q11_inv
        if two_p.is_zero() or two_q.is_zero():
            raise DegenerateDenominator(f"(2)_p_{i} or (2)_q11^-1 vanishes")
        inner = self.q11_inv * self.pair_zz(i + 1) / (two_q * two_p)
        inner = inner + self.q12 * self.q21_inv * self.pair_zz(i - 1) * (1 + self.q11_inv * p.inverse())
        return (self.q11 * p - 1) * inner

    def w_test_scalar(self, i: int) -> CyclotomicNumber:
        """<z^_{i+1} z^_{i-1}, w_i>; zero means w_i = 0 once the smaller indices pass."""
        if self.z_vanishes(i + 1):
            return ZERO
        return self.zhat_prev_on_w(i) * self.pair_zz(i + 1)

    def w_test_vanishes(self, i: int) -> bool:
        """Whether w_test_scalar(i) is zero, using P_{i+1}/P_{i-1} so the cost does not grow with i."""
        if self.z_vanishes(i + 1):
            return True
        p = self.p(i)
        two_p = 1 + p
        two_q = 1 + self.q11_inv
        if two_p.is_zero() or two_q.is_zero():
            raise DegenerateDenominator(f"(2)_p_{i} or (2)_q11^-1 vanishes")
        front = self.q11 * p - 1
        if front.is_zero():
            return True
        q = self.q11
        ratio = (
            self.q21_inv ** 2
            * (1 - q ** (i - 1) * self.c)
            * (1 - q ** i * self.c)
            * self.q_int(i, self.q11_inv)
            * self.q_int(i + 1, self.q11_inv)
        )
        # the bracket of zhat_prev_on_w divided by P_{i-1}, cleared of denominators
        p_inv = self.chi(deg_z(i), deg_z(i))
        bracket = self.q11_inv * ratio + self.q12 * self.q21_inv * (1 + self.q11_inv * p_inv) * two_q * two_p
        return bracket.is_zero()

    def zhat_on_z1(self, i: int) -> CyclotomicNumber:
        """Coefficient of z_{i+1} in <z^_i, z_{i,1}>."""
        return self.d0(i) * self.pair_zz(i)

    def zhat_prev1_on_z1(self, i: int) -> CyclotomicNumber:
        """Coefficient of x1^2 in <z^_{i-1,1}, z_{i,1}>."""
        den = (1 + self.p(i)) * (1 + self.q11_inv)
        if den.is_zero():
            raise DegenerateDenominator("(2)_p_i (2)_q11^-1 vanishes")
        return self.d0(i - 1) * self.d0(i) * self.pair_zz(i) * self.pair_zz(i + 1) / den

    def s_test_scalar(self, i: int) -> CyclotomicNumber:
        """<z^_{i,1} z^_{i-1}, s_i>."""
        p = self.p(i)
        two_p = 1 + p
        two_q = 1 + self.q11_inv
        fact3 = two_p * (1 + p + p * p)
        if two_p.is_zero() or two_q.is_zero() or fact3.is_zero():
            raise DegenerateDenominator(f"denominator of the s_{i} pairing vanishes")
        P_prev, P_i, P_next = self.pair_zz(i - 1), self.pair_zz(i), self.pair_zz(i + 1)
        if P_next.is_zero():
            raise DegenerateDenominator(f"z_{i + 1} vanishes")
        bracket = 1 / (two_p * two_q) + self.chi_inv(deg_z(i - 1), deg_z(i + 1)) * P_prev / P_next - 1 / fact3
        return self.d0(i - 1) * self.d0(i) * P_i * P_next * P_next * bracket

    def normzi2(self, i: int) -> CyclotomicNumber:
        """Coefficient of z_{i+1} in <z^_{i+1} z^_i, z_{i,2}>."""
        return self.d0(i) * self.d1(i) * self.pair_zz(i) * self.pair_zz(i + 1)

    def zhat_on_z2(self, i: int) -> CyclotomicNumber:
        """Coefficient of z_{i+1}^2 in <z^_i, z_{i,2}>."""
        two = 1 + self.p(i + 1)
        if two.is_zero():
            return ZERO
        return self.d0(i) * self.d1(i) / two * self.pair_zz(i)

    def chi_z1_self(self, i: int) -> CyclotomicNumber:
        return self.chi(deg_z1(i), deg_z1(i))

    def t_test_scalar(self, i: int) -> CyclotomicNumber:
        """Coefficient of z_{i,2} in <z^_i, t_i>."""
        two = 1 + self.p(i + 1)
        den = 1 + self.chi_z1_self(i).inverse()
        if two.is_zero() or den.is_zero():
            raise DegenerateDenominator(f"denominator of the t_{i} pairing vanishes")
        dd = self.d0(i) * self.d1(i)
        zi, z2 = deg_z(i), deg_z2(i)
        return self.pair_zz(i) * (dd / two - dd / den + self.chi_inv(zi, z2) - self.chi(z2, zi))

    # -- zero criteria under the standing hypotheses ---------------------
    def z1_vanishes(self, i: int) -> bool:
        """z_{i,1} = 0, valid when w_m = 0 for all m."""
        return self.z_vanishes(i + 1) or self.d0(i).is_zero()

    def z2_vanishes(self, i: int) -> bool:
        """z_{i,2} = 0, valid when the A5 and A7 conditions hold."""
        if self.z_vanishes(i + 1):
            return True
        return self.d0(i).is_zero() or self.d1(i).is_zero() or (1 + self.p(i + 1)).is_zero()

    # -- tensor elements ----------------------------------------------------
    def _x1(self) -> TensorElement:
        return TensorElement.generator(self.braiding, 1)

    def _x2(self) -> TensorElement:
        return TensorElement.generator(self.braiding, 2)

    def commutator(self, a: TensorElement, da, b: TensorElement, db) -> TensorElement:
        """The braided commutator ab - chi(deg a, deg b) ba."""
        return multiply(a, b) - multiply(b, a).scale(self.chi(da, db))

    def z_elem(self, i: int) -> TensorElement:
        self._check_index(i)
        x1 = self._x1()
        while len(self._z) <= i:
            n = len(self._z) - 1
            z = self._z[-1]
            self._z.append(multiply(x1, z) - multiply(z, x1).scale(self.q11 ** n * self.q12))
        return self._z[i]

    def u_elem(self, i: int) -> TensorElement:
        self._check_index(i)
        x2 = self._x2()
        while len(self._u) <= i:
            n = len(self._u) - 1
            u = self._u[-1]
            self._u.append(multiply(u, x2) - multiply(x2, u).scale(self.q12 * self.q22 ** n))
        return self._u[i]

    def _cached(self, key, build):
        v = self._elements.get(key)
        if v is None:
            v = build()
            self._elements[key] = v
        return v

    def w_elem(self, i: int) -> TensorElement:
        if i < 1:
            raise ValueError("w_i needs i >= 1")
        self._check_index(i + 1)

        def build():
            if self.z_vanishes(i + 1):
                return TensorElement.zero(self.braiding)
            two = 1 + self.p(i)
            if two.is_zero():
                raise DegenerateDenominator(f"(2)_p_{i} vanishes while z_{i + 1} does not")
            coef = self.pair_zz(i + 1) / (two * self.pair_zz(i))
            zi = self.z_elem(i)
            return self.commutator(self.z_elem(i + 1), deg_z(i + 1), self.z_elem(i - 1), deg_z(i - 1)) - multiply(
                zi, zi
            ).scale(coef)

        return self._cached(("w", i), build)

    def z1_elem(self, i: int) -> TensorElement:
        self._check_index(i + 1)
        return self._cached(
            ("z1", i), lambda: self.commutator(self.z_elem(i + 1), deg_z(i + 1), self.z_elem(i), deg_z(i))
        )

    def z2_elem(self, i: int) -> TensorElement:
        self._check_index(i + 1)
        return self._cached(
            ("z2", i), lambda: self.commutator(self.z_elem(i + 1), deg_z(i + 1), self.z1_elem(i), deg_z1(i))
        )

    def s_elem(self, i: int) -> TensorElement:
        if i < 1:
            raise ValueError("s_i needs i >= 1")

        def build():
            z1 = self.z1_elem(i)
            if self.oracle.is_zero(z1):
                return TensorElement.zero(self.braiding)
            p = self.p(i)
            fact3 = (1 + p) * (1 + p + p * p)
            if fact3.is_zero():
                raise DegenerateDenominator(f"(3)!_p_{i} vanishes while z_{i},1 does not")
            coef = self.d0(i) * self.pair_zz(i + 1) / (fact3 * self.pair_zz(i))
            zi = self.z_elem(i)
            cube = multiply(multiply(zi, zi), zi)
            return self.commutator(z1, deg_z1(i), self.z_elem(i - 1), deg_z(i - 1)) - cube.scale(coef)

        return self._cached(("s", i), build)

    def t_elem(self, i: int) -> TensorElement:
        def build():
            den = 1 + self.chi_z1_self(i).inverse()
            if den.is_zero():
                raise DegenerateDenominator(f"chi(z_{i},1, z_{i},1) = -1")
            z1 = self.z1_elem(i)
            coef = self.d1(i) / den
            return self.commutator(self.z2_elem(i), deg_z2(i), self.z_elem(i), deg_z(i)) - multiply(z1, z1).scale(coef)

        return self._cached(("t", i), build)

    def x_power(self, m: int) -> TensorElement:
        return TensorElement.word(self.braiding, (1,) * m)

    # -- pairings through the oracle --------------------------------------
    def pair_hat(self, *args) -> TensorElement:
        """<iota(f_1) ... iota(f_k), e> for elements f_1, ..., f_k and target e (last argument)."""
        *duals, target = args
        result = target
        for f in reversed(duals):
            result = pair(f, result)
            if not result.terms:
                break
        return result

    def equal_in_nichols(self, a: TensorElement, b: TensorElement) -> bool:
        diff = a - b
        return not diff.terms or self.oracle.is_zero(diff)


def _twist_exponents(br: DiagonalBraiding, c: CyclotomicNumber) -> tuple[int, int, int, int] | None:
    """(n, e11, ec, e22) with q11 = zeta_n^e11, q12q21 = zeta_n^ec, q22 = zeta_n^e22."""
    ex = br.exponents
    if ex is not None:
        n = ex.modulus
        return n, ex.e11, (ex.e12 + ex.e21) % n, ex.e22
    roots = [RootOfUnity.from_cyclotomic(v) for v in (br.q11, c, br.q22)]
    if any(r is None for r in roots):
        return None
    n = math.lcm(*(r.order for r in roots))
    return (n, *(r.exponent_mod(n) for r in roots))


def _first_vanishing(n: int, e_diag: int, e_mixed: int) -> int | None:
    """Least i >= 1 with prod_{j<i}(1 - q^j c) (i)!_q = 0 for q = zeta_n^e_diag, c = zeta_n^e_mixed."""
    order = n // math.gcd(n, e_diag)
    best = order if order > 1 else None
    limit = order if best is not None else n
    for j in range(limit):
        if (e_diag * j + e_mixed) % n == 0:
            if best is None or j + 1 < best:
                best = j + 1
            break
    return best


__all__ = [
    "DEFAULT_MAX_INDEX",
    "DegenerateDenominator",
    "IndexCapExceeded",
    "RootVectorContext",
    "Scalars",
    "deg_s",
    "deg_t",
    "deg_u",
    "deg_w",
    "deg_z",
    "deg_z1",
    "deg_z2",
]
