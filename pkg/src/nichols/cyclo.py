"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Values are stored as a rational polynomial in zeta_N reduced modulo the
N-th cyclotomic polynomial.  The polynomial arithmetic is delegated to
python-flint; this module only handles conductor bookkeeping, parsing and
serialization.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import flint

CONDUCTOR_CEILING = 360


class DivisionByZero(ZeroDivisionError):
    """Raised when dividing by an exact zero."""


class ConductorCeilingExceeded(ValueError):
    """Raised when an operation would need a conductor above the ceiling."""


class ParseError(ValueError):
    """Raised for malformed scalar literals; ``position`` is the offending index."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# --------------------------------------------------------------------------
# integer helpers and cached tables


def euler_phi(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def canonical_conductor(n: int) -> int:
    """Q(zeta_n) equals Q(zeta_{n/2}) when n = 2 mod 4."""
    return n // 2 if n % 4 == 2 else n


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> flint.fmpq_poly:
    return flint.fmpq_poly(flint.fmpz_poly.cyclotomic(n))


def _power_poly(k: int, n: int) -> flint.fmpq_poly:
    """zeta_n^k reduced modulo Phi_n (n not 2 mod 4)."""
    k %= n
    return flint.fmpq_poly([0] * k + [1]) % cyclotomic_poly(n)


def _lift_poly(poly: flint.fmpq_poly, m: int, n: int) -> flint.fmpq_poly:
    """Re-express an element of Q(zeta_m) in the power basis of Q(zeta_n), m | n."""
    if m == n:
        return poly
    step = n // m
    coeffs = poly.coeffs()
    if not coeffs:
        return poly
    spread = [0] * (step * (len(coeffs) - 1) + 1)
    for j, c in enumerate(coeffs):
        spread[step * j] = c
    return flint.fmpq_poly(spread) % cyclotomic_poly(n)


@lru_cache(maxsize=None)
def _descent_maps(n: int, m: int) -> tuple[flint.fmpq_mat, flint.fmpq_mat]:
    """Left inverse of the lift Q(zeta_m) -> Q(zeta_n) and the induced projection.

    Returns (left_inverse, projection) with projection = lift * left_inverse.
    """
    fn, fm = euler_phi(n), euler_phi(m)
    lift = flint.fmpq_mat(fn, fm)
    for j in range(fm):
        col = _power_poly((n // m) * j, n).coeffs()
        for r, c in enumerate(col):
            lift[r, j] = c
    gram = lift.transpose() * lift
    left_inverse = gram.inv() * lift.transpose()
    return left_inverse, lift * left_inverse


def _to_column(poly: flint.fmpq_poly, size: int) -> flint.fmpq_mat:
    coeffs = poly.coeffs()
    col = flint.fmpq_mat(size, 1)
    for i, c in enumerate(coeffs):
        col[i, 0] = c
    return col


def _from_column(col: flint.fmpq_mat) -> flint.fmpq_poly:
    return flint.fmpq_poly([col[i, 0] for i in range(col.nrows())])


def _half_conductor(poly: flint.fmpq_poly, m: int) -> flint.fmpq_poly:
    """Rewrite an element of Q(zeta_m), m = 2 mod 4, over zeta_{m/2}."""
    k = m // 2
    # zeta_m = -zeta_k^((k+1)/2)
    e = (k + 1) // 2
    out = flint.fmpq_poly(0)
    for j, c in enumerate(poly.coeffs()):
        if c != 0:
            term = _power_poly(e * j, k) * c
            out += -term if j % 2 else term
    return out % cyclotomic_poly(k)


def _minimize(n: int, poly: flint.fmpq_poly) -> tuple[int, flint.fmpq_poly]:
    """Reduce (n, poly) to the smallest conductor whose field contains the value."""
    while True:
        if poly.degree() <= 0:
            return 1, poly
        moved = False
        for p in prime_factors(n):
            m = n // p
            if n % (p * p) == 0:
                coeffs = poly.coeffs()
                if all(c == 0 for j, c in enumerate(coeffs) if j % p):
                    poly = flint.fmpq_poly(coeffs[::p])
                    n = m
                    if n % 4 == 2:
                        poly = _half_conductor(poly, n)
                        n //= 2
                    moved = True
                    break
            else:
                left_inverse, projection = _descent_maps(n, m)
                col = _to_column(poly, euler_phi(n))
                if projection * col == col:
                    poly = _from_column(left_inverse * col)
                    n = m
                    moved = True
                    break
        if not moved:
            return n, poly


# --------------------------------------------------------------------------
# the number type

RationalLike = Union[int, Fraction]


def _fmpq(x: RationalLike) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, flint.fmpq):
        return x
    return flint.fmpq(int(x))


class CyclotomicNumber:
    """An element of Q(zeta_N).

    ``conductor`` and ``coeffs`` always report the canonical (minimal
    conductor) form.  Arithmetic results may be held internally at a larger
    conductor until the canonical form is requested.
    """

    __slots__ = ("_n", "_poly", "_canonical")

    def __init__(self, conductor: int = 1, coeffs: Iterable[RationalLike] = (0,)):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        n = canonical_conductor(conductor)
        poly = flint.fmpq_poly([_fmpq(c) for c in coeffs])
        if n != conductor:
            poly = _half_conductor(poly % cyclotomic_poly(conductor), conductor)
        _check_ceiling(n)
        self._n = n
        self._poly = poly % cyclotomic_poly(n)
        self._canonical = False

    @classmethod
    def _raw(cls, n: int, poly: flint.fmpq_poly, canonical: bool = False) -> "CyclotomicNumber":
        obj = object.__new__(cls)
        obj._n = n
        obj._poly = poly
        obj._canonical = canonical
        return obj

    @classmethod
    def rational(cls, x: RationalLike) -> "CyclotomicNumber":
        return cls._raw(1, flint.fmpq_poly([_fmpq(x)]), True)

    # -- canonical form -----------------------------------------------------
    def _canon(self) -> "CyclotomicNumber":
        if not self._canonical:
            self._n, self._poly = _minimize(self._n, self._poly)
            self._canonical = True
        return self

    @property
    def conductor(self) -> int:
        return self._canon()._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        self._canon()
        size = euler_phi(self._n)
        raw = self._poly.coeffs()
        out = [Fraction(int(c.p), int(c.q)) for c in raw]
        out.extend([Fraction(0)] * (size - len(out)))
        return tuple(out)

    def poly_at(self, n: int) -> flint.fmpq_poly:
        """The power-basis polynomial of this value over zeta_n (n a multiple of the conductor)."""
        if n % self._n:
            self._canon()
            if n % self._n:
                raise ValueError(f"conductor {self._n} does not divide {n}")
        return _lift_poly(self._poly, self._n, n)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def is_rational(self) -> bool:
        return self._poly.degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        c = self._poly[0]
        return Fraction(int(c.p), int(c.q))

    # -- arithmetic ---------------------------------------------------------
    def _common(self, other: "CyclotomicNumber") -> tuple[int, flint.fmpq_poly, flint.fmpq_poly]:
        if self._n == other._n:
            return self._n, self._poly, other._poly
        n = self._n * other._n // math.gcd(self._n, other._n)
        if n > CONDUCTOR_CEILING:
            self._canon()
            other._canon()
            n = self._n * other._n // math.gcd(self._n, other._n)
            _check_ceiling(n)
        return n, _lift_poly(self._poly, self._n, n), _lift_poly(other._poly, other._n, n)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n, a, b = self._common(other)
        return CyclotomicNumber._raw(n, a + b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n, a, b = self._common(other)
        return CyclotomicNumber._raw(n, a - b)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CyclotomicNumber._raw(self._n, -self._poly, self._canonical)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n, a, b = self._common(other)
        if n == 1:
            return CyclotomicNumber._raw(1, a * b, True)
        return CyclotomicNumber._raw(n, (a * b) % cyclotomic_poly(n))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self._poly.is_zero():
            raise DivisionByZero("division by an exact zero")
        if self._n == 1:
            return CyclotomicNumber._raw(1, flint.fmpq_poly([1 / self._poly[0]]), True)
        phi = cyclotomic_poly(self._n)
        g, s, _ = self._poly.xgcd(phi)
        return CyclotomicNumber._raw(self._n, (s / g[0]) % phi, self._canonical)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self._n == 1:
            return CyclotomicNumber._raw(1, flint.fmpq_poly([self._poly[0] ** k]), True)
        phi = cyclotomic_poly(self._n)
        result = flint.fmpq_poly([1])
        base = self._poly
        while k:
            if k & 1:
                result = (result * base) % phi
            k >>= 1
            if k:
                base = (base * base) % phi
        return CyclotomicNumber._raw(self._n, result)

    # -- comparison and hashing --------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self._n == other._n:
            return self._poly == other._poly
        n = self._n * other._n // math.gcd(self._n, other._n)
        if n > CONDUCTOR_CEILING:
            self._canon()
            other._canon()
            return self._n == other._n and self._poly == other._poly
        return _lift_poly(self._poly, self._n, n) == _lift_poly(other._poly, other._n, n)

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def __bool__(self):
        return not self._poly.is_zero()

    def __repr__(self):
        return f"CyclotomicNumber({format_literal(self)!r})"

    def __str__(self):
        return format_literal(self)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [_frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc: dict) -> "CyclotomicNumber":
        try:
            n = int(doc["conductor"])
            coeffs = [Fraction(str(c)) for c in doc["coeffs"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad cyclotomic JSON: {exc}") from exc
        return cls(n, coeffs)


def _coerce(x) -> CyclotomicNumber | None:
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, (int, Fraction, flint.fmpq)):
        return CyclotomicNumber.rational(x)
    return None


def as_cyclotomic(x) -> CyclotomicNumber:
    out = _coerce(x)
    if out is None:
        raise TypeError(f"cannot interpret {x!r} as a cyclotomic number")
    return out


def _check_ceiling(n: int) -> None:
    if n > CONDUCTOR_CEILING:
        raise ConductorCeilingExceeded(f"conductor {n} exceeds ceiling {CONDUCTOR_CEILING}")


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


ZERO = CyclotomicNumber.rational(0)
ONE = CyclotomicNumber.rational(1)


# --------------------------------------------------------------------------
# public operations


def cyc_root(k: int, n: int) -> CyclotomicNumber:
    """zeta_n^k at its minimal conductor n/gcd(n, k)."""
    if n < 1:
        raise ValueError("order must be positive")
    k %= n
    g = math.gcd(k, n)
    k, n = k // g, n // g
    _check_ceiling(n // 2 if n % 4 == 2 else n)
    if n == 1:
        return ONE
    if n == 2:
        return CyclotomicNumber.rational(-1)
    if n % 4 == 2:
        # zeta_n^k = -zeta_{n/2}^{k'} with k' = k (n/2 + 1)/2
        h = n // 2
        return CyclotomicNumber._raw(h, -_power_poly(k * ((h + 1) // 2), h), True)
    return CyclotomicNumber._raw(n, _power_poly(k, n), True)


def root_power_sum(k: int, count: int, n: int) -> CyclotomicNumber:
    """The q-integer sum of zeta_n^(k j) for 0 <= j < count, built as one polynomial."""
    if n < 1 or count < 0:
        raise ValueError("need n >= 1 and count >= 0")
    m = 2 * n if n % 4 == 2 else n
    step = (k * (m // n)) % m
    weights = [0] * m
    e = 0
    for _ in range(count):
        weights[e] += 1
        e = (e + step) % m
    if m == 1:
        return CyclotomicNumber.rational(count)
    _check_ceiling(m)
    return CyclotomicNumber._raw(m, flint.fmpq_poly(weights) % cyclotomic_poly(m))


def arith(a: CyclotomicNumber, b: CyclotomicNumber, op: str) -> CyclotomicNumber:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_zero(a: CyclotomicNumber) -> bool:
    return as_cyclotomic(a).is_zero()


def _root_exponent(a: CyclotomicNumber) -> tuple[int, int] | None:
    """(k, m) with a = zeta_m^k exactly, or None when a is not a root of unity.

    A floating-point evaluation at one embedding proposes k; the answer is
    then checked exactly.  Roots of unity have small integer coordinates, so
    their float image has modulus 1 to far better than the tolerance used.
    """
    a = as_cyclotomic(a)
    if a.is_zero():
        return None
    a._canon()
    n = a._n
    m = 2 * n if n % 2 else n
    value = sum(float(c) * cmath.exp(2j * cmath.pi * j / n) for j, c in enumerate(a._poly.coeffs()))
    if abs(abs(value) - 1) > 1e-6:
        return None
    k = round(cmath.phase(value) * m / (2 * cmath.pi)) % m
    return (k, m) if cyc_root(k, m) == a else None


def root_order(a: CyclotomicNumber) -> int | None:
    """Multiplicative order of ``a`` if it is a root of unity, else None."""
    found = _root_exponent(a)
    if found is None:
        return None
    k, m = found
    return m // math.gcd(k, m)


def root_membership(a: CyclotomicNumber, n: int) -> bool:
    return root_order(a) == n


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_order^exponent with gcd(exponent, order) = 1 (or exponent 0, order 1)."""

    exponent: int
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        k = self.exponent % self.order
        g = math.gcd(k, self.order)
        object.__setattr__(self, "exponent", k // g)
        object.__setattr__(self, "order", self.order // g)

    def to_cyclotomic(self) -> CyclotomicNumber:
        return cyc_root(self.exponent, self.order)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        n = self.order * other.order // math.gcd(self.order, other.order)
        return RootOfUnity(self.exponent * (n // self.order) + other.exponent * (n // other.order), n)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.exponent * k, self.order)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.exponent, self.order)

    def exponent_mod(self, n: int) -> int:
        """Exponent of this root as a power of zeta_n (order must divide n)."""
        if n % self.order:
            raise ValueError(f"order {self.order} does not divide {n}")
        return self.exponent * (n // self.order) % n

    @classmethod
    def from_cyclotomic(cls, a: CyclotomicNumber) -> "RootOfUnity | None":
        found = _root_exponent(a)
        return None if found is None else cls(*found)


# --------------------------------------------------------------------------
# literal grammar

_ROOT_RE = re.compile(r"z(\d+):(-?\d+)")
_RAT_RE = re.compile(r"-?\d+(?:/\d+)?")
_CYC_RE = re.compile(r"cyc(\d+)\[([^\]]*)\]")


def parse_literal(text: str) -> CyclotomicNumber:
    """Parse ``zN:k``, ``r/s`` or ``cycN[c0,c1,...]``."""
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if not s:
        raise ParseError("empty literal", offset)
    m = _ROOT_RE.fullmatch(s)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ParseError("root order must be positive", offset + 1)
        return cyc_root(int(m.group(2)), n)
    m = _CYC_RE.fullmatch(s)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ParseError("conductor must be positive", offset + 3)
        body = m.group(2)
        coeffs = []
        pos = offset + m.start(2)
        for part in body.split(","):
            token = part.strip()
            if not _RAT_RE.fullmatch(token):
                raise ParseError(f"bad coefficient {token!r}", pos)
            coeffs.append(_parse_fraction(token, pos))
            pos += len(part) + 1
        return CyclotomicNumber(n, coeffs)
    if _RAT_RE.fullmatch(s):
        return CyclotomicNumber.rational(_parse_fraction(s, offset))
    bad = _first_bad_position(s)
    raise ParseError(f"unrecognized literal {text!r}", offset + bad)


def _parse_fraction(token: str, pos: int) -> Fraction:
    try:
        return Fraction(token)
    except ZeroDivisionError as exc:
        raise ParseError("zero denominator", pos) from exc


def _skip_digits(s: str, i: int) -> int:
    while i < len(s) and s[i].isdigit():
        i += 1
    return i


def _first_bad_position(s: str) -> int:
    if s.startswith("cyc"):
        i = _skip_digits(s, 3)
        if i == 3 or i >= len(s) or s[i] != "[":
            return i
        close = s.find("]", i)
        return len(s) if close < 0 else close + 1
    if s.startswith("z"):
        i = _skip_digits(s, 1)
        if i == 1 or i >= len(s) or s[i] != ":":
            return i
        j = i + 1 + (s[i + 1 : i + 2] == "-")
        k = _skip_digits(s, j)
        return k if k > j else j
    for i, ch in enumerate(s):
        if not (ch.isdigit() or ch in "-/"):
            return i
    return 0


def format_literal(a: CyclotomicNumber) -> str:
    """Render in the literal grammar, preferring ``zN:k`` for roots of unity."""
    if a.is_rational():
        return _frac_str(a.to_fraction())
    n = a.conductor
    coeffs = a.coeffs
    nonzero = [(j, c) for j, c in enumerate(coeffs) if c]
    if len(nonzero) == 1 and nonzero[0][1] == 1:
        return f"z{n}:{nonzero[0][0]}"
    root = RootOfUnity.from_cyclotomic(a) if len(nonzero) <= euler_phi(n) else None
    if root is not None:
        return f"z{root.order}:{root.exponent}"
    return f"cyc{n}[" + ",".join(_frac_str(c) for c in coeffs) + "]"


def coerce_sequence(values: Sequence) -> list[CyclotomicNumber]:
    return [as_cyclotomic(v) for v in values]
