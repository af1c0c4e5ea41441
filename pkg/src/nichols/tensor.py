"""The free algebra on x1, x2 with the skew derivations of the Nichols pairing.

Elements of B(V) are handled through tensor-algebra lifts.  ``NicholsOracle``
decides equality in B(V) and computes graded dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .braiding import DiagonalBraiding, MultiDegree, chi
from .cyclo import ONE, CyclotomicNumber, as_cyclotomic
from .linalg import FieldKernel, bareiss_rank, row_reduce

Word = tuple[int, ...]

DEFAULT_HILBERT_CUTOFF = 12


class BraidingMismatch(ValueError):
    """Operands live over different braidings."""


class NotHomogeneous(ValueError):
    """The operation needs a homogeneous element."""


class CutoffExceeded(ValueError):
    """A degree bound is above the configured cutoff."""


def word_degree(w: Word) -> MultiDegree:
    ones = w.count(1)
    return MultiDegree(ones, len(w) - ones)


def words_of_degree(d) -> list[Word]:
    """All words of multidegree d in lexicographic order with 1 < 2."""
    a, b = d
    n = a + b
    out = []
    for twos in combinations(range(n), b):
        w = [1] * n
        for p in twos:
            w[p] = 2
        out.append(tuple(w))
    out.sort()
    return out


class TensorElement:
    """A finite linear combination of words over a fixed braiding."""

    __slots__ = ("braiding", "terms")

    def __init__(self, braiding: DiagonalBraiding, terms: Mapping[Word, CyclotomicNumber] | None = None):
        self.braiding = braiding
        clean: dict[Word, CyclotomicNumber] = {}
        if terms:
            for w, c in terms.items():
                c = as_cyclotomic(c)
                if not c.is_zero():
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, braiding, terms: dict) -> "TensorElement":
        obj = object.__new__(cls)
        obj.braiding = braiding
        obj.terms = {w: c for w, c in terms.items() if not c.is_zero()}
        return obj

    @classmethod
    def zero(cls, br: DiagonalBraiding) -> "TensorElement":
        return cls._trusted(br, {})

    @classmethod
    def one(cls, br: DiagonalBraiding) -> "TensorElement":
        return cls._trusted(br, {(): ONE})

    @classmethod
    def generator(cls, br: DiagonalBraiding, i: int) -> "TensorElement":
        return cls._trusted(br, {(i,): ONE})

    @classmethod
    def word(cls, br: DiagonalBraiding, w: Iterable[int], coeff=1) -> "TensorElement":
        return cls(br, {tuple(w): as_cyclotomic(coeff)})

    # -- structure ------------------------------------------------------------
    def is_zero_tensor(self) -> bool:
        return not self.terms

    def multidegrees(self) -> set[MultiDegree]:
        return {word_degree(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    @property
    def multidegree(self) -> MultiDegree:
        degs = self.multidegrees()
        if len(degs) != 1:
            raise NotHomogeneous(f"element has multidegrees {sorted(degs)}")
        return next(iter(degs))

    def component(self, d) -> "TensorElement":
        d = MultiDegree(*d)
        return TensorElement._trusted(self.braiding, {w: c for w, c in self.terms.items() if word_degree(w) == d})

    def coefficient(self, w: Iterable[int]) -> CyclotomicNumber:
        return self.terms.get(tuple(w), CyclotomicNumber.rational(0))

    def scalar_part(self) -> CyclotomicNumber:
        """Coefficient of the empty word."""
        return self.coefficient(())

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "TensorElement") -> None:
        if other.braiding is not self.braiding and other.braiding != self.braiding:
            raise BraidingMismatch("elements belong to different braidings")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return TensorElement._trusted(self.braiding, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement._trusted(self.braiding, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] - c if w in out else -c
        return TensorElement._trusted(self.braiding, out)

    def scale(self, s) -> "TensorElement":
        s = as_cyclotomic(s)
        if s.is_zero():
            return TensorElement.zero(self.braiding)
        return TensorElement._trusted(self.braiding, {w: c * s for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.braiding == other.braiding and (self - other).is_zero_tensor()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            name = "".join(f"x{i}" for i in w) or "1"
            parts.append(f"({self.terms[w]})*{name}")
        return " + ".join(parts)


def multiply(e1: TensorElement, e2: TensorElement) -> TensorElement:
    e1._check(e2)
    out: dict[Word, CyclotomicNumber] = {}
    for w1, c1 in e1.terms.items():
        for w2, c2 in e2.terms.items():
            w = w1 + w2
            c = c1 * c2
            out[w] = out[w] + c if w in out else c
    return TensorElement._trusted(e1.braiding, out)


def power(e: TensorElement, m: int) -> TensorElement:
    out = TensorElement.one(e.braiding)
    for _ in range(m):
        out = multiply(out, e)
    return out


def group_act(alpha, e: TensorElement) -> TensorElement:
    """g(alpha) acting on e; negative entries of alpha give inverse group elements."""
    br = e.braiding
    cache: dict[MultiDegree, CyclotomicNumber] = {}
    out = {}
    for w, c in e.terms.items():
        d = word_degree(w)
        if d not in cache:
            cache[d] = chi(br, alpha, d)
        out[w] = c * cache[d]
    return TensorElement._trusted(br, out)


class _InverseCharacters:
    """Memo of chi(e_i, (a, b))^{-1} for one braiding."""

    def __init__(self, br: DiagonalBraiding):
        self.br = br
        self.table: dict[tuple[int, int, int], CyclotomicNumber] = {}

    def get(self, i: int, a: int, b: int) -> CyclotomicNumber:
        key = (i, a, b)
        value = self.table.get(key)
        if value is None:
            e = (1, 0) if i == 1 else (0, 1)
            value = chi(self.br, (-e[0], -e[1]), (a, b))
            self.table[key] = value
        return value


def _derive_terms(i: int, terms: Mapping[Word, CyclotomicNumber], inv: _InverseCharacters) -> dict:
    out: dict[Word, CyclotomicNumber] = {}
    for w, c in terms.items():
        a = b = 0
        for k, letter in enumerate(w):
            if letter == i:
                key = w[:k] + w[k + 1 :]
                val = c * inv.get(i, a, b)
                out[key] = out[key] + val if key in out else val
            if letter == 1:
                a += 1
            else:
                b += 1
    return out


def derive(i: int, e: TensorElement, _inv: _InverseCharacters | None = None) -> TensorElement:
    """The skew derivation <y_i, .>: d_i(uv) = d_i(u) v + (g_i^{-1} . u) d_i(v)."""
    if i not in (1, 2):
        raise ValueError("derivation index must be 1 or 2")
    inv = _inv or _InverseCharacters(e.braiding)
    return TensorElement._trusted(e.braiding, _derive_terms(i, e.terms, inv))


def pair(u, e: TensorElement) -> TensorElement:
    """<iota(u), e>; for a word u this is d_{u1}(d_{u2}(...d_{um}(e)))."""
    inv = _InverseCharacters(e.braiding)
    if isinstance(u, TensorElement):
        e._check(u)
        return _pair_trie(dict(u.terms), e, inv)
    for letter in reversed(tuple(u)):
        e = derive(letter, e, inv)
        if not e.terms:
            break
    return e


def _pair_trie(prefixes: dict, e: TensorElement, inv: _InverseCharacters) -> TensorElement:
    # split by last letter so that shared suffixes are differentiated once
    result = TensorElement.zero(e.braiding)
    by_letter: dict[int, dict] = {1: {}, 2: {}}
    for w, c in prefixes.items():
        if not w:
            result = result + e.scale(c)
        else:
            by_letter[w[-1]][w[:-1]] = c
    for letter, sub in by_letter.items():
        if sub:
            d = derive(letter, e, inv)
            if d.terms:
                result = result + _pair_trie(sub, d, inv)
    return result


# --------------------------------------------------------------------------
# the Nichols algebra oracle


@dataclass
class _Level:
    dim: int
    pivots: list[int]
    basis_words: list[Word]
    offset: int  # length of the e1-part of the derivative vector


class NicholsOracle:
    """Graded pieces of B(V) for one braiding.

    A homogeneous element of positive degree is zero in B(V) exactly when both
    of its derivatives are.  Coordinates in degree d are therefore obtained
    from the coordinates of the two derivatives, restricted to the pivot
    columns of a row-reduced spanning set.
    """

    def __init__(self, br: DiagonalBraiding):
        self.braiding = br
        self.kernel = FieldKernel(br.conductor)
        self._inv = _InverseCharacters(br)
        self._levels: dict[MultiDegree, _Level] = {}
        self._coords: dict[Word, list] = {(): [self.kernel.one]}
        self._inv_raw: dict[tuple[int, int, int], object] = {}

    def _inv_poly(self, i: int, a: int, b: int):
        key = (i, a, b)
        p = self._inv_raw.get(key)
        if p is None:
            p = self.kernel.embed(self._inv.get(i, a, b))
            self._inv_raw[key] = p
        return p

    def level(self, d) -> _Level:
        d = MultiDegree(*d)
        lev = self._levels.get(d)
        if lev is not None:
            return lev
        if d.a < 0 or d.b < 0:
            lev = _Level(0, [], [], 0)
        elif d == (0, 0):
            lev = _Level(1, [0], [()], 1)
        else:
            lower1 = self.level((d.a - 1, d.b))
            lower2 = self.level((d.a, d.b - 1))
            offset = lower1.dim
            candidates = [(1,) + w for w in lower1.basis_words] + [(2,) + w for w in lower2.basis_words]
            rows = [self._derivative_vector(w, d, lower1, lower2) for w in candidates]
            pivots, _, independent = row_reduce(self.kernel, rows)
            lev = _Level(len(pivots), pivots, [candidates[k] for k in independent], offset)
            # recompute with the final pivot set: coordinates are the pivot entries
            self._levels[d] = lev
            for w, row in zip(candidates, rows):
                self._coords[w] = [row[p] for p in pivots]
        self._levels[d] = lev
        return lev

    def _derivative_vector(self, w: Word, d, lower1: _Level, lower2: _Level) -> list:
        k = self.kernel
        v1 = [k.zero] * lower1.dim
        v2 = [k.zero] * lower2.dim
        a = b = 0
        for pos, letter in enumerate(w):
            sub = w[:pos] + w[pos + 1 :]
            if letter == 1:
                if lower1.dim:
                    s = self._inv_poly(1, a, b)
                    for j, x in enumerate(self.word_coords(sub)):
                        if not x.is_zero():
                            v1[j] = v1[j] + s * x
                a += 1
            else:
                if lower2.dim:
                    s = self._inv_poly(2, a, b)
                    for j, x in enumerate(self.word_coords(sub)):
                        if not x.is_zero():
                            v2[j] = v2[j] + s * x
                b += 1
        return [k.reduce(x) for x in v1] + [k.reduce(x) for x in v2]

    def word_coords(self, w: Word) -> list:
        c = self._coords.get(w)
        if c is not None:
            return c
        d = word_degree(w)
        lev = self.level(d)
        if lev.dim == 0:
            c = []
        else:
            lower1 = self.level((d.a - 1, d.b))
            lower2 = self.level((d.a, d.b - 1))
            row = self._derivative_vector(w, d, lower1, lower2)
            c = [row[p] for p in lev.pivots]
        self._coords[w] = c
        return c

    def coordinates(self, e: TensorElement) -> list:
        """Coordinates of a homogeneous element in a fixed basis of its graded piece."""
        if e.braiding is not self.braiding and e.braiding != self.braiding:
            raise BraidingMismatch("element belongs to another braiding")
        if not e.terms:
            return []
        d = e.multidegree
        lev = self.level(d)
        acc = [self.kernel.zero] * lev.dim
        if lev.dim == 0:
            return acc
        for w, c in e.terms.items():
            cp = self.kernel.embed(c)
            for j, x in enumerate(self.word_coords(w)):
                if not x.is_zero():
                    acc[j] = acc[j] + cp * x
        return [self.kernel.reduce(x) for x in acc]

    def is_zero(self, e: TensorElement) -> bool:
        return all(x.is_zero() for x in self.coordinates(e))

    def dim(self, d) -> int:
        return self.level(d).dim


def is_zero_in_nichols(e: TensorElement, oracle: NicholsOracle | None = None, method: str = "coordinates") -> bool:
    """Whether the homogeneous element e vanishes in B(V).

    ``method="words"`` pairs e against every word of its multidegree, which is
    the definition; the default uses the recursive coordinates of
    :class:`NicholsOracle` and agrees with it.
    """
    if not e.terms:
        return True
    d = e.multidegree
    if method == "words":
        for w in words_of_degree(d):
            if not pair(w, e).scalar_part().is_zero():
                return False
        return True
    if method != "coordinates":
        raise ValueError(f"unknown method {method!r}")
    oracle = oracle or NicholsOracle(e.braiding)
    return oracle.is_zero(e)


def are_equal_in_nichols(e1: TensorElement, e2: TensorElement, oracle: NicholsOracle | None = None) -> bool:
    diff = e1 - e2
    if not diff.terms:
        return True
    return is_zero_in_nichols(diff, oracle)


def pairing_matrix(br: DiagonalBraiding, d) -> tuple[list[Word], list[list[CyclotomicNumber]]]:
    """M[w][w'] = scalar part of pair(w', w) for words w, w' of multidegree d."""
    words = words_of_degree(d)
    inv = _InverseCharacters(br)
    memo: dict[Word, dict[Word, CyclotomicNumber]] = {(): {(): ONE}}

    def full(w: Word) -> dict[Word, CyclotomicNumber]:
        # all pairings <u, w> as a map u -> scalar
        if w in memo:
            return memo[w]
        out: dict[Word, CyclotomicNumber] = {}
        a = b = 0
        for k, letter in enumerate(w):
            s = inv.get(letter, a, b)
            for u, val in full(w[:k] + w[k + 1 :]).items():
                key = u + (letter,)
                term = s * val
                out[key] = out[key] + term if key in out else term
            if letter == 1:
                a += 1
            else:
                b += 1
        memo[w] = out
        return out

    zero = CyclotomicNumber.rational(0)
    matrix = [[full(w).get(u, zero) for u in words] for w in words]
    return words, matrix


def nichols_dim(br: DiagonalBraiding, d, method: str = "recursive", oracle: NicholsOracle | None = None) -> int:
    """Dimension of the multidegree-d piece of B(V).

    ``method="matrix"`` takes the rank of the full pairing matrix by
    fraction-free elimination; ``"recursive"`` uses :class:`NicholsOracle`.
    """
    d = MultiDegree(*d)
    if d.a < 0 or d.b < 0:
        return 0
    if method == "matrix":
        _, matrix = pairing_matrix(br, d)
        kernel = FieldKernel(br.conductor)
        return bareiss_rank(kernel, [[kernel.embed(x) for x in row] for row in matrix])
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    return (oracle or NicholsOracle(br)).dim(d)


@dataclass
class HilbertReport:
    braiding: DiagonalBraiding
    max_total: int
    by_multidegree: list[tuple[int, int, int]]
    by_total: list[int]
    truncated: bool

    @property
    def total_dimension(self) -> int:
        return sum(self.by_total)

    def to_json(self) -> dict:
        return {
            "braiding": self.braiding.to_json(),
            "max_total": self.max_total,
            "by_multidegree": [list(t) for t in self.by_multidegree],
            "by_total": list(self.by_total),
            "truncated": self.truncated,
        }


def hilbert_report(
    br: DiagonalBraiding, max_total: int, cutoff: int = DEFAULT_HILBERT_CUTOFF, oracle: NicholsOracle | None = None
) -> HilbertReport:
    """Graded dimensions up to ``max_total``.

    ``truncated`` is false only when the top computed degree is already zero,
    which forces every higher piece to vanish.
    """
    if max_total < 0:
        raise ValueError("max_total must be nonnegative")
    if max_total > cutoff:
        raise CutoffExceeded(f"max_total {max_total} exceeds cutoff {cutoff}")
    oracle = oracle or NicholsOracle(br)
    by_md = []
    by_total = []
    for n in range(max_total + 1):
        s = 0
        for a in range(n, -1, -1):
            dim = oracle.dim((a, n - a))
            by_md.append((a, n - a, dim))
            s += dim
        by_total.append(s)
    truncated = by_total[-1] != 0
    return HilbertReport(br, max_total, by_md, by_total, truncated)


def hilbert_series(br: DiagonalBraiding, max_total: int, cutoff: int = DEFAULT_HILBERT_CUTOFF) -> list[int]:
    return hilbert_report(br, max_total, cutoff).by_total
