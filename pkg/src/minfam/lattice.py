"""Exact integer divisor-class arithmetic on unimodular surface lattices.

Two basis kinds are supported:

* type 1: generators ``e0, e1, ..., er`` with ``e0^2 = 1``, ``ej^2 = -1``
  and all other products zero (the lattice of a blown-up plane);
* type 2: generators ``l0, l1, eps1, ..., epsr`` with ``l0.l1 = 1``,
  ``l0^2 = l1^2 = 0``, ``epsj^2 = -1`` (the lattice of a blown-up quadric).

Classes store *signed* generator coefficients, so the type 1 class written
``[2; 1, 1]`` in multiplicity notation (meaning ``2e0 - e1 - e2``) has
coefficient vector ``(2, -1, -1)``.  All arithmetic is exact: coefficients
are Python integers of unbounded precision, so overflow cannot occur
silently.  Every value in this module is immutable and safe to share
between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

# Descriptors beyond this many exceptional generators are rejected outright;
# the enumerative machinery switches to restricted class pools well before.
MAX_EXCEPTIONAL = 14


class BasisKind(str, Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"


def _gram_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a small integer matrix (exact, via fractions)."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / inv
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    assert det.denominator == 1
    return int(det)


@dataclass(frozen=True, order=True)
class LatticeBasis:
    """A fixed basis of the Neron-Severi lattice of a rational surface.

    ``count`` is the number of exceptional generators; the total rank is
    ``count + 1`` for type 1 and ``count + 2`` for type 2.
    """

    kind: BasisKind
    count: int

    def __post_init__(self):
        if not isinstance(self.count, int) or self.count < 0:
            raise ValueError("exceptional generator count must be a nonnegative integer")
        if self.count > MAX_EXCEPTIONAL:
            raise ValueError(f"exceptional generator count {self.count} exceeds the supported maximum {MAX_EXCEPTIONAL}")
        det = _gram_determinant(self.gram_matrix())
        assert abs(det) == 1, f"gram matrix of {self} is not unimodular"

    @property
    def rank(self) -> int:
        return self.count + (1 if self.kind is BasisKind.TYPE1 else 2)

    @property
    def exceptional_positions(self) -> range:
        """Coordinate positions of the exceptional generators."""
        start = 1 if self.kind is BasisKind.TYPE1 else 2
        return range(start, self.rank)

    def gram_matrix(self) -> list[list[int]]:
        n = self.rank
        g = [[0] * n for _ in range(n)]
        if self.kind is BasisKind.TYPE1:
            g[0][0] = 1
            for j in range(1, n):
                g[j][j] = -1
        else:
            g[0][1] = g[1][0] = 1
            for j in range(2, n):
                g[j][j] = -1
        return g

    def generator_name(self, i: int) -> str:
        if self.kind is BasisKind.TYPE1:
            return f"e{i}"
        return ("l0", "l1")[i] if i < 2 else f"e{i - 1}"

    def generator(self, i: int) -> "DivisorClass":
        coeffs = [0] * self.rank
        coeffs[i] = 1
        return DivisorClass(self, tuple(coeffs))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)


@dataclass(frozen=True, order=True)
class DivisorClass:
    """An integer divisor class, stored as signed generator coefficients."""

    basis: LatticeBasis
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.basis.rank:
            raise ValueError(f"coefficient vector of length {len(self.coeffs)} does not fit a rank-{self.basis.rank} basis")
        if not all(isinstance(c, int) for c in self.coeffs):
            raise ValueError("coefficients must be exact integers")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_multiplicities(cls, basis: LatticeBasis, mult: Sequence[int]) -> "DivisorClass":
        """Build a class from multiplicity notation.

        For type 1, ``[b0, b1, ..., br]`` means ``b0*e0 - b1*e1 - ... - br*er``;
        for type 2, ``[g0, g1, b1, ..., br]`` means
        ``g0*l0 + g1*l1 - b1*eps1 - ... - br*epsr``.
        """
        mult = list(mult)
        if len(mult) != basis.rank:
            raise ValueError(f"expected {basis.rank} entries, got {len(mult)}")
        keep = 1 if basis.kind is BasisKind.TYPE1 else 2
        coeffs = tuple(mult[i] if i < keep else -mult[i] for i in range(len(mult)))
        return cls(basis, coeffs)

    def multiplicities(self) -> tuple[int, ...]:
        keep = 1 if self.basis.kind is BasisKind.TYPE1 else 2
        return tuple(c if i < keep else -c for i, c in enumerate(self.coeffs))

    # -- arithmetic ----------------------------------------------------------

    def _check_same_basis(self, other: "DivisorClass") -> None:
        if self.basis != other.basis:
            raise ValueError("incompatible bases")

    def dot(self, other: "DivisorClass") -> int:
        """Intersection product with respect to the basis Gram matrix."""
        self._check_same_basis(other)
        a, b = self.coeffs, other.coeffs
        if self.basis.kind is BasisKind.TYPE1:
            return a[0] * b[0] - sum(a[j] * b[j] for j in range(1, len(a)))
        return a[0] * b[1] + a[1] * b[0] - sum(a[j] * b[j] for j in range(2, len(a)))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_same_basis(other)
        return DivisorClass(self.basis, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_same_basis(other)
        return DivisorClass(self.basis, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.basis, tuple(-x for x in self.coeffs))

    def __rmul__(self, n: int) -> "DivisorClass":
        if not isinstance(n, int):
            return NotImplemented
        return DivisorClass(self.basis, tuple(n * x for x in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def self_intersection(self) -> int:
        return self.dot(self)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            name = self.basis.generator_name(i)
            sign = "-" if c < 0 else ("+" if terms else "")
            mag = abs(c)
            terms.append(f"{sign}{'' if mag == 1 else mag}{name}")
        return "".join(terms) or "0"


# -- module-level operations -------------------------------------------------


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    return a.dot(b)


def add(a: DivisorClass, b: DivisorClass) -> DivisorClass:
    return a + b


def scale(n: int, a: DivisorClass) -> DivisorClass:
    return n * a


def canonical_class(basis: LatticeBasis) -> DivisorClass:
    """The canonical class: ``-3e0 + e1 + ... + er`` for type 1 and
    ``-2(l0 + l1) + eps1 + ... + epsr`` for type 2."""
    if basis.kind is BasisKind.TYPE1:
        return DivisorClass(basis, (-3,) + (1,) * basis.count)
    return DivisorClass(basis, (-2, -2) + (1,) * basis.count)


def convert_basis(c: DivisorClass) -> DivisorClass:
    """Re-express ``c`` in the other basis kind.

    The substitution identifies ``(l0, l1, eps1)`` with
    ``(e0 - e2, e0 - e1, e0 - e1 - e2)`` and matches the remaining
    exceptional generators up; it is an isometry and an involution, so the
    round trip is the identity.  Undefined below total rank 3.
    """
    basis = c.basis
    if basis.rank < 3:
        raise ValueError("conversion undefined below rank 3")
    x = c.coeffs
    if basis.kind is BasisKind.TYPE2:
        # l0 -> e0 - e2, l1 -> e0 - e1, eps1 -> e0 - e1 - e2, eps_{p-1} -> e_p
        target = LatticeBasis(BasisKind.TYPE1, basis.count + 1)
        out = [0] * target.rank
        out[0] = x[0] + x[1] + x[2]
        out[1] = -x[1] - x[2]
        out[2] = -x[0] - x[2]
        for p in range(3, basis.rank):
            out[p] = x[p]
        return DivisorClass(target, tuple(out))
    # e0 -> l0 + l1 - eps1, e1 -> l0 - eps1, e2 -> l1 - eps1, ej -> eps_{j-1}
    target = LatticeBasis(BasisKind.TYPE2, basis.count - 1)
    out = [0] * target.rank
    out[0] = x[0] + x[1]
    out[1] = x[0] + x[2]
    out[2] = -x[0] - x[1] - x[2]
    for j in range(3, basis.rank):
        out[j] = x[j]
    return DivisorClass(target, tuple(out))


def arithmetic_genus(c: DivisorClass) -> int:
    """``(c^2 + k.c) / 2 + 1``; always an integer on these lattices."""
    k = canonical_class(c.basis)
    total = c.dot(c) + k.dot(c)
    assert total % 2 == 0, "adjunction sum must be even on a unimodular surface lattice"
    return total // 2 + 1


def sorted_classes(classes: Iterable[DivisorClass]) -> tuple[DivisorClass, ...]:
    """Deterministic order: lexicographic on coefficient vectors."""
    return tuple(sorted(set(classes), key=lambda c: c.coeffs))


def distinct_permutations(values: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All distinct permutations of a multiset of integers."""
    pool = sorted(values, reverse=True)
    n = len(pool)
    if n == 0:
        yield ()
        return
    a = list(pool)
    while True:
        yield tuple(a)
        # next permutation in descending lexicographic order
        i = n - 2
        while i >= 0 and a[i] <= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] >= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1 :] = reversed(a[i + 1 :])
