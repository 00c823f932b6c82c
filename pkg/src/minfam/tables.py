"""Candidate family classes with prescribed canonical degree.

``enumerate_family_classes`` performs the bounded exhaustive search for
type 1 classes ``b0*e0 - b1*e1 - ... - br*er`` with fixed canonical degree
and self-intersection, one representative per permutation orbit.  The
cone constraints are: nonincreasing nonnegative multiplicities and
``b0 >= b1 + b2`` (nonnegativity against ``e0 - e1 - e2``, which a class
covering the surface must satisfy).

The four tables with canonical degree -2 and self-intersection 0, 2, 4
plus the line class ``e0`` are the candidate pools for every minimal
family with at most eight blowdown generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .lattice import (
    BasisKind,
    DivisorClass,
    LatticeBasis,
    convert_basis,
    distinct_permutations,
    sorted_classes,
)

PSI_SELF_INTERSECTIONS = (0, 1, 2, 4)

_TABLE_BASIS = LatticeBasis(BasisKind.TYPE1, 8)


@dataclass(frozen=True)
class PsiTable:
    """One candidate table; rows live in the rank-9 type 1 lattice and are
    listed in canonical order (support size, then leading coefficient,
    then tail)."""

    alpha: int
    rows: tuple[DivisorClass, ...]


def search_bound(max_r: int, kdeg: int, selfint: int) -> int:
    """Largest leading coefficient allowed by Cauchy-Schwarz.

    With ``S = 3*b0 + kdeg`` and ``Q = b0^2 - selfint`` every solution
    satisfies ``S^2 <= max_r * Q``; the returned bound is the largest
    ``b0 >= 1`` satisfying that inequality (0 if none does).
    """
    if max_r >= 9:
        raise ValueError("bound undefined beyond eight exceptional generators")
    best = 0
    for b0 in range(1, 6 * (abs(kdeg) + abs(selfint)) + 40):
        s = 3 * b0 + kdeg
        q = b0 * b0 - selfint
        if q >= 0 and s * s <= max_r * q:
            best = b0
    return best


def _tails(length_cap: int, total: int, square: int, prefix_max: int) -> list[tuple[int, ...]]:
    """Nonincreasing positive tails with the given sum and sum of squares."""
    if total == 0 and square == 0:
        return [()]
    if length_cap == 0 or total <= 0 or square <= 0:
        return []
    out = []
    top = min(prefix_max, isqrt(square), total)
    for x in range(top, 0, -1):
        for rest in _tails(length_cap - 1, total - x, square - x * x, x):
            out.append((x,) + rest)
    return out


def enumerate_family_classes(max_r: int, kdeg: int, selfint: int, bound: int | None = None) -> list[DivisorClass]:
    """All orbit representatives with ``k.f = kdeg`` and ``f^2 = selfint``.

    Returned in the rank ``max_r + 1`` type 1 lattice (zero-padded), ordered
    by leading coefficient and then by tail.  ``bound`` overrides the
    search bound; extending it must never add solutions.
    """
    if kdeg >= 0:
        raise ValueError("canonical degree must be negative")
    if max_r > 8:
        raise ValueError("at most eight exceptional generators are supported")
    basis = LatticeBasis(BasisKind.TYPE1, max_r)
    if bound is None:
        bound = search_bound(max_r, kdeg, selfint)
    found = []
    for b0 in range(1, bound + 1):
        s = 3 * b0 + kdeg
        q = b0 * b0 - selfint
        if q < 0:
            continue
        for tail in _tails(max_r, s, q, b0):
            if len(tail) >= 2 and tail[0] + tail[1] > b0:
                continue
            if tail and tail[0] > b0:
                continue
            padded = tail + (0,) * (max_r - len(tail))
            found.append(DivisorClass.from_multiplicities(basis, (b0,) + padded))
    found.sort(key=lambda c: (c.coeffs[0], tuple(-x for x in c.coeffs[1:])))
    return found


def _canonical_row_order(c: DivisorClass) -> tuple:
    mult = c.multiplicities()
    support = sum(1 for m in mult[1:] if m)
    return (support, mult[0], mult[1:])


@lru_cache(maxsize=None)
def psi(alpha: int) -> PsiTable:
    """The candidate table for self-intersection ``alpha``.

    ``alpha = 1`` is the line class ``e0`` alone; 0, 2 and 4 are produced
    by the exhaustive search with canonical degree -2.
    """
    if alpha not in PSI_SELF_INTERSECTIONS:
        raise ValueError(f"no table for self-intersection {alpha}")
    if alpha == 1:
        return PsiTable(1, (_TABLE_BASIS.generator(0),))
    rows = enumerate_family_classes(8, -2, alpha)
    rows = tuple(sorted(rows, key=_canonical_row_order))
    return PsiTable(alpha, rows)


def _row_shape(row: DivisorClass) -> tuple[int, tuple[int, ...]]:
    mult = row.multiplicities()
    return mult[0], tuple(m for m in mult[1:] if m)


def instantiate_rows(rows, basis: LatticeBasis) -> tuple[DivisorClass, ...]:
    """All permutation instances of the given rows inside ``basis``.

    Rows are type 1 shapes; on a type 2 basis of rank at least 3 they are
    instantiated through the companion type 1 basis and converted back.
    Rows needing more exceptional generators than available are skipped.
    A rank 2 type 2 basis admits no instances.
    """
    if basis.kind is BasisKind.TYPE2:
        if basis.rank < 3:
            return ()
        companion = LatticeBasis(BasisKind.TYPE1, basis.count + 1)
        return sorted_classes(convert_basis(c) for c in instantiate_rows(rows, companion))
    r = basis.count
    out = []
    for row in rows:
        b0, tail = _row_shape(row)
        if len(tail) > r:
            continue
        padded = tuple(tail) + (0,) * (r - len(tail))
        for perm in distinct_permutations(padded):
            out.append(DivisorClass.from_multiplicities(basis, (b0,) + perm))
    return sorted_classes(out)


def instantiate(table: PsiTable, pair) -> tuple[DivisorClass, ...]:
    """Permutation instances of a table inside a surface pair's lattice.

    Reality is deliberately not filtered here; the caller decides, which
    is what makes complex mode a flag rather than a separate path.
    """
    return instantiate_rows(table.rows, pair.basis)
