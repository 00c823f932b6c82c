"""Negative classes, effectivity and section counts.

Enumerates the classes with prescribed self-intersection and canonical
degree (notably the (-1)- and (-2)-classes), decides which of them are
irreducible curves for a declared configuration of effective (-2)-classes,
and provides the moving/fixed decomposition together with the section
count ``h0``.

The exhaustive enumerations are finite only up to total rank 9 (the
constraint sets become infinite one rank higher), so beyond that the
machinery falls back to a restricted pool of class shapes: the declared
roots together with ``ei``, ``e0-ei-ej`` and ``2e0-ei-ej-ek-el-em``; these
are the only shapes the pipeline's decompositions can meet at the top of
a chain, which always drops back into the exhaustive range after a few
steps.

``h0`` is a reconstruction: decompose into moving and fixed part, then
apply Riemann-Roch with vanishing to the nef moving part.  The pipeline
only queries it on adjoint classes and candidate family classes, which
land in this regime for valid descriptors; anything suspicious yields 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator, Optional, Sequence

from .errors import ClassificationError, DescriptorError
from .involution import RealInvolution, apply
from .lattice import (
    BasisKind,
    DivisorClass,
    LatticeBasis,
    canonical_class,
    convert_basis,
    sorted_classes,
)

# Beyond this exceptional-generator count the exhaustive searches diverge.
FULL_ENUMERATION_MAX = 8

_DECOMPOSITION_STEPS_PER_RANK = 64


def _int_vectors(n: int, total: int, square: int) -> Iterator[tuple[int, ...]]:
    """All integer vectors of length ``n`` with given sum and sum of squares."""
    if square < 0:
        return
    if n == 0:
        if total == 0 and square == 0:
            yield ()
        return
    if total * total > n * square:
        return
    lim = isqrt(square)
    for x in range(-lim, lim + 1):
        for rest in _int_vectors(n - 1, total - x, square - x * x):
            yield (x,) + rest


@lru_cache(maxsize=None)
def _classes_with_invariants(basis: LatticeBasis, self_int: int, k_deg: int) -> tuple[DivisorClass, ...]:
    """All classes ``c`` with ``c^2 = self_int`` and ``k.c = k_deg``.

    Exhaustive; requires total rank at most 9.
    """
    if basis.kind is BasisKind.TYPE1:
        r = basis.count
        if r > FULL_ENUMERATION_MAX:
            raise ValueError("rank too large for exhaustive enumeration")
        out = []
        scan = 3 * (abs(k_deg) + abs(self_int)) + 12
        for x0 in range(-scan, scan + 1):
            s = -3 * x0 - k_deg
            q = x0 * x0 - self_int
            if q < 0 or s * s > r * q:
                continue
            for tail in _int_vectors(r, s, q):
                out.append(DivisorClass(basis, (x0,) + tail))
        return sorted_classes(out)
    if basis.count == 0:
        # hyperbolic plane: c = x0*l0 + x1*l1 with 2*x0*x1 = self_int,
        # -2*(x0 + x1) = k_deg
        if self_int % 2 or k_deg % 2:
            return ()
        p, s = self_int // 2, -k_deg // 2
        disc = s * s - 4 * p
        if disc < 0 or isqrt(disc) ** 2 != disc:
            return ()
        root = isqrt(disc)
        sols = {(s + root) // 2, (s - root) // 2} if (s + root) % 2 == 0 else set()
        out = [DivisorClass(basis, (x0, s - x0)) for x0 in sols]
        return sorted_classes(out)
    companion = LatticeBasis(BasisKind.TYPE1, basis.count + 1)
    return sorted_classes(convert_basis(c) for c in _classes_with_invariants(companion, self_int, k_deg))


def enumerate_minus_two(basis: LatticeBasis) -> tuple[DivisorClass, ...]:
    """All classes with ``c^2 = -2`` and ``k.c = 0`` (exhaustive search)."""
    return _classes_with_invariants(basis, -2, 0)


def enumerate_exceptional(basis: LatticeBasis) -> tuple[DivisorClass, ...]:
    """All classes with ``c^2 = k.c = -1`` (exhaustive search)."""
    return _classes_with_invariants(basis, -1, -1)


def _restricted_exceptional_type1(basis: LatticeBasis) -> tuple[DivisorClass, ...]:
    r = basis.count
    out = [basis.generator(j) for j in range(1, r + 1)]
    e0 = basis.generator(0)
    gens = [basis.generator(j) for j in range(1, r + 1)]
    for i, j in itertools.combinations(range(r), 2):
        out.append(e0 - gens[i] - gens[j])
    for idx in itertools.combinations(range(r), 5):
        c = 2 * e0
        for i in idx:
            c = c - gens[i]
        out.append(c)
    return sorted_classes(out)


@lru_cache(maxsize=None)
def exceptional_pool(basis: LatticeBasis) -> tuple[DivisorClass, ...]:
    """Exceptional classes used for irreducibility, orthogonal sets and
    contraction tests: exhaustive up to rank 9, restricted shapes beyond."""
    if basis.kind is BasisKind.TYPE1:
        if basis.count <= FULL_ENUMERATION_MAX:
            return enumerate_exceptional(basis)
        return _restricted_exceptional_type1(basis)
    if basis.count == 0:
        return ()
    if basis.count <= FULL_ENUMERATION_MAX - 1:
        return enumerate_exceptional(basis)
    companion = LatticeBasis(BasisKind.TYPE1, basis.count + 1)
    return sorted_classes(convert_basis(c) for c in _restricted_exceptional_type1(companion))


@lru_cache(maxsize=None)
def root_pool(basis: LatticeBasis) -> tuple[DivisorClass, ...]:
    """(-2)-classes available to structural searches (rulings, reflections)."""
    if basis.kind is BasisKind.TYPE1 and basis.count > FULL_ENUMERATION_MAX:
        r = basis.count
        e0 = basis.generator(0)
        gens = [basis.generator(j) for j in range(1, r + 1)]
        out = []
        for i, j in itertools.combinations(range(r), 2):
            out.extend((gens[i] - gens[j], gens[j] - gens[i]))
        for i, j, k in itertools.combinations(range(r), 3):
            c = e0 - gens[i] - gens[j] - gens[k]
            out.extend((c, -c))
        return sorted_classes(out)
    if basis.kind is BasisKind.TYPE2 and basis.count > FULL_ENUMERATION_MAX - 1:
        companion = LatticeBasis(BasisKind.TYPE1, basis.count + 1)
        return sorted_classes(convert_basis(c) for c in root_pool(companion))
    return enumerate_minus_two(basis)


@dataclass(frozen=True, order=True)
class CurveConfiguration:
    """Declared effective (-2)-classes; empty means general position.

    The declared set drives effectivity: together with the exceptional
    classes that pair nonnegatively against it, it models the irreducible
    curves of negative self-intersection on the surface.
    """

    basis: LatticeBasis
    roots: tuple[DivisorClass, ...]

    @classmethod
    def create(
        cls,
        basis: LatticeBasis,
        roots: Sequence[DivisorClass] = (),
        sigma: Optional[RealInvolution] = None,
    ) -> "CurveConfiguration":
        k = canonical_class(basis)
        for c in roots:
            if c.basis != basis:
                raise ValueError("incompatible bases")
            if c.dot(c) != -2 or k.dot(c) != 0:
                raise DescriptorError("E_BAD_ROOT", f"{c} is not a (-2)-class with k.c = 0")
        deduped = sorted_classes(roots)
        if sigma is not None:
            images = {apply(sigma, c) for c in deduped}
            if images != set(deduped):
                raise DescriptorError("E_ROOTS_NOT_REAL", "root set is not closed under the real structure")
        return cls(basis, deduped)


@lru_cache(maxsize=None)
def irreducible_negative_curves(config: CurveConfiguration) -> tuple[DivisorClass, ...]:
    """Classes of irreducible curves with negative self-intersection.

    These are the simple roots among the declared (-2)-classes (those not
    splitting as a sum of two declared ones) plus every exceptional class
    pairing nonnegatively against all of them.
    """
    declared = set(config.roots)
    simples = [c for c in config.roots if not _splits_in(c, declared)]
    keep = [e for e in exceptional_pool(config.basis) if all(e.dot(s) >= 0 for s in simples)]
    return sorted_classes(simples + keep)


def _splits_in(c: DivisorClass, declared: set[DivisorClass]) -> bool:
    return any(a != c and (c - a) in declared for a in declared)


def moving_fixed_decomposition(c: DivisorClass, config: CurveConfiguration) -> tuple[DivisorClass, DivisorClass]:
    """Split ``c = moving + fixed`` against the irreducible negatives.

    Repeatedly subtracts the lexicographically smallest irreducible
    negative curve pairing negatively with the running remainder until
    none does (determinism; the result is order-independent on valid
    inputs).  Divergence signals an invalid descriptor.
    """
    if c.basis != config.basis:
        raise ValueError("incompatible bases")
    negatives = irreducible_negative_curves(config)
    moving = c
    fixed = config.basis.zero()
    for _ in range(_DECOMPOSITION_STEPS_PER_RANK * config.basis.rank):
        violator = next((n for n in negatives if moving.dot(n) < 0), None)
        if violator is None:
            return moving, fixed
        moving = moving - violator
        fixed = fixed + violator
    raise ClassificationError("E_DECOMPOSITION_DIVERGED", f"decomposition diverged for {c}")


def is_nef(c: DivisorClass, config: CurveConfiguration) -> bool:
    """Nonnegative against every irreducible negative curve, and ``c^2 >= 0``."""
    if c.dot(c) < 0:
        return False
    return all(c.dot(n) >= 0 for n in irreducible_negative_curves(config))


def h0(c: DivisorClass, config: CurveConfiguration) -> int:
    """Dimension of global sections.

    Total function: decompose ``c``; a vanished moving part means the class
    was a sum of negatives (one section) or nothing at all; a nef moving
    part ``M`` contributes ``M.(M - k)/2 + 1`` by Riemann-Roch with
    vanishing; anything else counts no sections.
    """
    try:
        moving, _fixed = moving_fixed_decomposition(c, config)
    except ClassificationError:
        return 0
    if moving.is_zero():
        return 1
    if not is_nef(moving, config):
        return 0
    # a genuinely nef class meets the (effective) pullbacks of lines and
    # rulings nonnegatively; this guards Riemann-Roch against anti-effective
    # classes on low ranks where no negative curve witnesses them
    basis = config.basis
    if basis.kind is BasisKind.TYPE1:
        if moving.dot(basis.generator(0)) < 0:
            return 0
    else:
        if moving.dot(basis.generator(0)) < 0 or moving.dot(basis.generator(1)) < 0:
            return 0
    k = canonical_class(basis)
    chi = (moving.dot(moving) - moving.dot(k)) // 2 + 1
    return max(chi, 0)
