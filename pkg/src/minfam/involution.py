"""Lattice action of the real structure.

The involution acts by permuting the exceptional generators, fixing ``e0``
(type 1) or preserving the set ``{l0, l1}`` (type 2, optionally swapping
the two rulings).  Arbitrary unimodular involutions are rejected: every
surface in scope admits a basis on which the action has this normal form,
and restricting to it keeps validation decidable by inspection.  The
identity map doubles as "complex mode".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DescriptorError
from .lattice import BasisKind, DivisorClass, LatticeBasis, canonical_class


@dataclass(frozen=True)
class RealInvolution:
    """Action on the lattice: a permutation of the exceptional generators.

    ``perm[j - 1]`` is the (1-based) image index of the j-th exceptional
    generator.  ``swap_rulings`` exchanges ``l0`` and ``l1`` and is only
    meaningful on type 2 bases.
    """

    basis: LatticeBasis
    perm: tuple[int, ...]
    swap_rulings: bool = False

    @classmethod
    def identity(cls, basis: LatticeBasis) -> "RealInvolution":
        return cls(basis, tuple(range(1, basis.count + 1)), False)

    @classmethod
    def from_pairs(cls, basis: LatticeBasis, pairs: Iterable[Sequence[int]], swap_rulings: bool = False) -> "RealInvolution":
        """Build the involution from a list of disjoint transpositions."""
        mapping = list(range(1, basis.count + 1))
        seen: set[int] = set()
        for pair in pairs:
            if len(pair) != 2:
                raise DescriptorError("E_SIGMA", f"transposition {pair!r} must have exactly two entries")
            a, b = pair
            for x in (a, b):
                if not isinstance(x, int) or not 1 <= x <= basis.count:
                    raise DescriptorError("E_SIGMA", f"generator index {x!r} out of range 1..{basis.count}")
            if a == b or a in seen or b in seen:
                raise DescriptorError("E_SIGMA", f"transpositions must be disjoint; index repeated in {pair!r}")
            seen.update((a, b))
            mapping[a - 1], mapping[b - 1] = b, a
        return cls(basis, tuple(mapping), swap_rulings)

    def is_identity(self) -> bool:
        return not self.swap_rulings and all(v == j + 1 for j, v in enumerate(self.perm))

    def transpositions(self) -> tuple[tuple[int, int], ...]:
        return tuple((j + 1, v) for j, v in enumerate(self.perm) if v > j + 1)


def validate(sigma: RealInvolution) -> None:
    """Check the involution, isometry and fixed-generator constraints.

    Raises :class:`DescriptorError` naming the first violated invariant.
    """
    basis = sigma.basis
    r = basis.count
    if len(sigma.perm) != r:
        raise DescriptorError("E_SIGMA", f"permutation has {len(sigma.perm)} entries, expected {r}")
    if sorted(sigma.perm) != list(range(1, r + 1)):
        raise DescriptorError("E_SIGMA", "generator map is not a permutation of the exceptional generators")
    for j in range(1, r + 1):
        if sigma.perm[sigma.perm[j - 1] - 1] != j:
            raise DescriptorError("E_SIGMA", "not an involution")
    if sigma.swap_rulings and basis.kind is not BasisKind.TYPE2:
        raise DescriptorError("E_SIGMA", "ruling swap is only defined on type 2 bases")
    # isometry and canonical-class invariance are automatic for generator
    # permutations; assert them anyway as a structural safety net.
    gens = [basis.generator(i) for i in range(basis.rank)]
    images = [apply(sigma, g) for g in gens]
    for i in range(basis.rank):
        for j in range(i, basis.rank):
            assert gens[i].dot(gens[j]) == images[i].dot(images[j]), "generator map is not an isometry"
    k = canonical_class(basis)
    assert apply(sigma, k) == k, "canonical class must be fixed"


def apply(sigma: RealInvolution, c: DivisorClass) -> DivisorClass:
    """Image of ``c`` under the involution, extended linearly."""
    if c.basis != sigma.basis:
        raise ValueError("incompatible bases")
    basis = c.basis
    out = list(c.coeffs)
    offset = 1 if basis.kind is BasisKind.TYPE1 else 2
    if basis.kind is BasisKind.TYPE2 and sigma.swap_rulings:
        out[0], out[1] = out[1], out[0]
    for j in range(1, basis.count + 1):
        out[offset + sigma.perm[j - 1] - 1] = c.coeffs[offset + j - 1]
    return DivisorClass(basis, tuple(out))


def is_real(sigma: RealInvolution, c: DivisorClass) -> bool:
    return apply(sigma, c) == c
