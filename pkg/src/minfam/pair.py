"""Polarized lattice data of an embedded surface.

A :class:`SurfacePair` bundles a basis, the hyperplane class, the real
structure and the declared curve configuration.  Construction through
:meth:`SurfacePair.create` validates the whole bundle; the chain machinery
uses the unchecked constructor internally because intermediate pairs may
legitimately degenerate (the polarization can lose bigness on the way
down).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DescriptorError
from .involution import RealInvolution, apply, is_real, validate as validate_involution
from .lattice import DivisorClass, LatticeBasis, canonical_class
from .negcone import (
    CurveConfiguration,
    exceptional_pool,
    h0,
    irreducible_negative_curves,
    is_nef,
    moving_fixed_decomposition,
)


@dataclass(frozen=True)
class SurfacePair:
    basis: LatticeBasis
    h: DivisorClass
    sigma: RealInvolution
    config: CurveConfiguration

    @classmethod
    def create(
        cls,
        basis: LatticeBasis,
        h: DivisorClass,
        sigma: RealInvolution,
        roots: tuple[DivisorClass, ...] = (),
    ) -> "SurfacePair":
        """Validate and build.  Raises :class:`DescriptorError` on the first
        violated invariant, naming it."""
        validate_involution(sigma)
        if h.basis != basis or sigma.basis != basis:
            raise ValueError("incompatible bases")
        config = CurveConfiguration.create(basis, roots, sigma)
        if not is_real(sigma, h):
            raise DescriptorError("E_H_NOT_REAL", "h not invariant under the real structure")
        if h.dot(h) <= 0:
            raise DescriptorError("E_H_NOT_BIG", f"h^2 = {h.dot(h)} must be positive")
        bad = next((n for n in irreducible_negative_curves(config) if h.dot(n) < 0), None)
        if bad is not None:
            raise DescriptorError("E_H_NOT_NEF", f"h pairs negatively with the irreducible curve {bad}")
        return cls(basis, h, sigma, config)

    @property
    def k(self) -> DivisorClass:
        return canonical_class(self.basis)

    @property
    def adjoint_class(self) -> DivisorClass:
        return self.h + self.k


def orthogonal_exceptional_set(pair: SurfacePair) -> tuple[DivisorClass, ...]:
    """Exceptional classes orthogonal to the polarization.

    These witness a gap between the working lattice and the smooth model;
    candidate family classes must pair to zero with all of them, and the
    terminal-pair classification factors them out.
    """
    return tuple(e for e in exceptional_pool(pair.basis) if pair.h.dot(e) == 0)


def passes_family_filters(
    f: DivisorClass,
    pair: SurfacePair,
    orthogonal: tuple[DivisorClass, ...],
    complex_mode: bool = False,
) -> bool:
    """Candidate qualification: real (unless in complex mode), orthogonal to
    the exceptional set, no fixed component, and at least a pencil of
    sections."""
    if not complex_mode and not is_real(pair.sigma, f):
        return False
    if any(f.dot(e) != 0 for e in orthogonal):
        return False
    try:
        moving, fixed = moving_fixed_decomposition(f, pair.config)
    except Exception:
        return False
    if moving.is_zero() or not fixed.is_zero():
        return False
    return h0(f, pair.config) >= 2


def minimal_degree_subset(classes, h: DivisorClass) -> tuple[DivisorClass, ...]:
    """The classes of least ``h``-degree, in deterministic order."""
    pool = sorted(set(classes), key=lambda c: c.coeffs)
    if not pool:
        return ()
    best = min(h.dot(c) for c in pool)
    return tuple(c for c in pool if h.dot(c) == best)
