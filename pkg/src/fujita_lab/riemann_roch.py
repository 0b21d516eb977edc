"""Riemann-Roch, adjunction and the h⁰ formula for ample classes when K ≡ 0."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, LatticeMismatchError
from .lattice import DivisorClass, IntersectionLattice, Number, as_fraction, pair


class NumTrivialFamily(enum.Enum):
    """Minimal surfaces with numerically trivial canonical class."""

    ABELIAN = "abelian"
    BIELLIPTIC = "bielliptic"
    K3 = "k3"
    ENRIQUES = "enriques"

    @property
    def chi_O(self) -> int:
        return _CHI_O[self]


_CHI_O = {
    NumTrivialFamily.ABELIAN: 0,
    NumTrivialFamily.BIELLIPTIC: 0,
    NumTrivialFamily.K3: 2,
    NumTrivialFamily.ENRIQUES: 1,
}


@dataclass(frozen=True)
class SurfaceNumerics:
    lattice: IntersectionLattice
    canonical: DivisorClass
    chi_O: int

    def __post_init__(self):
        if self.canonical.lattice != self.lattice:
            raise LatticeMismatchError("canonical class does not belong to the lattice")

    @property
    def K_squared(self) -> Fraction:
        return pair(self.canonical, self.canonical)

    def _own(self, L: DivisorClass) -> None:
        if L.lattice != self.lattice:
            raise LatticeMismatchError("class does not belong to this surface's lattice")


def chi_of_class(s: SurfaceNumerics, L: DivisorClass) -> Fraction:
    """Euler characteristic ``χ(𝒪) + ½ L·(L − K)``.

    Returned as a rational; for integral ``L`` on a genuine surface it is an
    integer, and callers that rely on that should assert it.
    """
    s._own(L)
    return s.chi_O + Fraction(1, 2) * pair(L, L - s.canonical)


def h0_ample_numK_trivial(family: NumTrivialFamily | str, L_sq: Number) -> Fraction:
    """``h⁰(L)`` for ample ``L`` on a surface with ``K ≡ 0``.

    Kodaira vanishing kills the higher cohomology of ``L = K + (L − K)``, so
    ``h⁰ = χ = χ(𝒪) + L²/2``.
    """
    fam = NumTrivialFamily(family)
    L_sq = as_fraction(L_sq)
    if L_sq <= 0:
        raise DomainError(f"an ample class has positive self-intersection, got {L_sq}")
    return fam.chi_O + L_sq / 2


def adjunction_genus(s: SurfaceNumerics, C: DivisorClass) -> Fraction:
    """Arithmetic genus ``1 + ½ C·(C + K)`` of an integral curve class."""
    s._own(C)
    if not C.is_integral:
        raise DomainError("adjunction is applied to integral curve classes only")
    return 1 + Fraction(1, 2) * pair(C, C + s.canonical)
