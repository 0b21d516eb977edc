"""Slope arithmetic for vector bundles on curves and the convex Fujita number of ℙ(E).

A bundle is described only through its Harder-Narasimhan data; stability,
and stability of all symmetric powers, are declared flags because nothing
here can decide them from first principles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError, PreconditionError
from .lattice import Number, as_fraction
from .verdict import FujitaVerdict, Interval, TraceEntry, record


@dataclass(frozen=True)
class SlopeProfile:
    """Harder-Narasimhan profile of a rank ``rank`` bundle of degree ``degree``.

    ``hn_slopes`` lists ``(slope, rank)`` of the graded pieces, with strictly
    decreasing slopes.  Use :meth:`semistable` or :meth:`from_blocks` rather
    than the raw constructor.
    """

    rank: int
    degree: int
    hn_slopes: tuple[tuple[Fraction, int], ...]
    stable: bool = False
    sym_powers_stable: bool = False
    genus: int = 2

    def __post_init__(self):
        blocks = tuple((as_fraction(s), int(r)) for s, r in self.hn_slopes)
        object.__setattr__(self, "hn_slopes", blocks)
        if self.rank < 1:
            raise DomainError("rank must be positive")
        if self.genus < 0:
            raise DomainError("genus must be nonnegative")
        if not blocks:
            raise DomainError("the Harder-Narasimhan filtration has at least one piece")
        for i, (slope, r) in enumerate(blocks):
            if r < 1:
                raise DomainError("each Harder-Narasimhan piece has positive rank")
            if (slope * r).denominator != 1:
                raise DomainError(f"piece {i} has non-integral degree {slope * r}")
            if i and not slope < blocks[i - 1][0]:
                raise DomainError("Harder-Narasimhan slopes must be strictly decreasing")
        if sum(r for _, r in blocks) != self.rank:
            raise DomainError("ranks of the Harder-Narasimhan pieces must sum to the rank")
        if sum(s * r for s, r in blocks) != self.degree:
            raise DomainError("degrees of the Harder-Narasimhan pieces must sum to the degree")
        if self.stable and len(blocks) > 1:
            raise DomainError("a stable bundle is semistable")
        if len(blocks) == 1 and not self.stable and gcd(self.rank, self.degree) == 1:
            raise DomainError(
                "a semistable bundle of coprime rank and degree is stable; "
                "declare stable=True"
            )
        if self.sym_powers_stable and not self.stable:
            raise DomainError("stability of all symmetric powers implies stability")
        if self.genus == 0 and self.stable and self.rank > 1:
            raise DomainError("bundles of rank > 1 on the projective line split, so are never stable")

    @classmethod
    def semistable(cls, rank: int, degree: int, *, stable: bool | None = None,
                   sym_powers_stable: bool = False, genus: int = 2) -> "SlopeProfile":
        if stable is None:
            stable = gcd(rank, degree) == 1
        return cls(rank, degree, ((Fraction(degree, rank), rank),), stable, sym_powers_stable, genus)

    @classmethod
    def from_blocks(cls, blocks: Iterable[tuple[Number | str, int]], *, stable: bool | None = None,
                    sym_powers_stable: bool = False, genus: int = 2) -> "SlopeProfile":
        blocks = tuple((as_fraction(s), int(r)) for s, r in blocks)
        rank = sum(r for _, r in blocks)
        degree = sum(s * r for s, r in blocks)
        if degree.denominator != 1:
            raise DomainError(f"total degree {degree} is not an integer")
        if stable is None:
            stable = len(blocks) == 1 and gcd(rank, int(degree)) == 1
        return cls(rank, int(degree), blocks, stable, sym_powers_stable, genus)

    @property
    def is_semistable(self) -> bool:
        return len(self.hn_slopes) == 1

    @property
    def min_quotient_rank(self) -> int:
        return self.hn_slopes[-1][1]

    def to_dict(self) -> dict:
        from .lattice import encode_number

        return {
            "rank": self.rank,
            "degree": self.degree,
            "hn_slopes": [[encode_number(s), r] for s, r in self.hn_slopes],
            "stable": self.stable,
            "sym_powers_stable": self.sym_powers_stable,
            "genus": self.genus,
        }


@dataclass(frozen=True, order=True)
class PEBundleLineClass:
    """The line bundle ``π*M ⊗ 𝒪(a)`` on ℙ(E), recorded by ``a`` and ``deg M``."""

    a: int
    deg_M: int


def mu_plus(p: SlopeProfile) -> Fraction:
    return p.hn_slopes[0][0]


def mu_minus(p: SlopeProfile) -> Fraction:
    return p.hn_slopes[-1][0]


def mu(p: SlopeProfile) -> Fraction:
    return Fraction(p.degree, p.rank)


def butler_is_ample(p: SlopeProfile, L: PEBundleLineClass) -> bool:
    """Butler's criterion: ample iff ``a > 0`` and ``deg M + a·μ⁻(E) > 0``."""
    return L.a > 0 and L.deg_M + L.a * mu_minus(p) > 0


def adjoint_pushforward_min_slope(p: SlopeProfile, Ls: Sequence[PEBundleLineClass]) -> Fraction:
    """Minimal slope of ``F = Sym^{a−n}(E) ⊗ det E ⊗ M`` for the adjoint of ``Σ Lᵢ``.

    With ``a = Σ aᵢ`` and ``deg M = Σ deg Mᵢ`` this is
    ``(a − n)·μ⁻ + n·μ + deg M``.
    """
    n = p.rank
    if len(Ls) < n:
        raise PreconditionError(f"need at least rank = {n} line bundles, got {len(Ls)}")
    for L in Ls:
        if not butler_is_ample(p, L):
            raise PreconditionError(f"{L} is not ample on ℙ(E)")
    a = sum(L.a for L in Ls)
    deg_M = sum(L.deg_M for L in Ls)
    return (a - n) * mu_minus(p) + n * mu(p) + deg_M


def slope_global_generation(min_slope: Number) -> bool:
    """Sufficient test: ``ω_C ⊗ F`` is globally generated when ``μ⁻(F) > 1``.

    ``False`` means only that this criterion does not apply.
    """
    return as_fraction(min_slope) > 1


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a·x + b·y = g = gcd(a, b) ≥ 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def critical_equation_solution(n: int, d: int) -> tuple[int, int] | None:
    """Smallest ``a ≥ 1`` with an integer ``m`` such that ``n·m + a·d = 1``.

    Returns ``(a, m)``, or ``None`` when ``gcd(n, d) > 1`` and no solution exists.
    """
    g, x, y = extended_gcd(n, d)
    if g != 1:
        return None
    # n*x + d*y = 1; all solutions are (m, a) = (x - d*t, y + n*t)
    t = (1 - y) // n
    if y + n * t < 1:
        t += 1
    a = y + n * t
    m = x - d * t
    assert n * m + a * d == 1 and a >= 1
    return a, m


def fujita_number_PE(p: SlopeProfile) -> FujitaVerdict:
    """Convex Fujita number of ℙ(E) over a curve, from the slope profile of ``E``.

    Returns an exact value where the decision tree closes and the interval
    ``[n, n+1]`` otherwise, with the missing hypotheses recorded in the trace.
    """
    n, d = p.rank, p.degree
    iv = Interval(lower=0, upper=n + 1)
    iv.raise_lower(n, TraceEntry(
        "pe-lower-bound",
        "restriction to a fibre: (ω ⊗ L^m)|ℙ^{n-1} = 𝒪(m - n) forces conFN(ℙ(E)) ≥ n",
        record(fibre_dimension=n - 1),
    ))
    iv.lower_upper(n + 1, TraceEntry(
        "pe-upper-bound",
        "direct image and slope criterion: μ⁻(F) ≥ s / n⁻ ≥ 1 for s ≥ n ample classes, "
        "strictly > 1 for s ≥ n + 1",
        record(min_quotient_rank=p.min_quotient_rank),
    ))
    if not p.is_semistable:
        iv.pin(n, TraceEntry(
            "pe-not-semistable",
            "E not semistable: s > n⁻ already for s = n, so μ⁻(F) > 1 and every adjoint is generated",
            record(mu=mu(p), mu_minus=mu_minus(p), min_quotient_rank=p.min_quotient_rank),
        ))
        return iv.freeze(dimension=n)
    if not p.stable:
        iv.pin(n, TraceEntry(
            "pe-semistable-not-stable",
            "semistable but not stable: a destabilising subbundle of equal slope has smaller "
            "rank, so gcd(n, d) > 1 and the critical equation has no solution",
            record(rank=n, degree=d, gcd=gcd(n, d)),
        ))
        return iv.freeze(dimension=n)
    if gcd(n, d) > 1:
        iv.pin(n, TraceEntry(
            "pe-stable-not-coprime",
            "critical case μ(F) = 1 needs n·deg(Mᵢ) + aᵢ·d = 1 for all i, impossible when gcd(n, d) > 1",
            record(rank=n, degree=d, gcd=gcd(n, d)),
        ))
        return iv.freeze(dimension=n)
    if (d - 1) % n == 0:
        k = (1 - d) // n
        iv.pin(n + 1, TraceEntry(
            "pe-critical-tuple",
            "d ≡ 1 (mod n): the classes π*Mᵢ(1) with deg Mᵢ = k satisfy the critical equation, "
            "F = 𝒪_C(P) and P is a base point of ω_C(P)",
            record(a_i=1, deg_M_i=k, count=n, adjoint_min_slope=1),
        ))
        return iv.freeze(dimension=n)
    missing = []
    if p.genus < 2:
        missing.append("base curve of genus >= 2")
    if not p.sym_powers_stable:
        missing.append("Sym^{nk}(E) has no line bundle summand for all k > 0")
    if not missing:
        iv.pin(n, TraceEntry(
            "pe-coprime-polystable",
            "coprime, d ≢ 1 (mod n): critical tuples have aᵢ ≥ 2, and F^∨(P) is polystable of "
            "slope 0 without line bundle summands, hence has no sections",
            record(rank=n, degree=d, genus=p.genus),
        ))
        return iv.freeze(dimension=n)
    iv.note(TraceEntry("criteria-inconclusive", "hypotheses needed to close the case are not declared",
                       record(missing=missing)))
    return iv.freeze(dimension=n)
