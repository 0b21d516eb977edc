"""Exact intersection lattices and divisor classes.

Everything here is exact: coordinates are :class:`fractions.Fraction` and the
Gram matrix is integral.  Classes may carry rational coordinates, since many
surfaces are most naturally described in a basis of a finite-index sublattice
of the Néron-Severi lattice (``F/2``, ``F/4 + H/2`` and so on).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError, LatticeMismatchError

Number = int | Fraction


def as_fraction(x: Number | str) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not lattice coordinates")
    if isinstance(x, float):
        raise TypeError("floating point coordinates are not accepted; use Fraction or 'p/q'")
    return Fraction(x)


def encode_number(x: Fraction | int) -> int | str:
    """JSON encoding of an exact rational: ints stay ints, others become ``'p/q'``."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def exact_det(matrix: Sequence[Sequence[Number]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [[Fraction(v) for v in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for r in range(col + 1, n):
            factor = m[r][col] / p
            if factor:
                row_r, row_c = m[r], m[col]
                for c in range(col, n):
                    row_r[c] -= factor * row_c[c]
    return det


@dataclass(frozen=True)
class IntersectionLattice:
    """A free abelian group with a symmetric integral bilinear form.

    ``gram[i][j]`` is the intersection number of basis elements ``i`` and
    ``j``.  Lattices compare by value (labels and Gram matrix).
    """

    basis_labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]

    def __init__(self, basis_labels: Iterable[str], gram: Iterable[Iterable[int]]):
        labels = tuple(str(b) for b in basis_labels)
        rows = tuple(tuple(g) for g in gram)
        if not labels:
            raise DomainError("a lattice needs at least one basis element")
        if len(rows) != len(labels) or any(len(r) != len(labels) for r in rows):
            raise DomainError(
                f"Gram matrix must be {len(labels)}x{len(labels)} to match the basis labels"
            )
        for r in rows:
            for v in r:
                if isinstance(v, bool) or not isinstance(v, int):
                    raise DomainError(f"Gram entries must be integers, got {v!r}")
        for i in range(len(rows)):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise DomainError(f"Gram matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "basis_labels", labels)
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element {label!r} in {self.basis_labels}") from None

    def vector(self, *coords: Number | str) -> "DivisorClass":
        return DivisorClass(self, coords)

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def basis(self, label: str) -> "DivisorClass":
        coords = [0] * self.rank
        coords[self.index(label)] = 1
        return DivisorClass(self, coords)

    def determinant(self) -> int:
        det = exact_det(self.gram)
        assert det.denominator == 1
        return det.numerator

    def sublattice(self, generators: Sequence["DivisorClass"], labels: Sequence[str]) -> "IntersectionLattice":
        """The lattice spanned over the integers by ``generators``.

        The resulting Gram matrix must be integral; this is how a finite-index
        overlattice with a rational basis is turned into a lattice of its own.
        """
        if len(generators) != len(labels):
            raise DomainError("one label per generator is required")
        rows = []
        for g in generators:
            row = []
            for h in generators:
                v = pair(g, h)
                if v.denominator != 1:
                    raise DomainError(f"pairing {v} of generators is not integral")
                row.append(v.numerator)
            rows.append(row)
        return IntersectionLattice(labels, rows)

    def to_dict(self) -> dict:
        return {"basis": list(self.basis_labels), "gram": [list(r) for r in self.gram]}

    @classmethod
    def from_dict(cls, data: dict) -> "IntersectionLattice":
        return cls(data["basis"], data["gram"])

    def __repr__(self) -> str:
        return f"IntersectionLattice({list(self.basis_labels)}, {[list(r) for r in self.gram]})"


@dataclass(frozen=True)
class DivisorClass:
    """A rational combination of the basis of ``lattice``."""

    lattice: IntersectionLattice
    coords: tuple[Fraction, ...] = field()

    def __init__(self, lattice: IntersectionLattice, coords: Iterable[Number | str]):
        c = tuple(as_fraction(x) for x in coords)
        if len(c) != lattice.rank:
            raise LatticeMismatchError(
                f"class has {len(c)} coordinates but the lattice has rank {lattice.rank}"
            )
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "coords", c)

    def _check(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected a DivisorClass, got {type(other).__name__}")
        if other.lattice != self.lattice:
            raise LatticeMismatchError("classes live in different lattices")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.lattice, [-a for a in self.coords])

    def __mul__(self, scalar: Number) -> "DivisorClass":
        s = as_fraction(scalar)
        return DivisorClass(self.lattice, [s * a for a in self.coords])

    __rmul__ = __mul__

    def dot(self, other: "DivisorClass") -> Fraction:
        return pair(self, other)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_dict(self) -> dict:
        return {
            "basis": list(self.lattice.basis_labels),
            "gram": [list(r) for r in self.lattice.gram],
            "coords": [encode_number(c) for c in self.coords],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DivisorClass":
        return cls(IntersectionLattice(data["basis"], data["gram"]), data["coords"])

    def __str__(self) -> str:
        terms = []
        for c, label in zip(self.coords, self.lattice.basis_labels):
            if c == 0:
                continue
            if c == 1:
                terms.append(label)
            elif c == -1:
                terms.append(f"-{label}")
            else:
                terms.append(f"({c}){label}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    def __repr__(self) -> str:
        return f"DivisorClass({self})"


def pair(a: DivisorClass, b: DivisorClass) -> Fraction:
    """Intersection number ``aᵀ · gram · b``."""
    a._check(b)
    gram = a.lattice.gram
    total = Fraction(0)
    for i, ai in enumerate(a.coords):
        if not ai:
            continue
        row = gram[i]
        s = sum((row[j] * bj for j, bj in enumerate(b.coords) if bj), Fraction(0))
        total += ai * s
    return total


def is_even(lat: IntersectionLattice) -> bool:
    """True iff ``v·v`` is even for every integral ``v``, i.e. the diagonal is even."""
    return all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))


def is_unimodular(lat: IntersectionLattice) -> bool:
    return abs(lat.determinant()) == 1


def is_primitive(v: DivisorClass) -> bool:
    if not v.is_integral:
        raise DomainError("primitivity is only defined for integral classes")
    if v.is_zero:
        raise DomainError("the zero class is not primitive or imprimitive")
    g = 0
    for c in v.coords:
        g = gcd(g, c.numerator)
    return g == 1


def is_divisible_by(v: DivisorClass, k: int) -> bool:
    """True iff ``v = k·θ`` for an integral class ``θ`` of the same lattice."""
    return (v * Fraction(1, k)).is_integral


def coordinates_in(v: DivisorClass, generators: Sequence[DivisorClass]) -> tuple[Fraction, ...]:
    """Coefficients of ``v`` in terms of linearly independent ``generators``.

    Raises :class:`DomainError` if ``v`` is not in their rational span or the
    generators are dependent.
    """
    for g in generators:
        v._check(g)
    r, k = v.lattice.rank, len(generators)
    # augmented system: columns are generators, right-hand side is v
    rows = [[generators[j].coords[i] for j in range(k)] + [v.coords[i]] for i in range(r)]
    pivots = []
    row = 0
    for col in range(k):
        p = next((i for i in range(row, r) if rows[i][col] != 0), None)
        if p is None:
            raise DomainError("generators are linearly dependent")
        rows[row], rows[p] = rows[p], rows[row]
        piv = rows[row][col]
        rows[row] = [x / piv for x in rows[row]]
        for i in range(r):
            if i != row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row])]
        pivots.append(row)
        row += 1
    if any(rows[i][k] != 0 for i in range(row, r)):
        raise DomainError(f"{v} is not in the span of the generators")
    return tuple(rows[i][k] for i in pivots)
