"""Surface families as lattice models.

Each constructor returns a :class:`SurfaceModel`: the numerical data of the
surface (a working lattice, the canonical class, ``χ(𝒪)``) together with the
family payload and whatever witness geometry the engine needs.

The working lattice is not always all of ``Num(X)``.  When it is only a
finite-index or lower-rank piece, ``num_complete`` is ``False`` and evenness of
the working Gram matrix says nothing about ``Num(X)``.  When integral
generators of the full lattice are known in working coordinates they are
stored in ``num_basis``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Any, Mapping, NamedTuple, Sequence

from .bundles import SlopeProfile, mu_minus
from .errors import DomainError
from .lattice import DivisorClass, IntersectionLattice, Number, as_fraction, pair
from .riemann_roch import SurfaceNumerics


class Family(str, enum.Enum):
    PROJECTIVE_PLANE = "projective-plane"
    HIRZEBRUCH = "hirzebruch"
    PROJ_BUNDLE_CURVE = "proj-bundle-curve"
    ABELIAN = "abelian"
    BIELLIPTIC = "bielliptic"
    K3 = "k3"
    ENRIQUES = "enriques"
    ELLIPTIC_KOD1 = "elliptic-kod1"
    ISOTRIVIAL_EXAMPLE = "isotrivial-example"
    PRODUCT_OF_CURVES = "product-of-curves"
    GODEAUX = "godeaux"
    HYPERSURFACE = "hypersurface"
    DOUBLE_COVER_PPAV = "double-cover-ppav"
    SYM_SQUARE = "sym-square"
    PENCIL_BLOWUP = "pencil-blowup"
    LATTICE = "lattice"


@dataclass(frozen=True)
class PseudosplitFibration:
    """A fibration with irreducible fibres, a reduced fibre ``F`` of multiplicity
    ``multiplicity`` and a curve ``S`` with ``S·F = S_dot_F``.

    ``section`` and ``fibre`` are the classes of ``S`` and of the reduced
    fibre ``F`` when the working lattice contains them.
    """

    all_fibers_irreducible: bool
    S_dot_F: int
    S_sq: int
    multiplicity: int = 1
    section: DivisorClass | None = None
    fibre: DivisorClass | None = None

    def __post_init__(self):
        if self.multiplicity < 1:
            raise DomainError("fibre multiplicity must be at least 1")


@dataclass(frozen=True)
class SurfaceModel:
    """Numerical model of a surface in one of the catalogued families.

    ``curve_cone`` lists classes that generate the closed cone of curves inside
    the working lattice: an integral class is ample iff it is positive on each of
    them and has positive square.  An empty tuple means no ample oracle is known.

    ``ncd_pair`` holds two distinct ample effective curves meeting once, and
    ``pseudosplit`` a pseudosplit irreducible fibration, when the family has them.
    """

    family: Family
    numerics: SurfaceNumerics
    params: Mapping[str, Any] = field(default_factory=dict)
    extra: Any = None
    num_complete: bool = True
    num_basis: tuple[DivisorClass, ...] | None = None
    curve_cone: tuple[DivisorClass, ...] = ()
    pseudosplit: PseudosplitFibration | None = None
    ncd_pair: tuple[DivisorClass, DivisorClass] | None = None
    name: str = ""

    @property
    def lattice(self) -> IntersectionLattice:
        return self.numerics.lattice

    @property
    def canonical(self) -> DivisorClass:
        return self.numerics.canonical

    @property
    def has_ample_oracle(self) -> bool:
        return bool(self.curve_cone)

    def is_ample(self, L: DivisorClass) -> bool:
        if not self.curve_cone:
            raise DomainError(f"no ample oracle for the {self.family.value} model")
        return pair(L, L) > 0 and all(pair(L, c) > 0 for c in self.curve_cone)

    def is_nef(self, L: DivisorClass) -> bool:
        if not self.curve_cone:
            raise DomainError(f"no nef oracle for the {self.family.value} model")
        return all(pair(L, c) >= 0 for c in self.curve_cone)

    def integral_basis(self) -> tuple[DivisorClass, ...]:
        """Integral generators of the lattice used for divisibility questions."""
        if self.num_basis is not None:
            return self.num_basis
        lat = self.lattice
        return tuple(lat.basis(label) for label in lat.basis_labels)


# ---------------------------------------------------------------- rational surfaces

def make_projective_plane() -> SurfaceModel:
    lat = IntersectionLattice(["H"], [[1]])
    H = lat.basis("H")
    return SurfaceModel(
        Family.PROJECTIVE_PLANE,
        SurfaceNumerics(lat, -3 * H, 1),
        curve_cone=(H,),
        name="projective plane",
    )


def make_hirzebruch(n: int) -> SurfaceModel:
    if n < 0:
        raise DomainError("Hirzebruch index n must be nonnegative")
    lat = IntersectionLattice(["S", "F"], [[-n, 1], [1, 0]])
    S, F = lat.basis("S"), lat.basis("F")
    return SurfaceModel(
        Family.HIRZEBRUCH,
        SurfaceNumerics(lat, -2 * S - (n + 2) * F, 1),
        params={"n": n},
        curve_cone=(S, F),
        pseudosplit=PseudosplitFibration(True, 1, -n, 1, S, F),
        name=f"Hirzebruch surface F_{n}",
    )


def hirzebruch_is_nef(n: int, L: tuple[int, int]) -> bool:
    """``L = a·S + b·F`` is nef (equivalently globally generated) iff ``b ≥ na`` and ``a ≥ 0``.

    For ``n ≥ 1`` this is ``b ≥ na ≥ 0``; on ``ℙ¹ × ℙ¹`` both coefficients must be nonnegative.
    """
    a, b = L
    return b >= n * a and a >= 0


def hirzebruch_is_ample(n: int, L: tuple[int, int]) -> bool:
    """``b > na`` and ``a > 0``; for ``n ≥ 1`` this is ``b > na > 0``."""
    a, b = L
    return b > n * a and a > 0


def make_ruled_surface(profile: SlopeProfile) -> SurfaceModel:
    """``ℙ(E)`` for a rank 2 bundle, in the basis ``(ξ, f)`` of the tautological class
    and a fibre, with ``ξ² = deg E``."""
    if profile.rank != 2:
        raise DomainError("a ruled surface comes from a rank 2 bundle; use fujita_number_PE for other ranks")
    d, g = profile.degree, profile.genus
    lat = IntersectionLattice(["xi", "f"], [[d, 1], [1, 0]])
    xi, f = lat.basis("xi"), lat.basis("f")
    mu_lo = mu_minus(profile)
    # ample iff a > 0 and b + a·μ⁻ > 0; both are pairings with classes of the closed curve cone
    p, q = mu_lo.numerator, mu_lo.denominator
    rays = (f, q * xi + (p - d * q) * f)
    return SurfaceModel(
        Family.PROJ_BUNDLE_CURVE,
        SurfaceNumerics(lat, -2 * xi + (2 * g - 2 + d) * f, 1 - g),
        params=profile.to_dict(),
        extra=profile,
        curve_cone=rays,
        name=f"ruled surface P(E), rank 2, degree {d}, genus {g}",
    )


# ---------------------------------------------------------------- Kodaira dimension 0

@dataclass(frozen=True)
class AbelianData:
    """Declared data of an abelian surface.

    ``min_ample_selfint`` is the least ``L²`` over ample ``L``.  With
    ``isogeny_from_ppav_order`` set, the surface is ``A/G`` for a principally
    polarized ``A`` with ``End(A) = ℤ`` and a subgroup ``G`` of that order.
    """

    min_ample_selfint: int | None = None
    product_of_elliptic: bool = False
    isogeny_from_ppav_order: int | None = None

    def __post_init__(self):
        m = self.min_ample_selfint
        if self.product_of_elliptic:
            if m is None:
                object.__setattr__(self, "min_ample_selfint", 2)
            elif m != 2:
                raise DomainError("a product of elliptic curves carries E×pt + pt×E' with square 2")
            if self.isogeny_from_ppav_order is not None:
                raise DomainError("isogeny data and the product flag describe different surfaces")
        m = self.min_ample_selfint
        if m is not None and (m <= 0 or m % 2):
            raise DomainError("the square of an ample class on an abelian surface is a positive even integer")
        G = self.isogeny_from_ppav_order
        if G is not None:
            if G < 1:
                raise DomainError("group order must be positive")
            obstruction = isogeny_obstruction(G)
            if obstruction is not None and m is not None and m < obstruction["least_admissible_L_sq"]:
                raise DomainError(
                    f"min_ample_selfint={m} contradicts the isogeny rule for #G={G} "
                    f"(ample squares are multiples of {2 * obstruction['prime']})"
                )
        elif m is None:
            raise DomainError("min_ample_selfint is required unless isogeny data is given")


def odd_part_is_square(n: int) -> bool:
    while n % 2 == 0:
        n //= 2
    return isqrt(n) ** 2 == n


def isogeny_obstruction(G_order: int) -> dict | None:
    """When some odd prime ``p`` divides ``#G`` to an odd power, every ample ``L`` on
    ``A/G`` has ``2p | L²``.

    Returns the first such prime and the least ``L²`` allowed by ``2m² = #G·L²``,
    or ``None`` if the odd part of ``#G`` is a square.
    """
    n, p, odd = G_order, 3, []
    while n % 2 == 0:
        n //= 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            odd.append(p)
        p += 2
    if n > 1:
        odd.append(n)
    if not odd:
        return None
    return {"prime": odd[0], "least_admissible_L_sq": least_admissible_selfint(G_order)}


def isogeny_admissible(G_order: int, L_sq: int) -> bool:
    """Necessary condition ``2m² = #G·L²`` for some integer ``m``."""
    t = G_order * L_sq
    if t <= 0 or t % 2:
        return False
    r = isqrt(t // 2)
    return r * r == t // 2


def least_admissible_selfint(G_order: int) -> int:
    L_sq = 2
    while not isogeny_admissible(G_order, L_sq):
        L_sq += 2
    return L_sq


def make_abelian(data: AbelianData) -> SurfaceModel:
    if data.product_of_elliptic:
        lat = IntersectionLattice(["E", "E'"], [[0, 1], [1, 0]])
        E, E2 = lat.basis("E"), lat.basis("E'")
        # projection to E' has fibres E; the curve E' meets each fibre once
        return SurfaceModel(
            Family.ABELIAN,
            SurfaceNumerics(lat, lat.zero(), 0),
            params={"product_of_elliptic": True, "min_ample_selfint": 2},
            extra=data,
            num_complete=False,
            curve_cone=(E, E2),
            pseudosplit=PseudosplitFibration(True, 1, 0, 1, E2, E),
            name="product of elliptic curves",
        )
    m = data.min_ample_selfint
    if m is None:
        m = least_admissible_selfint(data.isogeny_from_ppav_order)
    lat = IntersectionLattice(["L"], [[m]])
    params = {"min_ample_selfint": data.min_ample_selfint}
    if data.isogeny_from_ppav_order is not None:
        params["isogeny_from_ppav_order"] = data.isogeny_from_ppav_order
    return SurfaceModel(
        Family.ABELIAN,
        SurfaceNumerics(lat, lat.zero(), 0),
        params=params,
        extra=data,
        num_complete=False,
        curve_cone=(lat.basis("L"),),
        name="abelian surface",
    )


class BiellipticType(enum.Enum):
    """The seven groups ``G`` of bielliptic surfaces ``E × F / G``."""

    MU2 = ("μ2", 2, "μ2", 2)
    MU3 = ("μ3", 3, "μ3", 3)
    MU4 = ("μ4", 4, "μ4", 4)
    MU6 = ("μ6", 6, "μ6", 6)
    MU2_Z2 = ("μ2×Z/2", 4, "μ2", 2)
    MU4_Z2 = ("μ4×Z/2", 8, "μ4", 4)
    MU3_Z3 = ("μ3×Z/3", 9, "μ3", 3)

    def __init__(self, label: str, order: int, stabilizer: str, stabilizer_order: int):
        self.label = label
        self.order = order
        self.stabilizer = stabilizer
        self.stabilizer_order = stabilizer_order

    @property
    def orbit_size(self) -> int:
        return self.order // self.stabilizer_order

    @property
    def stabilizer_is_whole_group(self) -> bool:
        return self.stabilizer_order == self.order

    @property
    def L_sq(self) -> int:
        """Square of ``h⁻¹(0) + F₀``, which is twice the orbit of ``0`` in ``F``."""
        return 2 * self.orbit_size

    @property
    def descent_L_sq(self) -> int | None:
        """``(2/#G)·3·3`` for the class that descends from two degree 3 bundles."""
        if self is BiellipticType.MU3_Z3:
            v = Fraction(2, self.order) * 3 * 3
            assert v.denominator == 1
            return v.numerator
        return None

    @classmethod
    def parse(cls, text: str) -> "BiellipticType":
        key = text.strip().replace(" ", "").replace("mu", "μ").replace("x", "×").replace("*", "×")
        key = key.replace("Z/2Z", "Z/2").replace("Z/3Z", "Z/3")
        for member in cls:
            if member.label == key or member.name == text.strip().upper():
                return member
        raise DomainError(f"unknown bielliptic group {text!r}; expected one of "
                          + ", ".join(m.label for m in cls))


@dataclass(frozen=True)
class BiellipticExtra:
    group: BiellipticType
    distinguished: DivisorClass
    descent: DivisorClass | None


def make_bielliptic(group: BiellipticType | str) -> SurfaceModel:
    """Lattice spanned by ``A = h⁻¹(0)`` and the reduced fibre ``F₀``.

    Pulled back to ``E × F``: ``A`` is ``#G`` copies of ``F`` and ``F₀`` is ``E × S``
    with ``#S = #G/#G₀``, so ``A·F₀ = #G·#S/#G = #S``.
    """
    if isinstance(group, str):
        group = BiellipticType.parse(group)
    s = group.orbit_size
    lat = IntersectionLattice(["A", "F0"], [[0, s], [s, 0]])
    A, F0 = lat.basis("A"), lat.basis("F0")
    L = A + F0
    descent = None
    if group is BiellipticType.MU3_Z3:
        # pulls back to M1 ⊠ M2 with both degrees 3: 3/#G of A plus one copy of F0
        descent = Fraction(3, group.order) * A + F0
    return SurfaceModel(
        Family.BIELLIPTIC,
        SurfaceNumerics(lat, lat.zero(), 0),
        params={"group": group.label},
        extra=BiellipticExtra(group, L, descent),
        num_complete=False,
        curve_cone=(A, F0),
        name=f"bielliptic surface, G = {group.label}",
    )


@dataclass(frozen=True)
class K3Data:
    has_special_fibration: bool


class K3ClassReport(NamedTuple):
    L_sq: int
    L_dot_E: int
    L_dot_S: int
    ample: bool


def make_k3_fibration_lattice() -> SurfaceModel:
    """``⟨E, S⟩`` for an elliptic K3 with a section and irreducible reduced fibres."""
    lat = IntersectionLattice(["E", "S"], [[0, 1], [1, -2]])
    E, S = lat.basis("E"), lat.basis("S")
    return SurfaceModel(
        Family.K3,
        SurfaceNumerics(lat, lat.zero(), 2),
        params={"has_special_fibration": True},
        extra=K3Data(True),
        num_complete=False,
        curve_cone=(E, S),
        pseudosplit=PseudosplitFibration(True, 1, -2, 1, S, E),
        name="K3 surface with a special elliptic fibration",
    )


def k3_special_class_report(m: int) -> K3ClassReport:
    model = make_k3_fibration_lattice()
    lat = model.lattice
    E, S = lat.basis("E"), lat.basis("S")
    L = m * E + S
    L_sq, LE, LS = (int(x) for x in (pair(L, L), pair(L, E), pair(L, S)))
    return K3ClassReport(L_sq, LE, LS, L_sq > 0 and LE > 0 and LS > 0)


def k3_special_class_is_ample(m: int) -> bool:
    return k3_special_class_report(m).ample


def make_k3(data: K3Data) -> SurfaceModel:
    if data.has_special_fibration:
        return make_k3_fibration_lattice()
    lat = IntersectionLattice(["L"], [[2]])
    return SurfaceModel(
        Family.K3,
        SurfaceNumerics(lat, lat.zero(), 2),
        params={"has_special_fibration": False},
        extra=data,
        num_complete=False,
        name="K3 surface without a special elliptic fibration",
    )


# ---------------------------------------------------------------- Enriques surfaces

_ADE = re.compile(r"^\s*(\d*)\s*([ADE])_?(\d+)\s*$")


def parse_ade(symbol: str) -> tuple[str, int]:
    m = _ADE.match(symbol)
    if not m or m.group(1):
        raise DomainError(f"invalid ADE symbol {symbol!r}")
    kind, k = m.group(2), int(m.group(3))
    if (kind == "A" and k < 1) or (kind == "D" and k < 4) or (kind == "E" and k not in (6, 7, 8)):
        raise DomainError(f"invalid ADE symbol {symbol!r}")
    return kind, k


def parse_fiber_list(text: str | Sequence[str]) -> tuple[str, ...]:
    """``"A_3+2A_1"`` → ``("A_3", "A_1", "A_1")``.  ``"-"`` or ``""`` is the empty list."""
    if not isinstance(text, str):
        out: list[str] = []
        for item in text:
            out.extend(parse_fiber_list(item))
        return tuple(out)
    text = text.strip()
    if text in ("", "-", "−", "—"):
        return ()
    out = []
    for term in text.split("+"):
        m = _ADE.match(term)
        if not m:
            raise DomainError(f"invalid ADE term {term!r}")
        count = int(m.group(1) or 1)
        kind, k = parse_ade(f"{m.group(2)}_{m.group(3)}")
        out.extend([f"{kind}_{k}"] * count)
    return tuple(out)


def enriques_component_count(sym: str, is_half_fiber: bool = False) -> int:
    """Irreducible components of the Kodaira fibre of Dynkin type ``sym``.

    Multiplicity does not change the count, so ``is_half_fiber`` is accepted
    for symmetry with the fibre tables and otherwise ignored.
    """
    kind, k = parse_ade(sym)
    if kind in "AD":
        return k + 1
    return {6: 7, 7: 8, 8: 9}[k]


@dataclass(frozen=True)
class GenusOneFibration:
    singular_nonmultiple: tuple[str, ...] = ()
    half_fibers: tuple[str, ...] = ()
    has_allcomponent_bisection: bool | None = None

    def __post_init__(self):
        object.__setattr__(self, "singular_nonmultiple", parse_fiber_list(self.singular_nonmultiple))
        object.__setattr__(self, "half_fibers", parse_fiber_list(self.half_fibers))
        if len(self.half_fibers) > 2:
            raise DomainError("a genus one fibration on an Enriques surface has exactly two half fibres")

    def component_counts(self) -> list[int]:
        return ([enriques_component_count(s) for s in self.singular_nonmultiple]
                + [enriques_component_count(s, True) for s in self.half_fibers])

    @property
    def all_fibers_irreducible(self) -> bool:
        return not self.singular_nonmultiple and not self.half_fibers

    @property
    def max_components(self) -> int:
        return max(self.component_counts(), default=1)

    def describe(self) -> str:
        def side(xs):
            if not xs:
                return "-"
            counts: dict[str, int] = {}
            for s in xs:
                counts[s] = counts.get(s, 0) + 1
            return "+".join((f"{c}{s}" if c > 1 else s) for s, c in counts.items())
        return f"{side(self.singular_nonmultiple)}|{side(self.half_fibers)}"

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "singular_nonmultiple": list(self.singular_nonmultiple),
            "half_fibers": list(self.half_fibers),
        }
        if self.has_allcomponent_bisection is not None:
            out["has_allcomponent_bisection"] = self.has_allcomponent_bisection
        return out


@dataclass(frozen=True)
class EnriquesData:
    fibrations: tuple[GenusOneFibration, ...]

    def __post_init__(self):
        object.__setattr__(self, "fibrations", tuple(self.fibrations))
        if not self.fibrations:
            raise DomainError("every Enriques surface has a genus one fibration; the list is empty")

    @classmethod
    def unnodal(cls) -> "EnriquesData":
        return cls((GenusOneFibration((), (), True),))

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "EnriquesData":
        """Rows in the ``"nonmultiple|half"`` notation, e.g. ``"A_3+2A_1|-"``."""
        fibs = []
        for row in rows:
            if "|" not in row:
                raise DomainError(f"fibration row {row!r} needs the form 'nonmultiple|half'")
            left, right = row.split("|", 1)
            fibs.append(GenusOneFibration(parse_fiber_list(left), parse_fiber_list(right)))
        return cls(tuple(fibs))


ENRIQUES_TABLE_ROWS: dict[int, tuple[str, ...]] = {
    24: ("-|A_3", "-|A_4", "A_3+2A_1|-", "A_4|-", "D_4|-", "D_5|-"),
    47: ("-|A_4", "A_5+A_1|-", "D_5|-", "E_6|-"),
}


def enriques_lattice() -> IntersectionLattice:
    """``U ⊕ E₈(−1)``, the numerical lattice of every Enriques surface."""
    e8 = [
        [2, -1, 0, 0, 0, 0, 0, 0],
        [-1, 2, -1, 0, 0, 0, 0, 0],
        [0, -1, 2, -1, 0, 0, 0, 0],
        [0, 0, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, -1],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, 0],
        [0, 0, 0, 0, -1, 0, 0, 2],
    ]
    gram = [[0] * 10 for _ in range(10)]
    gram[0][1] = gram[1][0] = 1
    for i in range(8):
        for j in range(8):
            gram[2 + i][2 + j] = -e8[i][j]
    return IntersectionLattice(["u1", "u2"] + [f"e{i}" for i in range(1, 9)], gram)


def make_enriques(data: EnriquesData) -> SurfaceModel:
    lat = enriques_lattice()
    return SurfaceModel(
        Family.ENRIQUES,
        SurfaceNumerics(lat, lat.zero(), 1),
        params={"fibrations": [f.to_dict() for f in data.fibrations]},
        extra=data,
        name="Enriques surface",
    )


# ---------------------------------------------------------------- Kodaira dimension 1

@dataclass(frozen=True)
class EllFibData:
    """Elliptic fibration ``X → B`` of Kodaira dimension 1.

    ``chi_O`` is optional; when given it must agree with ``chi_O_even`` and is
    used to write down the canonical class.
    """

    has_section: bool
    all_fibers_irreducible_reduced: bool
    chi_O_even: bool
    multiple_fibers: tuple[int, ...] = ()
    base_genus: int = 0
    chi_O: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "multiple_fibers", tuple(int(m) for m in self.multiple_fibers))
        if self.has_section and self.multiple_fibers:
            raise DomainError("an elliptic fibration with a section has no multiple fibres")
        if any(m < 2 for m in self.multiple_fibers):
            raise DomainError("multiple fibres have multiplicity at least 2")
        if self.base_genus < 0:
            raise DomainError("base genus must be nonnegative")
        if self.chi_O is not None:
            if self.chi_O < 0:
                raise DomainError("χ(𝒪) of a relatively minimal elliptic surface is nonnegative")
            if (self.chi_O % 2 == 0) != self.chi_O_even:
                raise DomainError("chi_O disagrees with chi_O_even")
        if self.kodaira_degree is not None and self.kodaira_degree <= 0:
            raise DomainError("canonical bundle formula gives Kodaira dimension < 1 for these data")

    @property
    def kodaira_degree(self) -> Fraction | None:
        """``χ(𝒪) − 2(1 − g) + Σ(1 − 1/m)``; positive exactly in Kodaira dimension 1."""
        if self.chi_O is None:
            return None
        return (self.chi_O - 2 * (1 - self.base_genus)
                + sum((1 - Fraction(1, m) for m in self.multiple_fibers), Fraction(0)))


def make_elliptic_kod1(data: EllFibData) -> SurfaceModel:
    chi = data.chi_O
    params = {
        "has_section": data.has_section,
        "all_fibers_irreducible_reduced": data.all_fibers_irreducible_reduced,
        "chi_O_even": data.chi_O_even,
        "multiple_fibers": list(data.multiple_fibers),
        "base_genus": data.base_genus,
    }
    if chi is not None:
        params["chi_O"] = chi
    g = data.base_genus
    if data.has_section and chi is not None:
        lat = IntersectionLattice(["S", "F"], [[-chi, 1], [1, 0]])
        S, F = lat.basis("S"), lat.basis("F")
        K = (2 * g - 2 + chi) * F
        fib = PseudosplitFibration(data.all_fibers_irreducible_reduced, 1, -chi, 1, S, F)
        return SurfaceModel(
            Family.ELLIPTIC_KOD1, SurfaceNumerics(lat, K, chi), params=params, extra=data,
            num_complete=False, pseudosplit=fib if data.all_fibers_irreducible_reduced else None,
            name="elliptic surface with a section",
        )
    lat = IntersectionLattice(["F"], [[0]])
    F = lat.basis("F")
    K = lat.zero()
    if chi is not None:
        # K ≡ (χ + 2g − 2)F + Σ (m − 1)F_m with F_m = F/m
        K = (chi + 2 * g - 2 + sum((1 - Fraction(1, m) for m in data.multiple_fibers), Fraction(0))) * F
    fib = None
    if data.has_section and data.all_fibers_irreducible_reduced:
        fib = PseudosplitFibration(True, 1, 0 if chi is None else -chi, 1, None, F)
    return SurfaceModel(
        Family.ELLIPTIC_KOD1, SurfaceNumerics(lat, K, chi if chi is not None else 0),
        params=params, extra=data, num_complete=False, pseudosplit=fib,
        name="elliptic surface of Kodaira dimension 1",
    )


@dataclass(frozen=True)
class IsotrivialData:
    """Numbers behind the isotrivial elliptic example ``E × C / G`` with ``#G = 4``, ``g(C) = 2``."""

    G_order: int
    genus_C: int
    F_dot_H: Fraction
    K: DivisorClass
    L: DivisorClass
    h0_F: int
    h0_F_plus_H: int
    deg_Z: int


def isotrivial_cover_lattice(G_order: int = 4) -> IntersectionLattice:
    """``Y = E × C`` with ``π*F = #G·(pt × C)`` and ``π*H = E × pt`` style classes.

    Basis ``e = pt × C`` and ``c = E × pt``.
    """
    return IntersectionLattice(["e", "c"], [[0, 1], [1, 0]])


def make_isotrivial_example() -> SurfaceModel:
    G, g = 4, 2
    cover = isotrivial_cover_lattice(G)
    e, c = cover.basis("e"), cover.basis("c")
    # F is a fibre of X → C/G = ℙ¹, pulling back to #G fibres of Y → C; H pulls back to #G copies of E
    piF, piH = G * e, G * c
    F_dot_H = pair(piF, piH) / G
    lat = IntersectionLattice(["F", "H"], [[0, int(F_dot_H)], [int(F_dot_H), 0]])
    F, H = lat.basis("F"), lat.basis("H")
    # ω_X ≡ ((2g − 2)/#G)·F
    K = Fraction(2 * g - 2, G) * F
    L = Fraction(1, 4) * F + Fraction(1, 2) * H
    # h⁰(F) from the pencil |F| = pullback of 𝒪(1) on ℙ¹; h⁰(F + H) = #G + 1 − g by Riemann-Roch on C
    h0_F = 2
    h0_FH = G + 1 - g
    deg_Z = int(pair(F, H))
    extra = IsotrivialData(G, g, F_dot_H, K, L, h0_F, h0_FH, deg_Z)
    return SurfaceModel(
        Family.ISOTRIVIAL_EXAMPLE,
        SurfaceNumerics(lat, K, 0),
        extra=extra,
        num_complete=True,
        num_basis=(K, L),
        curve_cone=(F, H),
        name="isotrivial elliptic surface E×C/G, #G = 4, g(C) = 2",
    )


# ---------------------------------------------------------------- general type and others

def make_product_of_curves(g1: int, g2: int) -> SurfaceModel:
    if g1 < 0 or g2 < 0:
        raise DomainError("genera must be nonnegative")
    lat = IntersectionLattice(["f1", "f2"], [[0, 1], [1, 0]])
    f1, f2 = lat.basis("f1"), lat.basis("f2")
    # f1 = pt × C2 (fibre of the first projection), f2 = C1 × pt
    K = (2 * g1 - 2) * f1 + (2 * g2 - 2) * f2
    return SurfaceModel(
        Family.PRODUCT_OF_CURVES,
        SurfaceNumerics(lat, K, (1 - g1) * (1 - g2)),
        params={"g1": g1, "g2": g2},
        num_complete=False,
        curve_cone=(f1, f2),
        pseudosplit=PseudosplitFibration(True, 1, 0, 1, f2, f1),
        name=f"product of curves of genus {g1} and {g2}",
    )


@dataclass(frozen=True)
class GodeauxExtra:
    quintic_D_dot_D: int
    C1_dot_C2: Fraction


def make_godeaux() -> SurfaceModel:
    """Quotient of the Fermat quintic by a free ``ℤ/5``; ``Num`` has rank 1 generated by ``K``."""
    quintic = IntersectionLattice(["h"], [[5]])
    h = quintic.basis("h")
    D_dot_D = int(pair(h, h))
    C1C2 = Fraction(D_dot_D, 5)
    lat = IntersectionLattice(["K"], [[int(C1C2)]])
    K = lat.basis("K")
    return SurfaceModel(
        Family.GODEAUX,
        SurfaceNumerics(lat, K, 1),
        extra=GodeauxExtra(D_dot_D, C1C2),
        curve_cone=(K,),
        ncd_pair=(K, K),
        name="Godeaux surface",
    )


def make_hypersurface(d: int, very_general: bool = True) -> SurfaceModel:
    if d < 5:
        raise DomainError("only hypersurfaces of degree d >= 5 in P^3 are of general type")
    lat = IntersectionLattice(["h"], [[d]])
    h = lat.basis("h")
    return SurfaceModel(
        Family.HYPERSURFACE,
        SurfaceNumerics(lat, (d - 4) * h, 1 + (d - 1) * (d - 2) * (d - 3) // 6),
        params={"d": d, "very_general": very_general},
        num_complete=very_general,
        curve_cone=(h,) if very_general else (),
        name=f"{'very general ' if very_general else ''}surface of degree {d} in P^3",
    )


def make_double_cover_ppav(assume_picard_number_one: bool = True) -> SurfaceModel:
    """Double cover of a principally polarized abelian surface branched in a smooth member of ``|2Θ|``.

    ``Num`` is taken to be ``⟨φ⟩`` with ``φ`` the pullback of ``Θ``: ``φ² = 2·Θ² = 4``
    and ``K = φ``.
    """
    lat = IntersectionLattice(["phi"], [[4]])
    phi = lat.basis("phi")
    return SurfaceModel(
        Family.DOUBLE_COVER_PPAV,
        SurfaceNumerics(lat, phi, 1),
        params={"assume_picard_number_one": assume_picard_number_one},
        num_complete=assume_picard_number_one,
        curve_cone=(phi,) if assume_picard_number_one else (),
        name="double cover of a principally polarized abelian surface",
    )


class SymSquareNumbers(NamedTuple):
    HP_dot_HQ: int
    cover_degree: int
    DP_dot_DQ: int


def sym_square_cover_lattice() -> IntersectionLattice:
    return IntersectionLattice(["f1", "f2"], [[0, 1], [1, 0]])


def sym_square_numbers(g: int) -> SymSquareNumbers:
    """``D_P·D_Q`` on ``Sym²C`` from ``H_P = P×C + C×P`` on ``C × C``."""
    if g < 0:
        raise DomainError("genus must be nonnegative")
    cover = sym_square_cover_lattice()
    f1, f2 = cover.basis("f1"), cover.basis("f2")
    HP = f1 + f2
    HQ = f1 + f2
    HPHQ = int(pair(HP, HQ))
    v = Fraction(HPHQ, 2)
    assert v.denominator == 1
    return SymSquareNumbers(HPHQ, 2, v.numerator)


def make_sym_square(g: int) -> SurfaceModel:
    """``Sym²C`` for a very general curve, in the basis ``x`` (class of ``D_P``) and ``θ``.

    ``x² = D_P·D_Q = 1``, ``x·θ = g``, ``θ² = g(g − 1)`` and ``K = (g − 3)x + θ``.
    For ``g = 0`` this is ``ℙ²`` with ``x`` a line.
    """
    nums = sym_square_numbers(g)
    if g == 0:
        lat = IntersectionLattice(["x"], [[nums.DP_dot_DQ]])
        x = lat.basis("x")
        K = -3 * x
    else:
        lat = IntersectionLattice(["x", "theta"], [[nums.DP_dot_DQ, g], [g, g * (g - 1)]])
        x = lat.basis("x")
        K = (g - 3) * x + lat.basis("theta")
    return SurfaceModel(
        Family.SYM_SQUARE,
        SurfaceNumerics(lat, K, (g - 1) * (g - 2) // 2),
        params={"g": g},
        extra=nums,
        num_complete=False,
        ncd_pair=(x, x),
        name=f"symmetric square of a curve of genus {g}",
    )


class PencilBlowupNumbers(NamedTuple):
    C_sq: int
    C_dot_H: int
    C_dot_Ej: int
    num_blown_points: int


def pencil_blowup_lattice(d: int) -> IntersectionLattice:
    if d < 3:
        raise DomainError("the pencil construction needs d >= 3")
    k = d * d - 1
    gram = [[0] * (k + 1) for _ in range(k + 1)]
    gram[0][0] = 1
    for j in range(1, k + 1):
        gram[j][j] = -1
    return IntersectionLattice(["H"] + [f"E{j}" for j in range(1, k + 1)], gram)


def _pencil_classes(d: int) -> tuple[IntersectionLattice, DivisorClass, DivisorClass]:
    lat = pencil_blowup_lattice(d)
    C = lat.vector(d, *([-1] * (lat.rank - 1)))
    K = lat.vector(-3, *([1] * (lat.rank - 1)))
    return lat, C, K


def pencil_blowup_numbers(d: int) -> PencilBlowupNumbers:
    """``C = dH − ΣE_j``: strict transform of a pencil member after blowing up ``d² − 1`` base points."""
    lat, C, _ = _pencil_classes(d)
    H, E1 = lat.basis("H"), lat.basis("E1")
    return PencilBlowupNumbers(int(pair(C, C)), int(pair(C, H)), int(pair(C, E1)), lat.rank - 1)


def make_pencil_blowup(d: int) -> SurfaceModel:
    lat, C, K = _pencil_classes(d)
    return SurfaceModel(
        Family.PENCIL_BLOWUP,
        SurfaceNumerics(lat, K, 1),
        params={"d": d},
        extra=pencil_blowup_numbers(d),
        ncd_pair=(C, C),
        name=f"P^2 blown up in {d * d - 1} base points of a degree {d} pencil",
    )


def make_custom(lattice: IntersectionLattice, canonical: Sequence[Number | str], chi_O: int,
                kodaira_dimension: int | None = None, num_complete: bool = True) -> SurfaceModel:
    """A user-supplied lattice model outside the catalogued families."""
    K = lattice.vector(*canonical)
    params: dict[str, Any] = {"lattice": lattice.to_dict(), "canonical": [str(c) for c in K.coords],
                              "chi_O": chi_O, "num_complete": num_complete}
    if kodaira_dimension is not None:
        params["kodaira_dimension"] = kodaira_dimension
    return SurfaceModel(
        Family.LATTICE,
        SurfaceNumerics(lattice, K, chi_O),
        params=params,
        extra={"kodaira_dimension": kodaira_dimension},
        num_complete=num_complete,
        name="custom lattice model",
    )
