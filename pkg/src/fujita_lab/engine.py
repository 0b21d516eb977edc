"""Decision engine: Reider bounds, the generic witnesses and the family criteria.

:func:`classify` starts from the a-priori interval ``[0, 3]``, applies every
rule that fires for the model and intersects the results.  An empty
intersection is a bug in a transcribed rule and raises
:class:`InconsistentVerdictError` instead of being papered over.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

from .bundles import SlopeProfile, fujita_number_PE
from .catalog import (
    AbelianData,
    EllFibData,
    EnriquesData,
    Family,
    PseudosplitFibration,
    SurfaceModel,
    isogeny_obstruction,
)
from .errors import InconsistentVerdictError, PreconditionError
from .lattice import DivisorClass, coordinates_in, is_even, pair
from .riemann_roch import NumTrivialFamily, h0_ample_numK_trivial
from .verdict import UNKNOWN_PER_PAPER, FujitaVerdict, Interval, TraceEntry, record

CITE_REIDER_GENERAL = "Reider bound: conFN ≤ 3 on every smooth projective surface"
CITE_REIDER_EVEN = "Reider bound: even Néron-Severi lattice gives conFN ≤ 2"
CITE_REIDER_2THETA = "Reider bound: K ≡ 2θ gives conFN ≤ 2"
CITE_REIDER_SQUARE_ONE = "Reider: conFN = 3 forces an ample class of square 1"
CITE_NCD = "two distinct ample effective curves meeting once: their meeting point is a base point of K + C₁ + C₂"
CITE_PSEUDOSPLIT = ("pseudosplit irreducible fibration: S + F + f*D is ample and S ∩ F is a base point "
                    "of its adjoint when deg D > −S²/m")


# ---------------------------------------------------------------- generic rules

def _integral_lattice(model: SurfaceModel):
    if model.num_basis is None:
        return model.lattice
    return model.lattice.sublattice(model.num_basis, [f"b{i}" for i in range(len(model.num_basis))])


def canonical_is_twice_integral(model: SurfaceModel) -> bool:
    """``K ≡ 2θ`` for an integral ``θ`` in the model's integral lattice."""
    coords = coordinates_in(model.canonical, model.integral_basis())
    return all((c / 2).denominator == 1 for c in coords)


def reider_bound(model: SurfaceModel) -> tuple[int, TraceEntry]:
    if model.num_complete and is_even(_integral_lattice(model)):
        return 2, TraceEntry("reider-even", CITE_REIDER_EVEN,
                             record(gram=[list(r) for r in _integral_lattice(model).gram]))
    if canonical_is_twice_integral(model):
        return 2, TraceEntry("reider-2theta", CITE_REIDER_2THETA, model.canonical * Fraction(1, 2))
    return 3, TraceEntry("reider-general", CITE_REIDER_GENERAL)


def reider_upper_bound(model: SurfaceModel) -> int:
    """2 if ``Num(X)`` is known to be even or ``K`` is divisible by 2, else 3."""
    return reider_bound(model)[0]


def _extreme_witnessed(entries: Iterable[TraceEntry]) -> bool:
    for t in entries:
        w = t.witness
        if isinstance(w, DivisorClass) and pair(w, w) == 1:
            return True
        if isinstance(w, tuple) and len(w) == 2 and pair(w[0], w[1]) == 1:
            return True
    return False


def ncd_extreme_check(model: SurfaceModel, C1: DivisorClass, C2: DivisorClass,
                      both_ample_effective: bool) -> FujitaVerdict | None:
    """Exact verdict 3 when two distinct ample effective curves meet in one point.

    The curves must be distinct; their classes may coincide numerically.
    """
    if not both_ample_effective:
        raise PreconditionError("C1 and C2 must be declared ample and effective")
    if model.has_ample_oracle:
        for C in (C1, C2):
            if not model.is_ample(C):
                raise PreconditionError(f"{C} is not ample on the {model.family.value} model")
    if pair(C1, C2) != 1:
        return None
    iv = Interval()
    iv.pin(3, TraceEntry("ncd-extreme", CITE_NCD, (C1, C2)))
    return iv.freeze()


class PseudosplitBound(NamedTuple):
    lower: int
    min_degree: int
    witness: DivisorClass | None


def pseudosplit_lower_bound(model: SurfaceModel, fib: PseudosplitFibration) -> PseudosplitBound | None:
    """Lower bound 2 from a pseudosplit irreducible fibration, with ``L = S + F + f*D``.

    ``min_degree`` is the least ``deg D ≥ 1`` with ``deg D > −S²/m``.  The
    witness class is built when the model contains ``S`` and ``F``; ``f*D`` is
    then ``deg D · m · F``.
    """
    if not fib.all_fibers_irreducible or fib.S_dot_F != 1:
        return None
    m = fib.multiplicity
    threshold = Fraction(-fib.S_sq, m)
    e = max(1, int(threshold // 1) + 1)
    assert e > threshold
    witness = None
    if fib.section is not None and fib.fibre is not None:
        S, F = fib.section, fib.fibre
        witness = S + F + (e * m) * F
        if model.has_ample_oracle and not model.is_ample(witness):
            raise InconsistentVerdictError(f"pseudosplit witness {witness} is not ample")
    return PseudosplitBound(2, e, witness)


# ---------------------------------------------------------------- family rules

def _merge(iv: Interval, v: FujitaVerdict) -> None:
    iv.trace.extend(v.trace)
    iv.conditional_on.extend(v.conditional_on)
    iv.lower, iv.upper = max(iv.lower, v.lower), min(iv.upper, v.upper)
    if iv.lower > iv.upper:
        raise InconsistentVerdictError(f"family verdict [{v.lower}, {v.upper}] contradicts earlier rules")


def _projective_plane(model: SurfaceModel, iv: Interval) -> None:
    H = model.lattice.basis("H")
    iv.pin(3, TraceEntry("p2-lines", "two lines in the plane: " + CITE_NCD, (H, H)))


def _hirzebruch(model: SurfaceModel, iv: Interval) -> None:
    n = model.params["n"]
    S, F = model.lattice.basis("S"), model.lattice.basis("F")
    L = S + (n + 1) * F
    adj = model.canonical + L
    if not model.is_ample(L) or model.is_nef(adj):
        raise InconsistentVerdictError("Hirzebruch witness S + (n+1)F misbehaves")
    iv.raise_lower(2, TraceEntry(
        "hirzebruch-single-adjoint",
        "toric surface: K + L is not nef, hence not globally generated, for L = S + (n+1)F",
        L,
    ))
    iv.lower_upper(2, TraceEntry(
        "hirzebruch-two-adjoints",
        "toric surface: for ample Lᵢ = aᵢS + bᵢF, s ≥ 2, K + ΣLᵢ satisfies b ≥ na ≥ 0, so it is nef "
        "and globally generated",
        record(n=n),
    ))


def _ruled(model: SurfaceModel, iv: Interval) -> None:
    profile: SlopeProfile = model.extra
    v = fujita_number_PE(profile)
    _merge(iv, FujitaVerdict(v.lower, v.upper, v.trace, v.conditional_on, 2))
    if v.exact and v.lower == 3:
        k = (1 - profile.degree) // 2
        lat = model.lattice
        L = lat.basis("xi") + k * lat.basis("f")
        if not model.is_ample(L) or pair(L, L) != 1:
            raise InconsistentVerdictError("ruled surface witness ξ + kf is not an ample class of square 1")
        iv.note(TraceEntry("reider-square-one", CITE_REIDER_SQUARE_ONE, L))


def _abelian(model: SurfaceModel, iv: Interval) -> None:
    data: AbelianData = model.extra
    iv.note(TraceEntry("numerically-trivial-canonical",
                       "K is trivial, so it is globally generated and conFN ∈ {0, 2}"))
    G = data.isogeny_from_ppav_order
    if G is not None:
        obs = isogeny_obstruction(G)
        if obs is not None:
            iv.pin(0, TraceEntry(
                "abelian-isogeny-obstruction",
                "A/G for a principally polarized A with End(A) = ℤ: 2m² = #G·L², so 2p | L² for an odd prime "
                "p dividing #G to an odd power, hence L² ≥ 6 and every adjoint is generated",
                record(G_order=G, prime=obs["prime"], least_admissible_L_sq=obs["least_admissible_L_sq"]),
            ))
            return
    m = data.min_ample_selfint
    if m is None:
        iv.note(TraceEntry("criteria-inconclusive",
                           "isogeny data give no obstruction and no minimal square is declared",
                           record(G_order=G)))
        return
    if m <= 4:
        iv.raise_lower(2, TraceEntry(
            "abelian-small-polarization",
            "ample L with L² ≤ 4 has h⁰(L) = L²/2 ≤ 2, so L = K + L is not globally generated",
            record(min_ample_selfint=m, h0=h0_ample_numK_trivial(NumTrivialFamily.ABELIAN, m)),
        ))
    else:
        iv.pin(0, TraceEntry(
            "abelian-no-small-polarization",
            "every ample L has L² ≥ 6, so every ample class and every sum of them is globally generated",
            record(min_ample_selfint=m),
        ))


def _bielliptic(model: SurfaceModel, iv: Interval) -> None:
    ex = model.extra
    iv.raise_lower(1, TraceEntry("torsion-canonical",
                                 "K is a nontrivial torsion class, so it is not globally generated"))
    L = ex.descent if ex.descent is not None else ex.distinguished
    L_sq = pair(L, L)
    if L_sq > 4:
        raise InconsistentVerdictError(f"bielliptic class {L} has square {L_sq} > 4")
    if ex.descent is not None:
        cite = ("descent of M₁ ⊠ M₂ with deg Mᵢ = 3: L² = (2/#G)·deg M₁·deg M₂ = 2, h⁰(L) ≤ 2 "
                "so L is not globally generated")
    else:
        cite = "L = h⁻¹(0) + F₀ has L² = 2·#S ≤ 4, h⁰(L) ≤ 2 so L is not globally generated"
    iv.raise_lower(2, TraceEntry("bielliptic-small-class", cite, L))
    iv.note(TraceEntry("bielliptic-h0", "Riemann-Roch with Kodaira vanishing",
                       record(group=ex.group.label, L_sq=L_sq,
                              h0=h0_ample_numK_trivial(NumTrivialFamily.BIELLIPTIC, L_sq))))


def _k3(model: SurfaceModel, iv: Interval) -> None:
    from .catalog import k3_special_class_report

    iv.note(TraceEntry("numerically-trivial-canonical",
                       "K is trivial, so it is globally generated and conFN ∈ {0, 2}"))
    if not model.params["has_special_fibration"]:
        iv.pin(0, TraceEntry(
            "k3-no-special-fibration",
            "K3 criterion: an ample class fails to be globally generated only on an elliptic fibration "
            "with a section and irreducible reduced fibres",
        ))
        return
    rep = k3_special_class_report(3)
    lat = model.lattice
    L = 3 * lat.basis("E") + lat.basis("S")
    iv.raise_lower(2, TraceEntry(
        "k3-special-fibration",
        "K3 criterion: mE + S with m ≥ 3 is ample with the section S in its base locus",
        L,
    ))
    iv.note(TraceEntry("k3-intersection-report", "L = 3E + S", record(**rep._asdict())))


def enriques_fn(data: EnriquesData) -> FujitaVerdict:
    """conFN of an Enriques surface from its genus one fibrations."""
    iv = Interval(lower=0, upper=3)
    iv.raise_lower(1, TraceEntry("torsion-canonical",
                                 "K is a nontrivial torsion class, so it is not globally generated"))
    iv.lower_upper(2, TraceEntry("reider-even", CITE_REIDER_EVEN + " (U ⊕ E₈(−1))"))
    for i, fib in enumerate(data.fibrations):
        if fib.has_allcomponent_bisection:
            iv.pin(2, TraceEntry(
                "enriques-allcomponent-bisection",
                "a bisection meeting every component of every fibre gives an ample class with Φ = 1, "
                "and its adjoint has base points",
                record(fibration=i, fibres=fib.describe()),
            ))
            return iv.freeze()
    for i, fib in enumerate(data.fibrations):
        if fib.all_fibers_irreducible:
            iv.pin(2, TraceEntry(
                "enriques-irreducible-fibration",
                "a genus one fibration with only irreducible fibres: any bisection meets all components",
                record(fibration=i),
            ))
            return iv.freeze()
    if all(fib.max_components >= 3 for fib in data.fibrations):
        iv.pin(1, TraceEntry(
            "enriques-three-components",
            "every genus one fibration has a fibre with at least three components, so Φ(L) ≥ 2 for "
            "every ample L and all adjoints are generated",
            record(max_components=[fib.max_components for fib in data.fibrations]),
        ))
        return iv.freeze()
    iv.note(TraceEntry("criteria-inconclusive",
                       "some fibration has at most two components in every fibre and no declared bisection",
                       record(max_components=[fib.max_components for fib in data.fibrations])))
    return iv.freeze()


def _enriques(model: SurfaceModel, iv: Interval) -> None:
    _merge(iv, enriques_fn(model.extra))


def _elliptic_kod1(model: SurfaceModel, iv: Interval) -> None:
    data: EllFibData = model.extra
    if data.chi_O_even and not data.multiple_fibers:
        iv.lower_upper(2, TraceEntry(
            "elliptic-even-chi",
            "canonical bundle formula: without multiple fibres K ≡ (2g − 2 + χ(𝒪))·F, "
            "which is 2θ when χ(𝒪) is even",
            record(chi_O_even=True, base_genus=data.base_genus),
        ))
    if data.multiple_fibers:
        iv.raise_lower(1, TraceEntry(
            "elliptic-multiple-fibres",
            "multiple fibres lie in the fixed part of |K|, so K is not globally generated",
            record(multiple_fibers=list(data.multiple_fibers)),
        ))
    elif data.chi_O == 1 and data.base_genus <= 1:
        iv.raise_lower(1, TraceEntry(
            "elliptic-canonical-degree-one",
            "K = f*𝔑 with deg 𝔑 = 2g − 2 + χ = 1 on an elliptic base has a base point",
            record(chi_O=1, base_genus=data.base_genus),
        ))
    elif data.chi_O is not None and data.chi_O >= 2:
        iv.note(TraceEntry("elliptic-not-one", "no multiple fibres and χ(𝒪) ≥ 2: conFN ≠ 1",
                           record(chi_O=data.chi_O)))


def _isotrivial(model: SurfaceModel, iv: Interval) -> None:
    ex = model.extra
    K, L = ex.K, ex.L
    if pair(K, L) != 1 or pair(L, L) != 1 or not model.is_ample(L):
        raise InconsistentVerdictError("isotrivial example: L is not an ample class with K·L = L² = 1")
    F, H = model.lattice.basis("F"), model.lattice.basis("H")
    if K + L + L != F + H:
        raise InconsistentVerdictError("isotrivial example: K + 2L is not F + H")
    restricted = ex.h0_F_plus_H - ex.h0_F
    iv.pin(3, TraceEntry(
        "isotrivial-base-points",
        "K + L + L' ≡ F + H: sections of F + H restrict to a space of dimension h⁰(F+H) − h⁰(F) along H, "
        "too small to generate 𝒪_H(Z) of degree F·H",
        record(h0_F=ex.h0_F, h0_F_plus_H=ex.h0_F_plus_H, deg_Z=ex.deg_Z, restricted_sections=restricted),
    ))
    iv.note(TraceEntry("reider-square-one", CITE_REIDER_SQUARE_ONE, L))


def _product(model: SurfaceModel, iv: Interval) -> None:
    g1, g2 = model.params["g1"], model.params["g2"]
    curve_fn = [fujita_number_PE(SlopeProfile.semistable(1, 0, genus=g)).value for g in (g1, g2)]
    iv.raise_lower(max(curve_fn), TraceEntry(
        "product-rule",
        "conFN(X × Y) ≥ max(conFN(X), conFN(Y)), and every curve has conFN = 2",
        record(curve_fn=curve_fn),
    ))


def _godeaux(model: SurfaceModel, iv: Interval) -> None:
    ex = model.extra
    iv.note(TraceEntry("godeaux-intersection",
                       "C₁·C₂ = (D₁·D₂)/5 for coordinate hyperplane sections Dᵢ of the quintic",
                       record(D1_dot_D2=ex.quintic_D_dot_D, C1_dot_C2=ex.C1_dot_C2)))


def _hypersurface(model: SurfaceModel, iv: Interval) -> None:
    d = model.params["d"]
    if model.params["very_general"]:
        iv.pin(0, TraceEntry(
            "hypersurface-picard-one",
            "very general surface of degree d ≥ 5: Pic is generated by 𝒪(1), ample means a ≥ 1 and is "
            "globally generated, and K = 𝒪(d − 4) is ample",
            record(d=d, K_multiple=d - 4),
        ))
    else:
        iv.note(TraceEntry(UNKNOWN_PER_PAPER, "no criterion for a special hypersurface", record(d=d)))


def _double_cover(model: SurfaceModel, iv: Interval) -> None:
    iv.raise_lower(1, TraceEntry(
        "double-cover-canonical",
        "h⁰(K) = h⁰(Θ) + h⁰(𝒪_A) = 2, and a globally generated K would map X to ℙ¹ with ample pullback",
        record(h0_K=2),
    ))
    iv.lower_upper(2, TraceEntry(
        "double-cover-even",
        "D·K = f_*D·Θ is even because NS(A) = ℤΘ, so NS(X) is even by Riemann-Roch",
    ))
    if model.params["assume_picard_number_one"]:
        iv.conditional_on.append("Picard number of X is 1")
        iv.lower_upper(1, TraceEntry(
            "double-cover-pullback",
            "if ρ(X) = 1 then Pic(X) = f*Pic(A), every adjoint K + L is pulled back from Θ + M and is generated",
            record(assumption="Picard number of X is 1"),
        ))


def _unknown(model: SurfaceModel, iv: Interval) -> None:
    iv.note(TraceEntry(UNKNOWN_PER_PAPER, "no catalogued criterion applies to this model",
                       record(kodaira_dimension=(model.extra or {}).get("kodaira_dimension"))))


def _nothing(model: SurfaceModel, iv: Interval) -> None:
    pass


_HANDLERS: dict[Family, Callable[[SurfaceModel, Interval], None]] = {
    Family.PROJECTIVE_PLANE: _projective_plane,
    Family.HIRZEBRUCH: _hirzebruch,
    Family.PROJ_BUNDLE_CURVE: _ruled,
    Family.ABELIAN: _abelian,
    Family.BIELLIPTIC: _bielliptic,
    Family.K3: _k3,
    Family.ENRIQUES: _enriques,
    Family.ELLIPTIC_KOD1: _elliptic_kod1,
    Family.ISOTRIVIAL_EXAMPLE: _isotrivial,
    Family.PRODUCT_OF_CURVES: _product,
    Family.GODEAUX: _godeaux,
    Family.HYPERSURFACE: _hypersurface,
    Family.DOUBLE_COVER_PPAV: _double_cover,
    Family.SYM_SQUARE: _nothing,
    Family.PENCIL_BLOWUP: _nothing,
    Family.LATTICE: _unknown,
}


# families where Kodaira dimension 1 or general type leaves values undecided
_OPEN_FAMILIES = {Family.ELLIPTIC_KOD1, Family.HYPERSURFACE, Family.DOUBLE_COVER_PPAV, Family.LATTICE}


def check_verdict(v: FujitaVerdict, model: SurfaceModel | None = None) -> None:
    """Raise :class:`InconsistentVerdictError` when ``v`` breaks a verdict invariant."""
    if not (0 <= v.lower <= v.upper <= v.dimension + 1):
        raise InconsistentVerdictError(f"verdict [{v.lower}, {v.upper}] out of range")
    if v.dimension == 2 and v.exact and v.lower == 3 and not _extreme_witnessed(v.trace):
        raise InconsistentVerdictError("verdict 3 without an ample class of square 1 or a pair meeting once")
    if model is not None and v.upper > reider_upper_bound(model):
        raise InconsistentVerdictError("verdict exceeds the Reider bound")


def classify(model: SurfaceModel) -> FujitaVerdict:
    iv = Interval(lower=0, upper=3)
    iv.lower_upper(3, TraceEntry("reider-general", CITE_REIDER_GENERAL))
    bound, entry = reider_bound(model)
    if bound < 3:
        iv.lower_upper(bound, entry)
    if model.pseudosplit is not None:
        ps = pseudosplit_lower_bound(model, model.pseudosplit)
        if ps is not None:
            iv.raise_lower(ps.lower, TraceEntry(
                "pseudosplit-fibration", CITE_PSEUDOSPLIT,
                ps.witness if ps.witness is not None else record(min_degree=ps.min_degree,
                                                                 S_sq=model.pseudosplit.S_sq),
            ))
    if model.ncd_pair is not None:
        v = ncd_extreme_check(model, *model.ncd_pair, both_ample_effective=True)
        if v is not None:
            _merge(iv, v)
    _HANDLERS[model.family](model, iv)
    if iv.lower != iv.upper:
        rules = {t.rule for t in iv.trace}
        if model.family in _OPEN_FAMILIES:
            if UNKNOWN_PER_PAPER not in rules:
                iv.note(TraceEntry(UNKNOWN_PER_PAPER, "the value is open for surfaces of this kind",
                                   record(interval=[iv.lower, iv.upper])))
        elif "criteria-inconclusive" not in rules:
            iv.note(TraceEntry("criteria-inconclusive", "the applicable criteria leave an interval"))
    v = iv.freeze()
    check_verdict(v, model)
    return v


def classify_many(models: Sequence[SurfaceModel], workers: int | None = None) -> list[FujitaVerdict]:
    """Classify independent models, possibly in parallel; results keep the input order."""
    if workers is None or workers <= 1 or len(models) <= 1:
        return [classify(m) for m in models]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(classify, models))
