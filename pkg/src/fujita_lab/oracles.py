"""Exhaustive enumeration oracles used to cross-check the closed forms.

Every search is exhaustive inside an explicit box and never samples.  An
empty result in a small box is evidence, not proof; negative certificates
come from the Diophantine side (:func:`box_critical_solutions`).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd, lcm
from typing import Callable

from . import kernels
from .bundles import (
    PEBundleLineClass,
    SlopeProfile,
    adjoint_pushforward_min_slope,
    butler_is_ample,
    critical_equation_solution,
    mu_minus,
)
from .catalog import (
    Family,
    SurfaceModel,
    hirzebruch_is_ample,
    hirzebruch_is_nef,
    k3_special_class_report,
    make_abelian,
    make_hirzebruch,
    make_isotrivial_example,
    make_k3_fibration_lattice,
    AbelianData,
)
from .errors import DomainError
from .lattice import DivisorClass, IntersectionLattice, pair

DEFAULT_BUDGET = 6


@dataclass(frozen=True)
class SearchBox:
    """Coordinates range over ``[−coord_bound, coord_bound]`` in the basis of ``lattice``."""

    coord_bound: int
    lattice: IntersectionLattice | None = None

    def __post_init__(self):
        if self.coord_bound < 1:
            raise DomainError("box bound must be at least 1")


# ---------------------------------------------------------------- Hirzebruch

@dataclass(frozen=True)
class AdjointSearch:
    all_nef: bool
    witness: tuple[tuple[int, int], ...] | None
    candidates: int
    tuples_examined: int


def hirzebruch_ample_candidates(model: SurfaceModel, bound: int) -> list[tuple[int, int]]:
    """Ample ``(a, b)`` with ``L = a(S + nF) + cF``, ``1 ≤ a, c ≤ bound``.

    Ampleness is decided by pairing with the curves ``S`` and ``F``, not by the
    closed form.
    """
    n = model.params["n"]
    lat = model.lattice
    S, F = lat.basis("S"), lat.basis("F")
    out = []
    for a in range(1, bound + 1):
        for c in range(1, bound + 1):
            b = n * a + c
            L = a * S + b * F
            if pair(L, S) > 0 and pair(L, F) > 0:
                out.append((a, b))
    return out


def hirzebruch_adjoint_search(n: int, s: int, box: SearchBox, model: SurfaceModel | None = None) -> AdjointSearch:
    if n < 0 or s < 1:
        raise DomainError("need n >= 0 and s >= 1")
    model = model if model is not None else make_hirzebruch(n)
    lat = model.lattice
    S, F = lat.basis("S"), lat.basis("F")
    K = model.canonical
    cands = hirzebruch_ample_candidates(model, box.coord_bound)
    values = []
    for a, b in cands:
        L = a * S + b * F
        values.append([int(pair(L, S)), int(pair(L, F))])
    offset = [int(pair(K, S)), int(pair(K, F))]
    hit, count = kernels.first_failing_tuple(values, s, offset)
    witness = None if hit is None else tuple(cands[i] for i in hit)
    return AdjointSearch(hit is None, witness, len(cands), count)


def hirzebruch_adjoint_oracle(n: int, s: int, box: SearchBox) -> bool:
    """True iff ``K + L₁ + … + L_s`` is nef for every tuple of ample classes in the box."""
    return hirzebruch_adjoint_search(n, s, box).all_nef


def hirzebruch_closed_form_mismatch(n: int, s: int, box: SearchBox,
                                    model: SurfaceModel | None = None) -> tuple | None:
    """First tuple where pairing-based nefness of the adjoint disagrees with ``b ≥ na ≥ 0``."""
    model = model if model is not None else make_hirzebruch(n)
    lat = model.lattice
    S, F = lat.basis("S"), lat.basis("F")
    K = model.canonical
    cands = hirzebruch_ample_candidates(model, box.coord_bound)
    for a, b in cands:
        if not hirzebruch_is_ample(n, (a, b)):
            return ((a, b),)
    for combo in combinations_with_replacement(cands, s):
        D = K
        for a, b in combo:
            D = D + a * S + b * F
        by_pairing = pair(D, S) >= 0 and pair(D, F) >= 0
        ca, cb = D.coords
        if by_pairing != hirzebruch_is_nef(n, (int(ca), int(cb))):
            return combo
    return None


# ---------------------------------------------------------------- critical tuples on ℙ(E)

def _ample_weights(p: SlopeProfile, bound: int) -> tuple[list[tuple[int, int]], list[int], int, int]:
    lo = mu_minus(p)
    num, den = lo.numerator, lo.denominator
    cands = []
    for a in range(-bound, bound + 1):
        for m in range(-bound, bound + 1):
            if a > 0 and den * m + a * num > 0:
                cands.append((a, m))
    cands.sort(key=lambda am: (den * am[1] + am[0] * num, am))
    weights = [den * m + a * num for a, m in cands]
    c = den * p.degree - p.rank * num
    return cands, weights, c, den


def critical_tuple_search(p: SlopeProfile, bound: int) -> list[tuple[PEBundleLineClass, ...]]:
    """All ``n``-tuples (as multisets) of Butler-ample ``(aᵢ, deg Mᵢ)`` in ``[−B, B]²``
    whose adjoint pushforward has minimal slope exactly 1.

    Scaled by the denominator ``q`` of ``μ⁻``, the minimal slope times ``q`` is
    ``c + Σ Tᵢ`` with ``Tᵢ = q·deg Mᵢ + aᵢ·q·μ⁻ ≥ 1``, so critical tuples have
    ``Σ Tᵢ = q − c``.
    """
    if not p.is_semistable:
        raise DomainError("critical tuples are defined for semistable profiles")
    if bound < 1:
        raise DomainError("box bound must be at least 1")
    cands, weights, c, q = _ample_weights(p, bound)
    target = q - c
    found = kernels.tuples_with_sum_at_most(weights, p.rank, target)
    out = []
    for idx in found:
        total = sum(weights[i] for i in idx)
        if total < target:
            raise AssertionError(f"ample tuple with adjoint slope below 1: {[cands[i] for i in idx]}")
        out.append(tuple(sorted(PEBundleLineClass(*cands[i]) for i in idx)))
    out.sort(key=lambda t: [(L.a, L.deg_M) for L in t])
    return out


def box_critical_solutions(n: int, d: int, bound: int) -> list[tuple[int, int]]:
    """Solutions ``(a, m)`` of ``n·m + a·d = 1`` with ``1 ≤ a ≤ B`` and ``|m| ≤ B``,
    listed from the extended-gcd parametrisation rather than by scanning."""
    sol = critical_equation_solution(n, d)
    if sol is None:
        return []
    a0, _ = sol
    out = []
    a = a0
    while a <= bound:
        num = 1 - a * d
        assert num % n == 0
        m = num // n
        if abs(m) <= bound:
            out.append((a, m))
        a += n
    return sorted(out)


def critical_tuples_expected(n: int, d: int, bound: int) -> list[tuple[PEBundleLineClass, ...]]:
    sols = [PEBundleLineClass(a, m) for a, m in box_critical_solutions(n, d, bound)]
    out = [tuple(c) for c in combinations_with_replacement(sols, n)]
    out.sort(key=lambda t: [(L.a, L.deg_M) for L in t])
    return out


def slope_exceeds_one_counterexample(p: SlopeProfile, s: int, bound: int) -> tuple | None:
    """First ``s``-tuple of Butler-ample classes in the box with adjoint minimal slope ``≤ 1``."""
    cands, weights, c, q = _ample_weights(p, bound)
    # q·slope = c + Σ Tᵢ must exceed q, i.e. c − q − 1 + Σ Tᵢ ≥ 0
    hit, _ = kernels.first_failing_tuple([[w] for w in weights], s, [c - q - 1])
    if hit is None:
        return None
    return tuple(cands[i] for i in hit)


# ---------------------------------------------------------------- minimal ample squares

@dataclass(frozen=True)
class MinSquare:
    value: int
    witness: DivisorClass


def min_ample_selfint_search(model: SurfaceModel, box: SearchBox) -> MinSquare | None:
    """Least ``L²`` over ample integral ``L`` whose coordinates in the integral basis lie in the box."""
    if not model.has_ample_oracle:
        raise DomainError(f"no ample oracle for the {model.family.value} model")
    basis = model.integral_basis()
    r = len(basis)
    gram = []
    for u in basis:
        row = []
        for v in basis:
            x = pair(u, v)
            if x.denominator != 1:
                raise DomainError("integral basis has a non-integral pairing")
            row.append(x.numerator)
        gram.append(row)
    functionals = []
    for ray in model.curve_cone:
        vals = [pair(b, ray) for b in basis]
        scale = lcm(*(v.denominator for v in vals))
        functionals.append([int(v * scale) for v in vals])
    res = kernels.min_form_in_box(gram, functionals, box.coord_bound)
    if res is None:
        return None
    value, x = res
    L = model.lattice.zero()
    for xi, b in zip(x, basis):
        L = L + xi * b
    assert model.is_ample(L) and pair(L, L) == value
    return MinSquare(value, L)


# ---------------------------------------------------------------- verification driver

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    counterexample: object = None
    seconds: float = 0.0


@dataclass
class VerificationReport:
    budget: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if not c.passed), None)


def _mutated_hirzebruch(n: int) -> SurfaceModel:
    """A Hirzebruch model with a deliberately wrong Gram matrix (``F² = 1``)."""
    from dataclasses import replace
    from .riemann_roch import SurfaceNumerics

    good = make_hirzebruch(n)
    lat = IntersectionLattice(["S", "F"], [[-n, 1], [1, 1]])
    S, F = lat.basis("S"), lat.basis("F")
    return replace(good, numerics=SurfaceNumerics(lat, -2 * S - (n + 2) * F, 1), curve_cone=(S, F))


def _timed(name: str, fn: Callable[[], tuple[bool, str, object]]) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail, ce = fn()
    return CheckResult(name, ok, detail, ce, time.perf_counter() - t0)


def check_hirzebruch(budget: int, mutate: bool = False, n_max: int = 6) -> tuple[bool, str, object]:
    box = SearchBox(budget)
    for n in range(n_max + 1):
        model = _mutated_hirzebruch(n) if mutate else make_hirzebruch(n)
        one = hirzebruch_adjoint_search(n, 1, box, model)
        if one.all_nef or (n + 1) not in [b for a, b in one.witness if a == 1]:
            return False, f"n={n}: no non-nef adjoint K + L found for s=1", (n, 1)
        two = hirzebruch_adjoint_search(n, 2, box, model)
        if not two.all_nef:
            return False, f"n={n}: s=2 tuple with non-nef adjoint", (n, two.witness)
        for s in (1, 2):
            bad = hirzebruch_closed_form_mismatch(n, s, box, model)
            if bad is not None:
                return False, f"n={n}, s={s}: enumeration disagrees with b >= na >= 0", (n, s, bad)
    return True, f"n in [0,{n_max}], B={budget}", None


def check_critical_tuples(budget: int, n_range=range(2, 7), d_bound: int = 10) -> tuple[bool, str, object]:
    total = 0
    for n in n_range:
        for d in range(-d_bound, d_bound + 1):
            p = SlopeProfile.semistable(n, d)
            got = critical_tuple_search(p, budget)
            want = critical_tuples_expected(n, d, budget)
            if got != want:
                return False, f"(n,d)=({n},{d}): search and Diophantine solver disagree", (n, d)
            if got and gcd(n, d) != 1:
                return False, f"(n,d)=({n},{d}): critical tuple despite gcd > 1", (n, d, got[0])
            if (d - 1) % n == 0:
                k = (1 - d) // n
                paper = tuple([PEBundleLineClass(1, k)] * n)
                if abs(k) <= budget and paper not in got:
                    return False, f"(n,d)=({n},{d}): tuple (1,{k})^n missing", (n, d)
            for L in (t for tup in got for t in tup):
                if not butler_is_ample(p, L):
                    return False, "non-ample member", (n, d, L)
            for tup in got[:3]:
                if adjoint_pushforward_min_slope(p, list(tup)) != 1:
                    return False, "critical tuple with slope != 1", (n, d, tup)
            total += len(got)
    return True, f"{total} critical tuples, B={budget}", None


def check_slope_bound(budget: int) -> tuple[bool, str, object]:
    b = min(budget, 4)
    profiles = [SlopeProfile.semistable(n, d) for n in (1, 2, 3) for d in range(-3, 4)]
    profiles += [SlopeProfile.from_blocks([(1, 1), (0, 1)]), SlopeProfile.from_blocks([(2, 1), (-1, 2)])]
    for p in profiles:
        ce = slope_exceeds_one_counterexample(p, p.rank + 1, b)
        if ce is not None:
            return False, f"s = n+1 tuple with slope <= 1 for {p.to_dict()}", ce
        if not p.is_semistable:
            ce = slope_exceeds_one_counterexample(p, p.rank, b)
            if ce is not None:
                return False, "unstable profile, s = n tuple with slope <= 1", ce
    return True, f"{len(profiles)} profiles, B={b}", None


def check_min_squares(budget: int) -> tuple[bool, str, object]:
    box = SearchBox(budget)
    cases = [
        ("E×E'", make_abelian(AbelianData(product_of_elliptic=True)), 2, 1),
        ("isotrivial", make_isotrivial_example(), 1, 1),
        ("K3 special", make_k3_fibration_lattice(), 4, 3),
    ]
    # the witness S + (n+1)F needs a box of size n + 1
    cases += [(f"F_{n}", make_hirzebruch(n), n + 2, n + 1) for n in range(0, 4)]
    for name, model, expected, needed in cases:
        res = min_ample_selfint_search(model, box)
        if budget < needed:
            # a smaller box can miss the minimum but never undercut it
            if res is not None and res.value < expected:
                return False, f"{name}: ample square {res.value} below the minimum {expected}", name
            continue
        if res is None or res.value != expected:
            return False, f"{name}: minimal ample square {None if res is None else res.value}", name
    for m in range(-10, 11):
        rep = k3_special_class_report(m)
        if rep != (2 * m - 2, 1, m - 2, m >= 3):
            return False, f"K3 report for m={m}", rep
    return True, "minimal squares and K3 report", None


def run_verification(budget: int = DEFAULT_BUDGET, mutate: bool = False) -> VerificationReport:
    if budget < 1:
        raise DomainError("budget must be at least 1")
    report = VerificationReport(budget)
    report.checks.append(_timed("hirzebruch-adjoints", lambda: check_hirzebruch(budget, mutate)))
    report.checks.append(_timed("pe-critical-tuples", lambda: check_critical_tuples(budget)))
    report.checks.append(_timed("pe-slope-bound", lambda: check_slope_bound(budget)))
    report.checks.append(_timed("minimal-ample-squares", lambda: check_min_squares(budget)))
    return report
