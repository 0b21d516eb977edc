from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fujita_lab import catalog as cat
from fujita_lab.bundles import SlopeProfile
from fujita_lab.engine import (
    check_verdict,
    classify,
    classify_many,
    ncd_extreme_check,
    pseudosplit_lower_bound,
    reider_upper_bound,
)
from fujita_lab.errors import InconsistentVerdictError, PreconditionError
from fujita_lab.lattice import DivisorClass, IntersectionLattice, pair
from fujita_lab.verdict import UNKNOWN_PER_PAPER, FujitaVerdict, TraceEntry
from catalog_instances import catalog_models


def _value(model):
    v = classify(model)
    assert v.exact, (model.name, v.interval())
    return v.value


def test_reider_examples():
    assert reider_upper_bound(cat.make_abelian(cat.AbelianData(product_of_elliptic=True))) == 2
    assert reider_upper_bound(cat.make_product_of_curves(2, 3)) == 2
    assert reider_upper_bound(cat.make_projective_plane()) == 3


def test_ncd_examples():
    god = cat.make_godeaux()
    assert god.extra.quintic_D_dot_D == 5 and god.extra.C1_dot_C2 == 1
    v = ncd_extreme_check(god, *god.ncd_pair, both_ample_effective=True)
    assert v.interval() == (3, 3)
    sym = cat.make_sym_square(3)
    assert ncd_extreme_check(sym, *sym.ncd_pair, both_ample_effective=True).value == 3
    prod = cat.make_product_of_curves(2, 3)
    f1, f2 = prod.lattice.basis("f1"), prod.lattice.basis("f2")
    assert pair(f1, f2) == 1
    with pytest.raises(PreconditionError):
        ncd_extreme_check(prod, f1, f2, both_ample_effective=True)
    with pytest.raises(PreconditionError):
        ncd_extreme_check(god, *god.ncd_pair, both_ample_effective=False)


def test_ncd_without_meeting_once():
    h = cat.make_hypersurface(5)
    H = h.lattice.basis("h")
    assert ncd_extreme_check(h, H, H, both_ample_effective=True) is None


def test_pseudosplit_examples():
    ab = cat.make_abelian(cat.AbelianData(product_of_elliptic=True))
    b = pseudosplit_lower_bound(ab, ab.pseudosplit)
    assert b.lower == 2 and b.min_degree == 1
    k3 = cat.make_k3_fibration_lattice()
    b = pseudosplit_lower_bound(k3, k3.pseudosplit)
    assert b.lower == 2 and b.min_degree == 3
    assert k3.is_ample(b.witness)
    bad = cat.PseudosplitFibration(True, 2, 0)
    assert pseudosplit_lower_bound(ab, bad) is None
    assert pseudosplit_lower_bound(ab, cat.PseudosplitFibration(False, 1, 0)) is None


def test_family_values():
    assert _value(cat.make_projective_plane()) == 3
    assert all(_value(cat.make_hirzebruch(n)) == 2 for n in range(7))
    assert _value(cat.make_ruled_surface(SlopeProfile.semistable(2, 1))) == 3
    assert _value(cat.make_ruled_surface(SlopeProfile.semistable(2, 2, stable=False))) == 2
    assert _value(cat.make_abelian(cat.AbelianData(2))) == 2
    assert _value(cat.make_abelian(cat.AbelianData(4))) == 2
    assert _value(cat.make_abelian(cat.AbelianData(6))) == 0
    assert _value(cat.make_k3(cat.K3Data(True))) == 2
    assert _value(cat.make_k3(cat.K3Data(False))) == 0
    assert _value(cat.make_isotrivial_example()) == 3
    assert _value(cat.make_godeaux()) == 3
    assert _value(cat.make_hypersurface(5)) == 0
    assert _value(cat.make_sym_square(2)) == 3
    assert _value(cat.make_pencil_blowup(6)) == 3
    for g1, g2 in ((0, 0), (0, 3), (1, 1), (2, 5)):
        assert _value(cat.make_product_of_curves(g1, g2)) == 2


def test_bielliptic_descent_trace():
    v = classify(cat.make_bielliptic("μ3×Z/3"))
    assert v.value == 2
    entry = next(t for t in v.trace if t.rule == "bielliptic-small-class")
    assert "descent" in entry.cite and pair(entry.witness, entry.witness) == 2


def test_abelian_isogeny_trace():
    v = classify(cat.make_abelian(cat.AbelianData(isogeny_from_ppav_order=3)))
    assert v.value == 0
    entry = next(t for t in v.trace if t.rule == "abelian-isogeny-obstruction")
    assert entry.witness["prime"] == 3 and entry.witness["least_admissible_L_sq"] >= 6


def test_double_cover_conditional():
    v = classify(cat.make_double_cover_ppav())
    assert v.value == 1 and v.conditional_on
    v = classify(cat.make_double_cover_ppav(False))
    assert not v.exact and UNKNOWN_PER_PAPER in v.rules


def test_open_cases_report_unknown():
    v = classify(cat.make_elliptic_kod1(cat.EllFibData(False, True, False, (2, 3), 0, chi_O=1)))
    assert not v.exact and UNKNOWN_PER_PAPER in v.rules
    lat = IntersectionLattice(["h"], [[3]])
    v = classify(cat.make_custom(lat, [1], 1, kodaira_dimension=2))
    assert not v.exact and UNKNOWN_PER_PAPER in v.rules


def test_elliptic_kod1_construction():
    v = classify(cat.make_elliptic_kod1(cat.EllFibData(True, True, True, chi_O=2, base_genus=2)))
    assert v.value == 2


def test_product_rule_equals_max_of_factors():
    from fujita_lab.bundles import fujita_number_PE
    curve = fujita_number_PE(SlopeProfile.semistable(1, 1)).value
    assert curve == 2
    v = classify(cat.make_product_of_curves(3, 4))
    assert v.value == max(curve, curve)


def test_check_verdict_rejects_unwitnessed_three():
    with pytest.raises(InconsistentVerdictError):
        check_verdict(FujitaVerdict(3, 3, (TraceEntry("x", "y"),)))
    with pytest.raises(InconsistentVerdictError):
        check_verdict(FujitaVerdict(0, 3), cat.make_k3(cat.K3Data(False)))


def test_classify_many_keeps_order():
    models = catalog_models()
    serial = [classify(m) for m in models]
    assert classify_many(models, workers=4) == serial


# ---------------------------------------------------------------- properties

def _has_extreme_witness(v):
    for t in v.trace:
        w = t.witness
        if isinstance(w, DivisorClass) and pair(w, w) == 1:
            return True
        if isinstance(w, tuple) and len(w) == 2 and pair(*w) == 1:
            return True
    return False


@pytest.mark.parametrize("model", catalog_models(), ids=lambda m: m.name)
def test_catalog_verdict_invariants(model):
    v = classify(model)
    assert 0 <= v.lower <= v.upper <= 3
    assert v.exact == (v.lower == v.upper)
    assert v.upper <= reider_upper_bound(model)
    if v.exact and v.value == 3:
        assert _has_extreme_witness(v)


@st.composite
def random_models(draw):
    kind = draw(st.sampled_from(["hirz", "ruled", "abelian", "ell", "prod", "sym", "pencil", "hyper", "enr",
                                 "custom"]))
    if kind == "hirz":
        return cat.make_hirzebruch(draw(st.integers(0, 30)))
    if kind == "ruled":
        d = draw(st.integers(-20, 20))
        stable = True if d % 2 else draw(st.booleans())
        return cat.make_ruled_surface(SlopeProfile.semistable(2, d, stable=stable, genus=draw(st.integers(1, 6))))
    if kind == "abelian":
        if draw(st.booleans()):
            return cat.make_abelian(cat.AbelianData(2 * draw(st.integers(1, 30))))
        return cat.make_abelian(cat.AbelianData(isogeny_from_ppav_order=draw(st.integers(1, 60))))
    if kind == "ell":
        section = draw(st.booleans())
        g = draw(st.integers(0, 4))
        mult = () if section else tuple(draw(st.lists(st.integers(2, 6), max_size=3)))
        chi = draw(st.integers(0, 6))
        data = dict(has_section=section, all_fibers_irreducible_reduced=draw(st.booleans()),
                    chi_O_even=chi % 2 == 0, multiple_fibers=mult, base_genus=g, chi_O=chi)
        try:
            return cat.make_elliptic_kod1(cat.EllFibData(**data))
        except Exception:
            return cat.make_elliptic_kod1(cat.EllFibData(section, True, True, (), 2, 2))
    if kind == "prod":
        return cat.make_product_of_curves(draw(st.integers(0, 8)), draw(st.integers(0, 8)))
    if kind == "sym":
        return cat.make_sym_square(draw(st.integers(0, 10)))
    if kind == "pencil":
        return cat.make_pencil_blowup(draw(st.integers(3, 6)))
    if kind == "hyper":
        return cat.make_hypersurface(draw(st.integers(5, 12)), draw(st.booleans()))
    if kind == "enr":
        syms = ["A_1", "A_2", "A_3", "D_4", "E_6"]
        rows = draw(st.lists(st.tuples(st.lists(st.sampled_from(syms), max_size=2),
                                       st.lists(st.sampled_from(syms), max_size=2)), min_size=1, max_size=4))
        fibs = tuple(cat.GenusOneFibration(tuple(a), tuple(b), draw(st.sampled_from([None, True, False])))
                     for a, b in rows)
        return cat.make_enriques(cat.EnriquesData(fibs))
    r = draw(st.integers(1, 3))
    gram = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            gram[i][j] = gram[j][i] = draw(st.integers(-4, 4))
    lat = IntersectionLattice([f"b{i}" for i in range(r)], gram)
    K = draw(st.lists(st.integers(-3, 3), min_size=r, max_size=r))
    return cat.make_custom(lat, K, draw(st.integers(-2, 4)), num_complete=draw(st.booleans()))


@settings(max_examples=300, deadline=None)
@given(random_models())
def test_fuzzed_verdict_bounds(model):
    v = classify(model)
    assert 0 <= v.lower <= v.upper <= 3
    assert v.upper <= reider_upper_bound(model)
    if v.exact and v.value == 3:
        assert _has_extreme_witness(v)
    if not v.exact:
        assert {"criteria-inconclusive", UNKNOWN_PER_PAPER} & set(v.rules)
