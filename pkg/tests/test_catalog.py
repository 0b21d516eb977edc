from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fujita_lab import catalog as cat
from fujita_lab.bundles import SlopeProfile
from fujita_lab.engine import enriques_fn, reider_upper_bound
from fujita_lab.errors import DomainError
from fujita_lab.lattice import is_divisible_by, is_even, is_primitive, is_unimodular, pair
from oracle_helpers import sym_pair


def test_hirzebruch_lattice():
    assert cat.make_hirzebruch(0).lattice.gram == ((0, 1), (1, 0))
    assert cat.make_hirzebruch(2).canonical.coords == (-2, -4)
    m = cat.make_hirzebruch(1)
    K = m.canonical
    # independent expansion of (-2S - 3F)^2 with S^2 = -1, S.F = 1, F^2 = 0
    assert pair(K, K) == sym_pair([[-1, 1], [1, 0]], K.coords, K.coords) == 8
    with pytest.raises(DomainError):
        cat.make_hirzebruch(-1)


def test_hirzebruch_cones():
    assert cat.hirzebruch_is_ample(3, (1, 4))
    assert cat.hirzebruch_is_nef(3, (1, 3)) and not cat.hirzebruch_is_ample(3, (1, 3))
    assert cat.hirzebruch_is_nef(2, (0, 1)) and not cat.hirzebruch_is_ample(2, (0, 1))
    assert not cat.hirzebruch_is_nef(3, (-1, -1))


@given(st.integers(0, 6), st.integers(-8, 8), st.integers(-8, 8))
def test_hirzebruch_cone_matches_curve_rays(n, a, b):
    model = cat.make_hirzebruch(n)
    L = model.lattice.vector(a, b)
    assert cat.hirzebruch_is_nef(n, (a, b)) == model.is_nef(L)
    assert cat.hirzebruch_is_ample(n, (a, b)) == model.is_ample(L)


def test_k3_reports():
    assert tuple(cat.k3_special_class_report(3)) == (4, 1, 1, True)
    assert tuple(cat.k3_special_class_report(2)) == (2, 1, 0, False)
    assert tuple(cat.k3_special_class_report(10)) == (18, 1, 8, True)
    m = cat.make_k3_fibration_lattice()
    assert m.lattice.gram == ((0, 1), (1, -2))
    for k in range(-10, 11):
        assert cat.k3_special_class_is_ample(k) == (k >= 3)


def test_component_counts():
    assert cat.enriques_component_count("A_3") == 4
    assert cat.enriques_component_count("A_1") == 2
    assert cat.enriques_component_count("E_6") == 7
    assert cat.enriques_component_count("D_5", is_half_fiber=True) == 6
    assert cat.enriques_component_count("E_8") == 9
    for bad in ("D_3", "E_9", "A_0", "B_2", "x"):
        with pytest.raises(DomainError):
            cat.enriques_component_count(bad)


def test_fiber_list_parsing():
    assert cat.parse_fiber_list("A_3+2A_1") == ("A_3", "A_1", "A_1")
    assert cat.parse_fiber_list("-") == ()


def test_enriques_table_rows():
    for row in (24, 47):
        assert enriques_fn(cat.EnriquesData.from_rows(cat.ENRIQUES_TABLE_ROWS[row])).interval() == (1, 1)
    assert enriques_fn(cat.EnriquesData.unnodal()).interval() == (2, 2)
    with pytest.raises(DomainError):
        cat.EnriquesData(())


@given(st.lists(st.sampled_from(["A_1", "A_2", "A_4", "D_4", "E_6", "E_8"]), max_size=3),
       st.lists(st.sampled_from(["A_1", "A_2", "D_5"]), max_size=2))
def test_irreducible_fibration_takes_precedence(nonmult, half):
    fibs = (cat.GenusOneFibration(), cat.GenusOneFibration(tuple(nonmult), tuple(half)))
    assert enriques_fn(cat.EnriquesData(fibs)).interval() == (2, 2)


def test_isotrivial_example():
    m = cat.make_isotrivial_example()
    d = m.extra
    assert m.lattice.gram == ((0, 4), (4, 0))
    assert not is_unimodular(m.lattice)
    assert m.canonical.coords == (Fraction(1, 2), 0)
    assert d.L.coords == (Fraction(1, 4), Fraction(1, 2))
    assert pair(m.canonical, d.L) == 1 and pair(d.L, d.L) == 1
    assert (d.h0_F, d.h0_F_plus_H, d.deg_Z) == (2, 3, 4)
    assert pair(m.lattice.basis("F"), m.lattice.basis("H")) == 4
    assert m.numerics.chi_O == 0
    # K and L span a unimodular lattice containing F and H
    sub = m.lattice.sublattice(m.integral_basis(), ["K", "L"])
    assert is_unimodular(sub)
    assert is_primitive(sub.basis("K"))


def test_pencil_numbers():
    n3 = cat.pencil_blowup_numbers(3)
    assert (n3.C_sq, n3.num_blown_points) == (1, 8)
    assert cat.pencil_blowup_numbers(5).C_sq == 25 - 24 == 1
    n4 = cat.pencil_blowup_numbers(4)
    assert (n4.num_blown_points, n4.C_dot_H) == (15, 4)
    with pytest.raises(DomainError):
        cat.pencil_blowup_numbers(2)


def test_sym_square_numbers():
    for g in range(6):
        nums = cat.sym_square_numbers(g)
        assert nums.DP_dot_DQ == 1 and nums.HP_dot_HQ == 2
    # on C × C: H_P = f1 + f2 meets H_Q = f1 + f2 in f1.f2 + f2.f1 = 2 points
    assert sym_pair([[0, 1], [1, 0]], [1, 1], [1, 1]) == 2
    assert cat.make_sym_square(0).lattice.gram == ((1,),)


def test_bielliptic_table():
    squares = [g.L_sq for g in cat.BiellipticType]
    assert squares == [2, 2, 2, 2, 4, 4, 6]
    assert cat.BiellipticType.MU3_Z3.descent_L_sq == 2
    assert [g.order for g in cat.BiellipticType] == [2, 3, 4, 6, 4, 8, 9]
    m = cat.make_bielliptic("mu3xZ/3")
    assert pair(m.extra.descent, m.extra.descent) == 2
    assert cat.BiellipticType.parse("MU2") is cat.BiellipticType.MU2


def test_abelian_data_validation():
    with pytest.raises(DomainError):
        cat.AbelianData(3)
    with pytest.raises(DomainError):
        cat.AbelianData()
    with pytest.raises(DomainError):
        cat.AbelianData(4, isogeny_from_ppav_order=3)
    assert cat.AbelianData(product_of_elliptic=True).min_ample_selfint == 2


def test_isogeny_rule():
    for G in (2, 3, 5, 6, 7, 10, 12):
        obs = cat.isogeny_obstruction(G)
        odd_odd = any(G % p == 0 and _valuation(G, p) % 2 for p in (3, 5, 7))
        assert (obs is not None) == odd_odd
        for L_sq in (2, 4):
            if odd_odd:
                assert not cat.isogeny_admissible(G, L_sq)


def _valuation(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def test_ell_fib_validation():
    with pytest.raises(DomainError):
        cat.EllFibData(True, True, True, multiple_fibers=(2,))
    with pytest.raises(DomainError):
        cat.EllFibData(False, True, True, chi_O=1)
    with pytest.raises(DomainError):
        cat.EllFibData(True, True, True, chi_O=0, base_genus=0)


def test_ruled_surface_model():
    m = cat.make_ruled_surface(SlopeProfile.semistable(2, 1))
    xi, f = m.lattice.basis("xi"), m.lattice.basis("f")
    assert pair(xi, xi) == 1 and pair(f, f) == 0
    assert m.numerics.chi_O == -1
    with pytest.raises(DomainError):
        cat.make_ruled_surface(SlopeProfile.semistable(3, 1))


def test_evenness_per_instance():
    assert is_even(cat.make_abelian(cat.AbelianData(product_of_elliptic=True)).lattice)
    assert is_even(cat.make_k3_fibration_lattice().lattice)
    assert is_even(cat.make_product_of_curves(2, 3).lattice)
    assert not is_even(cat.make_projective_plane().lattice)
    for n in range(7):
        assert is_even(cat.make_hirzebruch(n).lattice) == (n % 2 == 0)


def _catalog():
    from catalog_instances import catalog_models
    return catalog_models()


def test_trivial_or_twice_canonical_bounds_by_two():
    for m in _catalog():
        basis = m.integral_basis()
        K = m.canonical
        trivial = K.is_zero
        twice = m.num_basis is None and is_divisible_by(K, 2)
        if trivial or twice or (m.num_complete and is_even(m.lattice) and m.num_basis is None):
            assert reider_upper_bound(m) <= 2, m.name
        assert len(basis) == m.lattice.rank
