from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fujita_lab import catalog as cat
from fujita_lab.errors import DomainError, LatticeMismatchError
from fujita_lab.lattice import IntersectionLattice, is_even, pair
from fujita_lab.riemann_roch import (
    NumTrivialFamily,
    SurfaceNumerics,
    adjunction_genus,
    chi_of_class,
    h0_ample_numK_trivial,
)


def test_chi_examples():
    enr = cat.make_enriques(cat.EnriquesData.unnodal()).numerics
    U = enr.lattice
    L = U.basis(U.basis_labels[0]) + U.basis(U.basis_labels[1])
    assert pair(L, L) == 2
    assert chi_of_class(enr, L) == 2
    ab = cat.make_abelian(cat.AbelianData(product_of_elliptic=True)).numerics
    L = ab.lattice.vector(2, 1)
    assert pair(L, L) == 4 and chi_of_class(ab, L) == 2
    for s in (enr, ab, cat.make_hirzebruch(3).numerics):
        assert chi_of_class(s, s.lattice.zero()) == s.chi_O


def test_h0_examples():
    assert h0_ample_numK_trivial(NumTrivialFamily.ABELIAN, 2) == 1
    m = 3
    assert h0_ample_numK_trivial(NumTrivialFamily.K3, 2 * m - 2) == 4 == m * 1 + 1
    assert h0_ample_numK_trivial(NumTrivialFamily.BIELLIPTIC, 2) == 1
    with pytest.raises(DomainError):
        h0_ample_numK_trivial(NumTrivialFamily.ENRIQUES, 0)


def test_adjunction_examples():
    k3 = cat.make_k3_fibration_lattice().numerics
    E, S = k3.lattice.basis("E"), k3.lattice.basis("S")
    assert adjunction_genus(k3, E) == 1
    assert adjunction_genus(k3, S) == 0
    p2 = cat.make_projective_plane().numerics
    assert adjunction_genus(p2, p2.lattice.basis("H")) == 0
    with pytest.raises(DomainError):
        adjunction_genus(p2, p2.lattice.vector("1/2"))


def test_lattice_mismatch():
    p2 = cat.make_projective_plane().numerics
    other = IntersectionLattice(["x"], [[1]])
    with pytest.raises(LatticeMismatchError):
        chi_of_class(p2, other.basis("x"))
    with pytest.raises(LatticeMismatchError):
        SurfaceNumerics(p2.lattice, other.basis("x"), 1)


def test_chi_O_per_family():
    assert cat.make_k3(cat.K3Data(True)).numerics.chi_O == 2
    assert cat.make_enriques(cat.EnriquesData.unnodal()).numerics.chi_O == 1
    assert cat.make_abelian(cat.AbelianData(2)).numerics.chi_O == 0
    assert cat.make_bielliptic("μ2").numerics.chi_O == 0
    assert cat.make_projective_plane().numerics.chi_O == 1
    assert cat.make_hirzebruch(4).numerics.chi_O == 1


def _catalog_numerics():
    return [
        cat.make_projective_plane(), cat.make_hirzebruch(0), cat.make_hirzebruch(3),
        cat.make_k3_fibration_lattice(), cat.make_enriques(cat.EnriquesData.unnodal()),
        cat.make_abelian(cat.AbelianData(product_of_elliptic=True)), cat.make_bielliptic("μ3"),
        cat.make_isotrivial_example(), cat.make_product_of_curves(2, 3), cat.make_godeaux(),
        cat.make_sym_square(4), cat.make_pencil_blowup(3), cat.make_hypersurface(6),
    ]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(_catalog_numerics()), st.data())
def test_serre_symmetry(model, data):
    s = model.numerics
    coords = data.draw(st.lists(st.integers(-6, 6), min_size=s.lattice.rank, max_size=s.lattice.rank))
    L = s.lattice.vector(*coords)
    assert chi_of_class(s, s.canonical - L) == chi_of_class(s, L)


def test_chi_integral_on_even_lattices_with_trivial_K():
    models = [cat.make_k3_fibration_lattice(), cat.make_abelian(cat.AbelianData(product_of_elliptic=True)),
              cat.make_enriques(cat.EnriquesData.unnodal()), cat.make_bielliptic("μ4×Z/2")]
    for m in models:
        s = m.numerics
        lat = s.lattice
        if not is_even(lat) or not s.canonical.is_zero:
            continue
        r = min(lat.rank, 3)
        for x in product(range(-4, 5), repeat=r):
            L = lat.vector(*(list(x) + [0] * (lat.rank - r)))
            assert chi_of_class(s, L).denominator == 1


@given(st.integers(1, 40).map(lambda k: 2 * k))
def test_h0_agrees_with_chi(L_sq):
    for fam, model in [
        (NumTrivialFamily.ABELIAN, cat.make_abelian(cat.AbelianData(L_sq))),
        (NumTrivialFamily.K3, cat.make_k3(cat.K3Data(False))),
    ]:
        s = model.numerics
        if fam is NumTrivialFamily.ABELIAN:
            L = s.lattice.basis(s.lattice.basis_labels[0])
        else:
            # L = mE + S on the fibration lattice has square 2m - 2
            k3 = cat.make_k3_fibration_lattice().numerics
            s = k3
            L = (L_sq // 2 + 1) * k3.lattice.basis("E") + k3.lattice.basis("S")
        assert pair(L, L) == L_sq
        assert h0_ample_numK_trivial(fam, L_sq) == chi_of_class(s, L)
    assert h0_ample_numK_trivial("enriques", L_sq) == 1 + Fraction(L_sq, 2)
