import numpy as np
import pytest

from ctrivial import constructions as cons
from ctrivial.algebra import FGAbelianGroup, IntMatrix
from ctrivial.complexes import (
    Z,
    Z2,
    ChainComplex,
    HomologyProfile,
    Mod2Cochain,
    SimplicialComplex,
    boundary_matrix,
    cohomology,
    cohomology_basis_mod2,
    faces,
    homology,
    is_cocycle_mod2,
    mod2_profile_from_z,
    rho2,
    uct_check,
)
from ctrivial.errors import (
    CoefficientMismatch,
    CompositionNonzero,
    DegreeOutOfRange,
    MTooSmall,
    NotACocycle,
    ShapeMismatch,
)


def test_faces_and_order():
    K = cons.sphere(2)
    assert faces(K, 0) == ((0,), (1,), (2,), (3,))
    assert faces(K, 1)[:3] == ((0, 1), (0, 2), (0, 3))
    assert K.f_vector() == (4, 6, 4)
    assert K.euler_characteristic() == 2
    with pytest.raises(DegreeOutOfRange):
        faces(K, 3)


def test_non_maximal_facets_dropped():
    K = SimplicialComplex([(0, 1, 2), (1, 0), (3,)])
    assert K.facets == ((0, 1, 2), (3,))
    assert not K.is_pure


def test_boundary_signs():
    d = boundary_matrix(cons.simplex(2), 2)
    # d[012] = [12] - [02] + [01]
    assert d.to_rows() == [[1], [-1], [1]]
    for k in range(1, 4):
        assert (cons.sphere(4).boundary_matrix(k) @ cons.sphere(4).boundary_matrix(k + 1)).is_zero()


def test_circle_guard():
    with pytest.raises(MTooSmall):
        cons.circle(2)


@pytest.mark.parametrize(
    "K, expected",
    [
        (cons.sphere(3), "(Z, 0, 0, Z)"),
        (cons.projective_plane(), "(Z, Z_2, 0)"),
        (cons.product(cons.circle(3), cons.circle(4)), "(Z, Z^2, Z)"),
        (cons.disjoint_union(cons.circle(3), cons.circle(3)), "(Z^2, Z^2)"),
        (cons.lens_chain_complex(3), "(Z, Z_3, 0, Z)"),
    ],
)
def test_homology_examples(K, expected):
    assert str(homology(K, Z)) == expected


def test_projective_plane_cohomology():
    P = cons.projective_plane()
    assert str(cohomology(P, Z)) == "(Z, 0, Z_2)"
    assert homology(P, Z2).ranks == (1, 1, 1)
    assert cohomology(P, Z2).ranks == (1, 1, 1)


def test_suspension_shifts_homology():
    S = cons.suspension(cons.projective_plane())
    assert str(homology(S)) == "(Z, 0, Z_2, 0)"


def test_kuenneth_ranks_for_torus3():
    T = cons.product(cons.product(cons.circle(3), cons.circle(3)), cons.circle(3))
    assert homology(T).ranks == (1, 3, 3, 1)


def test_product_projections_preserve_order():
    K, L = cons.circle(3), cons.projective_plane()
    P = cons.product(K, L)
    pk, pl = cons.product_projections(K, L)
    for f in P.facets:
        for proj in (pk, pl):
            img = [proj[v] for v in f]
            assert img == sorted(img)


def test_projective_space_counts():
    assert cons.projective_space(2).f_vector() == (13, 36, 24)
    assert str(homology(cons.projective_space(3))) == "(Z, Z_2, 0, Z)"


def test_chain_complex_validation():
    with pytest.raises(ShapeMismatch):
        ChainComplex((1, 2), (IntMatrix.zeros(2, 2),))
    with pytest.raises(CompositionNonzero):
        ChainComplex((1, 1, 1), (IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[1]])))


def test_uct_and_mod2():
    for K in [cons.projective_plane(), cons.lens_chain_complex(4), cons.product(cons.projective_plane(), cons.circle(3))]:
        hz = homology(K, Z)
        assert uct_check(hz, cohomology(K, Z))
        assert mod2_profile_from_z(hz) == homology(K, Z2)
    with pytest.raises(CoefficientMismatch):
        mod2_profile_from_z(homology(cons.circle(3), Z2))


def test_profile_validation():
    with pytest.raises(ShapeMismatch):
        HomologyProfile(2, Z, (FGAbelianGroup(1),))
    with pytest.raises(CoefficientMismatch):
        HomologyProfile(0, Z2, (FGAbelianGroup(0, (2,)),))
    with pytest.raises(CoefficientMismatch):
        homology(cons.circle(3), "Q")
    P = HomologyProfile.from_groups([FGAbelianGroup(1), FGAbelianGroup(0, (2,))])
    assert P[5] == FGAbelianGroup()
    assert str(homology(cons.projective_plane(), Z2)) == "(Z_2, Z_2, Z_2)"


def test_cochains():
    a = Mod2Cochain.from_support(1, [0, 2], 4)
    b = Mod2Cochain.from_support(1, [2], 4)
    assert (a + b).support == (0,)
    assert a != b and a == Mod2Cochain(1, [1, 0, 1, 0])
    assert Mod2Cochain.zero(2, 3).is_zero()
    with pytest.raises(TypeError):
        hash(a)


def test_mod2_basis():
    assert len(cohomology_basis_mod2(cons.sphere(2), 1)) == 0
    P = cons.projective_plane()
    B = cohomology_basis_mod2(P, 1)
    assert B.dim == 1
    assert B.express(B[0]) == (1,)
    assert is_cocycle_mod2(P.chain_complex(), B[0])
    # adding a coboundary does not change the class
    C = P.chain_complex()
    vertex = np.zeros(C.ranks[0], np.uint8)
    vertex[0] = 1
    shifted = B[0] + Mod2Cochain(1, C.coboundary_mod2(0, vertex))
    assert B.express(shifted) == (1,)
    assert B.is_coboundary(Mod2Cochain(1, C.coboundary_mod2(0, vertex)))
    with pytest.raises(NotACocycle):
        B.express(Mod2Cochain.from_support(1, [0], C.ranks[1]))


def test_rho2():
    S = cons.circle(3)
    C = S.chain_complex()
    z = rho2(C, [1, 0, 3], 1)
    assert z.support == (0, 2)
    with pytest.raises(NotACocycle):
        rho2(cons.simplex(2).chain_complex(), [1, 0, 0], 1)
