import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctrivial.algebra import (
    FGAbelianGroup,
    IntMatrix,
    det,
    determinantal_divisors,
    ext_z2_dim,
    hom_z2_dim,
    homology_group,
    integer_kernel,
    invariant_factors,
    snf,
)
from ctrivial.errors import CompositionNonzero, ShapeMismatch


def _is_unimodular(M: IntMatrix) -> bool:
    return abs(det(M)) == 1


def _quotients(ds):
    out, prev = [], 1
    for d in ds:
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def test_textbook_snf():
    A = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    r = snf(A)
    assert r.diagonal == [2, 6, 12]
    assert r.U @ A @ r.V == r.S
    assert determinantal_divisors(A) == [2, 12, 144]
    assert invariant_factors(A) == [2, 6, 12]


def test_snf_rectangular_and_zero():
    assert snf(IntMatrix.zeros(2, 3)).invariant_factors == []
    r = snf(IntMatrix.from_rows([[0, 0, 3], [0, 0, 6]]))
    assert r.diagonal == [3, 0]
    assert invariant_factors(IntMatrix.from_rows([[4], [6]])) == [2]


def test_det_bareiss():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30
    assert det([[1, 2], [2, 4]]) == 0


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_determinantal_divisors(rows):
    A = IntMatrix.from_rows(rows)
    r = snf(A)
    assert r.U @ A @ r.V == r.S
    assert _is_unimodular(r.U) and _is_unimodular(r.V)
    d = r.invariant_factors
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert d == _quotients(determinantal_divisors(A))
    assert invariant_factors(A) == d


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_integer_kernel_spans_rational_kernel(rows):
    A = IntMatrix.from_rows(rows)
    ker = integer_kernel(A)
    rank = len(invariant_factors(A))
    assert len(ker) == A.cols - rank
    for vec in ker:
        dense = [vec.get(j, 0) for j in range(A.cols)]
        assert A.apply(dense) == [0] * A.rows


def test_integer_kernel_is_saturated():
    # kernel of (2 4) is generated by (-2, 1); a non-saturated answer would be a multiple
    (v,) = integer_kernel(IntMatrix.from_rows([[2, 4]]))
    assert sorted(abs(x) for x in v.values()) == [1, 2]


def test_intmatrix_basics():
    A = IntMatrix.from_rows([[1, 0, 2], [0, -1, 0]])
    assert A.shape == (2, 3)
    assert A.T.shape == (3, 2)
    assert A.T.T == A
    assert A[0, 2] == 2 and A[1, 0] == 0
    assert A.nnz == 3
    assert A.entries == (1, 0, 2, 0, -1, 0)
    assert A @ IntMatrix.identity(3) == A
    assert sorted(A.nonzero()) == [(0, 0, 1), (0, 2, 2), (1, 1, -1)]
    assert IntMatrix.diag([1, 2]).to_rows() == [[1, 0], [0, 2]]
    assert hash(A) == hash(IntMatrix.from_rows([[1, 0, 2], [0, -1, 0]]))


def test_group_canonical_form():
    G = FGAbelianGroup.from_orders([2, 3])
    assert G == FGAbelianGroup.cyclic(6)
    assert FGAbelianGroup.from_orders([4, 6]).invariant_factors == (2, 12)
    assert FGAbelianGroup.from_orders([0, 1, 2]) == FGAbelianGroup(1, (2,))
    assert str(FGAbelianGroup(2, (2,))) == "Z^2 + Z_2"
    assert str(FGAbelianGroup()) == "0"
    assert FGAbelianGroup(0, (2, 4)).order == 8
    assert FGAbelianGroup(1).order is None
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (4, 2))
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (1,))


def test_ext_hom_against_z2():
    G = FGAbelianGroup.from_orders([2, 3, 4], rank=1)
    assert ext_z2_dim(G) == 2
    assert hom_z2_dim(G) == 3
    assert ext_z2_dim(FGAbelianGroup.cyclic(9)) == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 30), max_size=4), st.lists(st.integers(2, 30), max_size=4))
def test_direct_sum_is_order_multiplicative(a, b):
    G, H = FGAbelianGroup.from_orders(a), FGAbelianGroup.from_orders(b)
    assert (G + H).order == G.order * H.order
    assert G + H == FGAbelianGroup.from_orders(a + b)


def test_homology_group_checks():
    d1 = IntMatrix.from_rows([[-1, -1, 0], [1, 0, -1], [0, 1, 1]])
    with pytest.raises(ShapeMismatch):
        homology_group(d1, IntMatrix.zeros(2, 1))
    with pytest.raises(CompositionNonzero):
        homology_group(d1, IntMatrix.from_rows([[1], [0], [0]]))
    # circle: H_1 = Z
    assert homology_group(d1, IntMatrix.zeros(3, 0)) == FGAbelianGroup(1)


def test_seeded_random_large_sparse():
    rng = random.Random(5)
    rows = [[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(30)] for _ in range(25)]
    A = IntMatrix.from_rows(rows)
    assert invariant_factors(A) == snf(A).invariant_factors
