import re

import pytest

from ctrivial import constructions as cons
from ctrivial.algebra import FGAbelianGroup as G
from ctrivial.classify import (
    BASIS_STATEMENTS,
    Basis,
    ObstructionKind as K,
    Outcome,
    Verdict,
    classify,
    classify_complex,
    classify_many,
    explain,
)
from ctrivial.complexes import HomologyProfile
from ctrivial.errors import NotAClosedManifold, ProfileInconsistent

Zg, O, Z2g = G(1), G(), G(0, (2,))


def P(*gs):
    return HomologyProfile.from_groups(gs)


def test_examples():
    assert classify(P(Zg, O, O, Zg), True).outcome is Outcome.C_TRIVIAL
    v = classify(P(Zg, Z2g, O, Zg), True)
    assert v.outcome is Outcome.NOT_C_TRIVIAL and v.kinds[0] is K.NONZERO_H2
    assert classify(P(Zg, Zg), True).outcome is Outcome.C_TRIVIAL
    for orientable in (True, False):
        top = Zg if orientable else O
        v = classify(P(Zg, O, O, O, top), orientable)
        assert K.DIM4 in v.kinds


def test_ruberman_families():
    for k in (2, 3, 4, 7):
        Fk = G.from_orders([k, k])
        assert classify(P(Zg, O, Fk, O, O, Zg), True).outcome is Outcome.C_TRIVIAL
        Ck = G.cyclic(k)
        assert classify(P(Zg, O, Ck, O, Ck, O, O, Zg), True).outcome is Outcome.C_TRIVIAL


def test_seven_orientable_needs_isomorphic_groups():
    v = classify(P(Zg, O, G.cyclic(2), O, G.cyclic(4), O, O, Zg), True)
    assert v.outcome is Outcome.NOT_C_TRIVIAL
    assert str(v.obstructions[-1]) == "TableMismatch(dim=7, degree=4)"


def test_seven_nonorientable_r():
    base = [Zg, Zg, O, O, O, O, Z2g, O]
    assert classify(P(*base), False).outcome is Outcome.C_TRIVIAL
    base[3] = Z2g
    v = classify(P(*base), False)
    assert v.outcome is Outcome.UNDETERMINED
    assert Basis.OPEN_7_NONORIENTABLE in v.basis and v.reasons
    base[3] = G(0, (2, 2))
    assert classify(P(*base), False).outcome is Outcome.NOT_C_TRIVIAL


def test_six_nonorientable():
    # d2 = d1 + 1 + s keeps mod-2 duality
    ok = P(Zg, G(2), Z2g, G(1), Z2g, Z2g, O)
    assert classify(ok, False).outcome is Outcome.C_TRIVIAL
    bad_ext = P(Zg, G(1), Z2g, O, O, Z2g, O)
    v = classify(bad_ext, False)
    assert v.outcome is Outcome.NOT_C_TRIVIAL
    no_h1 = P(Zg, O, O, O, O, Z2g, O)
    v = classify(no_h1, False)
    assert str(v.obstructions[0]) == "TableMismatch(dim=6, degree=1)"


def test_duality_flag():
    # table shape fine, but d2 != d1 + 1 + s
    v = classify(P(Zg, G(3), O, O, O, Z2g, O), False)
    assert v.kinds == (K.DUALITY_INCONSISTENT,)


def test_high_dimension():
    v = classify(P(Zg, O, O, O, O, O, O, O, O, Zg), True)
    assert v.outcome is Outcome.UNDETERMINED and v.basis == (Basis.HIGH_DIMENSION,)
    v = classify(P(Zg, O, O, O, O, O, O, O, Zg), True)
    assert v.kinds == (K.BOTT_EVEN_ORIENTABLE,)
    v = classify(P(Zg, O, O, O, Zg, O, O, O, O, O, Zg), True)
    assert K.EVEN_COHOMOLOGY_INFINITE in v.kinds


def test_precedence_is_fixed():
    v = classify(P(Zg, G(3), G(3), G(3), Zg), True)
    order = list(K)
    assert [order.index(k) for k in v.kinds] == sorted(order.index(k) for k in v.kinds)
    assert classify(P(Zg, G(3), G(3), G(3), Zg), True) == v


def test_inconsistent_profiles():
    with pytest.raises(ProfileInconsistent):
        classify(P(G(2), O, Zg), True)
    with pytest.raises(ProfileInconsistent):
        classify(P(Zg, O, Zg), False)
    with pytest.raises(ProfileInconsistent):
        classify(P(Zg, O, O), True)
    with pytest.raises(ProfileInconsistent):
        classify(P(Zg, O, Zg), True, 3)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict(Outcome.NOT_C_TRIVIAL, (Basis.BOTT,))
    with pytest.raises(ValueError):
        Verdict(Outcome.UNDETERMINED, (Basis.HIGH_DIMENSION,))
    assert set(BASIS_STATEMENTS) == set(Basis)


def test_explain_texts():
    assert "integral homology 3-sphere" in explain(classify(P(Zg, O, O, Zg), True))
    assert "then H^2(X;Z) = 0" in explain(classify(P(Zg, Z2g, O, Zg), True))
    r1 = explain(classify(P(Zg, Zg, O, Z2g, O, O, Z2g, O), False))
    assert "open" in r1
    for text in BASIS_STATEMENTS.values():
        assert not re.search(r"\d\.\d", text)


def test_classify_complex():
    cert, hz, v = classify_complex(cons.sphere(5))
    assert v.outcome is Outcome.C_TRIVIAL and cert.orientable
    _, _, v = classify_complex(cons.product(cons.circle(3), cons.circle(3)))
    assert K.SURFACE_DIM2 in v.kinds
    with pytest.raises(NotAClosedManifold) as e:
        classify_complex(cons.simplex(3))
    assert e.value.check == "closed"
    with pytest.raises(NotAClosedManifold) as e:
        classify_complex(cons.disjoint_union(cons.sphere(3), cons.sphere(3)))
    assert e.value.check == "connected"
    cert, _, v = classify_complex(cons.lens_chain_complex(5))
    assert cert is None and v.kinds[0] is K.NONZERO_H2


def test_classify_many_keeps_order():
    items = [cons.sphere(n) for n in range(1, 6)]
    a = [v.to_dict() for _, _, v in classify_many(items, jobs=1)]
    b = [v.to_dict() for _, _, v in classify_many(items, jobs=4)]
    assert a == b
    assert [x["outcome"] for x in a] == ["CTrivial", "NotCTrivial"] * 2 + ["CTrivial"]


def test_h2_obstruction_dominates():
    # torsion in H_1 blocks every table
    for n in range(3, 8):
        for orientable in (True, False):
            gs = [Zg] + [O] * (n - 1) + [Zg if orientable else O]
            gs[1] = gs[1] + Z2g
            v = classify(P(*gs), orientable)
            assert v.outcome is Outcome.NOT_C_TRIVIAL and v.kinds[0] is K.NONZERO_H2
