"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import sys

import numpy as np
import pytest

from ctrivial import constructions as cons
from ctrivial.algebra import FGAbelianGroup as G
from ctrivial.algebra import IntMatrix, det, determinantal_divisors, ext_z2_dim, snf
from ctrivial.classify import ObstructionKind, Outcome, classify, classify_complex, classify_many
from ctrivial.complexes import Z, ChainComplex, HomologyProfile, SimplicialComplex, cohomology, homology, uct_check
from ctrivial.complexes import cohomology_basis_mod2
from ctrivial.corpus import CHAIN, COMPLEX, PROFILE, corpus_list
from ctrivial.errors import NotAClosedManifold, ProfileInconsistent
from ctrivial.io import certificate_doc, dumps, homology_doc
from ctrivial.manifold import certify
from ctrivial.steenrod import CupIContext, _h4_integral, pullback, sq2_rho2_injective

Zg, O, Z2g = G(1), G(), G(0, (2,))
FS = [O, G.cyclic(2), G.cyclic(3), G.cyclic(4), G.from_orders([2, 4])]

CORPUS = corpus_list()
COMPLEXES = [e for e in CORPUS if e.kind == COMPLEX]
CHAINS = [e for e in CORPUS if e.kind in (COMPLEX, CHAIN)]


def P(*gs):
    return HomologyProfile.from_groups(gs)


# -- criterion 1 -----------------------------------------------------------------


def test_c1_sphere_battery(record):
    bad = []
    for n in range(1, 8):
        K = cons.sphere(n)
        expected = P(Zg, *([O] * (n - 1)), Zg)
        if homology(K) != expected:
            bad.append(f"H(S^{n})")
        _, _, v = classify_complex(K)
        if n % 2:
            if v.outcome is not Outcome.C_TRIVIAL:
                bad.append(f"S^{n} {v.outcome}")
        elif v.outcome is not Outcome.NOT_C_TRIVIAL or ObstructionKind.BOTT_EVEN_ORIENTABLE not in v.kinds:
            bad.append(f"S^{n} {v.outcome} {v.kinds}")
    record(1, not bad, "sphere battery n=1..7" + (f" ({bad})" if bad else ""))
    assert not bad


# -- criterion 2 -----------------------------------------------------------------


def table_profiles():
    """Every C-trivial (or open-case) profile of the dimension 3..7 tables with F from FS.

    Yields ``(profile, orientable, expected outcome)``.  For dimension 6 the
    free ranks satisfy d2 = d1 + 1 + s(F), which mod-2 duality forces.
    """
    yield P(Zg, O, O, Zg), True, Outcome.C_TRIVIAL
    yield P(Zg, Zg, Z2g, O), False, Outcome.C_TRIVIAL
    for F in FS:
        yield P(Zg, O, F, O, O, Zg), True, Outcome.C_TRIVIAL
        yield P(Zg, Zg, F, O, Z2g, O), False, Outcome.C_TRIVIAL
        yield P(Zg, O, F, O, F, O, O, Zg), True, Outcome.C_TRIVIAL
    for F, F2 in itertools.product(FS, FS):
        if ext_z2_dim(F) != ext_z2_dim(F2):
            continue
        for d1, d3 in itertools.product((0, 1), (0, 1)):
            d2 = d1 + 1 + ext_z2_dim(F)
            yield P(Zg, G(d2), F, G(d3), F2, G(d1, (2,)), O), False, Outcome.C_TRIVIAL
        for r in (0, 1):
            H3 = Z2g if r else O
            out = Outcome.UNDETERMINED if r else Outcome.C_TRIVIAL
            yield P(Zg, Zg, F, H3, F2, O, Z2g, O), False, out


def _elementary(g):
    out = []
    for d in g.invariant_factors:
        p = 2
        while d > 1:
            if d % p == 0:
                q = 1
                while d % p == 0:
                    d //= p
                    q *= p
                out.append(q)
            p += 1
    return out


def mutations(profile):
    """Single-degree mutations: add Z, add Z_3, toggle a Z_2 summand."""
    for k, g in enumerate(profile):
        gs = list(profile)
        el = _elementary(g)
        toggled = list(el)
        if 2 in toggled:
            toggled.remove(2)
        else:
            toggled.append(2)
        for label, new in (
            ("+Z", G(g.rank + 1, g.invariant_factors)),
            ("+Z_3", g + G.cyclic(3)),
            ("~Z_2", G.from_orders(toggled, g.rank)),
        ):
            gs[k] = new
            yield k, label, HomologyProfile.from_groups(gs)


def in_family(profile, orientable):
    """Independent membership test for the dimension 3..7 tables (any finite F)."""
    n = profile.dim
    g = list(profile)
    fin = [x.is_finite for x in g]
    if n == 3:
        return g == ([Zg, O, O, Zg] if orientable else [Zg, Zg, Z2g, O])
    if n == 5 and orientable:
        return g[0] == Zg and g[1] == O and fin[2] and g[3] == O and g[4] == O and g[5] == Zg
    if n == 5:
        return g[0] == Zg and g[1] == Zg and fin[2] and g[3] == O and g[4] == Z2g and g[5] == O
    if n == 6 and not orientable:
        d2, d1 = g[1].rank, g[5].rank
        return (
            g[0] == Zg and not g[1].invariant_factors and d2 >= 1 and fin[2] and not g[3].invariant_factors
            and fin[4] and g[5].invariant_factors == (2,) and g[6] == O
            and ext_z2_dim(g[2]) == ext_z2_dim(g[4]) and d2 == d1 + 1 + ext_z2_dim(g[2])
        )
    if n == 7 and orientable:
        return g[0] == Zg and g[1] == O and fin[2] and g[3] == O and g[4] == g[2] and g[5] == O and g[6] == O and g[7] == Zg
    if n == 7:
        return (
            g[0] == Zg and g[1] == Zg and fin[2] and g[3] in (O, Z2g) and fin[4] and g[5] == O and g[6] == Z2g
            and g[7] == O and ext_z2_dim(g[2]) == ext_z2_dim(g[4])
        )
    return False


def _outcome(profile, orientable):
    try:
        return classify(profile, orientable).outcome
    except ProfileInconsistent:
        return None  # refused: not a valid closed-manifold profile


def _criterion2_counts():
    base_bad, total, flips, stay = [], 0, 0, []
    for prof, orientable, expected in table_profiles():
        got = _outcome(prof, orientable)
        if got is not expected:
            base_bad.append((str(prof), orientable, got))
        for k, label, mut in mutations(prof):
            total += 1
            out = _outcome(mut, orientable)
            if out is Outcome.NOT_C_TRIVIAL or out is None:
                flips += 1
            else:
                stay.append((str(prof), orientable, k, label, out))
    return base_bad, total, flips, stay


@pytest.mark.xfail(
    strict=True,
    reason="some single-degree mutations stay inside the same table family (e.g. F -> F + Z_3), "
    "so the literal requirement contradicts the tables themselves; see the companion test",
)
def test_c2_table_profiles(record):
    base_bad, total, flips, stay = _criterion2_counts()
    ok = not base_bad and flips == total
    record(
        2,
        ok,
        f"{sum(1 for _ in table_profiles()) - len(base_bad)} table profiles classified as expected; "
        f"{flips}/{total} mutations leave CTrivial; {len(stay)} in-family mutations keep the table verdict",
    )
    assert not base_bad
    assert flips == total, stay[:5]


def test_c2_companion_mutations_match_family():
    # what does hold: a mutation flips exactly when it leaves the table family
    base_bad, total, flips, stay = _criterion2_counts()
    assert not base_bad
    for prof, orientable, _ in table_profiles():
        for k, label, mut in mutations(prof):
            out = _outcome(mut, orientable)
            if in_family(mut, orientable):
                assert out in (Outcome.C_TRIVIAL, Outcome.UNDETERMINED), (str(mut), orientable)
            else:
                assert out in (Outcome.NOT_C_TRIVIAL, None), (str(mut), orientable, out)
            if out is Outcome.C_TRIVIAL and mut.dim <= 6:
                # H^4 = free(H_4) + torsion(H_3) vanishes on every C-trivial profile
                assert mut[4].rank == 0 and not mut[3].invariant_factors
            if out is Outcome.C_TRIVIAL:
                assert mut[2].rank == 0 and not mut[1].invariant_factors


# -- criterion 3 -----------------------------------------------------------------


def test_c3_negative_geometry(record):
    bad = []
    rp2 = cons.projective_plane()
    cert, _, v = classify_complex(rp2)
    if cert.orientable or cert.euler_characteristic != 1 or v.outcome is not Outcome.NOT_C_TRIVIAL:
        bad.append("rp2")
    for name, K in [
        ("torus", cons.product(cons.circle(3), cons.circle(3))),
        ("torus3", cons.product(cons.product(cons.circle(3), cons.circle(3)), cons.circle(3))),
    ]:
        if classify_complex(K)[2].outcome is not Outcome.NOT_C_TRIVIAL:
            bad.append(name)
    for p in (2, 3, 5):
        _, _, v = classify_complex(cons.lens_chain_complex(p))
        if v.outcome is not Outcome.NOT_C_TRIVIAL or ObstructionKind.NONZERO_H2 not in v.kinds:
            bad.append(f"L({p},1)")
    record(3, not bad, "projective plane, tori and lens spaces" + (f" ({bad})" if bad else ""))
    assert not bad


# -- criterion 4 -----------------------------------------------------------------


def test_c4_snf_oracle(record):
    rng = random.Random(20240601)
    bad = 0
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        r = snf(A)
        ds = determinantal_divisors(A)
        want, prev = [], 1
        for d in ds:
            if d == 0:
                break
            want.append(d // prev)
            prev = d
        ok = (
            r.invariant_factors == want
            and r.U @ A @ r.V == r.S
            and abs(det(r.U)) == 1
            and abs(det(r.V)) == 1
            and all(r.S[i, j] == 0 for i in range(m) for j in range(n) if i != j)
        )
        bad += not ok
    record(4, bad == 0, f"200 seeded matrices up to 6x6, {bad} mismatches")
    assert bad == 0


# -- criterion 5 -----------------------------------------------------------------


def test_c5_uct_and_duality(record):
    bad = []
    checked = 0
    for e in CHAINS:
        hz = homology(e.payload, Z)
        if not uct_check(hz, cohomology(e.payload, Z)):
            bad.append(f"uct {e.name}")
        if not e.is_manifold or e.kind != COMPLEX:
            continue
        cert, _, h2 = certify(e.payload)  # raises if orientation and top homology disagree
        n = cert.dim
        b = h2.ranks
        checked += 1
        if not all(b[k] == b[n - k] for k in range(n + 1)):
            bad.append(f"duality {e.name}")
        if n % 2 and cert.euler_characteristic != 0:
            bad.append(f"chi {e.name}")
        if not (cert.duality_ok and cert.euler_ok):
            bad.append(f"certificate {e.name}")
    # the checker must reject the deliberately broken fixtures
    cert, _, _ = certify(next(e for e in CORPUS if e.name == "suspension_torus").payload)
    if cert.duality_ok:
        bad.append("suspension_torus passed duality")
    record(5, not bad, f"UCT on {len(CHAINS)} corpus complexes, duality and chi on {checked} manifolds" + (f" ({bad})" if bad else ""))
    assert not bad


# -- criterion 6 -----------------------------------------------------------------


def _identity_failures(ctx, rng, pairs):
    n = ctx.dim
    combos = [(p, q, i) for p in range(n + 1) for q in range(n + 1) for i in range(min(p, q) + 1) if p + q - i <= n]
    fails = 0
    for t in range(pairs):
        p, q, i = combos[t % len(combos)]
        u, v = ctx.random_cochain(p, rng), ctx.random_cochain(q, rng)
        lhs = ctx.coboundary(ctx.cup_i(u, v, i))
        rhs = ctx.cup_i(ctx.coboundary(u), v, i) + ctx.cup_i(u, ctx.coboundary(v), i)
        if i > 0:
            rhs = rhs + ctx.cup_i(u, v, i - 1) + ctx.cup_i(v, u, i - 1)
        fails += lhs != rhs
    return fails


def test_c6_steenrod_suite(record):
    rng = np.random.default_rng(6)
    bad = []
    ctxs = {}
    for e in COMPLEXES:
        ctx = ctxs[e.name] = CupIContext(e.payload)
        if _identity_failures(ctx, rng, 200):
            bad.append(f"identity {e.name}")
        if ctx.dim >= 2:
            for x in cohomology_basis_mod2(ctx.complex, 2):
                if ctx.sq2(x) != ctx.cup(x, x):
                    bad.append(f"sq2 {e.name}")
    rp2 = cons.projective_plane()
    pp = next(e for e in CORPUS if e.name == "rp2_x_rp2").payload
    pk, pl = cons.product_projections(rp2, rp2)
    w = cohomology_basis_mod2(rp2, 1)[0]
    a, b = pullback(pk, pp, rp2, w), pullback(pl, pp, rp2, w)
    ctx = ctxs["rp2_x_rp2"]
    ab = ctx.cup(a, b)
    h4 = cohomology_basis_mod2(pp, 4)
    a2b2 = ctx.cup(ctx.cup(a, a), ctx.cup(b, b))
    if h4.express(ctx.sq2(ab)) != (1,) or h4.express(a2b2) != (1,):
        bad.append("Sq^2(ab) != a^2 b^2")
    record(6, not bad, f"cup-i identity on 200 pairs x {len(COMPLEXES)} complexes, Sq^2 = cup square, Sq^2(ab) = a^2b^2" + (f" ({bad})" if bad else ""))
    assert not bad


# -- criterion 7 -----------------------------------------------------------------


def _extra_rho2_fixtures():
    # Z_3 in H^4 via H_3 = Z_3
    z3 = ChainComplex(
        (1, 0, 0, 1, 1),
        (IntMatrix.zeros(1, 0), IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 1), IntMatrix.from_rows([[3]])),
    )
    # free H^4 in dimension 7
    ranks = (1, 0, 0, 0, 1, 0, 0, 1)
    free7 = ChainComplex(ranks, tuple(IntMatrix.zeros(ranks[k - 1], ranks[k]) for k in range(1, 8)))
    pp = next(e for e in CORPUS if e.name == "rp2_x_rp2").payload
    return [("z3_in_h4", z3), ("free_h4_dim7", free7), ("suspended_rp2_x_rp2", cons.suspension(pp))]


def test_c7_rho2_channel(record):
    bad, seen = [], 0
    items = [(e.name, e.payload) for e in CHAINS] + _extra_rho2_fixtures()
    for name, K in items:
        C = K.chain_complex() if isinstance(K, SimplicialComplex) else K
        if C.top_dim > 7:
            continue
        H = _h4_integral(C, 4)
        got = sq2_rho2_injective(K)
        odd_or_free = H.rank > 0 or any(d % 2 for d in H.invariant_factors)
        if C.top_dim == 7 and H.is_trivial:
            seen += 1
            if got is not True:
                bad.append(name)
        if odd_or_free:
            seen += 1
            if got is not False:
                bad.append(name)
        if C.top_dim <= 5 and not H.is_trivial:
            seen += 1
            if got is not False:
                bad.append(name)
    record(7, not bad, f"{seen} channel checks over corpus and extra fixtures" + (f" ({bad})" if bad else ""))
    assert not bad


# -- criterion 8 -----------------------------------------------------------------


def _corpus_json(jobs, fresh):
    entries = [e for e in CORPUS if e.kind != PROFILE]
    payloads = [e.build() if fresh else e.payload for e in entries]
    ok = [i for i, e in enumerate(entries) if e.refused_check is None]
    results = dict(zip(ok, classify_many([payloads[i] for i in ok], jobs=jobs)))
    docs = []
    for i, e in enumerate(entries):
        if i in results:
            cert, hz, v = results[i]
            docs.append({"name": e.name, "certificate": certificate_doc(cert), "homology": homology_doc(hz), "verdict": v.to_dict()})
        else:
            try:
                classify_complex(payloads[i])
                docs.append({"name": e.name, "refused": None})
            except NotAClosedManifold as err:
                docs.append({"name": e.name, "refused": err.check})
    for e in CORPUS:
        if e.kind == PROFILE:
            docs.append({"name": e.name, "verdict": classify(e.payload, e.orientable).to_dict()})
    return dumps(docs).encode()


def test_c8_determinism(record):
    runs = [_corpus_json(1, True), _corpus_json(1, True), _corpus_json(4, True), _corpus_json(2, False)]
    same = all(r == runs[0] for r in runs)
    record(8, same, f"{len(runs)} runs (1, 1, 4, 2 threads), {len(runs[0])} bytes each, byte-identical={same}")
    assert same


if __name__ == "__main__":

    def _print(n, ok, msg):
        print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {msg}")

    failed = False
    for fn in [
        test_c1_sphere_battery,
        test_c2_table_profiles,
        test_c3_negative_geometry,
        test_c4_snf_oracle,
        test_c5_uct_and_duality,
        test_c6_steenrod_suite,
        test_c7_rho2_channel,
        test_c8_determinism,
    ]:
        try:
            fn(_print)
        except AssertionError:
            failed = True
    sys.exit(1 if failed else 0)
