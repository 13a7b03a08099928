"""Generators for standard triangulations and chain complexes."""

from __future__ import annotations

import itertools
from math import comb

from .algebra import IntMatrix
from .complexes import ChainComplex, SimplicialComplex
from .errors import MTooSmall

__all__ = [
    "point",
    "sphere",
    "simplex",
    "circle",
    "product",
    "product_projections",
    "projective_plane",
    "projective_space",
    "suspension",
    "disjoint_union",
    "relabel",
    "lens_chain_complex",
]


def point() -> SimplicialComplex:
    return SimplicialComplex([(0,)])


def simplex(n: int) -> SimplicialComplex:
    """The full ``n``-simplex on vertices ``0..n``."""
    return SimplicialComplex([tuple(range(n + 1))])


def sphere(n: int) -> SimplicialComplex:
    """Boundary of the ``(n+1)``-simplex: ``n + 2`` vertices and ``n + 2`` facets."""
    if n < 0:
        raise ValueError("sphere dimension must be nonnegative")
    return SimplicialComplex(itertools.combinations(range(n + 2), n + 1))


def circle(m: int) -> SimplicialComplex:
    if m < 3:
        raise MTooSmall(f"a triangulated circle needs at least 3 vertices, got {m}")
    return SimplicialComplex((i, (i + 1) % m) for i in range(m))


def relabel(K: SimplicialComplex, offset: int) -> SimplicialComplex:
    return SimplicialComplex(tuple(v + offset for v in f) for f in K.facets)


def disjoint_union(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    shift = max(K.vertices) + 1
    return SimplicialComplex(list(K.facets) + list(relabel(L, shift).facets))


def _staircases(p: int, q: int):
    """Monotone lattice paths from (0, 0) to (p, q) as lists of grid points."""
    for right in itertools.combinations(range(p + q), p):
        rs = set(right)
        i = j = 0
        path = [(0, 0)]
        for step in range(p + q):
            if step in rs:
                i += 1
            else:
                j += 1
            path.append((i, j))
        yield path


def product(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of ``|K| x |L|``.

    The vertex ``(a, b)`` is labelled ``rank(a) * |V(L)| + rank(b)`` where
    ``rank`` is the position in the sorted vertex list; this order is the
    lexicographic order on pairs, so both projections preserve vertex order.
    Each facet pair of dimensions ``(p, q)`` contributes ``C(p + q, p)``
    top simplices.
    """
    if not (K.is_pure and L.is_pure):
        raise ValueError("product needs pure complexes")
    rk = {v: i for i, v in enumerate(K.vertices)}
    rl = {v: i for i, v in enumerate(L.vertices)}
    nl = len(L.vertices)
    facets = []
    for s in K.facets:
        for t in L.facets:
            for path in _staircases(len(s) - 1, len(t) - 1):
                facets.append(tuple(rk[s[i]] * nl + rl[t[j]] for i, j in path))
    out = SimplicialComplex(facets)
    expected = sum(comb(len(s) + len(t) - 2, len(s) - 1) for s in K.facets for t in L.facets)
    assert len(out.facets) == expected
    return out


def product_projections(K: SimplicialComplex, L: SimplicialComplex) -> tuple[dict, dict]:
    """Vertex maps of the two projections out of ``product(K, L)``."""
    nl = len(L.vertices)
    pk, pl = {}, {}
    for i, a in enumerate(K.vertices):
        for j, b in enumerate(L.vertices):
            pk[i * nl + j] = a
            pl[i * nl + j] = b
    return pk, pl


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    top = max(K.vertices) + 1
    return SimplicialComplex([f + (top,) for f in K.facets] + [f + (top + 1,) for f in K.facets])


_PHI = (1 + 5 ** 0.5) / 2


def projective_plane() -> SimplicialComplex:
    """Six-vertex real projective plane.

    Built as the quotient of the icosahedron boundary by the antipodal map.
    """
    pts = []
    for a, b in itertools.product((-1, 1), repeat=2):
        pts += [(0, a, b * _PHI), (a, b * _PHI, 0), (b * _PHI, 0, a)]

    def d2(x, y):
        return sum((s - t) ** 2 for s, t in zip(x, y))

    n = len(pts)
    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if abs(d2(pts[i], pts[j]) - 4) < 1e-9}
    tris = [t for t in itertools.combinations(range(n), 3) if all(e in edges for e in itertools.combinations(t, 2))]
    assert len(tris) == 20

    anti = {}
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            if all(abs(s + t) < 1e-9 for s, t in zip(x, y)):
                anti[i] = j
    classes = sorted({min(i, anti[i]) for i in range(n)})
    label = {i: classes.index(min(i, anti[i])) for i in range(n)}
    out = SimplicialComplex({tuple(sorted(label[v] for v in t)) for t in tris})
    assert len(out.vertices) == 6 and len(out.facets) == 10
    return out


def projective_space(n: int) -> SimplicialComplex:
    """``RP^n`` as the antipodal quotient of the barycentric subdivision of
    the boundary of the ``(n+1)``-dimensional cross-polytope.

    Vertices are nonempty sign vectors modulo sign; facets are complete flags.
    """
    N = n + 1

    def canon(f):
        neg = tuple(-x for x in f)
        return max(f, neg)

    verts = sorted({canon(f) for f in itertools.product((-1, 0, 1), repeat=N) if any(f)})
    label = {v: i for i, v in enumerate(verts)}
    facets = set()
    for perm in itertools.permutations(range(N)):
        for signs in itertools.product((-1, 1), repeat=N):
            cur = [0] * N
            flag = []
            for i in perm:
                cur[i] = signs[i]
                flag.append(label[canon(tuple(cur))])
            facets.add(tuple(sorted(flag)))
    return SimplicialComplex(facets)


def lens_chain_complex(p: int) -> ChainComplex:
    """Cellular chain complex ``Z -0-> Z -p-> Z -0-> Z`` of the lens space ``L(p, 1)``."""
    if p < 2:
        raise ValueError("lens spaces need p >= 2")
    return ChainComplex(
        (1, 1, 1, 1),
        (IntMatrix.from_rows([[0]]), IntMatrix.from_rows([[p]]), IntMatrix.from_rows([[0]])),
    )
