"""Mod-2 cup-i products and the Steenrod square Sq^2 on simplicial cochains.

For an ``n``-simplex ``[0..n]`` and ``0 <= j_0 < ... < j_i <= n`` the
intervals ``[0, j_0], [j_0, j_1], ..., [j_i, n]`` are dealt alternately to
the two factors: even-numbered intervals form the face ``u`` is evaluated on,
odd-numbered ones the face for ``v``.  ``u cup_i v`` sums these products over
all choices whose faces have the right dimensions.  ``i = 0`` is the
front-face/back-face cup product.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import _backend, gf2
from .algebra import FGAbelianGroup, homology_group, integer_kernel
from .complexes import ChainComplex, Mod2Cochain, SimplicialComplex, cohomology_basis_mod2, is_cocycle_mod2
from .errors import (
    ComplexMismatch,
    DegreeOutOfRange,
    DimensionTooLarge,
    IndexOutOfRange,
    InvariantViolation,
    NotACocycle,
)

__all__ = [
    "CupIContext",
    "cup",
    "cup_i",
    "sq2",
    "sq2_matrix",
    "sq2_rho2_injective",
    "pullback",
]


def _term_positions(n: int, p: int, q: int, i: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    terms = []
    for js in itertools.combinations(range(n + 1), i + 1):
        cuts = (0,) + js + (n,)
        front: list[int] = []
        back: list[int] = []
        for k in range(len(cuts) - 1):
            side = front if k % 2 == 0 else back
            for pos in range(cuts[k], cuts[k + 1] + 1):
                if not side or side[-1] != pos:
                    side.append(pos)
        if len(front) == p + 1 and len(back) == q + 1:
            terms.append((tuple(front), tuple(back)))
    return terms


class CupIContext:
    """Simplex tables of one complex plus cached cup-i lookup tables."""

    def __init__(self, K: SimplicialComplex | ChainComplex, backend=None):
        C = K.chain_complex() if isinstance(K, SimplicialComplex) else K
        if C.simplices is None:
            raise ComplexMismatch("cup products need a chain complex that comes from a simplicial complex")
        self.complex = C
        self.dim = C.top_dim
        self._kern = _backend if backend is None else backend
        self._arrays = [np.asarray(s, dtype=np.int64).reshape(len(s), k + 1) for k, s in enumerate(C.simplices)]
        self._base = 1 + max(int(a.max()) for a in self._arrays if a.size)
        self._keys = [self._encode(a) for a in self._arrays]
        self._tables: dict[tuple[int, int, int], tuple[np.ndarray, np.ndarray]] = {}

    def size(self, degree: int) -> int:
        return len(self._arrays[degree]) if 0 <= degree <= self.dim else 0

    def _encode(self, faces: np.ndarray):
        width = faces.shape[1]
        if self._base ** width < 2**62:
            powers = self._base ** np.arange(width - 1, -1, -1, dtype=np.int64)
            return faces @ powers
        return None

    def _lookup(self, degree: int, faces: np.ndarray) -> np.ndarray:
        keys = self._keys[degree]
        if keys is not None:
            q = self._encode(faces)
            idx = np.searchsorted(keys, q)
            ok = (idx < len(keys)) & (keys[np.minimum(idx, len(keys) - 1)] == q)
            if not ok.all():  # pragma: no cover - faces of simplices are simplices
                raise InvariantViolation("face lookup failed")
            return idx.astype(np.int64)
        index = {tuple(s): k for k, s in enumerate(self._arrays[degree].tolist())}
        return np.array([index[tuple(f)] for f in faces.tolist()], dtype=np.int64)

    def tables(self, p: int, q: int, i: int) -> tuple[np.ndarray, np.ndarray]:
        key = (p, q, i)
        out = self._tables.get(key)
        if out is None:
            n = p + q - i
            simp = self._arrays[n]
            terms = _term_positions(n, p, q, i)
            front = np.zeros((len(simp), len(terms)), dtype=np.int64)
            back = np.zeros((len(simp), len(terms)), dtype=np.int64)
            for t, (fpos, bpos) in enumerate(terms):
                front[:, t] = self._lookup(p, simp[:, list(fpos)])
                back[:, t] = self._lookup(q, simp[:, list(bpos)])
            out = (np.ascontiguousarray(front), np.ascontiguousarray(back))
            self._tables[key] = out
        return out

    def _check(self, u: Mod2Cochain) -> None:
        if len(u) != self.size(u.degree):
            raise ComplexMismatch(
                f"{u.degree}-cochain of length {len(u)} does not match {self.size(u.degree)} simplices"
            )

    def zero(self, degree: int) -> Mod2Cochain:
        return Mod2Cochain.zero(degree, self.size(degree))

    def cup_i(self, u: Mod2Cochain, v: Mod2Cochain, i: int) -> Mod2Cochain:
        self._check(u)
        self._check(v)
        p, q = u.degree, v.degree
        if not 0 <= i <= min(p, q):
            raise IndexOutOfRange(f"cup_{i} of cochains of degrees {p} and {q}")
        n = p + q - i
        if n > self.dim:
            return self.zero(n)
        front, back = self.tables(p, q, i)
        return Mod2Cochain(n, self._kern.cup_eval(u.values, v.values, front, back))

    def cup(self, u: Mod2Cochain, v: Mod2Cochain) -> Mod2Cochain:
        return self.cup_i(u, v, 0)

    def coboundary(self, u: Mod2Cochain) -> Mod2Cochain:
        self._check(u)
        if u.degree >= self.dim:
            return self.zero(u.degree + 1)
        return Mod2Cochain(u.degree + 1, self.complex.coboundary_mod2(u.degree, u.values))

    def sq2(self, x: Mod2Cochain) -> Mod2Cochain:
        self._check(x)
        if not is_cocycle_mod2(self.complex, x):
            raise NotACocycle(f"Sq^2 needs a cocycle; the {x.degree}-cochain is not closed")
        if x.degree < 2:
            return self.zero(x.degree + 2)
        return self.cup_i(x, x, x.degree - 2)

    def random_cochain(self, degree: int, rng: np.random.Generator) -> Mod2Cochain:
        return Mod2Cochain(degree, rng.integers(0, 2, self.size(degree), dtype=np.uint8))


def _ctx(K) -> CupIContext:
    return K if isinstance(K, CupIContext) else CupIContext(K)


def cup_i(K, u: Mod2Cochain, v: Mod2Cochain, i: int) -> Mod2Cochain:
    return _ctx(K).cup_i(u, v, i)


def cup(K, u: Mod2Cochain, v: Mod2Cochain) -> Mod2Cochain:
    return _ctx(K).cup(u, v)


def sq2(K, x: Mod2Cochain) -> Mod2Cochain:
    return _ctx(K).sq2(x)


def sq2_matrix(K, q: int) -> tuple[list[list[int]], int, int]:
    """Matrix of ``Sq^2 : H^q(;Z2) -> H^{q+2}(;Z2)`` in the standard bases.

    Row ``r`` holds the coordinates of ``Sq^2`` of the ``r``-th basis class.
    Returns ``(rows, dim H^q, dim H^{q+2})``.
    """
    ctx = _ctx(K)
    C = ctx.complex
    if not 0 <= q <= C.top_dim:
        raise DegreeOutOfRange(f"degree {q} outside 0..{C.top_dim}")
    src = cohomology_basis_mod2(C, q)
    if q + 2 > C.top_dim:
        return [[] for _ in src], len(src), 0
    dst = cohomology_basis_mod2(C, q + 2)
    rows = [list(dst.express(ctx.sq2(x))) for x in src]
    return rows, len(src), len(dst)


def pullback(f: dict[int, int], source: SimplicialComplex, target: SimplicialComplex, z: Mod2Cochain) -> Mod2Cochain:
    """Pull a mod-2 cochain on ``target`` back along the vertex map ``f``.

    ``f`` must be simplicial and weakly order preserving; degenerate images
    contribute zero.
    """
    q = z.degree
    if len(z) != len(target.faces(q)):
        raise ComplexMismatch("cochain does not live on the target complex")
    index = target.index(q)
    vals = np.zeros(len(source.faces(q)), dtype=np.uint8)
    for k, s in enumerate(source.faces(q)):
        img = tuple(f[v] for v in s)
        if any(a >= b for a, b in zip(img, img[1:])):
            if any(a > b for a, b in zip(img, img[1:])):
                raise ValueError("vertex map does not preserve the vertex order")
            continue
        vals[k] = z.values[index[img]]
    return Mod2Cochain(q, vals)


def _h4_integral(C: ChainComplex, q: int) -> FGAbelianGroup:
    if q > C.top_dim:
        return FGAbelianGroup()
    return homology_group(C.boundary(q + 1).transpose(), C.boundary(q).transpose())


def _is_power_of_two(d: int) -> bool:
    return d > 0 and d & (d - 1) == 0


def sq2_rho2_injective(K, degree: int = 4) -> bool:
    """Whether ``Sq^2 o rho_2 : H^4(X;Z) -> H^6(X;Z2)`` has trivial kernel.

    ``degree`` is exposed for testing the same test one step lower on small
    complexes; the dimension bound applies to the default degree 4 only.
    """
    if isinstance(K, CupIContext):
        C = K.complex
    else:
        C = K.chain_complex() if isinstance(K, SimplicialComplex) else K
    if degree == 4 and C.top_dim > 7:
        raise DimensionTooLarge(f"dimension {C.top_dim} > 7")
    H = _h4_integral(C, degree)
    if H.is_trivial:
        return True
    # infinite or odd order elements die in the 2-torsion target
    if H.rank or not all(_is_power_of_two(d) for d in H.invariant_factors):
        return False
    if degree + 2 > C.top_dim:
        return False
    # twice an element of order 4 is a nonzero element of the kernel
    if any(d > 2 for d in H.invariant_factors):
        return False
    m = len(H.invariant_factors)
    ctx = _ctx(K)

    n = C.ranks[degree]
    lattice = integer_kernel(C.boundary(degree + 1).transpose())
    reduced = np.zeros((len(lattice), n), dtype=np.uint8)
    for r, vec in enumerate(lattice):
        for j, x in vec.items():
            reduced[r, j] = x & 1
    if degree > 0:
        R, piv = gf2.rref(C.boundary_mod2(degree))
        cob = R[: len(piv)]
    else:
        cob = np.zeros((0, n), dtype=np.uint8)
    cols = np.concatenate([cob, reduced], axis=0)
    _, pivots = gf2.rref(cols.T.copy())
    image = [cols[p] for p in pivots if p >= len(cob)]
    if len(image) != m:
        raise InvariantViolation(f"image of rho_2 has dimension {len(image)}, expected {m}")

    target = cohomology_basis_mod2(C, degree + 2)
    rows = [target.express(ctx.sq2(Mod2Cochain(degree, z))) for z in image]
    if not target.dim:
        return False
    return gf2.rank(np.array(rows, dtype=np.uint8)) == m
