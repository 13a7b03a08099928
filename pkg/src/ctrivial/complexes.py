"""Simplicial and chain complexes and their (co)homology.

Simplices are sorted vertex tuples and every list of simplices is in
lexicographic order, so boundary matrices and cohomology bases are
reproducible run to run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .algebra import FGAbelianGroup, IntMatrix, ext_z2_dim, homology_group
from .errors import (
    CoefficientMismatch,
    CompositionNonzero,
    DegreeOutOfRange,
    NotACocycle,
    ShapeMismatch,
)

Z = "Z"
Z2 = "Z2"
COEFFICIENTS = (Z, Z2)

__all__ = [
    "Z",
    "Z2",
    "SimplicialComplex",
    "ChainComplex",
    "HomologyProfile",
    "Mod2Cochain",
    "Mod2CohomologyBasis",
    "faces",
    "boundary_matrix",
    "homology",
    "cohomology",
    "uct_check",
    "mod2_profile_from_z",
    "rho2",
    "cohomology_basis_mod2",
    "euler_characteristic",
]


def _coeff(tag: str) -> str:
    t = str(tag).upper().replace("_", "")
    if t not in COEFFICIENTS:
        raise CoefficientMismatch(f"unknown coefficient ring {tag!r} (expected Z or Z2)")
    return t


class SimplicialComplex:
    """A finite abstract simplicial complex given by its facets.

    Facets are normalized to sorted tuples; duplicates and faces contained in
    larger facets are dropped so the stored facet list is the set of maximal
    simplices.
    """

    def __init__(self, facets: Iterable[Iterable[int]]):
        fs = set()
        for f in facets:
            t = tuple(sorted(set(int(v) for v in f)))
            if not t:
                raise ValueError("empty facet")
            if t[0] < 0:
                raise ValueError(f"negative vertex label in facet {t}")
            fs.add(t)
        if len({len(f) for f in fs}) > 1:
            covered: set = set()
            kept = []
            for f in sorted(fs, key=len, reverse=True):
                if f in covered:
                    continue
                kept.append(f)
                for k in range(1, len(f)):
                    covered.update(itertools.combinations(f, k))
            fs = set(kept)
        self.facets: tuple[tuple[int, ...], ...] = tuple(sorted(fs))
        self.vertices: tuple[int, ...] = tuple(sorted({v for f in self.facets for v in f}))
        self.dim = max((len(f) for f in self.facets), default=0) - 1
        self._faces: dict[int, tuple] = {}
        self._index: dict[int, dict] = {}
        self._chain: ChainComplex | None = None

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def faces(self, k: int) -> tuple[tuple[int, ...], ...]:
        if not 0 <= k <= self.dim:
            raise DegreeOutOfRange(f"degree {k} outside 0..{self.dim}")
        out = self._faces.get(k)
        if out is None:
            s = set()
            for f in self.facets:
                if len(f) > k:
                    s.update(itertools.combinations(f, k + 1))
            out = tuple(sorted(s))
            self._faces[k] = out
        return out

    def index(self, k: int) -> dict[tuple[int, ...], int]:
        out = self._index.get(k)
        if out is None:
            out = {s: i for i, s in enumerate(self.faces(k))}
            self._index[k] = out
        return out

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def boundary_matrix(self, k: int) -> IntMatrix:
        if not 1 <= k <= self.dim:
            raise DegreeOutOfRange(f"boundary degree {k} outside 1..{self.dim}")
        lower = self.index(k - 1)
        cols = self.faces(k)
        data = [dict() for _ in range(len(lower))]
        for j, s in enumerate(cols):
            for i in range(len(s)):
                data[lower[s[:i] + s[i + 1:]]][j] = -1 if i % 2 else 1
        return IntMatrix._wrap(len(lower), len(cols), data)

    def chain_complex(self) -> "ChainComplex":
        if self._chain is None:
            ranks = self.f_vector()
            bds = tuple(self.boundary_matrix(k) for k in range(1, self.dim + 1))
            simplices = tuple(self.faces(k) for k in range(self.dim + 1))
            self._chain = ChainComplex(ranks, bds, simplices=simplices, check=False)
        return self._chain

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"


def faces(K: SimplicialComplex, k: int) -> tuple[tuple[int, ...], ...]:
    return K.faces(k)


def boundary_matrix(K: SimplicialComplex, k: int) -> IntMatrix:
    return K.boundary_matrix(k)


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Free chain complex ``C_n -> ... -> C_0``.

    ``boundaries[k - 1]`` is the matrix of the boundary out of degree ``k``,
    of shape ``ranks[k - 1] x ranks[k]``.  ``simplices`` is set when the
    complex comes from a simplicial complex and is what cup products use.
    """

    ranks: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]
    simplices: tuple | None = None
    check: bool = field(default=True, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if not self.ranks:
            raise ShapeMismatch("a chain complex needs at least one degree")
        if len(self.boundaries) != len(self.ranks) - 1:
            raise ShapeMismatch(f"{len(self.ranks)} degrees need {len(self.ranks) - 1} boundary maps")
        for k, d in enumerate(self.boundaries, start=1):
            if d.shape != (self.ranks[k - 1], self.ranks[k]):
                raise ShapeMismatch(
                    f"boundary {k} has shape {d.rows}x{d.cols}, expected {self.ranks[k - 1]}x{self.ranks[k]}"
                )
        if self.check:
            for k in range(1, len(self.boundaries)):
                if not (self.boundaries[k - 1] @ self.boundaries[k]).is_zero():
                    raise CompositionNonzero(f"boundary {k} composed with boundary {k + 1} is nonzero")

    @property
    def top_dim(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, k: int) -> IntMatrix:
        """The boundary out of degree ``k``; zero maps outside ``1..top_dim``."""
        n = self.top_dim
        if 1 <= k <= n:
            return self.boundaries[k - 1]
        if k == 0:
            return IntMatrix.zeros(0, self.ranks[0])
        if k == n + 1:
            return IntMatrix.zeros(self.ranks[n], 0)
        raise DegreeOutOfRange(f"boundary degree {k} outside 0..{n + 1}")

    def boundary_mod2(self, k: int) -> np.ndarray:
        key = ("mod2", k)
        out = self._cache.get(key)
        if out is None:
            d = self.boundary(k)
            out = np.zeros(d.shape, dtype=np.uint8)
            for i, j, x in d.nonzero():
                out[i, j] = x & 1
            self._cache[key] = out
        return out

    def rank_mod2(self, k: int) -> int:
        key = ("rank2", k)
        out = self._cache.get(key)
        if out is None:
            out = gf2.rank(self.boundary_mod2(k))
            self._cache[key] = out
        return out

    def _odd_support(self, k: int) -> np.ndarray | None:
        """Row indices of the odd entries of each column of boundary ``k``,
        as a rectangular array when every column has the same count."""
        key = ("support", k)
        if key not in self._cache:
            d = self.boundary(k)
            cols: list[list[int]] = [[] for _ in range(d.cols)]
            for i, j, x in d.nonzero():
                if x & 1:
                    cols[j].append(i)
            widths = {len(c) for c in cols}
            out = None
            if len(widths) == 1:
                out = np.array(cols, dtype=np.int64).reshape(d.cols, widths.pop())
            self._cache[key] = out
        return self._cache[key]

    def coboundary_mod2(self, q: int, z: np.ndarray) -> np.ndarray:
        """``delta z`` for a mod-2 ``q``-cochain given as a 0/1 vector."""
        z = np.asarray(z, dtype=np.uint8)
        idx = self._odd_support(q + 1)
        if idx is not None:
            if idx.shape[1] == 0:
                return np.zeros(idx.shape[0], dtype=np.uint8)
            return np.bitwise_xor.reduce(z[idx], axis=1).astype(np.uint8)
        d = self.boundary_mod2(q + 1)
        return (z.astype(np.int32) @ d.astype(np.int32)).astype(np.uint8) & 1

    def coboundary(self, q: int, x: Sequence[int]) -> list[int]:
        """Integral coboundary of an integral ``q``-cochain."""
        return self.boundary(q + 1).transpose().apply(list(x))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))


@dataclass(frozen=True)
class HomologyProfile:
    """Groups in degrees ``0..dim`` over ``Z`` or ``Z2``.

    Over ``Z2`` each group stores only its dimension in the ``rank`` field.
    """

    dim: int
    coefficients: str
    groups: tuple[FGAbelianGroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _coeff(self.coefficients))
        object.__setattr__(self, "groups", tuple(self.groups))
        if len(self.groups) != self.dim + 1:
            raise ShapeMismatch(f"profile of dimension {self.dim} needs {self.dim + 1} groups, got {len(self.groups)}")
        if self.coefficients == Z2 and any(g.invariant_factors for g in self.groups):
            raise CoefficientMismatch("Z2 profiles carry dimensions only")

    @classmethod
    def from_groups(cls, groups: Sequence[FGAbelianGroup], coefficients: str = Z) -> "HomologyProfile":
        return cls(len(groups) - 1, coefficients, tuple(groups))

    def __getitem__(self, k: int) -> FGAbelianGroup:
        if 0 <= k <= self.dim:
            return self.groups[k]
        return FGAbelianGroup()

    def __iter__(self):
        return iter(self.groups)

    def __len__(self):
        return len(self.groups)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(g.rank for g in self.groups)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * g.rank for k, g in enumerate(self.groups))

    def __str__(self):
        if self.coefficients == Z2:
            return "(" + ", ".join(f"Z_2^{g.rank}" if g.rank > 1 else ("Z_2" if g.rank else "0") for g in self) + ")"
        return "(" + ", ".join(str(g) for g in self) + ")"


def _as_chain(C) -> ChainComplex:
    return C.chain_complex() if isinstance(C, SimplicialComplex) else C


def homology(C: ChainComplex | SimplicialComplex, coefficients: str = Z) -> HomologyProfile:
    C = _as_chain(C)
    coefficients = _coeff(coefficients)
    n = C.top_dim
    groups = []
    for k in range(n + 1):
        if coefficients == Z:
            groups.append(homology_group(C.boundary(k), C.boundary(k + 1)))
        else:
            groups.append(FGAbelianGroup(C.ranks[k] - C.rank_mod2(k) - C.rank_mod2(k + 1)))
    return HomologyProfile(n, coefficients, tuple(groups))


def cohomology(C: ChainComplex | SimplicialComplex, coefficients: str = Z) -> HomologyProfile:
    C = _as_chain(C)
    coefficients = _coeff(coefficients)
    n = C.top_dim
    groups = []
    for k in range(n + 1):
        if coefficients == Z:
            groups.append(homology_group(C.boundary(k + 1).transpose(), C.boundary(k).transpose()))
        else:
            up = gf2.rank(C.boundary_mod2(k + 1).T)
            down = gf2.rank(C.boundary_mod2(k).T)
            groups.append(FGAbelianGroup(C.ranks[k] - up - down))
    return HomologyProfile(n, coefficients, tuple(groups))


def _require_z(*profiles: HomologyProfile) -> None:
    for p in profiles:
        if p.coefficients != Z:
            raise CoefficientMismatch("integral profile required")


def uct_prediction(hz: HomologyProfile) -> HomologyProfile:
    """Integral cohomology predicted from integral homology."""
    _require_z(hz)
    return HomologyProfile(
        hz.dim, Z, tuple(FGAbelianGroup(hz[k].rank) + hz[k - 1].torsion for k in range(hz.dim + 1))
    )


def uct_check(hz: HomologyProfile, chz: HomologyProfile) -> bool:
    _require_z(hz, chz)
    if hz.dim != chz.dim:
        return False
    return uct_prediction(hz) == chz


def mod2_profile_from_z(hz: HomologyProfile) -> HomologyProfile:
    """Mod-2 Betti numbers from integral homology."""
    _require_z(hz)
    return HomologyProfile(
        hz.dim,
        Z2,
        tuple(
            FGAbelianGroup(hz[k].rank + ext_z2_dim(hz[k]) + ext_z2_dim(hz[k - 1])) for k in range(hz.dim + 1)
        ),
    )


def euler_characteristic(C) -> int:
    return _as_chain(C).euler_characteristic()


class Mod2Cochain:
    """A ``degree``-cochain with values in the two-element field."""

    __slots__ = ("degree", "values")

    def __init__(self, degree: int, values):
        self.degree = int(degree)
        v = np.asarray(values, dtype=np.int64) & 1
        self.values = v.astype(np.uint8)
        self.values.setflags(write=False)

    @classmethod
    def from_support(cls, degree: int, support: Iterable[int], size: int) -> "Mod2Cochain":
        v = np.zeros(size, dtype=np.uint8)
        for i in support:
            if not 0 <= i < size:
                raise IndexError(f"support index {i} outside 0..{size - 1}")
            v[i] ^= 1
        return cls(degree, v)

    @classmethod
    def zero(cls, degree: int, size: int) -> "Mod2Cochain":
        return cls(degree, np.zeros(size, dtype=np.uint8))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.values))

    def __len__(self):
        return len(self.values)

    def is_zero(self) -> bool:
        return not self.values.any()

    def __add__(self, other: "Mod2Cochain") -> "Mod2Cochain":
        if self.degree != other.degree or len(self) != len(other):
            raise ShapeMismatch("adding cochains of different degree or size")
        return Mod2Cochain(self.degree, self.values ^ other.values)

    def __eq__(self, other):
        if not isinstance(other, Mod2Cochain):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.values, other.values)

    __hash__ = None

    def __repr__(self):
        return f"Mod2Cochain(degree={self.degree}, support={self.support})"


def coboundary_mod2(C, z: Mod2Cochain) -> Mod2Cochain:
    C = _as_chain(C)
    return Mod2Cochain(z.degree + 1, C.coboundary_mod2(z.degree, z.values)) if z.degree < C.top_dim else Mod2Cochain(
        z.degree + 1, np.zeros(0, dtype=np.uint8)
    )


def is_cocycle_mod2(C, z: Mod2Cochain) -> bool:
    C = _as_chain(C)
    if z.degree >= C.top_dim:
        return True
    return not C.coboundary_mod2(z.degree, z.values).any()


def rho2(C: ChainComplex | SimplicialComplex, x: Sequence[int], degree: int) -> Mod2Cochain:
    """Reduce an integral ``degree``-cocycle mod 2."""
    C = _as_chain(C)
    if not 0 <= degree <= C.top_dim:
        raise DegreeOutOfRange(f"degree {degree} outside 0..{C.top_dim}")
    x = [int(v) for v in x]
    if len(x) != C.ranks[degree]:
        raise ShapeMismatch(f"cochain has {len(x)} entries, degree {degree} has {C.ranks[degree]} cells")
    if any(C.coboundary(degree, x)):
        raise NotACocycle(f"integral {degree}-cochain is not a cocycle")
    return Mod2Cochain(degree, [v & 1 for v in x])


class Mod2CohomologyBasis(Sequence):
    """Cocycle representatives of a basis of ``H^q(C; Z2)``.

    Indexing yields the basis cochains; :meth:`express` writes any cocycle in
    that basis.
    """

    def __init__(self, C: ChainComplex, q: int):
        if not 0 <= q <= C.top_dim:
            raise DegreeOutOfRange(f"degree {q} outside 0..{C.top_dim}")
        self.complex = C
        self.degree = q
        n = C.ranks[q]
        # coboundaries span the row space of the boundary out of degree q
        if q > 0:
            R, piv = gf2.rref(C.boundary_mod2(q))
            cob = R[: len(piv)]
        else:
            cob = np.zeros((0, n), dtype=np.uint8)
        cocycles = gf2.nullspace(C.boundary_mod2(q + 1).T)
        cols = np.concatenate([cob, cocycles], axis=0)
        self._nb = cob.shape[0]
        self._solver = gf2.Solver(cols, n)
        chosen = [p for p in self._solver.independent if p >= self._nb]
        self._chosen = chosen
        self._basis = [Mod2Cochain(q, cols[p]) for p in chosen]

    def __getitem__(self, i):
        return self._basis[i]

    def __len__(self):
        return len(self._basis)

    @property
    def dim(self) -> int:
        return len(self._basis)

    def express(self, z: Mod2Cochain) -> tuple[int, ...]:
        """Coordinates of the class of cocycle ``z`` in this basis."""
        if z.degree != self.degree or len(z) != self.complex.ranks[self.degree]:
            raise ShapeMismatch("cochain does not live in this degree")
        if not is_cocycle_mod2(self.complex, z):
            raise NotACocycle(f"mod-2 {z.degree}-cochain is not a cocycle")
        x = self._solver.solve(z.values)
        if x is None:  # pragma: no cover - cocycles always lie in the span
            raise NotACocycle("cochain is not in the span of cocycles")
        return tuple(int(x[p]) for p in self._chosen)

    def is_coboundary(self, z: Mod2Cochain) -> bool:
        return not any(self.express(z))

    def cochain(self, coords: Sequence[int]) -> Mod2Cochain:
        """Representative cocycle for the given coordinates."""
        v = np.zeros(self.complex.ranks[self.degree], dtype=np.uint8)
        for c, b in zip(coords, self._basis):
            if c & 1:
                v ^= b.values
        return Mod2Cochain(self.degree, v)


def cohomology_basis_mod2(C: ChainComplex | SimplicialComplex, q: int) -> Mod2CohomologyBasis:
    return Mod2CohomologyBasis(_as_chain(C), q)
