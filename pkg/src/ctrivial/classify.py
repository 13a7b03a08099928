"""C-triviality decisions from integral homology and orientability.

A closed manifold is C-trivial when every complex vector bundle over it has
total Chern class 1.  In dimensions up to 7 the answer is (almost) determined
by the integral homology groups; above that only necessary conditions are
known and the verdict is ``Undetermined`` when they all pass.

Obstructions are reported in a fixed order (``ObstructionKind`` declaration
order) so identical inputs always give identical verdicts.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .algebra import FGAbelianGroup, ext_z2_dim
from .complexes import ChainComplex, HomologyProfile, SimplicialComplex, Z, homology, mod2_profile_from_z
from .errors import NotAClosedManifold, ProfileInconsistent
from .manifold import ManifoldCertificate, certify

__all__ = [
    "Outcome",
    "Basis",
    "ObstructionKind",
    "Obstruction",
    "Verdict",
    "BASIS_STATEMENTS",
    "classify",
    "classify_complex",
    "classify_many",
    "explain",
]


class Outcome(str, enum.Enum):
    C_TRIVIAL = "CTrivial"
    NOT_C_TRIVIAL = "NotCTrivial"
    UNDETERMINED = "Undetermined"

    def __str__(self):
        return self.value


class Basis(str, enum.Enum):
    """Closed set of results a verdict may rest on."""

    LOW_DIMENSION = "closed 1-manifolds"
    NONZERO_H2 = "vanishing second cohomology"
    BOTT = "Bott integrality"
    SURFACE = "surfaces"
    DIM4 = "4-manifolds"
    EVEN_FINITE = "finite even cohomology"
    ODD_RANK = "odd-dimensional rank constraints"
    TABLE_3_ORIENTABLE = "orientable 3-manifold table"
    TABLE_3_NONORIENTABLE = "non-orientable 3-manifold table"
    TABLE_5_ORIENTABLE = "orientable 5-manifold table"
    TABLE_5_NONORIENTABLE = "non-orientable 5-manifold table"
    TABLE_6_NONORIENTABLE = "non-orientable 6-manifold table"
    TABLE_7_ORIENTABLE = "orientable 7-manifold table"
    TABLE_7_NONORIENTABLE = "non-orientable 7-manifold table"
    OPEN_7_NONORIENTABLE = "non-orientable 7-manifold open case"
    DUALITY = "mod-2 Poincare duality"
    HIGH_DIMENSION = "dimension above 7"

    def __str__(self):
        return self.value


BASIS_STATEMENTS: dict[Basis, str] = {
    Basis.LOW_DIMENSION: "every closed 0- or 1-manifold is C-trivial, since all cohomology above degree 1 vanishes",
    Basis.NONZERO_H2: "c_1 detects all of H^2, so if X is C-trivial then H^2(X;Z) = 0",
    Basis.BOTT: "a degree-one map to S^n pulls back bundles whose top Chern class is divisible by (n/2-1)!, "
    "so no closed orientable even-dimensional manifold is C-trivial",
    Basis.SURFACE: "a closed surface has H^2(X;Z) nonzero or 2-torsion in H_1, so it is never C-trivial",
    Basis.DIM4: "no closed 4-manifold is C-trivial",
    Basis.EVEN_FINITE: "a C-trivial n-manifold has finite H^{2i}(X;Z) for 2 <= 2i < n",
    Basis.ODD_RANK: "a C-trivial odd-dimensional manifold has finite H^i(X;Z) for 0 < i < n when orientable, "
    "and H^1(X;Z) = Z with H^i finite for i >= 2 otherwise",
    Basis.TABLE_3_ORIENTABLE: "an orientable 3-manifold is C-trivial exactly when it is an integral homology 3-sphere",
    Basis.TABLE_3_NONORIENTABLE: "a non-orientable 3-manifold is C-trivial exactly when H_* = (Z, Z, Z_2, 0)",
    Basis.TABLE_5_ORIENTABLE: "an orientable 5-manifold is C-trivial exactly when H_* = (Z, 0, F, 0, 0, Z) with F finite",
    Basis.TABLE_5_NONORIENTABLE: "a non-orientable 5-manifold is C-trivial exactly when H_* = (Z, Z, F, 0, Z_2, 0) "
    "with F finite",
    Basis.TABLE_6_NONORIENTABLE: "a non-orientable 6-manifold is C-trivial exactly when "
    "H_* = (Z, Z^a, F, Z^b, F', Z^c + Z_2, 0) with a >= 1, F and F' finite and Ext(F,Z_2) = Ext(F',Z_2)",
    Basis.TABLE_7_ORIENTABLE: "an orientable 7-manifold is C-trivial exactly when H_* = (Z, 0, F, 0, F, 0, 0, Z) "
    "with F finite",
    Basis.TABLE_7_NONORIENTABLE: "a C-trivial non-orientable 7-manifold has H_* = (Z, Z, F, Z_2^r, F', 0, Z_2, 0) "
    "with r in {0, 1}, F and F' finite and Ext(F,Z_2) = Ext(F',Z_2); when r = 0 the profile is sufficient",
    Basis.OPEN_7_NONORIENTABLE: "the profile meets every known necessary condition with r = 1; "
    "whether such a manifold is C-trivial is an open case, so no verdict is given",
    Basis.DUALITY: "mod-2 Betti numbers of a closed manifold satisfy b_k = b_{n-k}; this profile violates that, "
    "so it is not the homology of a closed manifold",
    Basis.HIGH_DIMENSION: "only necessary conditions are known above dimension 7 and all of them pass",
}


class ObstructionKind(str, enum.Enum):
    # declaration order is the reporting order
    NONZERO_H2 = "NonzeroH2"
    BOTT_EVEN_ORIENTABLE = "BottEvenOrientable"
    SURFACE_DIM2 = "SurfaceDim2"
    DIM4 = "Dim4"
    EVEN_COHOMOLOGY_INFINITE = "EvenCohomologyInfinite"
    ODD_DIM_RANK = "OddDimRank"
    TABLE_MISMATCH = "TableMismatch"
    DUALITY_INCONSISTENT = "DualityInconsistent"

    def __str__(self):
        return self.value


_KIND_BASIS = {
    ObstructionKind.NONZERO_H2: Basis.NONZERO_H2,
    ObstructionKind.BOTT_EVEN_ORIENTABLE: Basis.BOTT,
    ObstructionKind.SURFACE_DIM2: Basis.SURFACE,
    ObstructionKind.DIM4: Basis.DIM4,
    ObstructionKind.EVEN_COHOMOLOGY_INFINITE: Basis.EVEN_FINITE,
    ObstructionKind.ODD_DIM_RANK: Basis.ODD_RANK,
    ObstructionKind.DUALITY_INCONSISTENT: Basis.DUALITY,
}


@dataclass(frozen=True)
class Obstruction:
    kind: ObstructionKind
    dim: int | None = None
    degree: int | None = None  # first offending degree, when there is one
    basis: Basis | None = None

    def __post_init__(self):
        if self.basis is None:
            object.__setattr__(self, "basis", _KIND_BASIS.get(self.kind))
        if self.basis is None:
            raise ValueError(f"{self.kind} needs an explicit basis")

    def __str__(self):
        if self.kind is ObstructionKind.TABLE_MISMATCH:
            return f"TableMismatch(dim={self.dim}, degree={self.degree})"
        if self.degree is not None:
            return f"{self.kind}(degree={self.degree})"
        return str(self.kind)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "dim": self.dim, "degree": self.degree, "basis": self.basis.value}


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    basis: tuple[Basis, ...]
    obstructions: tuple[Obstruction, ...] = ()
    reasons: tuple[str, ...] = ()
    dim: int = 0
    orientable: bool = True
    profile: HomologyProfile | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.outcome is Outcome.NOT_C_TRIVIAL and not self.obstructions:
            raise ValueError("NotCTrivial needs at least one obstruction")
        if self.outcome is Outcome.UNDETERMINED and not self.reasons:
            raise ValueError("Undetermined needs at least one reason")
        if not self.basis:
            raise ValueError("a verdict needs a basis")

    @property
    def detail(self) -> tuple[str, ...]:
        return tuple(f"{b.value}: {BASIS_STATEMENTS[b]}" for b in self.basis)

    @property
    def kinds(self) -> tuple[ObstructionKind, ...]:
        return tuple(o.kind for o in self.obstructions)

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "basis": [b.value for b in self.basis],
            "obstructions": [o.to_dict() for o in self.obstructions],
            "reasons": list(self.reasons),
            "citations": list(self.detail),
            "input": {
                "dim": self.dim,
                "orientable": self.orientable,
                "profile": None if self.profile is None else str(self.profile),
            },
        }


# -- the tables ------------------------------------------------------------------

_ZG = FGAbelianGroup(1)
_ZERO = FGAbelianGroup()
_Z2G = FGAbelianGroup(0, (2,))


def _eq(g):
    return lambda h: h == g


def _finite(h):
    return h.is_finite


def _free(h):
    return not h.invariant_factors


# Each table: (basis, per-degree predicates, cross-degree checks).  A cross
# check is (degree to blame, predicate on the whole profile).
_Table = tuple[Basis, Sequence[Callable[[FGAbelianGroup], bool]], Sequence[tuple[int, Callable]]]

_TABLES: dict[tuple[int, bool], _Table] = {
    (3, True): (Basis.TABLE_3_ORIENTABLE, [_eq(_ZG), _eq(_ZERO), _eq(_ZERO), _eq(_ZG)], []),
    (3, False): (Basis.TABLE_3_NONORIENTABLE, [_eq(_ZG), _eq(_ZG), _eq(_Z2G), _eq(_ZERO)], []),
    (5, True): (Basis.TABLE_5_ORIENTABLE, [_eq(_ZG), _eq(_ZERO), _finite, _eq(_ZERO), _eq(_ZERO), _eq(_ZG)], []),
    (5, False): (Basis.TABLE_5_NONORIENTABLE, [_eq(_ZG), _eq(_ZG), _finite, _eq(_ZERO), _eq(_Z2G), _eq(_ZERO)], []),
    (6, False): (
        Basis.TABLE_6_NONORIENTABLE,
        [
            _eq(_ZG),
            lambda h: _free(h) and h.rank >= 1,
            _finite,
            _free,
            _finite,
            lambda h: h.invariant_factors == (2,),
            _eq(_ZERO),
        ],
        [(4, lambda p: ext_z2_dim(p[2]) == ext_z2_dim(p[4]))],
    ),
    (7, True): (
        Basis.TABLE_7_ORIENTABLE,
        [_eq(_ZG), _eq(_ZERO), _finite, _eq(_ZERO), _finite, _eq(_ZERO), _eq(_ZERO), _eq(_ZG)],
        [(4, lambda p: p[2] == p[4])],
    ),
    (7, False): (
        Basis.TABLE_7_NONORIENTABLE,
        [
            _eq(_ZG),
            _eq(_ZG),
            _finite,
            lambda h: h in (_ZERO, _Z2G),
            _finite,
            _eq(_ZERO),
            _eq(_Z2G),
            _eq(_ZERO),
        ],
        [(4, lambda p: ext_z2_dim(p[2]) == ext_z2_dim(p[4]))],
    ),
}


def _table_mismatch(profile: HomologyProfile, table: _Table) -> int | None:
    _, per_degree, cross = table
    for k, ok in enumerate(per_degree):
        if not ok(profile[k]):
            return k
    for k, ok in cross:
        if not ok(profile):
            return k
    return None


def _check_profile(profile: HomologyProfile, orientable: bool, dim: int) -> None:
    if profile.coefficients != Z:
        raise ProfileInconsistent("classification needs integral homology")
    if dim < 0:
        raise ProfileInconsistent(f"dimension {dim} is negative")
    if profile.dim != dim:
        raise ProfileInconsistent(f"profile has {len(profile)} groups, a {dim}-manifold needs {dim + 1}")
    if profile[0] != _ZG:
        raise ProfileInconsistent(f"H_0 = {profile[0]}, a connected space has H_0 = Z")
    if dim >= 1:
        top = profile[dim]
        if orientable and top != _ZG:
            raise ProfileInconsistent(f"orientable closed {dim}-manifold needs H_{dim} = Z, got {top}")
        if not orientable and not top.is_trivial:
            raise ProfileInconsistent(f"non-orientable closed {dim}-manifold needs H_{dim} = 0, got {top}")


def _general_obstructions(profile: HomologyProfile, orientable: bool, n: int) -> list[Obstruction]:
    out = []
    # H^2 = free(H_2) + torsion(H_1)
    if n >= 2 and (profile[2].rank > 0 or profile[1].invariant_factors):
        out.append(Obstruction(ObstructionKind.NONZERO_H2, n, 2))
    if n % 2 == 0 and n >= 2 and orientable:
        out.append(Obstruction(ObstructionKind.BOTT_EVEN_ORIENTABLE, n))
    if n == 2:
        out.append(Obstruction(ObstructionKind.SURFACE_DIM2, n))
    if n == 4:
        out.append(Obstruction(ObstructionKind.DIM4, n))
    if n >= 3:
        for k in range(2, n, 2):
            if profile[k].rank > 0:
                out.append(Obstruction(ObstructionKind.EVEN_COHOMOLOGY_INFINITE, n, k))
                break
    if n >= 3 and n % 2 == 1:
        # rank H^i = rank H_i
        want = [0] * (n + 1)
        want[0] = 1
        if orientable:
            want[n] = 1
        else:
            want[1] = 1
        bad = [k for k in range(1, n + 1) if profile[k].rank != want[k]]
        if bad:
            out.append(Obstruction(ObstructionKind.ODD_DIM_RANK, n, bad[0]))
    return out


def _duality_obstruction(profile: HomologyProfile, n: int) -> Obstruction | None:
    b = mod2_profile_from_z(profile).ranks
    for k in range(n + 1):
        if b[k] != b[n - k]:
            return Obstruction(ObstructionKind.DUALITY_INCONSISTENT, n, min(k, n - k))
    return None


def classify(profile: HomologyProfile, orientable: bool, dim: int | None = None) -> Verdict:
    """Decide C-triviality of a closed connected manifold from its integral homology.

    ``orientable`` is trusted as given.  Raises :class:`ProfileInconsistent`
    when the profile cannot belong to a closed connected manifold of that
    orientability (wrong length, ``H_0 != Z`` or a wrong top group).
    """
    n = profile.dim if dim is None else dim
    orientable = bool(orientable)
    _check_profile(profile, orientable, n)

    def verdict(outcome, basis, obstructions=(), reasons=()):
        return Verdict(outcome, tuple(basis), tuple(obstructions), tuple(reasons), n, orientable, profile)

    if n <= 1:
        return verdict(Outcome.C_TRIVIAL, [Basis.LOW_DIMENSION])

    obstructions = _general_obstructions(profile, orientable, n)
    table = _TABLES.get((n, orientable))
    if table is not None:
        k = _table_mismatch(profile, table)
        if k is not None:
            obstructions.append(Obstruction(ObstructionKind.TABLE_MISMATCH, n, k, table[0]))
    dual = _duality_obstruction(profile, n)
    if dual is not None:
        obstructions.append(dual)

    if obstructions:
        basis = list(dict.fromkeys(o.basis for o in obstructions))
        return verdict(Outcome.NOT_C_TRIVIAL, basis, obstructions)
    if n >= 8:
        return verdict(
            Outcome.UNDETERMINED,
            [Basis.HIGH_DIMENSION],
            reasons=[f"no classification is known in dimension {n}; all necessary conditions pass"],
        )
    if (n, orientable) == (7, False) and profile[3] == _Z2G:
        return verdict(
            Outcome.UNDETERMINED,
            [Basis.TABLE_7_NONORIENTABLE, Basis.OPEN_7_NONORIENTABLE],
            reasons=["r = 1: the profile is necessary but not known to be sufficient"],
        )
    # every (n, orientable) reaching here has a table: the rest are obstructed above
    return verdict(Outcome.C_TRIVIAL, [table[0]])


def classify_complex(
    K: SimplicialComplex | ChainComplex,
) -> tuple[ManifoldCertificate | None, HomologyProfile, Verdict]:
    """Certify ``K`` as a closed connected pseudomanifold, then classify it.

    Chain complexes carry no facet structure, so they get no certificate and
    their orientability is read off the top homology group.
    """
    if isinstance(K, ChainComplex):
        hz = homology(K, Z)
        n = hz.dim
        if hz[0] != _ZG:
            raise NotAClosedManifold("connected")
        orientable = n == 0 or hz[n] == _ZG
        return None, hz, classify(hz, orientable, n)
    cert, hz, _ = certify(K)
    failed = cert.failed_check
    if failed is not None:
        raise NotAClosedManifold(failed)
    return cert, hz, classify(hz, cert.orientable, cert.dim)


def classify_many(complexes: Iterable, jobs: int = 1) -> list:
    """``classify_complex`` over many inputs; results keep the input order."""
    items = list(complexes)
    if jobs <= 1:
        return [classify_complex(K) for K in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(classify_complex, items))


def explain(v: Verdict) -> str:
    """Plain-text rendering of a verdict with one citation line per basis."""
    head = str(v.outcome)
    if v.obstructions:
        head += " [" + ", ".join(str(o) for o in v.obstructions) + "]"
    lines = [head]
    lines += [f"  {b.value}: {BASIS_STATEMENTS[b]}" for b in v.basis]
    lines += [f"  reason: {r}" for r in v.reasons]
    return "\n".join(lines)
