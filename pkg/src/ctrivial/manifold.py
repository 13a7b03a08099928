"""Closed-pseudomanifold certification, orientability and duality checks.

Certification stops at "closed connected pseudomanifold whose mod-2 Betti
numbers are Poincare symmetric"; links of vertices are not checked, so a
passing certificate is evidence, not proof, of a manifold.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass

from .complexes import HomologyProfile, SimplicialComplex, Z, Z2, homology
from .errors import DimensionMismatch, InvariantViolation, NotClosed, NotPure

__all__ = [
    "ManifoldCertificate",
    "verify_closed",
    "orientation",
    "duality_euler_checks",
    "certify",
]


@dataclass(frozen=True)
class ManifoldCertificate:
    dim: int
    closed: bool
    connected: bool
    orientable: bool
    duality_ok: bool
    euler_ok: bool
    euler_characteristic: int

    @property
    def failed_check(self) -> str | None:
        if not self.closed:
            return "closed"
        if not self.connected:
            return "connected"
        return None

    def to_dict(self) -> dict:
        return asdict(self)


def _ridges(K: SimplicialComplex) -> dict[tuple[int, ...], list[tuple[int, int]]]:
    """Map each codimension-one face to ``(facet index, omitted position)`` pairs."""
    out: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for fi, f in enumerate(K.facets):
        for i in range(len(f)):
            out.setdefault(f[:i] + f[i + 1:], []).append((fi, i))
    return out


def verify_closed(K: SimplicialComplex) -> tuple[bool, bool]:
    """``(closed, connected)`` for a pure complex.

    Closed: every ridge lies in exactly two facets.  Connected: the
    facet-ridge adjacency graph is connected.
    """
    if not K.is_pure:
        raise NotPure("facets of different dimensions")
    if K.dim == 0:
        return True, len(K.facets) == 1
    ridges = _ridges(K)
    closed = all(len(v) == 2 for v in ridges.values())

    parent = list(range(len(K.facets)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for users in ridges.values():
        r0 = find(users[0][0])
        for fi, _ in users[1:]:
            r = find(fi)
            if r != r0:
                parent[r] = r0
    connected = len({find(i) for i in range(len(K.facets))}) == 1
    return closed, connected


def orientation(K: SimplicialComplex) -> bool:
    """Try to orient all facets coherently by propagation across ridges."""
    closed, _ = verify_closed(K)
    if not closed:
        raise NotClosed("orientation needs every ridge to lie in exactly two facets")
    if K.dim == 0:
        return True
    ridges = _ridges(K)
    incident: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in K.facets]
    for r, users in ridges.items():
        for fi, pos in users:
            incident[fi].append((r, pos))
    sign = [0] * len(K.facets)
    for start in range(len(K.facets)):
        if sign[start]:
            continue
        sign[start] = 1
        todo = deque([start])
        while todo:
            f = todo.popleft()
            for r, pos in incident[f]:
                induced = sign[f] * (-1) ** pos
                for g, gpos in ridges[r]:
                    if g == f:
                        continue
                    # the neighbour must induce the opposite orientation on r
                    want = -induced * (-1) ** gpos
                    if sign[g] == 0:
                        sign[g] = want
                        todo.append(g)
                    elif sign[g] != want:
                        return False
    return True


def duality_euler_checks(
    profile_z: HomologyProfile,
    profile_z2: HomologyProfile,
    dim: int,
    orientable: bool,
    face_euler: int | None = None,
) -> tuple[bool, bool]:
    """Mod-2 Poincare symmetry and Euler characteristic consistency.

    ``euler_ok`` requires the integral and mod-2 Euler characteristics to agree
    with each other (and with ``face_euler`` when given) and to vanish in odd
    dimensions.  ``orientable`` is accepted for symmetry with the certificate;
    neither check depends on it.
    """
    if profile_z.coefficients != Z or profile_z2.coefficients != Z2:
        raise DimensionMismatch("expected an integral and a mod-2 profile")
    if profile_z.dim != dim or profile_z2.dim != dim:
        raise DimensionMismatch(f"profiles of dimension {profile_z.dim}/{profile_z2.dim} for a {dim}-complex")
    b = profile_z2.ranks
    duality_ok = all(b[k] == b[dim - k] for k in range(dim + 1))
    chi = profile_z.euler_characteristic()
    euler_ok = chi == profile_z2.euler_characteristic()
    if face_euler is not None:
        euler_ok = euler_ok and chi == face_euler
    if dim % 2 == 1:
        euler_ok = euler_ok and chi == 0
    return duality_ok, euler_ok


def certify(K: SimplicialComplex) -> tuple[ManifoldCertificate, HomologyProfile, HomologyProfile]:
    """Run every check; returns the certificate with the Z and Z2 homology.

    Orientability is decided by propagation and must agree with the top
    homology groups; disagreement is an internal error.
    """
    closed, connected = verify_closed(K)
    n = K.dim
    hz = homology(K, Z)
    hz2 = homology(K, Z2)
    chi = K.euler_characteristic()
    if not closed:
        return ManifoldCertificate(n, False, connected, False, False, False, chi), hz, hz2
    orientable = orientation(K)
    if connected and n >= 1:
        top_z = hz[n].rank == 1 and not hz[n].invariant_factors
        if orientable != top_z:
            raise InvariantViolation(f"orientation propagation says {orientable}, top homology is {hz[n]}")
        if hz2[n].rank != 1:
            raise InvariantViolation(f"top mod-2 homology of a connected closed pseudomanifold is {hz2[n]}")
        if not orientable and not hz[n].is_trivial:
            raise InvariantViolation("non-orientable complex with nonzero top integral homology")
    duality_ok, euler_ok = duality_euler_checks(hz, hz2, n, orientable, chi)
    return ManifoldCertificate(n, closed, connected, orientable, duality_ok, euler_ok, chi), hz, hz2
