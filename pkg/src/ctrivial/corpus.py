"""Built-in corpus of complexes and homology-profile fixtures.

Every entry records the homology and verdict the pipeline is expected to
produce, so the corpus doubles as a regression suite.  Profile fixtures stand
in for manifolds whose homology is known but whose triangulations are not
built here (census 3-manifolds, Ruberman's 5- and 7-manifolds).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import constructions as cons
from .algebra import FGAbelianGroup
from .complexes import ChainComplex, HomologyProfile, SimplicialComplex
from .errors import UnknownEntry
from .io import chain_complex_to_doc, dump_scx, dumps, loads, profile_to_doc

__all__ = [
    "CorpusEntry",
    "corpus_list",
    "corpus_entry",
    "corpus_emit",
    "corpus_load",
    "same_payload",
    "file_suffix",
    "ruberman5",
    "ruberman7",
]

COMPLEX = "complex"
CHAIN = "chain-complex"
PROFILE = "profile"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str
    build: Callable[[], object]
    expected_profile: str  # str() of the integral homology profile
    expected_outcome: str | None  # None: a verdict must be refused
    note: str
    orientable: bool | None = None
    refused_check: str | None = None
    manifold: bool = True  # False for the deliberately broken fixtures

    @property
    def payload(self):
        return _built(self.name)

    def as_loaded(self):
        """The payload in the shape :func:`corpus_load` returns it."""
        return (self.payload, self.orientable) if self.kind == PROFILE else self.payload

    @property
    def is_manifold(self) -> bool:
        """A complex (not a profile) expected to pass every certificate check."""
        return self.kind != PROFILE and self.manifold


def _G(rank=0, *torsion):
    return FGAbelianGroup.from_orders(torsion, rank)


def _profile(*groups) -> HomologyProfile:
    return HomologyProfile.from_groups(groups)


def ruberman5(k: int = 3) -> HomologyProfile:
    """Homology of Ruberman's orientable 5-manifold: ``Z_k + Z_k`` in degree 2."""
    return _profile(_G(1), _G(), _G(0, k, k), _G(), _G(), _G(1))


def ruberman7(k: int = 3) -> HomologyProfile:
    """Orientable 7-manifold with ``Z_k`` in degrees 2 and 4."""
    return _profile(_G(1), _G(), _G(0, k), _G(), _G(0, k), _G(), _G(), _G(1))


def _broken_fin() -> SimplicialComplex:
    # tetrahedron boundary with an extra triangle hanging off edge (0, 1)
    return SimplicialComplex(list(cons.sphere(2).facets) + [(0, 1, 4)])


def _sphere_entry(n: int) -> CorpusEntry:
    prof = "(" + ", ".join(["Z"] + ["0"] * (n - 1) + ["Z"]) + ")"
    return CorpusEntry(
        f"sphere{n}",
        COMPLEX,
        lambda: cons.sphere(n),
        prof,
        "CTrivial" if n % 2 else "NotCTrivial",
        f"boundary of the {n + 1}-simplex",
    )


_ENTRIES: list[CorpusEntry] = [_sphere_entry(n) for n in range(1, 8)] + [
    CorpusEntry("circle5", COMPLEX, lambda: cons.circle(5), "(Z, Z)", "CTrivial", "five-vertex circle"),
    CorpusEntry(
        "torus",
        COMPLEX,
        lambda: cons.product(cons.circle(3), cons.circle(3)),
        "(Z, Z^2, Z)",
        "NotCTrivial",
        "staircase product of two 3-vertex circles",
    ),
    CorpusEntry(
        "torus3",
        COMPLEX,
        lambda: cons.product(cons.product(cons.circle(3), cons.circle(3)), cons.circle(3)),
        "(Z, Z^3, Z^3, Z)",
        "NotCTrivial",
        "3-torus as an iterated staircase product",
    ),
    CorpusEntry("rp2", COMPLEX, cons.projective_plane, "(Z, Z_2, 0)", "NotCTrivial", "6-vertex projective plane"),
    CorpusEntry(
        "rp2_x_circle",
        COMPLEX,
        lambda: cons.product(cons.projective_plane(), cons.circle(3)),
        "(Z, Z + Z_2, Z_2, 0)",
        "NotCTrivial",
        "projective plane times a circle",
    ),
    CorpusEntry(
        "rp2_x_rp2",
        COMPLEX,
        lambda: cons.product(cons.projective_plane(), cons.projective_plane()),
        "(Z, Z_2 + Z_2, Z_2, Z_2, 0)",
        "NotCTrivial",
        "product of two projective planes",
    ),
    CorpusEntry(
        "rp3",
        COMPLEX,
        lambda: cons.projective_space(3),
        "(Z, Z_2, 0, Z)",
        "NotCTrivial",
        "antipodal quotient of the subdivided octahedral 3-sphere; a triangulated L(2,1)",
    ),
    CorpusEntry(
        "lens_2_1", CHAIN, lambda: cons.lens_chain_complex(2), "(Z, Z_2, 0, Z)", "NotCTrivial", "cellular L(2,1)"
    ),
    CorpusEntry(
        "lens_3_1", CHAIN, lambda: cons.lens_chain_complex(3), "(Z, Z_3, 0, Z)", "NotCTrivial", "cellular L(3,1)"
    ),
    CorpusEntry(
        "lens_5_1", CHAIN, lambda: cons.lens_chain_complex(5), "(Z, Z_5, 0, Z)", "NotCTrivial", "cellular L(5,1)"
    ),
    CorpusEntry(
        "census_nonorientable3",
        PROFILE,
        lambda: _profile(_G(1), _G(1), _G(0, 2), _G()),
        "(Z, Z, Z_2, 0)",
        "CTrivial",
        "non-orientable 3-manifold homology realized in the closed census",
        orientable=False,
    ),
    CorpusEntry(
        "ruberman5_k3",
        PROFILE,
        lambda: ruberman5(3),
        "(Z, 0, Z_3 + Z_3, 0, 0, Z)",
        "CTrivial",
        "Ruberman 5-manifold, k = 3",
        orientable=True,
    ),
    CorpusEntry(
        "ruberman7_k3",
        PROFILE,
        lambda: ruberman7(3),
        "(Z, 0, Z_3, 0, Z_3, 0, 0, Z)",
        "CTrivial",
        "Ruberman 7-manifold, k = 3",
        orientable=True,
    ),
    CorpusEntry(
        "nonorientable7_r0",
        PROFILE,
        lambda: _profile(_G(1), _G(1), _G(), _G(), _G(), _G(), _G(0, 2), _G()),
        "(Z, Z, 0, 0, 0, 0, Z_2, 0)",
        "CTrivial",
        "non-orientable 7-manifold profile with r = 0",
        orientable=False,
    ),
    CorpusEntry(
        "nonorientable7_r1",
        PROFILE,
        lambda: _profile(_G(1), _G(1), _G(), _G(0, 2), _G(), _G(), _G(0, 2), _G()),
        "(Z, Z, 0, Z_2, 0, 0, Z_2, 0)",
        "Undetermined",
        "non-orientable 7-manifold profile with r = 1 (open case)",
        orientable=False,
    ),
    CorpusEntry(
        "broken_fin",
        COMPLEX,
        _broken_fin,
        "(Z, 0, Z)",
        None,
        "tetrahedron boundary with a fin; not closed",
        refused_check="closed",
        manifold=False,
    ),
    CorpusEntry(
        "suspension_torus",
        COMPLEX,
        lambda: cons.suspension(cons.product(cons.circle(3), cons.circle(3))),
        "(Z, 0, Z^2, Z)",
        "NotCTrivial",
        "closed pseudomanifold that is not a manifold; mod-2 duality fails",
        manifold=False,
    ),
]

_BY_NAME = {e.name: e for e in _ENTRIES}


def corpus_list() -> list[CorpusEntry]:
    return list(_ENTRIES)


def corpus_entry(name: str) -> CorpusEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownEntry(f"no corpus entry named {name!r}") from None


@lru_cache(maxsize=None)
def _built(name: str):
    return corpus_entry(name).build()


def corpus_emit(name: str) -> str:
    """File contents for an entry: ``.scx`` text or a JSON document."""
    e = corpus_entry(name)
    obj = e.payload
    if e.kind == COMPLEX:
        return dump_scx(obj)
    if e.kind == CHAIN:
        return dumps(chain_complex_to_doc(obj))
    return dumps(profile_to_doc(obj, e.orientable))


def corpus_load(text: str):
    """Inverse of :func:`corpus_emit`."""
    return loads(text)


def file_suffix(kind: str) -> str:
    return ".scx" if kind == COMPLEX else ".json"


def same_payload(a, b) -> bool:
    """Structural equality for anything :func:`corpus_load` returns."""
    if isinstance(a, ChainComplex) and isinstance(b, ChainComplex):
        return chain_complex_to_doc(a) == chain_complex_to_doc(b)
    return a == b
