"""File formats and JSON documents.

``.scx`` facet files: UTF-8 text, ``#`` starts a comment, every other
non-blank line is one facet given as whitespace-separated nonnegative vertex
labels.

Chain-complex and profile documents are JSON objects tagged with ``format``
and ``version``::

    {"format": "ctrivial/chain-complex", "version": 1,
     "dims": [1, 1, 1, 1],
     "boundaries": [[[0]], [[2]], [[0]]]}

    {"format": "ctrivial/profile", "version": 1, "dim": 5, "coefficients": "Z",
     "orientable": true,
     "groups": [{"rank": 1, "torsion": []}, ...]}

``boundaries[k-1]`` is the row-major matrix of the k-th boundary map, of
shape ``dims[k-1] x dims[k]``.  Every document written here is serialized
with sorted keys and a fixed indent, so output is byte-for-byte stable.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import FGAbelianGroup, IntMatrix
from .complexes import Z, ChainComplex, HomologyProfile, SimplicialComplex
from .errors import InputError, ParseError

__all__ = [
    "CHAIN_FORMAT",
    "PROFILE_FORMAT",
    "parse_scx",
    "dump_scx",
    "chain_complex_to_doc",
    "chain_complex_from_doc",
    "profile_to_doc",
    "profile_from_doc",
    "homology_doc",
    "certificate_doc",
    "verdict_doc",
    "dumps",
    "load",
    "loads",
]

CHAIN_FORMAT = "ctrivial/chain-complex"
PROFILE_FORMAT = "ctrivial/profile"
VERSION = 1


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- facet files -----------------------------------------------------------------


def parse_scx(text: str, source: str | None = None) -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"expected integer vertex labels, got {line!r}", lineno, source) from None
        if any(v < 0 for v in verts):
            raise ParseError("vertex labels must be nonnegative", lineno, source)
        if len(set(verts)) != len(verts):
            raise ParseError("repeated vertex in facet", lineno, source)
        facets.append(verts)
    if not facets:
        raise ParseError("no facets", None, source)
    return SimplicialComplex(facets)


def dump_scx(K: SimplicialComplex) -> str:
    return "".join(" ".join(map(str, f)) + "\n" for f in K.facets)


# -- JSON documents --------------------------------------------------------------


def _expect(doc, fmt: str, source):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", None, source)
    if doc.get("format") != fmt:
        raise ParseError(f"expected format {fmt!r}, got {doc.get('format')!r}", None, source)
    if doc.get("version") != VERSION:
        raise ParseError(f"unsupported version {doc.get('version')!r}", None, source)


def _int_list(x, what, source) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise ParseError(f"{what} must be a list of integers", None, source)
    return x


def chain_complex_to_doc(C: ChainComplex) -> dict:
    return {
        "format": CHAIN_FORMAT,
        "version": VERSION,
        "dims": list(C.ranks),
        "boundaries": [C.boundary(k).to_rows() for k in range(1, C.top_dim + 1)],
    }


def chain_complex_from_doc(doc, source=None) -> ChainComplex:
    _expect(doc, CHAIN_FORMAT, source)
    dims = _int_list(doc.get("dims"), "dims", source)
    mats = doc.get("boundaries")
    if not dims:
        raise ParseError("dims must be nonempty", None, source)
    if not isinstance(mats, list) or len(mats) != len(dims) - 1:
        raise ParseError(f"need {len(dims) - 1} boundary matrices", None, source)
    out = []
    for k, rows in enumerate(mats, 1):
        if not isinstance(rows, list) or len(rows) != dims[k - 1]:
            raise ParseError(f"boundary {k} must have {dims[k - 1]} rows", None, source)
        for r in rows:
            if len(_int_list(r, f"boundary {k} rows", source)) != dims[k]:
                raise ParseError(f"boundary {k} rows must have {dims[k]} entries", None, source)
        out.append(IntMatrix.from_rows(rows, cols=dims[k]))
    try:
        return ChainComplex(tuple(dims), tuple(out))
    except InputError as e:
        raise ParseError(str(e), None, source) from None


def _group_doc(g: FGAbelianGroup) -> dict:
    return {"rank": g.rank, "torsion": list(g.invariant_factors)}


def profile_to_doc(P: HomologyProfile, orientable: bool | None = None) -> dict:
    doc = {
        "format": PROFILE_FORMAT,
        "version": VERSION,
        "dim": P.dim,
        "coefficients": P.coefficients,
        "groups": [_group_doc(g) for g in P],
    }
    if orientable is not None:
        doc["orientable"] = orientable
    return doc


def profile_from_doc(doc, source=None) -> tuple[HomologyProfile, bool | None]:
    """Profile plus its ``orientable`` flag (None when the document has none)."""
    _expect(doc, PROFILE_FORMAT, source)
    groups = doc.get("groups")
    if not isinstance(groups, list):
        raise ParseError("groups must be a list", None, source)
    gs = []
    for k, g in enumerate(groups):
        if not isinstance(g, dict):
            raise ParseError(f"group {k} must be an object", None, source)
        rank = g.get("rank", 0)
        if not isinstance(rank, int) or rank < 0:
            raise ParseError(f"group {k}: rank must be a nonnegative integer", None, source)
        torsion = _int_list(g.get("torsion", []), f"group {k} torsion", source)
        if any(d < 2 for d in torsion):
            raise ParseError(f"group {k}: torsion orders must be >= 2", None, source)
        gs.append(FGAbelianGroup.from_orders(torsion, rank))
    orientable = doc.get("orientable")
    if orientable is not None and not isinstance(orientable, bool):
        raise ParseError("orientable must be true or false", None, source)
    try:
        P = HomologyProfile(doc.get("dim", len(gs) - 1), doc.get("coefficients", Z), tuple(gs))
    except InputError as e:
        raise ParseError(str(e), None, source) from None
    return P, orientable


def homology_doc(P: HomologyProfile) -> dict:
    return {
        "coefficients": P.coefficients,
        "dim": P.dim,
        "groups": [_group_doc(g) for g in P],
        "text": [str(g) if P.coefficients == Z else str(g.rank) for g in P],
    }


def certificate_doc(cert) -> dict | None:
    return None if cert is None else cert.to_dict()


def verdict_doc(v) -> dict:
    return v.to_dict()


# -- loading by content ----------------------------------------------------------


def loads(text: str, source: str | None = None):
    """Parse a facet file or a JSON document.

    Returns a :class:`SimplicialComplex`, a :class:`ChainComplex` or a
    ``(HomologyProfile, orientable)`` pair.
    """
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, source) from None
        fmt = doc.get("format") if isinstance(doc, dict) else None
        if fmt == CHAIN_FORMAT:
            return chain_complex_from_doc(doc, source)
        if fmt == PROFILE_FORMAT:
            return profile_from_doc(doc, source)
        raise ParseError(f"unknown document format {fmt!r}", None, source)
    return parse_scx(text, source)


def load(path: str | Path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    except UnicodeDecodeError:
        raise ParseError("file is not UTF-8 text", None, str(path)) from None
    return loads(text, str(path))
