"""Command-line front end.

Exit status: 0 on success, 1 on invalid input, 2 on an internal invariant
violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .classify import classify, classify_complex, classify_many, explain
from .complexes import Z, Z2, ChainComplex, HomologyProfile, SimplicialComplex, homology
from .corpus import CHAIN, COMPLEX, corpus_emit, corpus_list
from .errors import ComplexMismatch, DimensionTooLarge, InputError, InvariantViolation, ProfileInconsistent
from .io import certificate_doc, dumps, homology_doc, load
from .manifold import certify
from .steenrod import sq2_matrix, sq2_rho2_injective

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    # usage errors are invalid input, not internal failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _complex_arg(path: str, what: str):
    obj = load(path)
    if isinstance(obj, tuple):
        raise InputError(f"{path}: {what} needs a facet file or chain-complex document, not a profile")
    return obj


def _emit(args, doc, text: str) -> None:
    sys.stdout.write(dumps(doc) if args.json else text.rstrip("\n") + "\n")


def _homology_text(P: HomologyProfile) -> str:
    if P.coefficients == Z:
        return "\n".join(f"H_{k} = {g}" for k, g in enumerate(P))
    return "\n".join(f"H_{k}(;Z_2) = " + (f"Z_2^{g.rank}" if g.rank > 1 else "Z_2" if g.rank else "0") for k, g in enumerate(P))


def cmd_homology(args) -> int:
    K = _complex_arg(args.file, "homology")
    P = homology(K, Z if args.coeff == "z" else Z2)
    _emit(args, homology_doc(P), _homology_text(P))
    return 0


def cmd_verify(args) -> int:
    K = _complex_arg(args.file, "verify")
    if not isinstance(K, SimplicialComplex):
        raise InputError(f"{args.file}: verify needs a facet file")
    cert, hz, hz2 = certify(K)
    doc = {"certificate": certificate_doc(cert), "homology": homology_doc(hz), "homology_z2": homology_doc(hz2)}
    lines = [f"{k}: {v}" for k, v in cert.to_dict().items()]
    lines.append(f"homology: {hz}")
    _emit(args, doc, "\n".join(lines))
    return 0


def _yes_no(s: str | None) -> bool | None:
    return None if s is None else s == "yes"


def cmd_classify(args) -> int:
    cert = None
    if args.profile is not None or args.file is None:
        if args.profile is None or args.file is not None:
            raise InputError("give either a complex file or --profile")
        obj = load(args.profile)
        if not isinstance(obj, tuple):
            raise InputError(f"{args.profile}: not a profile document")
        P, orientable = obj
        if args.orientable is not None:
            orientable = _yes_no(args.orientable)
        if orientable is None:
            raise InputError("--orientable yes|no is required for profiles without an orientable field")
        if args.dim is not None and args.dim != P.dim:
            raise ProfileInconsistent(f"--dim {args.dim} but the profile has dimension {P.dim}")
        v = classify(P, orientable, P.dim)
    else:
        obj = load(args.file)
        if isinstance(obj, tuple):
            P, orientable = obj
            if args.orientable is not None:
                orientable = _yes_no(args.orientable)
            if orientable is None:
                raise InputError("--orientable yes|no is required for profiles without an orientable field")
            v = classify(P, orientable, args.dim if args.dim is not None else P.dim)
        else:
            cert, P, v = classify_complex(obj)
            if args.dim is not None and args.dim != P.dim:
                raise ProfileInconsistent(f"--dim {args.dim} but the complex has dimension {P.dim}")
    doc = {"certificate": certificate_doc(cert), "homology": homology_doc(P), "verdict": v.to_dict()}
    _emit(args, doc, explain(v))
    return 0


def cmd_sq2(args) -> int:
    K = _complex_arg(args.file, "sq2")
    if isinstance(K, ChainComplex):
        raise ComplexMismatch(f"{args.file}: Sq^2 needs a facet file")
    rows, src, dst = sq2_matrix(K, args.degree)
    try:
        injective = sq2_rho2_injective(K, args.degree)
    except DimensionTooLarge:
        injective = None
    doc = {
        "degree": args.degree,
        "source_dim": src,
        "target_dim": dst,
        "matrix": rows,
        "rho2_injective": injective,
    }
    lines = [f"Sq^2: H^{args.degree}(;Z_2) [dim {src}] -> H^{args.degree + 2}(;Z_2) [dim {dst}]"]
    lines += ["  " + " ".join(map(str, r)) for r in rows]
    lines.append(f"Sq^2 o rho_2 injective on H^{args.degree}(;Z): {injective}")
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_corpus_list(args) -> int:
    entries = corpus_list()
    if args.json:
        doc = [
            {"name": e.name, "kind": e.kind, "expected_homology": e.expected_profile,
             "expected_outcome": e.expected_outcome, "note": e.note}
            for e in entries
        ]
        sys.stdout.write(dumps(doc))
    else:
        for e in entries:
            sys.stdout.write(f"{e.name:<24}{e.kind:<15}{e.note}\n")
    return 0


def cmd_corpus_emit(args) -> int:
    text = corpus_emit(args.name)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return 0


def cmd_corpus_check(args) -> int:
    """Classify every corpus complex and compare with the recorded expectations."""
    entries = [e for e in corpus_list() if e.kind in (COMPLEX, CHAIN) and e.refused_check is None]
    results = classify_many([e.payload for e in entries], jobs=args.jobs)
    doc, lines, bad = [], [], 0
    for e, (cert, P, v) in zip(entries, results):
        ok = str(P) == e.expected_profile and v.outcome.value == e.expected_outcome
        bad += not ok
        doc.append({"name": e.name, "certificate": certificate_doc(cert), "homology": homology_doc(P),
                    "verdict": v.to_dict(), "matches_expected": ok})
        lines.append(f"{'ok  ' if ok else 'FAIL'} {e.name:<20} {P}  {v.outcome}")
    _emit(args, doc, "\n".join(lines))
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ctrivial", description="Homology, manifold checks and C-triviality verdicts.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("homology", help="integral or mod-2 homology")
    h.add_argument("file")
    h.add_argument("--coeff", choices=("z", "z2"), default="z")
    h.add_argument("--json", action="store_true")
    h.set_defaults(func=cmd_homology)

    v = sub.add_parser("verify", help="closed-pseudomanifold, orientation and duality checks")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="C-triviality verdict")
    c.add_argument("file", nargs="?")
    c.add_argument("--profile")
    c.add_argument("--dim", type=int)
    c.add_argument("--orientable", choices=("yes", "no"))
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("sq2", help="matrix of Sq^2 on mod-2 cohomology")
    s.add_argument("file")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sq2)

    cp = sub.add_parser("corpus", help="built-in corpus")
    csub = cp.add_subparsers(dest="corpus_command", required=True, parser_class=_Parser)
    cl = csub.add_parser("list")
    cl.add_argument("--json", action="store_true")
    cl.set_defaults(func=cmd_corpus_list)
    ce = csub.add_parser("emit")
    ce.add_argument("name")
    ce.add_argument("-o", "--output")
    ce.set_defaults(func=cmd_corpus_emit)
    cc = csub.add_parser("check")
    cc.add_argument("--jobs", type=int, default=1)
    cc.add_argument("--json", action="store_true")
    cc.set_defaults(func=cmd_corpus_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
