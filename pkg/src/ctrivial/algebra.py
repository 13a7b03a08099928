"""Exact integer linear algebra.

Smith normal form, determinantal divisors, finitely generated abelian groups
and the homology of a pair of composable integer matrices.  All arithmetic
uses Python integers, so intermediate coefficient growth never overflows.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import CompositionNonzero, ShapeMismatch

__all__ = [
    "IntMatrix",
    "SNFResult",
    "FGAbelianGroup",
    "snf",
    "determinantal_divisors",
    "invariant_factors",
    "integer_kernel",
    "homology_group",
    "ext_z2_dim",
    "hom_z2_dim",
    "iso",
    "det",
]


class IntMatrix:
    """Immutable integer matrix.

    Storage is one ``{col: value}`` dict per row holding the nonzero entries,
    which keeps simplicial boundary operators cheap; ``entries`` gives the
    row-major dense view.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable[int] | None = None):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        data = [dict() for _ in range(rows)]
        if entries is not None:
            flat = list(entries)
            if len(flat) != rows * cols:
                raise ShapeMismatch(f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(flat)}")
            for k, x in enumerate(flat):
                if x:
                    data[k // cols][k % cols] = int(x)
        self._data = tuple(data)

    @classmethod
    def _wrap(cls, rows: int, cols: int, data: Sequence[dict]) -> "IntMatrix":
        # internal: takes ownership of ``data`` without copying
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = tuple(data)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeMismatch("ragged row list")
        return cls(len(rows), cols, itertools.chain.from_iterable(rows))

    @classmethod
    def from_dict(cls, rows: int, cols: int, entries: dict[tuple[int, int], int]) -> "IntMatrix":
        data = [dict() for _ in range(rows)]
        for (i, j), x in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeMismatch(f"entry ({i}, {j}) outside {rows}x{cols}")
            if x:
                data[i][j] = int(x)
        return cls._wrap(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls._wrap(rows, cols, [dict() for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._wrap(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls.from_dict(rows, cols, {(i, i): v for i, v in enumerate(values)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.to_rows()))

    def to_rows(self) -> list[list[int]]:
        out = []
        for r in self._data:
            row = [0] * self.cols
            for j, x in r.items():
                row[j] = x
            out.append(row)
        return out

    def row(self, i: int) -> dict[int, int]:
        return dict(self._data[i])

    def nonzero(self):
        """Yield ``(i, j, value)`` for every nonzero entry, row by row."""
        for i, r in enumerate(self._data):
            for j in sorted(r):
                yield i, j, r[j]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i].get(j, 0)

    def is_zero(self) -> bool:
        return not any(self._data)

    def transpose(self) -> "IntMatrix":
        data = [dict() for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, x in r.items():
                data[j][i] = x
        return IntMatrix._wrap(self.cols, self.rows, data)

    T = property(transpose)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        data = []
        for r in self._data:
            acc: dict[int, int] = {}
            for k, x in r.items():
                for j, y in other._data[k].items():
                    acc[j] = acc.get(j, 0) + x * y
            data.append({j: v for j, v in acc.items() if v})
        return IntMatrix._wrap(self.rows, other.cols, data)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ShapeMismatch(f"vector of length {len(vec)} for {self.rows}x{self.cols} matrix")
        return [sum(x * vec[j] for j, x in r.items()) for r in self._data]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._data)))

    def __repr__(self):
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_rows()!r})"
        return f"IntMatrix(<{self.rows}x{self.cols}, nnz={self.nnz}>)"


@dataclass(frozen=True)
class SNFResult:
    """``S == U @ A @ V`` with ``U``, ``V`` unimodular."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def det(A: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = A.to_rows() if isinstance(A, IntMatrix) else [list(r) for r in A]
    n = len(M)
    if any(len(r) != n for r in M):
        raise ShapeMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pk - M[i][k] * M[k][j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


# -- Smith normal form ---------------------------------------------------------


def _smith_inplace(S: list[list[int]], U: list[list[int]] | None = None, V: list[list[int]] | None = None) -> None:
    """Diagonalize ``S`` in place by smallest-pivot elimination.

    Row operations are mirrored on ``U`` (rows) and column operations on ``V``
    (columns) when given, so that the final ``S`` equals ``U0 @ A @ V0`` updated.
    """
    m = len(S)
    n = len(S[0]) if m else 0

    def swap_rows(a, b):
        if a != b:
            S[a], S[b] = S[b], S[a]
            if U is not None:
                U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        if a != b:
            for row in S:
                row[a], row[b] = row[b], row[a]
            if V is not None:
                for row in V:
                    row[a], row[b] = row[b], row[a]

    def add_row(dst, src, f):  # row_dst += f * row_src
        rs, rd = S[src], S[dst]
        for j in range(n):
            if rs[j]:
                rd[j] += f * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(len(ud)):
                if us[j]:
                    ud[j] += f * us[j]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in S:
            if row[src]:
                row[dst] += f * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                # move the smallest remainder in row/column t onto the pivot
                cand = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1


def snf(A: IntMatrix) -> SNFResult:
    """Smith normal form ``S = U @ A @ V`` with unimodular ``U`` and ``V``.

    The diagonal of ``S`` is nonnegative, nonzero entries come first and each
    divides the next.

    >>> snf(IntMatrix.from_rows([[2, 4], [6, 8]])).diagonal
    [2, 4]
    """
    m, n = A.shape
    S = A.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    if m and n:
        _smith_inplace(S, U, V)
    return SNFResult(IntMatrix.from_rows(U, m), IntMatrix.from_rows(S, n), IntMatrix.from_rows(V, n))


def determinantal_divisors(A: IntMatrix) -> list[int]:
    """``D_k`` = gcd of all k x k minors, for k = 1 .. min(rows, cols).

    Brute-force enumeration; independent of :func:`snf` and meant as its
    oracle on small matrices.
    """
    M = A.to_rows()
    m, n = A.shape
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            sub = [M[i] for i in rs]
            for cs in itertools.combinations(range(n), k):
                g = gcd(g, det([[r[j] for j in cs] for r in sub]))
                if g == 1:
                    break
            if g == 1:
                break
        out.append(g)
    return out


# -- sparse elimination --------------------------------------------------------


def _sub_scaled(dst: dict, src: dict, f: int, colmap: dict, rid: int) -> None:
    """``dst -= f * src`` keeping the column -> rows occupancy map current."""
    for j, x in src.items():
        v = dst.get(j, 0) - f * x
        if v:
            if j not in dst:
                colmap.setdefault(j, set()).add(rid)
            dst[j] = v
        elif j in dst:
            del dst[j]
            colmap[j].discard(rid)


def invariant_factors(A: IntMatrix) -> list[int]:
    """Nonzero Smith diagonal of ``A`` (the rank is its length).

    Unit pivots are eliminated sparsely first; whatever is left (rows without
    a +-1 entry) goes through dense Smith reduction.
    """
    rows = {i: dict(r) for i, r in enumerate(A._data) if r}
    colmap: dict[int, set] = {}
    for i, r in rows.items():
        for j in r:
            colmap.setdefault(j, set()).add(i)

    units = 0
    heap = [(len(r), i) for i, r in rows.items()]
    heapq.heapify(heap)
    while heap:
        length, i = heapq.heappop(heap)
        r = rows.get(i)
        if r is None or len(r) != length:
            continue
        unit_cols = [j for j, x in r.items() if x == 1 or x == -1]
        if not unit_cols:
            continue
        c = min(unit_cols, key=lambda j: (len(colmap[j]), j))
        p = r[c]
        for k in sorted(colmap[c] - {i}):
            s = rows[k]
            _sub_scaled(s, r, s[c] * p, colmap, k)
            if s:
                heapq.heappush(heap, (len(s), k))
            else:
                del rows[k]
        for j in r:
            colmap[j].discard(i)
        del rows[i]
        units += 1

    rest: list[int] = []
    if rows:
        cols = sorted({j for r in rows.values() for j in r})
        pos = {j: k for k, j in enumerate(cols)}
        dense = []
        for r in rows.values():
            row = [0] * len(cols)
            for j, x in r.items():
                row[pos[j]] = x
            dense.append(row)
        _smith_inplace(dense)
        rest = [dense[k][k] for k in range(min(len(dense), len(cols))) if dense[k][k]]
    return [1] * units + rest


def integer_kernel(A: IntMatrix) -> list[dict[int, int]]:
    """Z-basis of ``{x : A x = 0}`` as sparse vectors ``{coordinate: value}``.

    Unimodular row reduction of ``[A^T | I]``; rows whose left half vanishes
    carry the kernel basis in their right half.
    """
    At = A.transpose()
    left = {j: dict(r) for j, r in enumerate(At._data)}
    right = {j: {j: 1} for j in range(A.cols)}
    colmap: dict[int, set] = {}
    for j, r in left.items():
        for c in r:
            colmap.setdefault(c, set()).add(j)
    dummy: dict[int, set] = {}

    def combine(dst, src, f):
        _sub_scaled(left[dst], left[src], f, colmap, dst)
        _sub_scaled(right[dst], right[src], f, dummy, dst)

    done: set[int] = set()
    while True:
        live = [c for c, s in colmap.items() if s]
        if not live:
            break
        c = min(live, key=lambda c: (len(colmap[c]), c))
        while len(colmap[c]) > 1:
            owners = sorted(colmap[c], key=lambda j: (abs(left[j][c]), len(left[j]), j))
            piv = owners[0]
            p = left[piv][c]
            for k in owners[1:]:
                combine(k, piv, left[k][c] // p)
        (piv,) = colmap[c]
        for col in list(left[piv]):
            colmap[col].discard(piv)
        done.add(piv)
    return [right[j] for j in sorted(right) if j not in done and not left[j]]


# -- abelian groups ------------------------------------------------------------


def _normalize_orders(orders: Iterable[int]) -> tuple[int, ...]:
    fs = sorted(abs(int(x)) for x in orders if abs(int(x)) > 1)
    # pairwise gcd/lcm sweep produces the divisibility chain
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            g = gcd(fs[i], fs[j])
            fs[i], fs[j] = g, fs[i] * fs[j] // g
    return tuple(x for x in fs if x > 1)


@dataclass(frozen=True, order=True)
class FGAbelianGroup:
    """``Z^rank`` plus the torsion ``Z_{d1} + ... + Z_{dk}`` with ``d1 | d2 | ...``.

    Values are canonical, so ``==`` is group isomorphism.  Use
    :meth:`from_orders` to build a group from arbitrary cyclic orders.
    """

    rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        fs = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"invariant factors {fs} do not form a divisibility chain")
        if any(x < 2 for x in fs):
            raise ValueError("invariant factors must be >= 2")

    @classmethod
    def from_orders(cls, orders: Iterable[int] = (), rank: int = 0) -> "FGAbelianGroup":
        """Direct sum of ``Z^rank`` and cyclic groups of the given orders.

        An order of 0 contributes a free summand, an order of 1 nothing.
        """
        orders = list(orders)
        rank += sum(1 for x in orders if x == 0)
        return cls(rank, _normalize_orders(x for x in orders if x != 0))

    @classmethod
    def free(cls, rank: int) -> "FGAbelianGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, n: int) -> "FGAbelianGroup":
        return cls.from_orders([n])

    @property
    def torsion(self) -> "FGAbelianGroup":
        return FGAbelianGroup(0, self.invariant_factors)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    @property
    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __add__(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        if not isinstance(other, FGAbelianGroup):
            return NotImplemented
        return FGAbelianGroup(self.rank + other.rank, _normalize_orders(self.invariant_factors + other.invariant_factors))

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z_{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


def ext_z2_dim(G: FGAbelianGroup) -> int:
    """Dimension of Ext(G, Z_2): the number of even invariant factors."""
    return sum(1 for d in G.invariant_factors if d % 2 == 0)


def hom_z2_dim(G: FGAbelianGroup) -> int:
    """Dimension of Hom(G, Z_2)."""
    return G.rank + ext_z2_dim(G)


def iso(G: FGAbelianGroup, H: FGAbelianGroup) -> bool:
    return G.rank == H.rank and G.invariant_factors == H.invariant_factors


def homology_group(boundary_out: IntMatrix, boundary_in: IntMatrix) -> FGAbelianGroup:
    """``ker(boundary_out) / im(boundary_in)`` as an abelian group.

    ``boundary_in`` maps into the group that ``boundary_out`` maps out of.
    """
    if boundary_out.cols != boundary_in.rows:
        raise ShapeMismatch(
            f"outgoing map has {boundary_out.cols} columns but incoming map has {boundary_in.rows} rows"
        )
    if not (boundary_out @ boundary_in).is_zero():
        raise CompositionNonzero("consecutive boundary maps do not compose to zero")
    rank_out = len(invariant_factors(boundary_out))
    fs = invariant_factors(boundary_in)
    free = boundary_out.cols - rank_out - len(fs)
    return FGAbelianGroup(free, tuple(d for d in fs if d > 1))
