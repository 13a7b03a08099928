"""Linear algebra over the two-element field.

Matrices are dense ``uint8`` numpy arrays of 0/1 entries.  Elimination runs on
bit-packed rows through the selected kernel backend.
"""

from __future__ import annotations

import numpy as np

from . import _backend

__all__ = ["pack", "unpack", "rref", "rank", "nullspace", "Solver"]


def pack(dense: np.ndarray, width: int | None = None) -> np.ndarray:
    """Pack 0/1 rows into little-endian ``uint64`` words, ``width`` bits per row."""
    dense = np.asarray(dense, dtype=np.uint8)
    m, n = dense.shape
    width = n if width is None else width
    words = max(1, -(-width // 64))
    buf = np.zeros((m, words * 64), dtype=np.uint8)
    buf[:, :n] = dense & 1
    packed = np.packbits(buf, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False).reshape(m, words)


def unpack(words: np.ndarray, ncols: int) -> np.ndarray:
    m = words.shape[0]
    raw = np.ascontiguousarray(words).astype("<u8", copy=False).view(np.uint8).reshape(m, -1)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :ncols].astype(np.uint8)


def rref(dense: np.ndarray, npivot: int | None = None, backend=None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; pivots only in the first ``npivot`` columns."""
    dense = np.asarray(dense, dtype=np.uint8)
    m, n = dense.shape
    npivot = n if npivot is None else npivot
    words = pack(dense)
    kern = _backend if backend is None else backend
    pivots = kern.gf2_rref(words, npivot)
    return unpack(words, n), list(pivots)


def rank(dense: np.ndarray) -> int:
    dense = np.asarray(dense, dtype=np.uint8)
    if dense.size == 0:
        return 0
    return len(rref(dense)[1])


def nullspace(dense: np.ndarray) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` as the rows of a ``(k, n)`` array."""
    dense = np.asarray(dense, dtype=np.uint8)
    m, n = dense.shape
    if m == 0:
        return np.eye(n, dtype=np.uint8)
    R, pivots = rref(dense)
    free = [c for c in range(n) if c not in set(pivots)]
    out = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, p in enumerate(pivots):
            out[k, p] = R[i, f]
    return out


class Solver:
    """Solve ``A x = z`` for many right-hand sides.

    ``A`` is given by its columns.  Pivot columns are chosen greedily left to
    right, so ``independent`` lists the first maximal independent subset.
    """

    def __init__(self, columns: np.ndarray, length: int):
        columns = np.asarray(columns, dtype=np.uint8).reshape(-1, length)
        self.length = length
        self.ncols = columns.shape[0]
        aug = np.concatenate([columns.T, np.eye(length, dtype=np.uint8)], axis=1)
        R, pivots = rref(aug, npivot=self.ncols)
        self.independent = pivots
        self._rank = len(pivots)
        # row operations applied to the right-hand side, kept bit-packed
        self._E = pack(R[:, self.ncols:])

    def solve(self, z: np.ndarray) -> np.ndarray | None:
        """Coordinates on ``independent`` (zeros elsewhere), or None if ``z`` is outside the span."""
        zw = pack(np.asarray(z, dtype=np.uint8).reshape(1, -1), self.length)
        y = np.bitwise_count(self._E & zw).sum(axis=1) & 1
        if y[self._rank:].any():
            return None
        x = np.zeros(self.ncols, dtype=np.uint8)
        for i, p in enumerate(self.independent):
            x[p] = y[i]
        return x
