"""Pure-Python/numpy versions of the hot kernels.

Same signatures and in-place semantics as the compiled ``_kernels`` module.
"""

import numpy as np


def gf2_rref(rows, npivot):
    """Reduce bit-packed GF(2) rows to reduced row echelon form in place.

    ``rows`` is a C-contiguous ``uint64`` array of shape ``(m, words)``; bit
    ``c`` of a row lives in word ``c // 64`` at position ``c % 64``.  Pivots are
    only taken in columns ``< npivot``; later columns are carried along.
    Returns the pivot columns in order; pivot rows end up first.
    """
    m, w = rows.shape
    if m == 0:
        return []
    raw = rows.view(np.uint8)
    ints = [int.from_bytes(raw[i].tobytes(), "little") for i in range(m)]
    pivots = []
    r = 0
    for c in range(npivot):
        if r == m:
            break
        bit = 1 << c
        for i in range(r, m):
            if ints[i] & bit:
                break
        else:
            continue
        ints[r], ints[i] = ints[i], ints[r]
        prow = ints[r]
        for k in range(m):
            if k != r and ints[k] & bit:
                ints[k] ^= prow
        pivots.append(c)
        r += 1
    nbytes = w * 8
    for i in range(m):
        raw[i] = np.frombuffer(ints[i].to_bytes(nbytes, "little"), dtype=np.uint8)
    return pivots


def cup_eval(u, v, front, back):
    """``out[s] = XOR_t (u[front[s, t]] & v[back[s, t]])``."""
    if front.shape[1] == 0:
        return np.zeros(front.shape[0], dtype=np.uint8)
    prod = u[front] & v[back]
    return np.bitwise_xor.reduce(prod, axis=1).astype(np.uint8)
