"""Pure numpy row reduction over F_p; used when the compiled kernel is absent."""

from __future__ import annotations

import numpy as np


def rref_inplace(a: np.ndarray, p: int) -> list[int]:
    """Reduce ``a`` (int64, entries in [0, p)) to reduced row echelon form.

    Returns the pivot columns.  Works row-block-wise with numpy broadcasting.
    """
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return pivots
