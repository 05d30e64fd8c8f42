"""Dense linear algebra over F_p.

The compiled kernel in ``_kernels`` is used when it was built; otherwise the
numpy implementation in ``_fallback`` takes over.  Both give identical
results.  Set ``LINKAGE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _fallback

try:
    if os.environ.get("LINKAGE_PURE_PYTHON"):
        raise ImportError("pure python requested")
    from . import _kernels as _impl

    BACKEND = "compiled"
except ImportError:
    _impl = _fallback
    BACKEND = "python"


def rref(a: np.ndarray, p: int, backend=None) -> tuple[np.ndarray, list[int]]:
    impl = backend or _impl
    m = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    if m.size == 0:
        return m, []
    pivots = impl.rref_inplace(m, p)
    return m, list(pivots)


def rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning ``{v : a v = 0}``."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    m, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-m[r, f]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``a x = b`` or None."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    aug = np.concatenate([a, np.asarray(b, dtype=np.int64).reshape(rows, 1)], axis=1)
    m, pivots = rref(aug, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = m[r, cols]
    return x
