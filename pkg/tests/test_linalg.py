import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from linkage import _fallback, linalg

P = 32003


def matrices(max_side=7):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, P - 1), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_backends_agree(rows):
    a = np.array(rows, dtype=np.int64)
    fast, piv_fast = linalg.rref(a, P)
    slow, piv_slow = linalg.rref(a, P, backend=_fallback)
    assert piv_fast == piv_slow
    assert np.array_equal(fast, slow)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_nullspace_is_annihilated(rows):
    a = np.array(rows, dtype=np.int64)
    basis = linalg.nullspace(a, P)
    assert basis.shape[0] == a.shape[1] - linalg.rank(a, P)
    if basis.size:
        assert not ((a @ basis.T) % P).any()


def test_solve():
    a = np.array([[1, 1], [0, 2]])
    x = linalg.solve(a, np.array([3, 4]), 7)
    assert list(x) == [1, 2]
    assert linalg.solve(np.array([[1, 1], [1, 1]]), np.array([0, 1]), 7) is None


def test_environment_forces_fallback():
    env = dict(os.environ, LINKAGE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import linkage.linalg as l; print(l.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(bool(os.environ.get("LINKAGE_PURE_PYTHON")), reason="fallback forced")
def test_compiled_kernel_is_built():
    assert linalg.BACKEND == "compiled"
