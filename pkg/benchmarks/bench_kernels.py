"""Time row reduction mod p with the compiled kernel and the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 40 80 160] [--repeat 5]

Also times one end-to-end workload (the three-fold liaison check on the
cones) under each backend in a subprocess, since the backend is fixed at
import time.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from linkage import _fallback, linalg

P = 32003

WORKLOAD = """
import time
from linkage.groebner import Ideal, cone
from linkage.liaison import check_threefold_liaison, make_link
from linkage.linalg import BACKEND
from linkage.ring import Ring
r = Ring(32003, 5, tuple(f"x{i}" for i in range(5)))
I = cone(Ideal.of(r, ["x0*x2", "x0*x3", "x1*x2", "x1*x3"]))
b = cone(Ideal.of(r, ["x0*x2", "x1*x3"]))
t = time.perf_counter()
report = check_threefold_liaison(make_link(I, b), certify=True)
print(BACKEND, report.status, f"{time.perf_counter() - t:.3f}")
"""


def bench_rref(sizes, repeat):
    rng = np.random.default_rng(0)
    print(f"{'size':>6} {'compiled ms':>12} {'fallback ms':>12} {'ratio':>7}")
    for n in sizes:
        a = rng.integers(0, P, size=(n, n + n // 2), dtype=np.int64)
        fast = min(timeit.repeat(lambda: linalg.rref(a, P), number=1, repeat=repeat))
        slow = min(timeit.repeat(lambda: linalg.rref(a, P, backend=_fallback), number=1, repeat=repeat))
        print(f"{n:>6} {fast * 1e3:>12.2f} {slow * 1e3:>12.2f} {slow / fast:>7.1f}")


def bench_workload():
    for forced in (False, True):
        env = dict(os.environ)
        env.pop("LINKAGE_PURE_PYTHON", None)
        if forced:
            env["LINKAGE_PURE_PYTHON"] = "1"
        out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
        backend, status, seconds = out.stdout.split()
        print(f"three-fold liaison with certificate: backend={backend} status={status} {seconds}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[40, 80, 160, 320])
    ap.add_argument("--repeat", type=int, default=5)
    ns = ap.parse_args()
    if linalg.BACKEND != "compiled":
        print("compiled kernel not available; both columns time the fallback")
    bench_rref(ns.sizes, ns.repeat)
    bench_workload()


if __name__ == "__main__":
    main()
