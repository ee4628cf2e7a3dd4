"""Time the numba and pure-numpy elimination kernels on matrices from real workloads.

Usage:  python benchmarks/bench_elimination.py [--repeat 3]

Both kernels must return identical ranks and pivots; the script also times
the arbitrary-precision sparse path for reference.  Run with
LCARTAN_NO_NUMBA=1 to see the numpy-only configuration end to end.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from lcartan.cohomology.koszul import koszul_differential
from lcartan.cohomology.ulc import ulc_cochain_complex
from lcartan.exactcore._kernels import HAVE_NUMBA, gauss_jordan_int64
from lcartan.exactcore.linalg import IntEchelon, _primitive_int_row
from lcartan.vecfields.algebra import AlgebraKind


def dense_int(m):
    rows = [r for r in (_primitive_int_row(r) for r in m.row_dicts()) if r]
    A = np.zeros((len(rows), m.cols), dtype=np.int64)
    for i, r in enumerate(rows):
        for k, v in r.items():
            A[i, k] = v
    return A, rows


def workloads():
    yield "koszul W(3) d_1, strand 9", koszul_differential(3, 8, 1)
    yield "koszul W(4) d_1, strand 7", koszul_differential(4, 6, 1)
    C = ulc_cochain_complex(AlgebraKind("W", 2), 6, 2)
    yield "ULC W(2) d_2, load cap 6", C.strands[0].diffs[2]
    rng = np.random.default_rng(0)
    A = rng.integers(-1, 2, size=(300, 300)) * (rng.random((300, 300)) < 0.02)
    from lcartan.exactcore.sparse import SparseMat
    yield "random sparse 300x300", SparseMat.from_dense(A.tolist())


def best_of(fn, repeat):
    ts = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        ts.append(time.perf_counter() - t)
    return min(ts), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if HAVE_NUMBA:  # compile outside the timed region
        gauss_jordan_int64(np.eye(3, dtype=np.int64), use_numba=True)
    print(f"numba available: {HAVE_NUMBA}")
    print(f"{'workload':32} {'shape':>12} {'rank':>6} {'numba s':>9} {'numpy s':>9} {'sparse s':>9} {'speedup':>8}")
    for name, m in workloads():
        A, rows = dense_int(m)
        t_np, r_np = best_of(lambda: gauss_jordan_int64(A.copy(), use_numba=False), args.repeat)
        if r_np is None:
            print(f"{name:32} {str(A.shape):>12}  int64 guard tripped: both kernels defer to the sparse path")
            continue
        if HAVE_NUMBA:
            t_nb, r_nb = best_of(lambda: gauss_jordan_int64(A.copy(), use_numba=True), args.repeat)
            assert r_nb == r_np, f"kernel mismatch on {name}"
        else:
            t_nb, r_nb = float("nan"), r_np

        def sparse():
            e = IntEchelon(m.cols)
            for r in rows:
                e.add_int(r)
            return e.rank

        t_sp, rk_sp = best_of(sparse, 1)
        rk = r_np[0]
        assert rk == rk_sp, f"sparse rank mismatch on {name}"
        print(f"{name:32} {str(A.shape):>12} {rk:>6} {t_nb:9.4f} {t_np:9.4f} {t_sp:9.4f} {t_np / t_nb:8.1f}")


if __name__ == "__main__":
    main()
