"""Fraction-free integer Gauss-Jordan elimination on dense int64 arrays.

Two interchangeable implementations of one algorithm:

* ``_gauss_jordan_numba`` -- a numba ``@njit`` loop kernel;
* ``_gauss_jordan_numpy`` -- a vectorised pure-numpy version.

Setting ``LCARTAN_NO_NUMBA=1`` (or lacking numba) selects the numpy version.
Both return ``-1`` as soon as an update could leave the safe int64 range, so
the caller can fall back to arbitrary-precision elimination.  After each row
update the row is divided by the gcd of its entries, which keeps growth in
check on the sparse, small-entried matrices met here.
"""

from __future__ import annotations

import os

import numpy as np

# Row updates are refused when |a*x| + |b*y| could exceed this bound.
_SAFE = float(2 ** 61)

_DISABLE = os.environ.get("LCARTAN_NO_NUMBA", "").strip() not in ("", "0", "false", "False")

try:  # pragma: no cover - exercised through whichever backend is active
    if _DISABLE:
        raise ImportError("numba disabled by LCARTAN_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f
        return wrap if not (args and callable(args[0])) else args[0]


@njit(cache=True, nogil=True)
def _igcd(a, b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


@njit(cache=True, nogil=True)
def _gauss_jordan_numba(A, pivcols):
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        p = -1
        best = 0
        for i in range(r, m):
            v = A[i, c]
            if v < 0:
                v = -v
            if v != 0 and (p < 0 or v < best):
                p = i
                best = v
        if p < 0:
            continue
        if p != r:
            for j in range(n):
                t = A[p, j]
                A[p, j] = A[r, j]
                A[r, j] = t
        g = 0
        for j in range(n):
            if A[r, j] != 0:
                g = _igcd(g, A[r, j])
        if A[r, c] < 0:
            g = -g
        if g != 1:
            for j in range(n):
                A[r, j] //= g
        maxr = 0
        for j in range(n):
            v = A[r, j]
            if v < 0:
                v = -v
            if v > maxr:
                maxr = v
        a = A[r, c]
        for i in range(m):
            if i == r:
                continue
            b = A[i, c]
            if b == 0:
                continue
            gg = _igcd(a, b)
            a1 = a // gg
            b1 = b // gg
            maxi = 0
            for j in range(n):
                v = A[i, j]
                if v < 0:
                    v = -v
                if v > maxi:
                    maxi = v
            ab1 = b1 if b1 >= 0 else -b1
            if float(a1) * float(maxi) + float(ab1) * float(maxr) >= _SAFE:
                return -1
            h = 0
            for j in range(n):
                v = a1 * A[i, j] - b1 * A[r, j]
                A[i, j] = v
                if v != 0:
                    h = _igcd(h, v)
            if h > 1:
                for j in range(n):
                    A[i, j] //= h
        pivcols[r] = c
        r += 1
    return r


def _gauss_jordan_numpy(A, pivcols):
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        col = np.abs(A[r:, c])
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[np.argmin(col[nz])])
        if p != r:
            A[[r, p]] = A[[p, r]]
        g = int(np.gcd.reduce(A[r]))
        if A[r, c] < 0:
            g = -g
        if g != 1:
            A[r] //= g
        maxr = float(np.abs(A[r]).max())
        a = int(A[r, c])
        idx = np.nonzero(A[:, c])[0]
        idx = idx[idx != r]
        if idx.size:
            b = A[idx, c]
            gg = np.gcd(a, b)
            a1 = a // gg
            b1 = b // gg
            maxi = np.abs(A[idx]).max(axis=1).astype(np.float64)
            bound = a1.astype(np.float64) * maxi + np.abs(b1).astype(np.float64) * maxr
            if np.any(bound >= _SAFE):
                return -1
            block = a1[:, None] * A[idx] - b1[:, None] * A[r][None, :]
            h = np.gcd.reduce(block, axis=1)
            h[h == 0] = 1
            A[idx] = block // h[:, None]
        pivcols[r] = c
        r += 1
    return r


def gauss_jordan_int64(A: np.ndarray, use_numba: bool | None = None):
    """Reduce ``A`` (int64, modified in place).

    Returns ``(rank, pivot_columns)`` or ``None`` on int64 overflow risk.
    On success every pivot row is primitive with positive pivot, and pivot
    columns are zero outside their pivot row.
    """
    if use_numba is None:
        use_numba = HAVE_NUMBA
    m, n = A.shape
    piv = np.zeros(min(m, n) + 1, dtype=np.int64)
    if m == 0 or n == 0:
        return 0, []
    fn = _gauss_jordan_numba if (use_numba and HAVE_NUMBA) else _gauss_jordan_numpy
    r = fn(A, piv)
    if r < 0:
        return None
    return int(r), [int(x) for x in piv[:r]]


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
