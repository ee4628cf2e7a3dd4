"""Exact linear algebra over Q: rank, kernel, image, reduced echelon form, subspaces.

Every routine reduces rows that have first been scaled to primitive integer
vectors.  Two elimination paths give identical (canonical) results:

* a dense fraction-free int64 kernel (numba, or numpy if disabled) for
  matrices that fit in memory with small entries;
* an incremental sparse elimination on Python integers, used when the dense
  kernel reports possible overflow or the matrix is too large to densify.

Kernel bases are normalised on the free columns (each basis vector is 1 on
its own free column and 0 on the others), which is the canonical form whose
example for ``[[1,2],[2,4]]`` is ``(-2, 1)``.  Image and row-space bases are
in reduced row echelon form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ._kernels import gauss_jordan_int64
from .rational import Rat, lcm_denominators, normalize
from .sparse import SparseMat, Vec

__all__ = [
    "IntEchelon",
    "rref",
    "rank",
    "kernel",
    "image",
    "solve",
    "inverse",
    "LinalgReport",
    "linalg_suite",
    "Subspace",
    "DENSE_CELL_LIMIT",
]

DENSE_CELL_LIMIT = 16_000_000
_ENTRY_LIMIT = 2 ** 31


def _primitive_int_row(row: Mapping[int, Rat]) -> Dict[int, int]:
    """Scale a rational row to a primitive integer row (same span)."""
    vals = [v for v in row.values() if v != 0]
    if not vals:
        return {}
    L = lcm_denominators(vals)
    out: Dict[int, int] = {}
    g = 0
    for k, v in row.items():
        if v != 0:
            iv = int(v * L) if isinstance(v, Fraction) else v * L
            out[k] = iv
            g = gcd(g, iv)
    if g > 1:
        for k in out:
            out[k] //= g
    return out


class IntEchelon:
    """Incremental fully-reduced echelon basis over Z (fraction-free).

    ``add`` inserts a rational row and reports whether it raised the rank.
    Pivot rows are primitive with positive pivot and are kept zero on every
    other pivot column, so the final RREF is obtained by dividing by pivots.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: Dict[int, Dict[int, int]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def _reduce_int(self, r: Dict[int, int]) -> Dict[int, int]:
        hits = [c for c in r if c in self.rows]
        for c in hits:
            b = r.get(c, 0)
            if not b:
                continue
            p = self.rows[c]
            a = p[c]
            g = gcd(a, b)
            a1, b1 = a // g, b // g
            if a1 != 1:
                r = {k: v * a1 for k, v in r.items()}
            for k, v in p.items():
                w = r.get(k, 0) - b1 * v
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
            h = 0
            for v in r.values():
                h = gcd(h, v)
                if h == 1:
                    break
            if h > 1:
                r = {k: v // h for k, v in r.items()}
        return r

    def reduce(self, row: Mapping[int, Rat]) -> Dict[int, int]:
        """Residual of ``row`` modulo the current span (integer-scaled)."""
        return self._reduce_int(_primitive_int_row(row))

    def contains(self, row: Mapping[int, Rat]) -> bool:
        return not self.reduce(row)

    def add(self, row: Mapping[int, Rat]) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        self._insert(r)
        return True

    def add_int(self, r: Dict[int, int]) -> bool:
        r = self._reduce_int(dict(r))
        if not r:
            return False
        self._insert(r)
        return True

    def _insert(self, r: Dict[int, int]) -> None:
        c = min(r)
        if r[c] < 0:
            r = {k: -v for k, v in r.items()}
        a = r[c]
        for pc, p in list(self.rows.items()):
            b = p.get(c, 0)
            if not b:
                continue
            g = gcd(a, b)
            a1, b1 = a // g, b // g
            q = {k: v * a1 for k, v in p.items()} if a1 != 1 else dict(p)
            for k, v in r.items():
                w = q.get(k, 0) - b1 * v
                if w:
                    q[k] = w
                else:
                    q.pop(k, None)
            h = 0
            for v in q.values():
                h = gcd(h, v)
            if h > 1:
                q = {k: v // h for k, v in q.items()}
            self.rows[pc] = q
        self.rows[c] = r

    def rref(self) -> Tuple[List[int], List[Vec]]:
        piv = self.pivots()
        out = []
        for c in piv:
            r = self.rows[c]
            a = r[c]
            out.append({k: normalize(Fraction(v, a)) for k, v in sorted(r.items())})
        return piv, out


def _rref_dense(int_rows: List[Dict[int, int]], ncols: int, use_numba: bool | None):
    m = len(int_rows)
    A = np.zeros((m, ncols), dtype=np.int64)
    for i, r in enumerate(int_rows):
        for k, v in r.items():
            A[i, k] = v
    res = gauss_jordan_int64(A, use_numba=use_numba)
    if res is None:
        return None
    rk, piv = res
    out = []
    for i in range(rk):
        row = A[i]
        nz = np.nonzero(row)[0]
        a = int(row[piv[i]])
        out.append({int(k): normalize(Fraction(int(row[k]), a)) for k in nz})
    return piv, out


def rref(rows: Iterable[Mapping[int, Rat]], ncols: int, backend: str = "auto") -> Tuple[List[int], List[Vec]]:
    """Canonical reduced row echelon form of the span of ``rows``.

    ``backend`` is ``"auto"``, ``"dense"`` (int64 kernel, falls back on
    overflow), ``"dense-numpy"`` (force the numpy kernel) or ``"sparse"``.
    """
    int_rows = [r for r in (_primitive_int_row(r) for r in rows) if r]
    if not int_rows:
        return [], []
    if backend != "sparse":
        cells = len(int_rows) * ncols
        small = all(abs(v) < _ENTRY_LIMIT for r in int_rows for v in r.values())
        if small and (cells <= DENSE_CELL_LIMIT or backend.startswith("dense")):
            res = _rref_dense(int_rows, ncols, False if backend == "dense-numpy" else None)
            if res is not None:
                return res
    ech = IntEchelon(ncols)
    for r in int_rows:
        ech.add_int(r)
    return ech.rref()


def rank(m: SparseMat, backend: str = "auto") -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.rows > m.cols:
        return len(rref(m.transpose().row_dicts(), m.rows, backend)[0])
    return len(rref(m.row_dicts(), m.cols, backend)[0])


def kernel(m: SparseMat, backend: str = "auto") -> List[Vec]:
    """Right null space basis, normalised on the free columns."""
    piv, rows = rref(m.row_dicts(), m.cols, backend)
    pivset = set(piv)
    out = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v: Vec = {f: 1}
        for p, r in zip(piv, rows):
            x = r.get(f, 0)
            if x:
                v[p] = -x
        out.append(dict(sorted(v.items())))
    return out


def image(m: SparseMat, backend: str = "auto") -> List[Vec]:
    """Column space basis in reduced row echelon form."""
    cols = [dict(c) for _, c in m.nonzero_columns()]
    return rref(cols, m.rows, backend)[1]


def solve(m: SparseMat, b: Mapping[int, Rat]) -> Optional[Vec]:
    """One solution x of m x = b (free variables set to 0), or None."""
    rows = m.row_dicts()
    for i, v in b.items():
        if v != 0:
            rows[i][m.cols] = v
    piv, red = rref(rows, m.cols + 1)
    if piv and piv[-1] == m.cols:
        return None
    x: Vec = {}
    for p, r in zip(piv, red):
        v = r.get(m.cols, 0)
        if v:
            x[p] = v
    return x


def inverse(m: SparseMat) -> SparseMat:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    rows = m.row_dicts()
    for i in range(n):
        rows[i][n + i] = 1
    piv, red = rref(rows, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) != n:
        raise ZeroDivisionError("matrix is singular")
    cols: Dict[int, Vec] = {}
    for i, r in enumerate(red):
        for k, v in r.items():
            if k >= n:
                cols.setdefault(k - n, {})[i] = v
    return SparseMat(n, n, cols)


@dataclass(frozen=True)
class LinalgReport:
    rank: int
    kernel: List[Vec]
    image: List[Vec]
    rref_pivots: List[int]
    rref_rows: List[Vec]


def linalg_suite(m: SparseMat, backend: str = "auto") -> LinalgReport:
    piv, rows = rref(m.row_dicts(), m.cols, backend)
    return LinalgReport(rank=len(piv), kernel=kernel(m, backend), image=image(m, backend),
                        rref_pivots=piv, rref_rows=rows)


class Subspace:
    """A subspace of Q^ambient held by its canonical RREF basis."""

    __slots__ = ("ambient", "pivots", "basis")

    def __init__(self, ambient: int, vectors: Iterable[Mapping[int, Rat]] = ()):
        self.ambient = ambient
        vecs = list(vectors)
        for v in vecs:
            if any(not 0 <= k < ambient for k in v):
                raise ValueError("vector outside the ambient space")
        self.pivots, self.basis = rref(vecs, ambient)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [{i: 1} for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _same(self, other: "Subspace"):
        if other.ambient != self.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def contains(self, v: Mapping[int, Rat]) -> bool:
        r = {k: x for k, x in v.items() if x != 0}
        for p, b in zip(self.pivots, self.basis):
            c = r.get(p, 0)
            if c:
                for k, x in b.items():
                    w = r.get(k, 0) - c * x
                    if w:
                        r[k] = w
                    else:
                        r.pop(k, None)
        return not r

    def contains_space(self, other: "Subspace") -> bool:
        self._same(other)
        return all(self.contains(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._same(other)
        return Subspace(self.ambient, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: reduce rows (u|u) and (v|0); the rows (0|w) span U ∩ V."""
        self._same(other)
        n = self.ambient
        rows = []
        for u in self.basis:
            r = dict(u)
            r.update({k + n: x for k, x in u.items()})
            rows.append(r)
        for v in other.basis:
            rows.append(dict(v))
        piv, red = rref(rows, 2 * n)
        inter = [{k - n: x for k, x in r.items()} for p, r in zip(piv, red) if p >= n]
        return Subspace(n, inter)

    def quotient_dim(self, sub: "Subspace") -> int:
        if not self.contains_space(sub):
            raise ValueError("not a subspace")
        return self.dim - sub.dim

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.basis == other.basis

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"
