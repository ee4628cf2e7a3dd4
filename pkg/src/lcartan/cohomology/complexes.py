"""Finite cochain complexes, split into strands, with exact homology.

A :class:`GradedComplex` stores, for each strand, the component dimensions
at every position together with the differentials ``d_k: C^k → C^{k+1}``.
Everything downstream (d∘d = 0 certificates, Betti numbers, Euler
characteristics) is an exact rank computation.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..exactcore.linalg import rank
from ..exactcore.rational import Rat
from ..exactcore.sparse import SparseMat
from ..vecfields.algebra import AlgebraKind, g0_data

__all__ = [
    "Strand",
    "GradedComplex",
    "CohomologyReport",
    "FiniteLieAlgebra",
    "g0_lie_algebra",
    "ce_complex",
    "wedge_sort",
]


def wedge_sort(items: Sequence) -> Tuple[int, Tuple]:
    """(sign, sorted tuple) for a wedge of basis elements; sign 0 on a repeat."""
    arr = list(items)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(arr, arr[1:]):
        if a == b:
            return 0, tuple(arr)
    return sign, tuple(arr)


@dataclass
class Strand:
    index: object
    dims: List[int]
    diffs: List[SparseMat]  # diffs[k]: position k → k+1 (len(dims) − 1 entries)
    _ranks: Optional[List[int]] = field(default=None, repr=False)

    def ranks(self) -> List[int]:
        if self._ranks is None:
            self._ranks = [rank(d) if d.nnz() else 0 for d in self.diffs]
        return self._ranks

    def dd_zero(self) -> bool:
        return all((b @ a).is_zero() for a, b in zip(self.diffs, self.diffs[1:]))

    def homology(self) -> List[int]:
        r = self.ranks()
        out = []
        for k, d in enumerate(self.dims):
            out_rank = r[k] if k < len(r) else 0
            in_rank = r[k - 1] if k >= 1 else 0
            out.append(d - out_rank - in_rank)
        return out

    def euler(self) -> int:
        return sum((-1) ** k * d for k, d in enumerate(self.dims))


@dataclass
class GradedComplex:
    """Cochain complex given strand by strand; ``positions`` are cochain degrees."""

    name: str
    positions: List[int]
    strands: List[Strand]
    strand_semantics: str = ""
    annotations: Dict[str, object] = field(default_factory=dict)

    def dd_zero(self) -> bool:
        return all(s.dd_zero() for s in self.strands)

    def betti(self) -> List[int]:
        tot = [0] * len(self.positions)
        for s in self.strands:
            for k, h in enumerate(s.homology()):
                tot[k] += h
        return tot

    def report(self) -> "CohomologyReport":
        rows = []
        for s in self.strands:
            h = s.homology()
            rows.append({
                "index": s.index,
                "dims": list(s.dims),
                "ranks": list(s.ranks()),
                "homology": h,
                "euler": s.euler(),
                "euler_check": s.euler() == sum((-1) ** k * x for k, x in enumerate(h)),
                "dd_zero": s.dd_zero(),
            })
        return CohomologyReport(self.name, list(self.positions), rows, self.betti(),
                                dict(self.annotations, strand_semantics=self.strand_semantics))


@dataclass
class CohomologyReport:
    name: str
    positions: List[int]
    strands: List[dict]
    betti: List[int]
    annotations: Dict[str, object] = field(default_factory=dict)
    stability: Optional[dict] = None

    @property
    def dd_zero(self) -> bool:
        return all(s["dd_zero"] for s in self.strands)

    @property
    def euler_consistent(self) -> bool:
        return all(s["euler_check"] for s in self.strands)

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "positions": self.positions,
            "strands": self.strands,
            "betti": self.betti,
            "stability": self.stability,
            "annotations": self.annotations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"), default=str)

    def betti_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["strand"] + [f"H{p}" for p in self.positions])
        for s in self.strands:
            w.writerow([s["index"]] + s["homology"])
        w.writerow(["total"] + self.betti)
        return buf.getvalue()


# ---------------------------------------------------------------------------
# finite-dimensional Chevalley–Eilenberg complex
# ---------------------------------------------------------------------------

@dataclass
class FiniteLieAlgebra:
    """Structure constants ``bracket[(a, b)] = {c: coeff}`` on a basis of size ``dim``."""

    name: str
    dim: int
    bracket: Dict[Tuple[int, int], Dict[int, Rat]]

    def jacobi_ok(self) -> bool:
        def br(u: Mapping[int, Rat], v: Mapping[int, Rat]) -> Dict[int, Rat]:
            out: Dict[int, Rat] = {}
            for a, ca in u.items():
                for b, cb in v.items():
                    for c, cc in self.bracket.get((a, b), {}).items():
                        out[c] = out.get(c, 0) + ca * cb * cc
            return {k: v for k, v in out.items() if v}

        for a in range(self.dim):
            for b in range(self.dim):
                for c in range(self.dim):
                    e = lambda i: {i: 1}
                    t1 = br(e(a), br(e(b), e(c)))
                    t2 = br(e(b), br(e(c), e(a)))
                    t3 = br(e(c), br(e(a), e(b)))
                    tot: Dict[int, Rat] = {}
                    for t in (t1, t2, t3):
                        for k, v in t.items():
                            tot[k] = tot.get(k, 0) + v
                    if any(tot.values()):
                        return False
        return True


def g0_lie_algebra(kind: AlgebraKind) -> FiniteLieAlgebra:
    """g₀ of a kind as an abstract Lie algebra: gl(n) for W, sl(n) for S, sp(2r) for H."""
    g0 = g0_data(kind)
    return FiniteLieAlgebra(kind.g0_name, g0.dim, {k: dict(v) for k, v in g0.structure.items() if v})


def ce_complex(L: FiniteLieAlgebra, module: Optional[Sequence[SparseMat]] = None, cap: int = 10) -> GradedComplex:
    """C^q = Hom(∧^q L, M) with the full Chevalley–Eilenberg differential.

    ``module`` lists the action matrices of the basis of L; omitted means
    trivial one-dimensional coefficients.
    """
    if L.dim > cap:
        raise ValueError(f"dim L = {L.dim} exceeds the cap {cap}")
    mats = list(module) if module is not None else [SparseMat.zero(1, 1) for _ in range(L.dim)]
    m = mats[0].shape[0] if mats else 1
    wedges = [list(combinations(range(L.dim), q)) for q in range(L.dim + 1)]
    index = [{w: i for i, w in enumerate(ws)} for ws in wedges]
    dims = [len(ws) * m for ws in wedges]
    diffs = []
    for q in range(L.dim):
        entries: Dict[Tuple[int, int], Rat] = {}

        def put(r, c, v):
            if v:
                entries[(r, c)] = entries.get((r, c), 0) + v

        for ti, T in enumerate(wedges[q + 1]):
            for i, t in enumerate(T):
                S = T[:i] + T[i + 1:]
                si = index[q][S]
                for r, c, v in mats[t].entries():
                    put(ti * m + r, si * m + c, (-1) ** i * v)
            for i in range(len(T)):
                for j in range(i + 1, len(T)):
                    rest = T[:i] + T[i + 1:j] + T[j + 1:]
                    for k, ck in L.bracket.get((T[i], T[j]), {}).items():
                        sg, S = wedge_sort((k,) + rest)
                        if not sg:
                            continue
                        si = index[q][S]
                        for a in range(m):
                            put(ti * m + a, si * m + a, (-1) ** (i + j) * ck * sg)
        diffs.append(SparseMat.from_entries(dims[q + 1], dims[q], [(r, c, v) for (r, c), v in entries.items() if v]))
    return GradedComplex(f"CE({L.name})", list(range(L.dim + 1)), [Strand(0, dims, diffs)],
                         "single strand: the whole cochain complex")
