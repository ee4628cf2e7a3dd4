"""Column-oriented sparse rational matrices.

Module actions are naturally produced column by column ("the image of basis
vector j"), so storage is a dict of columns, each a dict ``row -> value``.
Only nonzero entries are stored.
"""

from __future__ import annotations

import json
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .rational import Rat, normalize, rat_from_str, rat_to_str

Vec = Dict[int, Rat]

__all__ = ["Vec", "SparseMat", "vec_add", "vec_axpy", "vec_scale", "vec_is_zero"]


def vec_axpy(out: Vec, c: Rat, v: Mapping[int, Rat]) -> None:
    """out += c*v in place (drops cancelled entries)."""
    if c == 0:
        return
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)


def vec_add(a: Mapping[int, Rat], b: Mapping[int, Rat]) -> Vec:
    out = dict(a)
    vec_axpy(out, 1, b)
    return out


def vec_scale(v: Mapping[int, Rat], c: Rat) -> Vec:
    if c == 0:
        return {}
    return {k: x * c for k, x in v.items()}


def vec_is_zero(v: Mapping[int, Rat]) -> bool:
    return all(x == 0 for x in v.values())


class SparseMat:
    """A ``rows x cols`` exact matrix; ``cols_data[j]`` is column j as a sparse dict."""

    __slots__ = ("rows", "cols", "_c")

    def __init__(self, rows: int, cols: int, columns: Mapping[int, Mapping[int, Rat]] | None = None,
                 *, _trusted: bool = False):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        if _trusted:
            self._c = columns or {}
            return
        data: Dict[int, Vec] = {}
        for j, col in (columns or {}).items():
            if not 0 <= j < cols:
                raise IndexError(f"column {j} outside 0..{cols - 1}")
            clean = {}
            for i, v in col.items():
                if not 0 <= i < rows:
                    raise IndexError(f"row {i} outside 0..{rows - 1}")
                if v != 0:
                    clean[i] = normalize(v)
            if clean:
                data[j] = clean
        self._c = data

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMat":
        return cls(rows, cols, {}, _trusted=True)

    @classmethod
    def identity(cls, n: int) -> "SparseMat":
        return cls(n, n, {j: {j: 1} for j in range(n)}, _trusted=True)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[Rat]], cols: int | None = None) -> "SparseMat":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        cdata: Dict[int, Vec] = {}
        for i, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if v != 0:
                    cdata.setdefault(j, {})[i] = normalize(v)
        return cls(rows, cols, cdata, _trusted=True)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[Tuple[int, int, Rat]]) -> "SparseMat":
        cdata: Dict[int, Vec] = {}
        for i, j, v in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
            col = cdata.setdefault(j, {})
            w = col.get(i, 0) + v
            if w:
                col[i] = w
            else:
                col.pop(i, None)
        return cls(rows, cols, {j: c for j, c in cdata.items() if c})

    @classmethod
    def from_rows(cls, row_vecs: Sequence[Mapping[int, Rat]], cols: int) -> "SparseMat":
        cdata: Dict[int, Vec] = {}
        for i, r in enumerate(row_vecs):
            for j, v in r.items():
                if v != 0:
                    cdata.setdefault(j, {})[i] = v
        return cls(len(row_vecs), cols, cdata)

    @classmethod
    def from_columns(cls, rows: int, col_vecs: Sequence[Mapping[int, Rat]]) -> "SparseMat":
        return cls(rows, len(col_vecs), {j: c for j, c in enumerate(col_vecs) if c})

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> Mapping[int, Rat]:
        """Column j (read-only view; do not mutate)."""
        return self._c.get(j, {})

    @property
    def columns(self) -> Mapping[int, Mapping[int, Rat]]:
        """The nonzero columns, {col: {row: value}} (do not mutate)."""
        return self._c

    def nonzero_columns(self) -> Iterator[Tuple[int, Mapping[int, Rat]]]:
        return iter(sorted(self._c.items()))

    def get(self, i: int, j: int) -> Rat:
        return self._c.get(j, {}).get(i, 0)

    def nnz(self) -> int:
        return sum(len(c) for c in self._c.values())

    def entries(self) -> List[Tuple[int, int, Rat]]:
        """All stored entries sorted by (row, col)."""
        out = [(i, j, v) for j, col in self._c.items() for i, v in col.items()]
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def row_dicts(self) -> List[Vec]:
        rows: List[Vec] = [dict() for _ in range(self.rows)]
        for j, col in self._c.items():
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def to_dense(self) -> List[List[Rat]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in self._c.items():
            for i, v in col.items():
                out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self._c

    # -- algebra ------------------------------------------------------
    def apply(self, v: Mapping[int, Rat]) -> Vec:
        out: Vec = {}
        for j, c in v.items():
            col = self._c.get(j)
            if col and c:
                vec_axpy(out, c, col)
        return out

    def __matmul__(self, other: "SparseMat") -> "SparseMat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: Dict[int, Vec] = {}
        for j, col in other._c.items():
            r = self.apply(col)
            if r:
                out[j] = r
        return SparseMat(self.rows, other.cols, out, _trusted=True)

    def _combine(self, other: "SparseMat", sign: int) -> "SparseMat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out: Dict[int, Vec] = {j: dict(c) for j, c in self._c.items()}
        for j, col in other._c.items():
            tgt = out.setdefault(j, {})
            vec_axpy(tgt, sign, col)
            if not tgt:
                del out[j]
        return SparseMat(self.rows, self.cols, out, _trusted=True)

    def __add__(self, other: "SparseMat") -> "SparseMat":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseMat") -> "SparseMat":
        return self._combine(other, -1)

    def __neg__(self) -> "SparseMat":
        return self.scale(-1)

    def scale(self, c: Rat) -> "SparseMat":
        if c == 0:
            return SparseMat.zero(self.rows, self.cols)
        return SparseMat(self.rows, self.cols,
                         {j: {i: v * c for i, v in col.items()} for j, col in self._c.items()},
                         _trusted=True)

    def transpose(self) -> "SparseMat":
        out: Dict[int, Vec] = {}
        for j, col in self._c.items():
            for i, v in col.items():
                out.setdefault(i, {})[j] = v
        return SparseMat(self.cols, self.rows, out, _trusted=True)

    def select_columns(self, idx: Sequence[int]) -> "SparseMat":
        return SparseMat(self.rows, len(idx),
                         {k: dict(self._c[j]) for k, j in enumerate(idx) if j in self._c},
                         _trusted=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMat):
            return NotImplemented
        return self.shape == other.shape and self._c == other._c

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries())))

    def __repr__(self) -> str:
        return f"SparseMat({self.rows}x{self.cols}, nnz={self.nnz()})"

    # -- serialization ------------------------------------------------
    def to_json_obj(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[i, j, rat_to_str(v)] for i, j, v in self.entries()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "SparseMat":
        return cls.from_entries(int(obj["rows"]), int(obj["cols"]),
                                ((int(i), int(j), rat_from_str(str(v))) for i, j, v in obj["entries"]))

    @classmethod
    def from_json(cls, text: str) -> "SparseMat":
        return cls.from_json_obj(json.loads(text))
