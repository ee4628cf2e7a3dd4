"""Windowed graded g-modules with optional Lie-Cartan structure.

A module is described degree by degree on a finite :class:`Window`.  The
action of an algebra letter ``(k, idx)`` is a matrix ``M_i → M_{i+k}`` and,
when an R-structure is present, ``θ(x_j)`` is a matrix ``M_i → M_{i+1}``.
Matrices are produced lazily by subclasses and cached.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..exactcore.poly import Poly
from ..exactcore.rational import Rat, rat_to_str
from ..exactcore.sparse import SparseMat
from ..g0rep.module import G0Module
from ..vecfields.algebra import AlgebraKind, Letter, Weight, g0_data, get_algebra
from ..vecfields.vfield import VField

__all__ = ["Window", "GradedLCModule", "ExplicitModule", "theta_poly"]


@dataclass(frozen=True)
class Window:
    d_min: int
    d_max: int

    def __post_init__(self):
        if self.d_min > self.d_max:
            raise ValueError(f"empty window [{self.d_min}, {self.d_max}]")

    @classmethod
    def parse(cls, text: str) -> "Window":
        a, b = text.split(":")
        return cls(int(a), int(b))

    def __contains__(self, i: int) -> bool:
        return self.d_min <= i <= self.d_max

    def degrees(self) -> range:
        return range(self.d_min, self.d_max + 1)

    @property
    def width(self) -> int:
        return self.d_max - self.d_min

    def __str__(self) -> str:
        return f"[{self.d_min}, {self.d_max}]"


class GradedLCModule:
    """Base class: subclasses implement ``_dim``, ``_basis_info``, ``_rho`` and ``_theta``."""

    def __init__(self, kind: AlgebraKind, window: Window, depth: int, has_lc: bool, name: str = "M"):
        self.kind = kind
        self.window = window
        self.depth_hint = depth
        self.has_lc = has_lc
        self.name = name
        self.alg = get_algebra(kind)
        self._rho_cache: Dict[Tuple[Letter, int], SparseMat] = {}
        self._theta_cache: Dict[Tuple[int, int], SparseMat] = {}
        self._info: Dict[int, Tuple[List[str], List[Weight]]] = {}

    # -- to implement -------------------------------------------------
    def _dim(self, i: int) -> int:
        raise NotImplementedError

    def _basis_info(self, i: int) -> Tuple[List[str], List[Weight]]:
        raise NotImplementedError

    def _rho(self, letter: Letter, i: int) -> SparseMat:
        raise NotImplementedError

    def _theta(self, j: int, i: int) -> SparseMat:
        raise NotImplementedError

    # -- public -------------------------------------------------------
    @property
    def n(self) -> int:
        return self.kind.n

    def dim(self, i: int) -> int:
        return self._dim(i) if i in self.window else 0

    def dims(self) -> Dict[int, int]:
        return {i: self.dim(i) for i in self.window.degrees()}

    def labels(self, i: int) -> List[str]:
        return self._get_info(i)[0]

    def weights(self, i: int) -> List[Weight]:
        return self._get_info(i)[1]

    def _get_info(self, i: int):
        got = self._info.get(i)
        if got is None:
            got = self._basis_info(i) if i in self.window else ([], [])
            self._info[i] = got
        return got

    def letters(self) -> List[Letter]:
        """Algebra letters whose action can be nonzero inside the window."""
        return self.alg.letters(-1, self.window.width)

    def rho(self, letter: Letter, i: int) -> SparseMat:
        k = letter[0]
        key = (letter, i)
        got = self._rho_cache.get(key)
        if got is None:
            if i in self.window and i + k in self.window and self.dim(i) and self.dim(i + k):
                got = self._rho(letter, i)
            else:
                got = SparseMat.zero(self.dim(i + k), self.dim(i))
            self._rho_cache[key] = got
        return got

    def theta(self, j: int, i: int) -> SparseMat:
        """θ(x_{j+1}): M_i → M_{i+1}."""
        if not self.has_lc:
            raise ValueError(f"{self.name} has no R-structure")
        key = (j, i)
        got = self._theta_cache.get(key)
        if got is None:
            if i in self.window and i + 1 in self.window and self.dim(i) and self.dim(i + 1):
                got = self._theta(j, i)
            else:
                got = SparseMat.zero(self.dim(i + 1), self.dim(i))
            self._theta_cache[key] = got
        return got

    def rho_field(self, X: VField, k: int, i: int) -> SparseMat:
        """ρ(X) on M_i for a homogeneous field X of degree k in the algebra."""
        out = SparseMat.zero(self.dim(i + k), self.dim(i))
        for idx, c in self.alg.coords(X, k).items():
            out = out + self.rho((k, idx), i).scale(c)
        return out

    def g0_matrices(self, i: int) -> List[SparseMat]:
        g0 = g0_data(self.kind)
        return [self.rho_field(X, 0, i) for X in g0.basis]

    def g0_module(self, i: int) -> G0Module:
        return G0Module(self.kind, self.dim(i), list(self.labels(i)), self.g0_matrices(i), list(self.weights(i)))

    def theta_poly(self, f: Poly, i: int) -> SparseMat:
        return theta_poly(self, f, i)

    def depth(self) -> Tuple[int, bool]:
        """(least window degree with a nonzero component, warning flag if at d_min)."""
        for i in self.window.degrees():
            if self.dim(i):
                return i, i == self.window.d_min and self.depth_hint < i
        raise ValueError("all windowed components are zero")

    def to_json_obj(self) -> dict:
        def trip(m: SparseMat):
            return [[r, c, rat_to_str(v)] for r, c, v in m.entries()]

        acts = {}
        for i in self.window.degrees():
            for letter in self.letters():
                k = letter[0]
                if i + k in self.window:
                    m = self.rho(letter, i)
                    if m.nnz():
                        acts[f"{self.alg.letter_label(letter)}@{i}"] = trip(m)
        thetas = {}
        if self.has_lc:
            for i in self.window.degrees():
                for j in range(self.n):
                    m = self.theta(j, i)
                    if m.nnz():
                        thetas[f"x{j + 1}@{i}"] = trip(m)
        return {
            "name": self.name,
            "kind": self.kind.label,
            "n": self.n,
            "window": [self.window.d_min, self.window.d_max],
            "depth": self.depth_hint,
            "dims_per_degree": {str(i): self.dim(i) for i in self.window.degrees()},
            "action_matrices": acts,
            "theta_matrices": thetas,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, {self.kind.label}, window={self.window}, dims={self.dims()})"


def theta_poly(M: GradedLCModule, f: Poly, i: int) -> SparseMat:
    """θ(f) restricted to M_i, for homogeneous f, as a composite of θ(x_j)."""
    ds = {sum(m) for m in f.terms}
    if not ds:
        return SparseMat.zero(M.dim(i), M.dim(i))
    if len(ds) > 1:
        raise ValueError("theta_poly needs a homogeneous polynomial")
    (d,) = ds
    out = SparseMat.zero(M.dim(i + d), M.dim(i))
    for mono, c in f.terms.items():
        A = SparseMat.identity(M.dim(i))
        deg = i
        for j, e in enumerate(mono):
            for _ in range(e):
                A = M.theta(j, deg) @ A
                deg += 1
        out = out + A.scale(c)
    return out


class ExplicitModule(GradedLCModule):
    """A module given by callables; used for derived constructions and controls."""

    def __init__(self, kind, window, depth, has_lc, dim_fn, info_fn, rho_fn, theta_fn=None, name="M"):
        super().__init__(kind, window, depth, has_lc, name)
        self._dim_fn, self._info_fn, self._rho_fn, self._theta_fn = dim_fn, info_fn, rho_fn, theta_fn

    def _dim(self, i):
        return self._dim_fn(i)

    def _basis_info(self, i):
        return self._info_fn(i)

    def _rho(self, letter, i):
        return self._rho_fn(letter, i)

    def _theta(self, j, i):
        return self._theta_fn(j, i)
