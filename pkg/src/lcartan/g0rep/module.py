"""Concrete finite-dimensional g₀-modules.

A :class:`G0Module` stores one exact action matrix per element of the
triangular g₀ basis (n⁻, h, n⁺ in the order of :class:`~lcartan.vecfields.G0Data`).
:func:`build_simple` realises L⁰(λ) as the quotient of the Verma module by
the radical of its contravariant form, one weight space at a time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..exactcore.linalg import Subspace, inverse, kernel, rref
from ..exactcore.rational import Rat, rat_to_str
from ..exactcore.sparse import SparseMat, Vec, vec_axpy
from ..vecfields.algebra import AlgebraKind, G0Data, g0_data
from ..vecfields.pbw import Envelope, elem_axpy
from ..vecfields.vfield import VField
from .weights import Weight, check_dominant, gl_representative, height, weyl_dimension

__all__ = [
    "G0Module",
    "ModuleCheck",
    "check_module",
    "build_simple",
    "trivial_module",
    "natural_module",
    "decompose_semisimple",
    "direct_sum",
    "tensor",
    "exterior_power",
    "submodule",
    "generated_subspace",
    "is_irreducible",
]


@dataclass
class G0Module:
    kind: AlgebraKind
    dim: int
    labels: List[str]
    mats: List[SparseMat]
    weights: List[Weight]
    hw: Optional[Vec] = None
    highest_weight: Optional[Weight] = None

    @property
    def g0(self) -> G0Data:
        return g0_data(self.kind)

    def act_matrix(self, X: VField) -> SparseMat:
        """Matrix of an arbitrary degree-0 field (by its g₀ coordinates)."""
        out = SparseMat.zero(self.dim, self.dim)
        for b, c in self.g0.coords(X).items():
            out = out + self.mats[b].scale(c)
        return out

    def act(self, b: int, v: Mapping[int, Rat]) -> Vec:
        return self.mats[b].apply(v)

    def weight_spaces(self) -> Dict[Weight, List[int]]:
        out: Dict[Weight, List[int]] = {}
        for i, w in enumerate(self.weights):
            out.setdefault(w, []).append(i)
        return out

    def character(self) -> Dict[Weight, int]:
        return dict(sorted(((w, len(v)) for w, v in self.weight_spaces().items()), reverse=True))

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind.label,
            "dim": self.dim,
            "labels": list(self.labels),
            "weights": [list(w) for w in self.weights],
            "g0_basis": list(self.g0.labels),
            "matrices": [[[rat_to_str(x) for x in row] for row in m.to_dense()] for m in self.mats],
            "highest_weight": list(self.highest_weight) if self.highest_weight is not None else None,
            "hw_vector": {str(k): rat_to_str(v) for k, v in sorted(self.hw.items())} if self.hw else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


@dataclass
class ModuleCheck:
    ok: bool
    bracket_failures: List[Tuple[int, int]] = field(default_factory=list)
    diagonal_failures: List[int] = field(default_factory=list)
    hw_ok: Optional[bool] = None


def _eigen(kind: AlgebraKind, X: VField, glw: Sequence[int]) -> Rat:
    """Eigenvalue of a diagonal degree-0 field on a vector of gl-weight ``glw``."""
    val = 0
    for i, c in enumerate(X.comps):
        for m, v in c.terms.items():
            if m.index(1) != i:
                raise ValueError("field is not diagonal")
            val += v * glw[i]
    return val


def _glw_of(kind: AlgebraKind, w: Weight) -> Tuple[int, ...]:
    return gl_representative(kind, w)


def check_module(M: G0Module) -> ModuleCheck:
    """Bracket compatibility on all basis pairs, diagonal h, highest-weight certificate."""
    g0 = M.g0
    bad = []
    for a in range(g0.dim):
        for b in range(a + 1, g0.dim):
            lhs = M.mats[a] @ M.mats[b] - M.mats[b] @ M.mats[a]
            rhs = SparseMat.zero(M.dim, M.dim)
            for c, v in g0.structure[(a, b)].items():
                rhs = rhs + M.mats[c].scale(v)
            if lhs != rhs:
                bad.append((a, b))
    diag_bad = []
    for b in g0.cartan:
        X = g0.basis[b]
        m = M.mats[b]
        for j in range(M.dim):
            col = m.column(j)
            want = _eigen(M.kind, X, _glw_of(M.kind, M.weights[j]))
            if {k: v for k, v in col.items() if v} != ({j: want} if want else {}):
                diag_bad.append(j)
    hw_ok = None
    if M.hw is not None:
        hw_ok = all(not M.mats[b].apply(M.hw) for b in g0.raising)
    return ModuleCheck(not bad and not diag_bad and hw_ok is not False, bad, sorted(set(diag_bad)), hw_ok)


# ---------------------------------------------------------------------------
# L⁰(λ) via the contravariant form
# ---------------------------------------------------------------------------

def _transpose_coords(g0: G0Data, b: int) -> Dict[int, Rat]:
    """g₀ coordinates of the transpose of basis element b (E_ij ↦ E_ji)."""
    X = g0.basis[b]
    C: Dict[Tuple[int, int], Rat] = {}
    for j, c in enumerate(X.comps):
        for m, v in c.terms.items():
            i = m.index(1)
            C[(j, i)] = C.get((j, i), 0) + v
    return g0.coords_gl(C)


class _Verma:
    """The Verma module M(λ) = U(n⁻) ⊗ F_λ with vectors as {lowering word: coeff}."""

    def __init__(self, kind: AlgebraKind, lam: Weight):
        self.kind = kind
        self.g0 = g0 = g0_data(kind)
        self.lam = lam
        self.lam_gl = _glw_of(kind, lam)
        self.env = Envelope(lambda a, b: g0.structure[(a, b)])
        self.low = set(g0.lowering)
        self.cartan = set(g0.cartan)
        self._cache: Dict[Tuple[int, Tuple[int, ...]], Vec] = {}
        self.heights = {b: height(kind, [-x for x in g0.weights[b]]) for b in g0.lowering}

    def word_weight(self, w: Sequence[int]) -> Weight:
        lam = list(self.lam)
        for b in w:
            lam = [x + y for x, y in zip(lam, self.g0.weights[b])]
        return self.kind.normalize_weight(lam)

    def act_word(self, b: int, w: Tuple[int, ...]) -> Dict[Tuple[int, ...], Rat]:
        key = (b, w)
        got = self._cache.get(key)
        if got is not None:
            return got
        out: Dict[Tuple[int, ...], Rat] = {}
        for u, c in self.env.mul_letter_word(b, w).items():
            coeff = c
            low = []
            for x in u:
                if x in self.low:
                    low.append(x)
                elif x in self.cartan:
                    # h letters sit after the lowering ones in a normal word
                    coeff = coeff * _eigen(self.kind, self.g0.basis[x], self.lam_gl)
                else:
                    coeff = 0
                    break
                if coeff == 0:
                    break
            if coeff:
                t = tuple(low)
                v = out.get(t, 0) + coeff
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
        self._cache[key] = out
        return out

    def act(self, b: int, vec: Mapping[Tuple[int, ...], Rat]) -> Dict[Tuple[int, ...], Rat]:
        out: Dict[Tuple[int, ...], Rat] = {}
        for w, c in vec.items():
            elem_axpy(out, c, self.act_word(b, w))
        return out

    def words_of_height(self, h: int) -> List[Tuple[int, ...]]:
        """Weakly increasing lowering words of total height h, graded-lex ordered."""
        letters = sorted(self.low)
        out = []

        def rec(start, prefix, rem):
            if rem == 0:
                out.append(tuple(prefix))
                return
            for i in range(start, len(letters)):
                b = letters[i]
                hb = self.heights[b]
                if hb <= rem:
                    rec(i, prefix + [b], rem - hb)

        rec(0, [], Fraction(h))
        out.sort(key=lambda w: (len(w), w))
        return out


def build_simple(kind: AlgebraKind, lam: Sequence[int]) -> G0Module:
    """L⁰(λ) realised on a basis of PBW monomials u·v_λ (graded-lex first choice)."""
    lam = check_dominant(kind, lam)
    V = _Verma(kind, lam)
    g0 = V.g0
    tau = {b: _transpose_coords(g0, b) for b in g0.lowering}

    def pairing(w: Tuple[int, ...], vec: Mapping[Tuple[int, ...], Rat]) -> Rat:
        # ⟨w v, vec⟩ = coefficient of v_λ in τ(w)·vec; τ(f₁⋯f_k) = τ(f_k)⋯τ(f₁)
        cur = dict(vec)
        for b in w:
            nxt: Dict[Tuple[int, ...], Rat] = {}
            for e, c in tau[b].items():
                elem_axpy(nxt, c, V.act(e, cur))
            cur = nxt
            if not cur:
                return 0
        return cur.get((), 0)

    spaces: Dict[Weight, dict] = {}
    order: List[Tuple[Weight, Tuple[int, ...]]] = []
    h = 0
    while True:
        words = V.words_of_height(h)
        by_w: Dict[Weight, List[Tuple[int, ...]]] = {}
        for w in words:
            by_w.setdefault(V.word_weight(w), []).append(w)
        level_dim = 0
        for mu in sorted(by_w, reverse=True):
            B = by_w[mu]
            G = [[pairing(a, {b: 1}) for b in B] for a in B]
            ech_rows: List[Vec] = []
            chosen: List[int] = []
            for i, row in enumerate(G):
                r = {k: v for k, v in enumerate(row) if v}
                if len(rref(ech_rows + [r], len(B))[0]) > len(ech_rows):
                    ech_rows.append(r)
                    chosen.append(i)
            if not chosen:
                continue
            Gss = SparseMat.from_dense([[G[i][j] for j in chosen] for i in chosen])
            spaces[mu] = {"words": B, "G": G, "chosen": chosen, "inv": inverse(Gss), "start": len(order)}
            for i in chosen:
                order.append((mu, B[i]))
            level_dim += len(chosen)
        if level_dim == 0:
            break
        h += 1
    dim = len(order)
    cols: List[Dict[int, Dict[int, Rat]]] = [dict() for _ in range(g0.dim)]
    for j, (mu, w) in enumerate(order):
        for b in range(g0.dim):
            y = V.act_word(b, w)
            if not y:
                continue
            nu = kind.normalize_weight([x + t for x, t in zip(mu, g0.weights[b])])
            sp = spaces.get(nu)
            if sp is None:
                continue
            B, G, chosen = sp["words"], sp["G"], sp["chosen"]
            pos = {wd: k for k, wd in enumerate(B)}
            rhs = {}
            for k, i in enumerate(chosen):
                s = sum((G[i][pos[u]] * c for u, c in y.items()), 0)
                if s:
                    rhs[k] = s
            c = sp["inv"].apply(rhs)
            col = {sp["start"] + k: v for k, v in c.items() if v}
            if col:
                cols[b][j] = col
    mats = [SparseMat(dim, dim, cols[b]) for b in range(g0.dim)]
    labels = ["*".join(f"f{b}" for b in w) + ("*" if w else "") + "v" for _, w in order]
    M = G0Module(kind, dim, labels, mats, [mu for mu, _ in order], hw={0: 1}, highest_weight=lam)
    if dim != weyl_dimension(kind, lam):
        raise ArithmeticError(f"constructed dimension {dim} != Weyl dimension for {lam}")
    return M


def trivial_module(kind: AlgebraKind) -> G0Module:
    g0 = g0_data(kind)
    z = tuple(0 for _ in range(kind.weight_length))
    return G0Module(kind, 1, ["1"], [SparseMat.zero(1, 1) for _ in range(g0.dim)], [z], hw={0: 1},
                    highest_weight=z)


def natural_module(kind: AlgebraKind) -> G0Module:
    """F^n with x_i∂_j acting as E_ij on the standard basis e_1..e_n."""
    g0 = g0_data(kind)
    n = kind.n
    mats = []
    for X in g0.basis:
        cols: Dict[int, Dict[int, Rat]] = {}
        for j, c in enumerate(X.comps):
            for m, v in c.terms.items():
                i = m.index(1)
                cols.setdefault(j, {})[i] = cols.get(j, {}).get(i, 0) + v
        mats.append(SparseMat(n, n, cols))
    weights = [kind.project_weight(tuple(1 if t == i else 0 for t in range(n))) for i in range(n)]
    return G0Module(kind, n, [f"e{i + 1}" for i in range(n)], mats, weights, hw={0: 1},
                    highest_weight=weights[0])


# ---------------------------------------------------------------------------
# constructions and decomposition
# ---------------------------------------------------------------------------

def direct_sum(*mods: G0Module) -> G0Module:
    kind = mods[0].kind
    g0 = g0_data(kind)
    dim = sum(M.dim for M in mods)
    mats = []
    for b in range(g0.dim):
        cols: Dict[int, Dict[int, Rat]] = {}
        off = 0
        for M in mods:
            for j, col in M.mats[b].columns.items():
                cols[j + off] = {i + off: v for i, v in col.items()}
            off += M.dim
        mats.append(SparseMat(dim, dim, cols))
    labels, weights = [], []
    for t, M in enumerate(mods):
        labels += [f"{t}:{l}" for l in M.labels]
        weights += list(M.weights)
    return G0Module(kind, dim, labels, mats, weights)


def tensor(M: G0Module, N: G0Module) -> G0Module:
    """M ⊗ N with basis m_i ⊗ n_j at index i·dim N + j."""
    g0 = g0_data(M.kind)
    dN = N.dim
    dim = M.dim * dN
    mats = []
    for b in range(g0.dim):
        cols: Dict[int, Dict[int, Rat]] = {}
        for i in range(M.dim):
            ci = M.mats[b].column(i)
            for j in range(dN):
                cj = N.mats[b].column(j)
                col: Dict[int, Rat] = {}
                for k, v in ci.items():
                    col[k * dN + j] = col.get(k * dN + j, 0) + v
                for k, v in cj.items():
                    col[i * dN + k] = col.get(i * dN + k, 0) + v
                col = {k: v for k, v in col.items() if v}
                if col:
                    cols[i * dN + j] = col
        mats.append(SparseMat(dim, dim, cols))
    labels = [f"{a}(x){c}" for a in M.labels for c in N.labels]
    weights = [tuple(x + y for x, y in zip(a, c)) for a in M.weights for c in N.weights]
    weights = [M.kind.normalize_weight(w) for w in weights]
    return G0Module(M.kind, dim, labels, mats, weights)


def exterior_power(M: G0Module, k: int) -> G0Module:
    """∧^k M on the basis of increasing index subsets."""
    g0 = g0_data(M.kind)
    subsets = list(combinations(range(M.dim), k))
    idx = {s: t for t, s in enumerate(subsets)}
    mats = []
    for b in range(g0.dim):
        A = M.mats[b]
        cols: Dict[int, Dict[int, Rat]] = {}
        for t, s in enumerate(subsets):
            col: Dict[int, Rat] = {}
            for pos, i in enumerate(s):
                for r, v in A.column(i).items():
                    new = list(s)
                    new[pos] = r
                    if len(set(new)) < k:
                        continue
                    perm = sorted(range(k), key=lambda q: new[q])
                    sign = _perm_sign(perm)
                    key = idx[tuple(sorted(new))]
                    col[key] = col.get(key, 0) + sign * v
            col = {q: v for q, v in col.items() if v}
            if col:
                cols[t] = col
        mats.append(SparseMat(len(subsets), len(subsets), cols))
    labels = ["^".join(M.labels[i] for i in s) if s else "1" for s in subsets]
    z = tuple(0 for _ in range(M.kind.weight_length))
    weights = []
    for s in subsets:
        w = z
        for i in s:
            w = tuple(x + y for x, y in zip(w, M.weights[i]))
        weights.append(M.kind.normalize_weight(w))
    return G0Module(M.kind, len(subsets), labels, mats, weights)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def submodule(M: G0Module, basis: Sequence[Mapping[int, Rat]], weights: Sequence[Weight]) -> G0Module:
    """The g₀-stable subspace spanned by weight vectors ``basis`` as a module of its own.

    Raises ValueError if the span is not stable.
    """
    g0 = g0_data(M.kind)
    k = len(basis)
    if k == 0:
        return G0Module(M.kind, 0, [], [SparseMat.zero(0, 0) for _ in range(g0.dim)], [])
    B = SparseMat.from_columns(M.dim, [dict(v) for v in basis])
    piv, _ = rref([dict(v) for v in basis], M.dim)
    if len(piv) != k:
        raise ValueError("submodule basis is not independent")
    # left inverse through the rows of a square invertible minor
    rows_sel = _independent_rows(B)
    minor = SparseMat.from_dense([[B.get(r, c) for c in range(k)] for r in rows_sel])
    minv = inverse(minor)
    mats = []
    for b in range(g0.dim):
        cols: Dict[int, Dict[int, Rat]] = {}
        for c in range(k):
            y = M.mats[b].apply(basis[c])
            if not y:
                continue
            coords = minv.apply({t: y.get(r, 0) for t, r in enumerate(rows_sel) if y.get(r, 0)})
            recon: Dict[int, Rat] = {}
            for t, v in coords.items():
                vec_axpy(recon, v, basis[t])
            if {i: v for i, v in recon.items() if v} != {i: v for i, v in y.items() if v}:
                raise ValueError("span is not g0-stable")
            if coords:
                cols[c] = coords
        mats.append(SparseMat(k, k, cols))
    return G0Module(M.kind, k, [f"u{t}" for t in range(k)], mats, list(weights))


def _independent_rows(B: SparseMat) -> List[int]:
    """Indices of rows forming an invertible square minor (B has full column rank)."""
    rows: List[Vec] = []
    sel: List[int] = []
    for r, row in enumerate(B.row_dicts()):
        if not row:
            continue
        if len(rref(rows + [row], B.cols)[0]) > len(rows):
            rows.append(row)
            sel.append(r)
        if len(sel) == B.cols:
            break
    return sel


def decompose_semisimple(M: G0Module) -> Dict[Weight, int]:
    """Multiplicity of each L⁰(λ): dimension of the n⁺-invariant λ-weight space."""
    chk = check_module(M)
    if chk.diagonal_failures:
        raise ValueError("h-action is not diagonal in the stored basis")
    g0 = g0_data(M.kind)
    out: Dict[Weight, int] = {}
    for w, idxs in M.weight_spaces().items():
        rows = []
        for b in g0.raising:
            A = M.mats[b]
            sub = SparseMat.from_columns(M.dim, [A.column(i) for i in idxs])
            rows.extend(sub.row_dicts())
        rk = len(rref(rows, len(idxs))[0]) if rows else 0
        m = len(idxs) - rk
        if m:
            out[w] = m
    return dict(sorted(out.items(), reverse=True))


def generated_subspace(M: G0Module, v: Mapping[int, Rat]) -> Subspace:
    """Span of U(g₀)·v."""
    S = Subspace(M.dim, [v])
    frontier = list(S.basis)
    while frontier:
        new = []
        for u in frontier:
            for A in M.mats:
                y = A.apply(u)
                if y and not S.contains(y):
                    S = S.sum(Subspace(M.dim, [y]))
                    new.append(y)
        frontier = new
    return S


def is_irreducible(M: G0Module) -> bool:
    """One highest-weight line, and it generates M (finite-dimensional modules are semisimple)."""
    dec = decompose_semisimple(M)
    if sum(dec.values()) != 1:
        return False
    (w,) = dec
    g0 = g0_data(M.kind)
    idxs = M.weight_spaces()[w]
    rows = []
    for b in g0.raising:
        rows.extend(SparseMat.from_columns(M.dim, [M.mats[b].column(i) for i in idxs]).row_dicts())
    sub = SparseMat.from_rows(rows, len(idxs)) if rows else SparseMat.zero(0, len(idxs))
    (k,) = kernel(sub)
    v = {idxs[i]: c for i, c in k.items()}
    return generated_subspace(M, v).dim == M.dim
