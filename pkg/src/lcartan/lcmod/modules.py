"""Concrete windowed modules: V(λ), Δ(λ), M_R, shifts, direct sums."""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ..exactcore.linalg import solve
from ..exactcore.poly import Mono, Poly, dim_R, mono_index, monomials
from ..exactcore.rational import Rat
from ..exactcore.sparse import SparseMat, Vec
from ..g0rep.module import G0Module, build_simple
from ..g0rep.weights import check_dominant
from ..vecfields.algebra import AlgebraKind, Letter, Weight, get_algebra
from ..vecfields.pbw import Envelope, elem_axpy
from ..vecfields.vfield import VField, prime, sigma
from .base import GradedLCModule, Window

__all__ = [
    "ProlongationModule",
    "prolong_v_lambda",
    "DeltaModule",
    "build_delta",
    "TensorRModule",
    "tensor_with_R",
    "ShiftedModule",
    "shift",
    "DirectSumModule",
    "direct_sum",
    "SwappedThetaModule",
    "prolongation_terms",
    "r_multiplication_map",
]


def _add_w(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _mono_text(m: Mono) -> str:
    return Poly.monomial(len(m), m).to_text()


def _xd(n: int, i: int, j: int) -> VField:
    """x_i ∂_j, 1-based."""
    a = [0] * n
    a[i - 1] = 1
    return VField.term(n, a, j - 1)


# ---------------------------------------------------------------------------
# prolongation terms: ρ(X)(g⊗v) = X(g)⊗v + Σ c·x^γ g ⊗ ξ(Y)v
# ---------------------------------------------------------------------------

def _terms_w(X: VField) -> List[Tuple[Mono, Rat, VField]]:
    """Σ_{i,j} ∂_j(f_i) ⊗ ξ(x_j∂_i), grouped by monomial of ∂_j f_i."""
    n = X.n
    groups: Dict[Mono, Dict[Tuple[int, int], Rat]] = {}
    for i, f in enumerate(X.comps):
        for j in range(n):
            for m, c in f.diff(j).terms.items():
                g = groups.setdefault(m, {})
                g[(j, i)] = g.get((j, i), 0) + c
    out = []
    for m in sorted(groups, reverse=True):
        Y = VField.zero(n)
        for (j, i), c in sorted(groups[m].items()):
            if c:
                Y = Y + _xd(n, j + 1, i + 1).scale(c)
        if not Y.is_zero():
            out.append((m, 1, Y))
    return out


def _shift_mono(alpha: Sequence[int], minus: Sequence[int]) -> Optional[Mono]:
    m = tuple(a - b for a, b in zip(alpha, minus))
    return None if any(v < 0 for v in m) else m


def _e(n: int, *idx: int) -> Tuple[int, ...]:
    v = [0] * n
    for i in idx:
        v[i - 1] += 1
    return tuple(v)


def _terms_s(k: int, l: int, alpha: Mono) -> List[Tuple[Mono, Rat, VField]]:
    """Correction terms of the S(n)-action on D_kl(x^α), 1-based k < l."""
    n = len(alpha)
    a = lambda t: alpha[t - 1]
    out = []
    m = _shift_mono(alpha, _e(n, k, l))
    c = a(k) * a(l)
    if m is not None and c:
        out.append((m, c, _xd(n, k, k) - _xd(n, l, l)))
    for j in range(1, n + 1):
        if j != k:
            c = a(l) * (a(j) - (1 if j == l else 0))
            m = _shift_mono(alpha, _e(n, j, l))
            if m is not None and c:
                out.append((m, c, _xd(n, j, k)))
        if j != l:
            c = -a(k) * (a(j) - (1 if j == k else 0))
            m = _shift_mono(alpha, _e(n, j, k))
            if m is not None and c:
                out.append((m, c, _xd(n, j, l)))
    return out


def _terms_h(alpha: Mono) -> List[Tuple[Mono, Rat, VField]]:
    """Correction terms of the H(n)-action on D_H(x^α)."""
    n = len(alpha)
    r = n // 2
    a = lambda t: alpha[t - 1]
    out = []
    for j in range(1, n + 1):
        c = sigma(j, r) * a(j) * (a(j) - 1)
        m = _shift_mono(alpha, _e(n, j, j))
        if m is not None and c:
            out.append((m, c, _xd(n, j, prime(j, r))))
    for j in range(1, r + 1):
        for k in range(j + 1, r + 1):
            c = a(j) * a(k)
            m = _shift_mono(alpha, _e(n, j, k))
            if m is not None and c:
                out.append((m, c, _xd(n, k, prime(j, r)) + _xd(n, j, prime(k, r))))
    for k in range(1, r + 1):
        for j in range(r + 1, n + 1):
            c = -a(j) * a(k)
            m = _shift_mono(alpha, _e(n, j, k))
            if m is not None and c:
                out.append((m, c, _xd(n, k, prime(j, r)) - _xd(n, j, prime(k, r))))
    for j in range(r + 1, n + 1):
        for k in range(j + 1, n + 1):
            c = -a(j) * a(k)
            m = _shift_mono(alpha, _e(n, j, k))
            if m is not None and c:
                out.append((m, c, _xd(n, k, prime(j, r)) + _xd(n, j, prime(k, r))))
    return out


@lru_cache(maxsize=None)
def _s_decomposition(kind: AlgebraKind, k: int) -> Tuple[Tuple[Tuple[Tuple[int, int, Mono], Rat], ...], ...]:
    """Each S basis element of degree k as a combination of the D_ij(x^α)."""
    alg = get_algebra(kind)
    span = alg.s_spanning_set(k)
    N = kind.n * dim_R(kind.n, k + 1)
    A = SparseMat.from_columns(N, [X.w_coordinates(k) for _, X in span])
    out = []
    for X in alg.basis(k):
        c = solve(A, X.w_coordinates(k))
        if c is None:
            raise RuntimeError("S basis element outside the span of D_ij")
        out.append(tuple((span[s][0], v) for s, v in sorted(c.items())))
    return tuple(out)


def prolongation_terms(kind: AlgebraKind, letter: Letter, formula: str = "kind") -> List[Tuple[Mono, Rat, VField]]:
    """Correction terms of ρ(letter) on V(λ), either kind-specific or restricted-W."""
    alg = get_algebra(kind)
    X = alg.field(letter)
    if formula == "w" or kind.family == "W":
        return _terms_w(X)
    k, idx = letter
    if kind.family == "S":
        out = []
        for (i, j, alpha), c in _s_decomposition(kind, k)[idx]:
            out.extend((m, c * cc, Y) for m, cc, Y in _terms_s(i, j, alpha))
        return out
    alpha = monomials(kind.n, k + 2)[idx]
    return _terms_h(alpha)


# ---------------------------------------------------------------------------
# V(λ) = R ⊗ L⁰(λ)
# ---------------------------------------------------------------------------

class ProlongationModule(GradedLCModule):
    """V(λ) of depth d; basis x^β ⊗ v at index pos(β)·dim L + v."""

    def __init__(self, kind: AlgebraKind, lam: Sequence[int], depth: int, window: Window, formula: str = "kind"):
        if depth not in window:
            raise ValueError(f"window {window} excludes the depth {depth}")
        if formula not in ("kind", "w"):
            raise ValueError("formula must be 'kind' or 'w'")
        self.lam = check_dominant(kind, lam)
        super().__init__(kind, window, depth, True, name=f"V{list(self.lam)}@{depth}")
        self.L: G0Module = build_simple(kind, self.lam)
        self.formula = formula
        self._xi: Dict[VField, SparseMat] = {}
        self._terms: Dict[Letter, list] = {}

    def xi(self, Y: VField) -> SparseMat:
        got = self._xi.get(Y)
        if got is None:
            got = self.L.act_matrix(Y)
            self._xi[Y] = got
        return got

    def _dim(self, i):
        return dim_R(self.n, i - self.depth_hint) * self.L.dim if i >= self.depth_hint else 0

    def _basis_info(self, i):
        labels, weights = [], []
        for b in monomials(self.n, i - self.depth_hint):
            wb = self.kind.project_weight(b)
            for v in range(self.L.dim):
                labels.append(f"{_mono_text(b)}(x){self.L.labels[v]}")
                weights.append(self.kind.normalize_weight(_add_w(wb, self.L.weights[v])))
        return labels, weights

    def _grouped_terms(self, letter: Letter):
        got = self._terms.get(letter)
        if got is None:
            acc: Dict[Mono, SparseMat] = {}
            for m, c, Y in prolongation_terms(self.kind, letter, self.formula):
                t = self.xi(Y).scale(c)
                acc[m] = acc[m] + t if m in acc else t
            got = [(m, A) for m, A in sorted(acc.items(), reverse=True) if A.nnz()]
            self._terms[letter] = got
        return got

    def _rho(self, letter, i):
        k = letter[0]
        n, dL, d = self.n, self.L.dim, self.depth_hint
        X = self.alg.field(letter)
        src = monomials(n, i - d)
        tgt_idx = mono_index(n, i + k - d)
        terms = self._grouped_terms(letter)
        cols: Dict[int, Vec] = {}
        for bi, b in enumerate(src):
            g = Poly.monomial(n, b)
            Xg = X.apply(g)
            for v in range(dL):
                col: Vec = {}
                for m, c in Xg.terms.items():
                    r = tgt_idx[m] * dL + v
                    col[r] = col.get(r, 0) + c
                for gam, A in terms:
                    mm = _add_w(gam, b)
                    base = tgt_idx[mm] * dL
                    for r, c in A.column(v).items():
                        col[base + r] = col.get(base + r, 0) + c
                col = {r: c for r, c in col.items() if c}
                if col:
                    cols[bi * dL + v] = col
        return SparseMat(self.dim(i + k), self.dim(i), cols)

    def _theta(self, j, i):
        n, dL, d = self.n, self.L.dim, self.depth_hint
        tgt = mono_index(n, i + 1 - d)
        cols = {}
        for bi, b in enumerate(monomials(n, i - d)):
            bb = list(b)
            bb[j] += 1
            t = tgt[tuple(bb)]
            for v in range(dL):
                cols[bi * dL + v] = {t * dL + v: 1}
        return SparseMat(self.dim(i + 1), self.dim(i), cols)


def prolong_v_lambda(kind: AlgebraKind, lam: Sequence[int], depth: int, window: Window,
                     formula: str = "kind") -> ProlongationModule:
    return ProlongationModule(kind, lam, depth, window, formula)


# ---------------------------------------------------------------------------
# Δ(λ) = U(g) ⊗_{U(P)} L⁰(λ)
# ---------------------------------------------------------------------------

class DeltaModule(GradedLCModule):
    """Standard module of depth d on the PBW basis (sorted g_{≥1} word) ⊗ v."""

    def __init__(self, kind: AlgebraKind, lam: Sequence[int], depth: int, window: Window):
        self.lam = check_dominant(kind, lam)
        super().__init__(kind, window, depth, False, name=f"Delta{list(self.lam)}@{depth}")
        self.L = build_simple(kind, self.lam)
        self.env = Envelope(self.alg.bracket_letters)
        self._words: Dict[int, List[Tuple[Letter, ...]]] = {}
        self._word_idx: Dict[int, Dict[Tuple[Letter, ...], int]] = {}
        self._act: Dict[Tuple[Letter, Tuple[Letter, ...], int], Dict[Tuple[Tuple[Letter, ...], int], Rat]] = {}
        self._xi: Dict[Letter, SparseMat] = {}

    def words(self, m: int) -> List[Tuple[Letter, ...]]:
        got = self._words.get(m)
        if got is None:
            if m < 0:
                got = []
            else:
                letters = self.alg.letters(1, m)
                got = []

                def rec(start, prefix, rem):
                    if rem == 0:
                        got.append(tuple(prefix))
                        return
                    for t in range(start, len(letters)):
                        L = letters[t]
                        if L[0] > rem:
                            break
                        rec(t, prefix + [L], rem - L[0])

                rec(0, [], m)
                got.sort()
            self._words[m] = got
            self._word_idx[m] = {w: t for t, w in enumerate(got)}
        return got

    def _dim(self, i):
        return len(self.words(i - self.depth_hint)) * self.L.dim

    def _basis_info(self, i):
        labels, weights = [], []
        for w in self.words(i - self.depth_hint):
            ww = tuple(0 for _ in range(self.kind.weight_length))
            for L in w:
                ww = _add_w(ww, self.alg.weight(L))
            wt = "".join(f"[{a},{b}]" for a, b in w) or "1"
            for v in range(self.L.dim):
                labels.append(f"{wt}(x){self.L.labels[v]}")
                weights.append(self.kind.normalize_weight(_add_w(ww, self.L.weights[v])))
        return labels, weights

    def _xi_letter(self, Y: Letter) -> SparseMat:
        got = self._xi.get(Y)
        if got is None:
            got = self.L.act_matrix(self.alg.field(Y))
            self._xi[Y] = got
        return got

    def _left_mul(self, u: Letter, vec: Dict[Tuple[Tuple[Letter, ...], int], Rat]):
        out: Dict[Tuple[Tuple[Letter, ...], int], Rat] = {}
        for (w, v), c in vec.items():
            for w2, c2 in self.env.mul_letter_word(u, w).items():
                key = (w2, v)
                t = out.get(key, 0) + c * c2
                if t:
                    out[key] = t
                else:
                    out.pop(key, None)
        return out

    def act(self, Y: Letter, w: Tuple[Letter, ...], v: int) -> Dict[Tuple[Tuple[Letter, ...], int], Rat]:
        """Y·(w ⊗ v) as {(normal word, L index): coeff}."""
        key = (Y, w, v)
        got = self._act.get(key)
        if got is not None:
            return got
        k = Y[0]
        if k >= 1:
            got = self._left_mul(Y, {(w, v): 1})
        elif not w:
            if k == 0:
                got = {((), r): c for r, c in self._xi_letter(Y).column(v).items() if c}
            else:
                got = {}
        else:
            u1, rest = w[0], w[1:]
            got = self._left_mul(u1, self.act(Y, rest, v))
            for Z, c in self.alg.bracket_letters(Y, u1).items():
                elem_axpy(got, c, self.act(Z, rest, v))
        self._act[key] = got
        return got

    def _rho(self, letter, i):
        k = letter[0]
        d, dL = self.depth_hint, self.L.dim
        src = self.words(i - d)
        self.words(i + k - d)
        tgt = self._word_idx[i + k - d]
        cols: Dict[int, Vec] = {}
        for wi, w in enumerate(src):
            for v in range(dL):
                col = {tgt[w2] * dL + v2: c for (w2, v2), c in self.act(letter, w, v).items()}
                if col:
                    cols[wi * dL + v] = col
        return SparseMat(self.dim(i + k), self.dim(i), cols)


def build_delta(kind: AlgebraKind, lam: Sequence[int], depth: int, window: Window) -> DeltaModule:
    return DeltaModule(kind, lam, depth, window)


# ---------------------------------------------------------------------------
# M_R = R ⊗ M
# ---------------------------------------------------------------------------

class TensorRModule(GradedLCModule):
    """R ⊗ M with ρ(X)(f⊗m) = X(f)⊗m + f⊗Xm and θ(g)(f⊗m) = gf⊗m.

    Degree i is the direct sum over a ≥ 0 of blocks R_a ⊗ M_{i−a}.
    """

    def __init__(self, M: GradedLCModule):
        super().__init__(M.kind, M.window, M.depth_hint, True, name=f"{M.name}_R")
        self.base = M

    def blocks(self, i: int) -> List[Tuple[int, int, int]]:
        """(a, offset, dim M_{i−a}) for the nonzero blocks of degree i."""
        out = []
        off = 0
        for a in range(0, i - self.window.d_min + 1):
            dm = self.base.dim(i - a)
            if dm:
                out.append((a, off, dm))
                off += dim_R(self.n, a) * dm
        return out

    def _block_offset(self, i: int) -> Dict[int, Tuple[int, int]]:
        return {a: (off, dm) for a, off, dm in self.blocks(i)}

    def _dim(self, i):
        return sum(dim_R(self.n, a) * dm for a, _, dm in self.blocks(i))

    def _basis_info(self, i):
        labels, weights = [], []
        for a, _, dm in self.blocks(i):
            bl, bw = self.base.labels(i - a), self.base.weights(i - a)
            for f in monomials(self.n, a):
                wf = self.kind.project_weight(f)
                for t in range(dm):
                    labels.append(f"{_mono_text(f)}(x){bl[t]}")
                    weights.append(self.kind.normalize_weight(_add_w(wf, bw[t])))
        return labels, weights

    def _rho(self, letter, i):
        k = letter[0]
        X = self.alg.field(letter)
        n = self.n
        src = self.blocks(i)
        tgt = self._block_offset(i + k)
        cols: Dict[int, Vec] = {}
        for a, off, dm in src:
            A = self.base.rho(letter, i - a)
            mons = monomials(n, a)
            same = tgt.get(a)
            shifted = tgt.get(a + k)
            idx_shift = mono_index(n, a + k) if a + k >= 0 else {}
            for fi, f in enumerate(mons):
                Xf = X.apply(Poly.monomial(n, f))
                for t in range(dm):
                    col: Vec = {}
                    if shifted is not None:
                        o2, dm2 = shifted
                        for m, c in Xf.terms.items():
                            r = o2 + idx_shift[m] * dm2 + t
                            col[r] = col.get(r, 0) + c
                    if same is not None:
                        o2, dm2 = same
                        for r, c in A.column(t).items():
                            rr = o2 + fi * dm2 + r
                            col[rr] = col.get(rr, 0) + c
                    col = {r: c for r, c in col.items() if c}
                    if col:
                        cols[off + fi * dm + t] = col
        return SparseMat(self.dim(i + k), self.dim(i), cols)

    def _theta(self, j, i):
        n = self.n
        tgt = self._block_offset(i + 1)
        cols = {}
        for a, off, dm in self.blocks(i):
            o2, dm2 = tgt[a + 1]
            idx = mono_index(n, a + 1)
            for fi, f in enumerate(monomials(n, a)):
                ff = list(f)
                ff[j] += 1
                p = idx[tuple(ff)]
                for t in range(dm):
                    cols[off + fi * dm + t] = {o2 + p * dm2 + t: 1}
        return SparseMat(self.dim(i + 1), self.dim(i), cols)

    def embed_base(self, i: int) -> SparseMat:
        """The g-map M_i → (M_R)_i, m ↦ 1⊗m."""
        off = self._block_offset(i).get(0)
        dm = self.base.dim(i)
        if off is None:
            return SparseMat.zero(self.dim(i), dm)
        return SparseMat(self.dim(i), dm, {t: {off[0] + t: 1} for t in range(dm)})


def tensor_with_R(M: GradedLCModule) -> TensorRModule:
    return TensorRModule(M)


# ---------------------------------------------------------------------------
# shift, direct sum, corrupted control
# ---------------------------------------------------------------------------

class ShiftedModule(GradedLCModule):
    """M'_i = M_{i+s}: depth decreases by s."""

    def __init__(self, M: GradedLCModule, s: int):
        w = Window(M.window.d_min - s, M.window.d_max - s)
        super().__init__(M.kind, w, M.depth_hint - s, M.has_lc, name=f"{M.name}[{-s:+d}]")
        self.base, self.s = M, s

    def _dim(self, i):
        return self.base.dim(i + self.s)

    def _basis_info(self, i):
        return self.base.labels(i + self.s), self.base.weights(i + self.s)

    def _rho(self, letter, i):
        return self.base.rho(letter, i + self.s)

    def _theta(self, j, i):
        return self.base.theta(j, i + self.s)


def shift(M: GradedLCModule, s: int) -> GradedLCModule:
    if s == 0:
        return M
    if isinstance(M, ShiftedModule):
        return shift(M.base, M.s + s)
    return ShiftedModule(M, s)


class DirectSumModule(GradedLCModule):
    def __init__(self, *mods: GradedLCModule):
        kinds = {M.kind for M in mods}
        wins = {M.window for M in mods}
        if len(kinds) != 1 or len(wins) != 1:
            raise ValueError("direct sum needs equal kinds and windows")
        M0 = mods[0]
        super().__init__(M0.kind, M0.window, min(M.depth_hint for M in mods), all(M.has_lc for M in mods),
                         name="+".join(M.name for M in mods))
        self.parts = list(mods)

    def offsets(self, i: int) -> List[int]:
        out, off = [], 0
        for M in self.parts:
            out.append(off)
            off += M.dim(i)
        return out

    def _dim(self, i):
        return sum(M.dim(i) for M in self.parts)

    def _basis_info(self, i):
        labels, weights = [], []
        for t, M in enumerate(self.parts):
            labels += [f"{t}:{l}" for l in M.labels(i)]
            weights += list(M.weights(i))
        return labels, weights

    def _block(self, mats: List[SparseMat], i: int, i2: int) -> SparseMat:
        so, to = self.offsets(i), self.offsets(i2)
        cols: Dict[int, Vec] = {}
        for t, A in enumerate(mats):
            for j, col in A.columns.items():
                cols[so[t] + j] = {to[t] + r: v for r, v in col.items()}
        return SparseMat(self.dim(i2), self.dim(i), cols)

    def _rho(self, letter, i):
        return self._block([M.rho(letter, i) for M in self.parts], i, i + letter[0])

    def _theta(self, j, i):
        return self._block([M.theta(j, i) for M in self.parts], i, i + 1)


def direct_sum(*mods: GradedLCModule) -> DirectSumModule:
    return DirectSumModule(*mods)


class SwappedThetaModule(GradedLCModule):
    """Negative control: θ(x_a) and θ(x_b) exchanged."""

    def __init__(self, M: GradedLCModule, a: int, b: int):
        super().__init__(M.kind, M.window, M.depth_hint, True, name=f"{M.name}~swap{a}{b}")
        self.base, self.a, self.b = M, a, b

    def _dim(self, i):
        return self.base.dim(i)

    def _basis_info(self, i):
        return self.base.labels(i), self.base.weights(i)

    def _rho(self, letter, i):
        return self.base.rho(letter, i)

    def _theta(self, j, i):
        jj = self.b if j == self.a else (self.a if j == self.b else j)
        return self.base.theta(jj, i)


def r_multiplication_map(VR: TensorRModule) -> Dict[int, SparseMat]:
    """ψ: V(λ)_R → V(λ), f ⊗ (g ⊗ v) ↦ fg ⊗ v, per window degree (an LC-surjection)."""
    V = VR.base
    if not isinstance(V, ProlongationModule):
        raise TypeError("r_multiplication_map needs R ⊗ V(λ)")
    n, dL, d = VR.n, V.L.dim, V.depth_hint
    out: Dict[int, SparseMat] = {}
    for i in VR.window.degrees():
        tgt = mono_index(n, i - d) if i >= d else {}
        cols: Dict[int, Vec] = {}
        for a, off, dm in VR.blocks(i):
            src_monos = monomials(n, i - a - d)
            for fi, f in enumerate(monomials(n, a)):
                for bi, b in enumerate(src_monos):
                    p = tgt[_add_w(f, b)]
                    for v in range(dL):
                        cols[off + fi * dm + bi * dL + v] = {p * dL + v: 1}
        out[i] = SparseMat(V.dim(i), VR.dim(i), cols)
    return out
