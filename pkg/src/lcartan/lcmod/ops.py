"""Checks and solvers on windowed modules: LC axioms, freeness, annihilators,
radicals, irreducibility, hom spaces, extension and lifting.

Guard convention: an identity whose operator raises degree by δ is asserted
on M_i only when both i and i+δ (and every intermediate composite degree)
lie inside the window.
"""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..exactcore.linalg import IntEchelon, inverse, kernel, rank, rref, solve
from ..exactcore.poly import Poly, dim_R, monomials
from ..exactcore.rational import Rat, normalize, rat_to_str
from ..exactcore.sparse import SparseMat, Vec, vec_axpy
from ..g0rep.module import G0Module, check_module, decompose_semisimple, is_irreducible, submodule
from ..g0rep.weights import weyl_dimension
from ..vecfields.algebra import Letter, Weight
from .base import GradedLCModule, Window, theta_poly

__all__ = [
    "lc_axiom_check",
    "lie_action_check",
    "freeness_check",
    "annihilator_gminus1",
    "generate_upward",
    "generate",
    "depth_submodule",
    "radical_lc",
    "irreducible_lc_check",
    "HomBasis",
    "hom_solver",
    "hom_dimension",
    "check_hom",
    "extend_hom",
    "lift_through_surjection",
    "is_surjective",
    "compose",
]


def _vec_json(v: Mapping[int, Rat]) -> Dict[str, str]:
    return {str(k): rat_to_str(x) for k, x in sorted(v.items())}


def _gminus1(M: GradedLCModule) -> List[Letter]:
    return M.alg.letters(-1, -1)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

def lc_axiom_check(M: GradedLCModule, quadratic: bool = True, letters: Optional[Sequence[Letter]] = None) -> dict:
    """LC-1 on generators x_j (plus a quadratic spot check), θ-commutativity, LC-2.

    LC-1 for f = x_j: ρ(X)θ(x_j) − θ(x_j)ρ(X) = θ(X(x_j)) on M_i, guarded by
    i, i+k, i+1, i+k+1 ∈ window.  Generators suffice because both sides are
    derivations in f.
    """
    if not M.has_lc:
        raise ValueError("module has no R-structure")
    W = M.window
    letters = list(letters) if letters is not None else M.letters()
    n = M.n
    violations = []
    checked = 0
    for X in letters:
        k = X[0]
        F = M.alg.field(X)
        for j in range(n):
            f = F.comps[j]  # X(x_j)
            for i in W.degrees():
                if not (i + k in W and i + 1 in W and i + k + 1 in W):
                    continue
                if not M.dim(i):
                    continue
                lhs = M.rho(X, i + 1) @ M.theta(j, i) - M.theta(j, i + k) @ M.rho(X, i)
                rhs = theta_poly(M, f, i) if not f.is_zero() else SparseMat.zero(M.dim(i + k + 1), M.dim(i))
                checked += 1
                if lhs != rhs:
                    D = lhs - rhs
                    c = next(iter(c for c, col in D.columns.items() if col))
                    violations.append({"letter": list(X), "x": j + 1, "degree": i, "basis_vector": c,
                                       "label": M.labels(i)[c]})
    comm_viol = []
    for i in W.degrees():
        if i + 2 not in W or not M.dim(i):
            continue
        for a in range(n):
            for b in range(a + 1, n):
                if M.theta(a, i + 1) @ M.theta(b, i) != M.theta(b, i + 1) @ M.theta(a, i):
                    comm_viol.append({"x": [a + 1, b + 1], "degree": i})
    quad_viol = []
    if quadratic and n >= 1:
        f = Poly.var(n, 0) * Poly.var(n, n - 1) + Poly.var(n, 0) * Poly.var(n, 0)
        for X in letters[: min(len(letters), 12)]:
            k = X[0]
            Xf = M.alg.field(X).apply(f)
            for i in W.degrees():
                if not (i + 2 in W and i + k in W and i + k + 2 in W) or not M.dim(i):
                    continue
                lhs = M.rho(X, i + 2) @ theta_poly(M, f, i) - theta_poly(M, f, i + k) @ M.rho(X, i)
                rhs = theta_poly(M, Xf, i) if not Xf.is_zero() else SparseMat.zero(M.dim(i + k + 2), M.dim(i))
                if lhs != rhs:
                    quad_viol.append({"letter": list(X), "degree": i})
    # LC-2 holds by construction: θ(x_j) is stored as a map M_i → M_{i+1}
    lc2 = all(M.theta(j, i).rows == M.dim(i + 1) and M.theta(j, i).cols == M.dim(i)
              for j in range(n) for i in W.degrees() if i + 1 in W)
    return {
        "module": M.name,
        "window": [W.d_min, W.d_max],
        "checked_triples": checked,
        "lc1_ok": not violations,
        "lc1_violations": violations[:20],
        "theta_commute_ok": not comm_viol,
        "theta_commute_violations": comm_viol[:20],
        "quadratic_spot_check_ok": not quad_viol,
        "lc2_ok": lc2,
        "lemma": "LC-1 on x_1..x_n implies LC-1 on R: both sides are derivations in f",
        "ok": not violations and not comm_viol and not quad_viol and lc2,
    }


def lie_action_check(M: GradedLCModule, letters: Optional[Sequence[Letter]] = None) -> dict:
    """ρ([X,Y]) = [ρ(X), ρ(Y)] on every guarded (X, Y, degree)."""
    W = M.window
    letters = list(letters) if letters is not None else M.letters()
    bad = []
    checked = 0
    for a_i, X in enumerate(letters):
        for Y in letters[a_i + 1:]:
            kx, ky = X[0], Y[0]
            br = M.alg.bracket_letters(X, Y)
            for i in W.degrees():
                if not (i + kx in W and i + ky in W and i + kx + ky in W) or not M.dim(i):
                    continue
                lhs = M.rho(X, i + ky) @ M.rho(Y, i) - M.rho(Y, i + kx) @ M.rho(X, i)
                rhs = SparseMat.zero(lhs.rows, lhs.cols)
                for Z, c in br.items():
                    rhs = rhs + M.rho(Z, i).scale(c)
                checked += 1
                if lhs != rhs:
                    bad.append({"X": list(X), "Y": list(Y), "degree": i})
    return {"module": M.name, "checked": checked, "ok": not bad, "violations": bad[:20]}


def freeness_check(M: GradedLCModule) -> dict:
    """Injectivity of R_k ⊗ M_d → M_{d+k}, f⊗v ↦ θ(f)v, in every window degree."""
    d = M.depth()[0]
    m = M.dim(d)
    per = {}
    ok = True
    for i in M.window.degrees():
        if i < d:
            continue
        k = i - d
        cols = []
        for f in monomials(M.n, k):
            T = theta_poly(M, Poly.monomial(M.n, f), d)
            cols.extend(T.column(v) for v in range(m))
        A = SparseMat.from_columns(M.dim(i), cols)
        rk = rank(A)
        inj = rk == dim_R(M.n, k) * m
        per[str(i)] = {"rank": rk, "expected": dim_R(M.n, k) * m, "dim_M": M.dim(i),
                       "injective": inj, "surjective": rk == M.dim(i)}
        ok = ok and inj
    return {"module": M.name, "depth": d, "rank_M0": m, "degrees": per, "ok": ok}


# ---------------------------------------------------------------------------
# annihilator, generation, radical
# ---------------------------------------------------------------------------

def _stack_gminus1(M: GradedLCModule, i: int) -> SparseMat:
    rows: List[Vec] = []
    for L in _gminus1(M):
        rows.extend(M.rho(L, i).row_dicts())
    return SparseMat.from_rows(rows, M.dim(i))


def annihilator_gminus1(M: GradedLCModule, i: int) -> Tuple[List[Vec], G0Module]:
    """Joint kernel of ρ(∂_1..∂_n) on M_i, with its g₀-module structure."""
    if i not in M.window or i - 1 not in M.window:
        raise ValueError(f"degree {i} needs {i - 1} inside the window {M.window}")
    A = _stack_gminus1(M, i)
    K = kernel(A) if M.dim(i) else []
    wts = M.weights(i)
    weights = []
    for v in K:
        ws = {wts[c] for c in v}
        if len(ws) != 1:
            raise RuntimeError("annihilator basis vector is not a weight vector")
        weights.append(next(iter(ws)))
    sub = submodule(M.g0_module(i), K, weights)
    return K, sub


class _Span:
    """Incrementally built subspace of M_i with the originally added vectors."""

    def __init__(self, dim: int):
        self.dim = dim
        self.ech = IntEchelon(dim)
        self.vecs: List[Vec] = []

    def add(self, v: Mapping[int, Rat]) -> bool:
        if not v or self.ech.rank == self.dim:
            return False
        if self.ech.add(v):
            self.vecs.append(dict(v))
            return True
        return False

    @property
    def rank(self) -> int:
        return self.ech.rank

    @property
    def full(self) -> bool:
        return self.ech.rank == self.dim


def _raising_ops(M: GradedLCModule, i: int, mode: str):
    """(source degree, matrix) for all raising operators landing in degree i; θ first."""
    ops = []
    if mode == "lc":
        for j in range(M.n):
            if i - 1 in M.window:
                ops.append((i - 1, ("theta", j), M.theta(j, i - 1)))
    for k in range(1, i - M.window.d_min + 1):
        for L in M.alg.letters(k, k):
            ops.append((i - k, ("rho", L), M.rho(L, i - k)))
    return ops


def generate_upward(M: GradedLCModule, seeds: Mapping[int, Sequence[Mapping[int, Rat]]], mode: str = "lc") -> Dict[int, _Span]:
    """Span of U(g_{≥1})·seeds (and R·…, in LC mode) degree by degree.

    Equals the submodule generated by the seeds when they are g₀-stable and
    annihilated by g_{−1} (e.g. the depth space), by the PBW decomposition
    U(g) = U(g_{≥1}) U(g₀) U(g_{−1}).
    """
    spans: Dict[int, _Span] = {}
    for i in M.window.degrees():
        S = _Span(M.dim(i))
        for v in seeds.get(i, []):
            S.add(v)
        if not S.full:
            for j, _, A in _raising_ops(M, i, mode):
                src = spans.get(j)
                if src is None or not src.vecs:
                    continue
                for v in src.vecs:
                    S.add(A.apply(v))
                    if S.full:
                        break
                if S.full:
                    break
        spans[i] = S
    return spans


def generate(M: GradedLCModule, seeds: Mapping[int, Sequence[Mapping[int, Rat]]], mode: str = "lc") -> Dict[int, int]:
    """Dimensions of the windowed submodule generated by arbitrary seeds (all operators)."""
    spans = {i: _Span(M.dim(i)) for i in M.window.degrees()}
    queue: List[Tuple[int, Vec]] = []
    for i, vs in seeds.items():
        for v in vs:
            if spans[i].add(v):
                queue.append((i, dict(v)))
    W = M.window
    while queue:
        i, v = queue.pop()
        targets = []
        for L in M.letters():
            if i + L[0] in W:
                targets.append((i + L[0], M.rho(L, i)))
        if mode == "lc" and i + 1 in W:
            targets.extend((i + 1, M.theta(j, i)) for j in range(M.n))
        for t, A in targets:
            y = A.apply(v)
            if y and spans[t].add(y):
                queue.append((t, y))
    return {i: s.rank for i, s in spans.items()}


def depth_submodule(M: GradedLCModule, mode: str = "lc") -> Dict[int, _Span]:
    """𝒟(M): the submodule generated by the depth space M_d."""
    d = M.depth()[0]
    seeds = {d: [{c: 1} for c in range(M.dim(d))]}
    return generate_upward(M, seeds, mode)


def _quotient_projector(basis_rows: Tuple[List[int], List[Vec]], dim: int) -> SparseMat:
    """Coordinates of v modulo span(RREF rows) on the non-pivot columns."""
    piv, rows = basis_rows
    pset = set(piv)
    free = [c for c in range(dim) if c not in pset]
    fidx = {c: t for t, c in enumerate(free)}
    cols: Dict[int, Vec] = {}
    for c in free:
        cols[c] = {fidx[c]: 1}
    for p, r in zip(piv, rows):
        col = {}
        for c, v in r.items():
            if c in fidx and v:
                col[fidx[c]] = -v
        if col:
            cols[p] = col
    return SparseMat(len(free), dim, cols)


def radical_lc(M: GradedLCModule) -> dict:
    """Largest graded subspace N of ⊕_{i>d} M_i with ρ(g_{−1})N ⊂ N (one upward pass).

    Closure of N under the remaining operators, M = 𝒟(M) + N and the
    quotient dimensions predicted by the semisimple decomposition of M_d are
    verified inside the window.
    """
    if not M.has_lc:
        raise ValueError("radical_lc needs an LC module")
    d, warn = M.depth()
    W = M.window
    N: Dict[int, Tuple[List[int], List[Vec]]] = {}
    for i in W.degrees():
        if i <= d or not M.dim(i):
            N[i] = ([], [])
            continue
        prev = N[i - 1]
        Q = _quotient_projector(prev, M.dim(i - 1))
        rows: List[Vec] = []
        for L in _gminus1(M):
            rows.extend((Q @ M.rho(L, i)).row_dicts())
        K = kernel(SparseMat.from_rows(rows, M.dim(i)))
        N[i] = rref(K, M.dim(i))
    ndims = {i: len(N[i][0]) for i in W.degrees()}
    # closure of N under all operators (within the window)
    closed = True
    witness = None
    for i in W.degrees():
        if not ndims[i]:
            continue
        ops = [(i + L[0], M.rho(L, i), f"rho{list(L)}") for L in M.letters() if i + L[0] in W]
        ops += [(i + 1, M.theta(j, i), f"theta x{j + 1}") for j in range(M.n) if i + 1 in W]
        for t, A, lab in ops:
            ref = _quotient_projector(N[t], M.dim(t))
            for v in N[i][1]:
                if (ref @ SparseMat.from_columns(M.dim(t), [A.apply(v)])).nnz():
                    closed = False
                    witness = {"degree": i, "operator": lab}
                    break
            if not closed:
                break
        if not closed:
            break
    D = depth_submodule(M, "lc")
    sum_ok = True
    sum_dims = {}
    for i in W.degrees():
        vecs = D[i].vecs + N[i][1]
        r = len(rref(vecs, M.dim(i))[0]) if vecs else 0
        sum_dims[str(i)] = r
        sum_ok = sum_ok and r == M.dim(i)
    dec = decompose_semisimple(M.g0_module(d))
    top_dim = sum(m * weyl_dimension(M.kind, lam) for lam, m in dec.items())
    quot_pred = {str(i): top_dim * dim_R(M.n, i - d) for i in W.degrees() if i >= d}
    quot = {str(i): M.dim(i) - ndims[i] for i in W.degrees() if i >= d}
    return {
        "module": M.name,
        "depth": d,
        "depth_at_window_floor_warning": warn,
        "radical_dims": {str(i): ndims[i] for i in W.degrees()},
        "radical_basis": {i: N[i][1] for i in W.degrees()},
        "closed_in_window": closed,
        "closure_witness": witness,
        "M_equals_D_plus_N": sum_ok,
        "D_plus_N_dims": sum_dims,
        "depth_space_decomposition": [[list(l), m] for l, m in dec.items()],
        "quotient_dims": quot,
        "quotient_dims_predicted": quot_pred,
        "quotient_matches_prediction": quot == quot_pred,
        "is_zero": all(v == 0 for v in ndims.values()),
    }


def irreducible_lc_check(M: GradedLCModule, mode: str = "lc") -> dict:
    """Irreducibility inside the window via three finite conditions.

    (a) M is generated by its depth space M_d; (b) Ann_{g−1}(M_i) = 0 for
    every i > d with i−1 in the window; (c) M_d is a simple g₀-module.
    Together these say every nonzero windowed submodule meets M_d and
    therefore contains it, so it is all of M.  A failing condition yields an
    explicit proper submodule witness.
    """
    d, warn = M.depth()
    W = M.window
    out = {"module": M.name, "mode": mode, "depth": d, "window": [W.d_min, W.d_max]}
    G = M.g0_module(d)
    simple0 = is_irreducible(G)
    out["depth_space_simple"] = simple0
    if not simple0:
        dec = decompose_semisimple(G)
        out.update(irreducible=False, reason="depth space is not a simple g0-module",
                   witness={"degree": d, "decomposition": [[list(l), m] for l, m in dec.items()]})
        return out
    for i in W.degrees():
        if i <= d or i - 1 not in W or not M.dim(i):
            continue
        K = kernel(_stack_gminus1(M, i))
        if K:
            v = K[0]
            dims = generate(M, {i: [v]}, mode)
            out.update(irreducible=False, reason="nonzero g_{-1}-annihilated vector above the depth",
                       witness={"degree": i, "vector": _vec_json(v),
                                "labels": [M.labels(i)[c] for c in sorted(v)],
                                "submodule_dims": {str(k): x for k, x in dims.items()}})
            return out
    D = generate_upward(M, {d: [{c: 1} for c in range(M.dim(d))]}, mode)
    for i in W.degrees():
        if D[i].rank < M.dim(i):
            v = {0: 1}
            out.update(irreducible=False, reason="depth space generates a proper submodule",
                       witness={"degree": d, "vector": _vec_json(v), "labels": [M.labels(d)[0]],
                                "submodule_dims": {str(k): s.rank for k, s in D.items()},
                                "module_dims": {str(k): M.dim(k) for k in W.degrees()}})
            return out
    out.update(irreducible=True, reason="conditions (a), (b), (c) hold in the window", witness=None)
    return out


# ---------------------------------------------------------------------------
# hom spaces
# ---------------------------------------------------------------------------

@dataclass
class HomBasis:
    source: str
    target: str
    mode: str
    degrees: Tuple[int, int]
    maps: List[Dict[int, SparseMat]]
    log: List[dict] = field(default_factory=list)
    stable: Optional[bool] = None
    dim_next: Optional[int] = None

    @property
    def dim(self) -> int:
        return len(self.maps)

    def to_json_obj(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "mode": self.mode,
            "degrees": list(self.degrees),
            "dim": self.dim,
            "stable": self.stable,
            "stability": "stable (empirical)" if self.stable else ("not stable" if self.stable is False else "unchecked"),
            "dim_next_window": self.dim_next,
            "maps": [{str(i): [[r, c, rat_to_str(v)] for r, c, v in m.entries()] for i, m in sorted(mp.items())}
                     for mp in self.maps],
        }


def _weight_blocks(ws_src: Sequence[Weight], ws_tgt: Sequence[Weight]) -> Dict[int, List[int]]:
    by: Dict[Weight, List[int]] = {}
    for r, w in enumerate(ws_tgt):
        by.setdefault(w, []).append(r)
    return {c: by.get(w, []) for c, w in enumerate(ws_src)}


def hom_solver(M: GradedLCModule, N: GradedLCModule, mode: str = "lc", top: Optional[int] = None,
               initial: Optional[Tuple[int, Sequence[SparseMat]]] = None,
               letters: Optional[Sequence[Letter]] = None) -> HomBasis:
    """Basis of degree-preserving maps M → N commuting with ρ (and θ in LC mode).

    Degrees are solved bottom-up.  At degree i the map is fixed on the span
    of raising images of lower degrees; free unknowns (restricted to equal
    weights) are added only on a complement.  All constraints whose highest
    degree is i are then imposed by an exact kernel computation over the
    parameters.  ``initial=(d, [φ₀, …])`` restricts degree d to the span of
    the given maps (used for extension problems).
    """
    if mode not in ("lc", "g"):
        raise ValueError("mode must be 'lc' or 'g'")
    if M.kind != N.kind:
        raise ValueError("modules of different kinds")
    if mode == "lc" and not (M.has_lc and N.has_lc):
        raise ValueError("LC mode needs R-structures on both modules")
    lo = min(M.window.d_min, N.window.d_min)
    hi = min(M.window.d_max, N.window.d_max) if top is None else top
    if hi > M.window.d_max or hi > N.window.d_max:
        raise ValueError("requested top degree exceeds a module window")
    all_letters = list(letters) if letters is not None else M.alg.letters(-1, hi - lo)
    Phi: Dict[int, List[SparseMat]] = {}
    P = 0
    log: List[dict] = []
    for i in range(lo, hi + 1):
        dm, dn = M.dim(i), N.dim(i)
        # 1. determine φ_i on raising images
        S = _Span(dm)
        known: List[Tuple[Vec, List[Vec]]] = []
        if dm and dn and not (initial is not None and initial[0] == i):
            for j, op, A in _raising_ops(M, i, mode) if i > lo else []:
                if j < lo or not M.dim(j):
                    continue
                B = N.theta(op[1], j) if op[0] == "theta" else N.rho(op[1], j)
                for c in range(M.dim(j)):
                    y = A.column(c)
                    if y and S.add(y):
                        known.append((y, [B.apply(Phi[j][p].column(c)) for p in range(P)]))
                    if S.full:
                        break
                if S.full:
                    break
        piv = set(S.ech.pivots())
        comp = [t for t in range(dm) if t not in piv]
        new_maps: List[SparseMat] = []
        if initial is not None and initial[0] == i:
            if P:
                raise ValueError("initial maps must sit at the lowest nonzero source degree")
            new_maps = [SparseMat(dn, dm, dict(A.columns)) for A in initial[1]]
            Phi[i] = new_maps
            P = len(new_maps)
            for j in Phi:
                if j != i:
                    Phi[j] = [SparseMat.zero(N.dim(j), M.dim(j)) for _ in range(P)]
        elif dm and dn:
            if initial is not None and initial[0] > i:
                comp_free = []
            else:
                comp_free = comp
            blocks = _weight_blocks(M.weights(i), N.weights(i))
            free_cols: List[Tuple[int, int]] = [(t, r) for t in comp_free for r in blocks[t]]
            Pcols = [y for y, _ in known] + [{t: 1} for t in comp]
            Pmat = SparseMat.from_columns(dm, Pcols)
            Pinv = inverse(Pmat) if known else None
            oldP = P
            P = oldP + len(free_cols)
            mats = []
            for p in range(P):
                qcols: Dict[int, Vec] = {}
                for s, (_, vals) in enumerate(known):
                    if p < oldP and vals[p]:
                        qcols[s] = vals[p]
                if p >= oldP:
                    t, r = free_cols[p - oldP]
                    qcols[len(known) + comp.index(t)] = {r: 1}
                Q = SparseMat(dn, dm, qcols)
                mats.append(Q @ Pinv if Pinv is not None else Q)
            Phi[i] = mats
            for j in Phi:
                if j != i and len(Phi[j]) < P:
                    Phi[j] = Phi[j] + [SparseMat.zero(N.dim(j), M.dim(j)) for _ in range(P - len(Phi[j]))]
            if free_cols:
                log.append({"degree": i, "event": "free_unknowns", "count": len(free_cols)})
        else:
            Phi[i] = [SparseMat.zero(dn, dm) for _ in range(P)]
        if P == 0:
            continue
        # 2. constraints with highest degree i
        ech = IntEchelon(P)
        cons = []
        for X in all_letters:
            k = X[0]
            if k >= 0:
                j = i - k
                if j < lo:
                    continue
                cons.append((f"rho{list(X)}@{j}", j, i, M.rho(X, j), N.rho(X, j), False))
            else:
                if i - 1 < lo:
                    continue
                cons.append((f"rho{list(X)}@{i}", i, i - 1, M.rho(X, i), N.rho(X, i), False))
        if mode == "lc" and i - 1 >= lo:
            for jx in range(M.n):
                cons.append((f"theta x{jx + 1}@{i - 1}", i - 1, i, M.theta(jx, i - 1), N.theta(jx, i - 1), True))
        for label, src, tgt, AM, AN, _ in cons:
            if not M.dim(src) or not N.dim(tgt):
                continue
            rows: Dict[Tuple[int, int], Dict[int, Rat]] = {}
            for p in range(P):
                E = Phi[tgt][p] @ AM - AN @ Phi[src][p]
                for r, c, v in E.entries():
                    rows.setdefault((r, c), {})[p] = v
            for key in sorted(rows):
                if ech.add(rows[key]):
                    log.append({"degree": i, "event": "constraint", "label": label, "entry": list(key)})
                if ech.rank == P:
                    break
            if ech.rank == P:
                break
        if ech.rank:
            piv2, red = ech.rref()
            Kp = kernel(SparseMat.from_rows(red, P))
            Phi = {j: [_combo(mats, kv) for kv in Kp] for j, mats in Phi.items()}
            P = len(Kp)
    maps = [{j: Phi[j][p] for j in sorted(Phi)} for p in range(P)]
    return HomBasis(M.name, N.name, mode, (lo, hi), maps, log)


def _combo(mats: Sequence[SparseMat], coeffs: Mapping[int, Rat]) -> SparseMat:
    out = SparseMat.zero(mats[0].rows, mats[0].cols)
    for p, c in coeffs.items():
        out = out + mats[p].scale(c)
    return out


def hom_dimension(M: GradedLCModule, N: GradedLCModule, mode: str = "lc", top: Optional[int] = None) -> HomBasis:
    """Hom basis on [lo, top] with the two-window stabilization heuristic (top vs top+1)."""
    hi = min(M.window.d_max, N.window.d_max)
    top = hi - 1 if top is None else top
    B = hom_solver(M, N, mode, top)
    if top + 1 <= hi:
        B2 = hom_solver(M, N, mode, top + 1)
        B.dim_next = B2.dim
        B.stable = B2.dim == B.dim
    return B


def check_hom(M: GradedLCModule, N: GradedLCModule, maps: Mapping[int, SparseMat], mode: str = "lc") -> dict:
    """Verify that per-degree maps commute with all windowed actions."""
    W = M.window
    bad = []
    for i in W.degrees():
        for X in M.letters():
            t = i + X[0]
            if t not in W or i not in maps or t not in maps:
                continue
            if maps[t] @ M.rho(X, i) != N.rho(X, i) @ maps[i]:
                bad.append({"letter": list(X), "degree": i})
        if mode == "lc" and i + 1 in W and i + 1 in maps and i in maps:
            for j in range(M.n):
                if maps[i + 1] @ M.theta(j, i) != N.theta(j, i) @ maps[i]:
                    bad.append({"theta": j + 1, "degree": i})
    return {"ok": not bad, "violations": bad[:20]}


def extend_hom(phi0: SparseMat, M: GradedLCModule, N: GradedLCModule, mode: str = "lc",
               top: Optional[int] = None) -> dict:
    """Extend a g₀-map on the depth space of M to a windowed hom M → N, or give a witness."""
    d = M.depth()[0]
    GM, GN = M.g0_module(d), N.g0_module(d)
    for A, B in zip(GM.mats, GN.mats):
        if phi0 @ A != B @ phi0:
            raise ValueError("phi0 is not g0-equivariant")
    if not phi0.nnz():
        return {"extended": True, "trivial": True, "map": None}
    B = hom_solver(M, N, mode, top, initial=(d, [phi0]))
    if B.dim == 1:
        mp = B.maps[0]
        (r, c), v = next(iter(_entries_dict(phi0).items()))
        scale = Fraction(v) / Fraction(mp[d].get(r, c))
        mp = {j: m.scale(normalize(scale)) for j, m in mp.items()}
        return {"extended": True, "map": mp, "check": check_hom(M, N, mp, mode)}
    wit = next((e for e in B.log if e["event"] == "constraint"), None)
    return {"extended": False, "witness": wit}


def _entries_dict(A: SparseMat) -> Dict[Tuple[int, int], Rat]:
    return {(r, c): v for r, c, v in A.entries()}


def compose(g: Mapping[int, SparseMat], f: Mapping[int, SparseMat]) -> Dict[int, SparseMat]:
    """Degreewise g∘f."""
    return {i: g[i] @ f[i] for i in f if i in g}


def is_surjective(pi: Mapping[int, SparseMat], N: GradedLCModule) -> Dict[int, bool]:
    return {i: rank(pi[i]) == N.dim(i) for i in pi}


def lift_through_surjection(P: GradedLCModule, M: GradedLCModule, N: GradedLCModule,
                            pi: Mapping[int, SparseMat], f: Mapping[int, SparseMat],
                            mode: str = "lc", top: Optional[int] = None) -> dict:
    """Solve π∘f̃ = f for an equivariant f̃: P → M inside the window."""
    surj = is_surjective(pi, N)
    degs = sorted(d for d in f if (top is None or d <= top))
    if not all(surj.get(i, N.dim(i) == 0) for i in degs):
        raise ValueError("pi is not surjective on the window")
    if all(N.dim(i) == 0 for i in degs):
        zero = {i: SparseMat.zero(M.dim(i), P.dim(i)) for i in degs}
        return {"lifted": True, "lift": zero, "hom_dim": None, "reason": "target is zero"}
    B = hom_solver(P, M, mode, top)
    # flatten π∘g_q for all q, all degrees
    offsets, off = {}, 0
    for i in degs:
        offsets[i] = off
        off += N.dim(i) * P.dim(i)
    cols = []
    for g in B.maps:
        v: Vec = {}
        for i in degs:
            C = pi[i] @ g[i]
            for r, c, x in C.entries():
                v[offsets[i] + c * N.dim(i) + r] = x
        cols.append(v)
    rhs: Vec = {}
    for i in degs:
        for r, c, x in f[i].entries():
            rhs[offsets[i] + c * N.dim(i) + r] = x
    A = SparseMat.from_columns(off, cols)
    sol = solve(A, rhs) if cols else (None if rhs else {})
    if sol is None:
        return {"lifted": False, "hom_dim": B.dim, "reason": "no combination of windowed homs lifts f"}
    lift = {i: SparseMat.zero(M.dim(i), P.dim(i)) for i in degs}
    for q, c in sol.items():
        for i in degs:
            lift[i] = lift[i] + B.maps[q][i].scale(c)
    ok = all(pi[i] @ lift[i] == f[i] for i in degs)
    return {"lifted": ok, "hom_dim": B.dim, "lift": lift, "check": check_hom(P, M, lift, mode)}
