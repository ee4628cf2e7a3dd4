"""The de Rham/Koszul complex R ⊗ ∧^•(natural) and composition bookkeeping."""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from ..exactcore.linalg import rank
from ..exactcore.poly import dim_R, mono_index, monomials
from ..exactcore.sparse import SparseMat
from ..lcmod.base import GradedLCModule, Window
from ..lcmod.modules import prolong_v_lambda
from ..lcmod.ops import irreducible_lc_check
from ..vecfields.algebra import AlgebraKind, g0_data
from .complexes import GradedComplex, Strand, wedge_sort

__all__ = ["koszul_complex", "koszul_differential", "composition_accounting", "graded_character", "omega"]


def omega(kind: AlgebraKind, k: int) -> Tuple[int, ...]:
    """Fundamental weight ω_k (ω₀ = 0) in the kind's coordinates."""
    n = kind.n
    if kind.family == "H":
        raise ValueError("ω_k here is for R ⊗ ∧^k of the natural module of W/S")
    return kind.normalize_weight([1] * k + [0] * (n - k))


def koszul_differential(n: int, m: int, k: int) -> SparseMat:
    """d_k: R_m ⊗ ∧^k → R_{m−1} ⊗ ∧^{k+1}, x^α ⊗ v_J ↦ Σ_i ∂_i(x^α) ⊗ v_J ∧ v_i.

    Bases: monomials in graded-lex order (outer) times k-subsets in
    lexicographic order (inner).
    """
    src_w = list(combinations(range(n), k))
    tgt_w = {w: i for i, w in enumerate(combinations(range(n), k + 1))}
    ncols = dim_R(n, m) * len(src_w)
    if m < 1 or k >= n:
        return SparseMat.zero(dim_R(n, m - 1) * len(tgt_w) if m >= 1 else 0, ncols)
    tgt_m = mono_index(n, m - 1)
    entries = []
    for a, alpha in enumerate(monomials(n, m)):
        for b, J in enumerate(src_w):
            col = a * len(src_w) + b
            for i in range(n):
                if alpha[i] == 0:
                    continue
                sg, K = wedge_sort(J + (i,))
                if not sg:
                    continue
                beta = list(alpha)
                beta[i] -= 1
                row = tgt_m[tuple(beta)] * len(tgt_w) + tgt_w[K]
                entries.append((row, col, sg * alpha[i]))
    return SparseMat.from_entries(dim_R(n, m - 1) * len(tgt_w), ncols, entries)


def koszul_complex(kind: AlgebraKind, strands: Sequence[int]) -> GradedComplex:
    """Strand s holds R_{s−k} ⊗ ∧^k at position k = 0…n (zero when s−k < 0)."""
    if kind.family not in ("W", "S"):
        raise ValueError("the Koszul complex is built for W(n) and S(n)")
    if kind.family == "S" and kind.n < 2:
        raise ValueError("S(n) needs n ≥ 2")
    n = kind.n
    out = []
    for s in strands:
        dims = [dim_R(n, s - k) * comb(n, k) if s >= k else 0 for k in range(n + 1)]
        diffs = [koszul_differential(n, s - k, k) if s - k >= 1 else SparseMat.zero(dims[k + 1], dims[k])
                 for k in range(n)]
        out.append(Strand(s, dims, diffs))
    return GradedComplex(f"Koszul({kind.label})", list(range(n + 1)), out,
                         "strand s: position k is R_{s-k} ⊗ ∧^k(natural)",
                         {"leading_zero_note": "constants lie in ker d_0, so strand 0 carries F at position 0"})


def composition_accounting(kind: AlgebraKind, max_degree: int = 6, window: Optional[Window] = None) -> dict:
    """Per-degree kernel/image bookkeeping for d_k on V(ω_k) = R ⊗ ∧^k.

    For W/S: dim V(ω_k)_m = dim ker(d_k)_m + rank(d_k)_m, and ker d_k
    agrees dimension-wise with im d_{k−1} (except constants at k = m = 0).
    For H only g-reducibility of V(ω₁) is certified.
    """
    if kind.family == "H":
        W = window or Window(0, 5)
        V = prolong_v_lambda(kind, kind.normalize_weight([1] + [0] * (kind.r - 1)), 0, W)
        chk = irreducible_lc_check(V, "g")
        return {
            "kind": kind.label,
            "mode": "reducibility-only",
            "module": "V(omega_1)",
            "window": [W.d_min, W.d_max],
            "g_reducible": not chk["irreducible"],
            "reason": chk.get("reason"),
            "witness": chk.get("witness"),
            "limitation": "composition multiplicities for H(n) are not certified; only reducibility is",
        }
    n = kind.n
    rows = []
    ok = True
    for k in range(n + 1):
        lam = omega(kind, k)
        V = prolong_v_lambda(kind, lam, 0, Window(0, max_degree))
        for m in range(max_degree + 1):
            dimV = dim_R(n, m) * comb(n, k)
            r_k = rank(koszul_differential(n, m, k)) if m >= 1 and k < n else 0
            ker_k = dimV - r_k
            im_prev = rank(koszul_differential(n, m + 1, k - 1)) if k >= 1 else 0
            exact = ker_k == im_prev + (1 if (k == 0 and m == 0) else 0)
            vdim = V.dim(m)
            good = dimV == ker_k + r_k and exact and vdim == dimV
            ok = ok and good
            rows.append({"k": k, "m": m, "dim_V": dimV, "dim_V_lambda_module": vdim, "dim_ker": ker_k,
                         "rank": r_k, "dim_im_prev": im_prev, "ok": good})
    factors = {}
    for k in range(n + 1):
        # V(ω_k) ⊃ ker d_k: the submodule factor is ker d_k, the quotient factor is im d_k
        factors[f"V(omega_{k})"] = {
            "sub_factor_dims": [r["dim_ker"] for r in rows if r["k"] == k],
            "quotient_factor_dims": [r["rank"] for r in rows if r["k"] == k],
        }
    return {"kind": kind.label, "mode": "full", "max_degree": max_degree, "rows": rows, "factors": factors,
            "conservation_ok": ok}


def graded_character(M: GradedLCModule) -> Dict[int, Dict[Tuple[int, ...], int]]:
    """Per-degree weight multiplicities; the Cartan action is checked to be diagonal."""
    g0 = g0_data(M.kind)
    out: Dict[int, Dict[Tuple[int, ...], int]] = {}
    for i in M.window.degrees():
        if not M.dim(i):
            continue
        mats = M.g0_matrices(i)
        for c in g0.cartan:
            for r, col, _ in mats[c].entries():
                if r != col:
                    raise ValueError(f"Cartan element {c} is not diagonal in degree {i}")
        tab: Dict[Tuple[int, ...], int] = {}
        for w in M.weights(i):
            tab[tuple(w)] = tab.get(tuple(w), 0) + 1
        out[i] = dict(sorted(tab.items()))
    return out
