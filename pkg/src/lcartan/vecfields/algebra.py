"""The graded Lie algebras W(n), S(n), H(n): bases, coordinates, g₀ data.

Letters ``(k, idx)`` name the basis element ``idx`` of ``g_k``; the algebra
object caches bases, coordinate solvers and structure constants lazily, so
any degree can be requested on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..exactcore.linalg import inverse, rref
from ..exactcore.poly import Poly, dim_R, monomials
from ..exactcore.rational import Rat
from ..exactcore.sparse import SparseMat, Vec
from .vfield import VField, d_h, d_ij

Letter = Tuple[int, int]
Weight = Tuple[int, ...]

__all__ = [
    "AlgebraKind",
    "NotInAlgebra",
    "Letter",
    "GradedLieAlgebra",
    "get_algebra",
    "basis_of_degree",
    "is_member",
    "TriangularData",
    "triangular",
    "G0Data",
    "g0_data",
    "g0_structure_check",
    "exceptional_weights",
    "field_weight",
]


def field_weight(kind: "AlgebraKind", X: VField) -> Optional[Weight]:
    """Common h-weight of all terms of X in the kind's coordinates (None if mixed)."""
    w = None
    for i, c in enumerate(X.comps):
        for m in c.terms:
            v = list(m)
            v[i] -= 1
            pw = kind.project_weight(v)
            if w is None:
                w = pw
            elif pw != w:
                return None
    return w


class NotInAlgebra(ValueError):
    """Raised when a field is not in the span of the requested graded basis."""


@dataclass(frozen=True, order=True)
class AlgebraKind:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in ("W", "S", "H"):
            raise ValueError(f"unknown family {self.family!r}; expected W, S or H")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.family == "S" and self.n < 2:
            raise ValueError("S(n) needs n >= 2 (S(1) is trivial and D_ij does not exist)")
        if self.family == "H" and self.n % 2:
            raise ValueError(f"H(n) needs even n, got n={self.n}")

    @classmethod
    def parse(cls, text: str) -> "AlgebraKind":
        text = text.strip()
        return cls(text[0].upper(), int(text[1:].strip("()")))

    @property
    def r(self) -> int:
        return self.n // 2

    @property
    def label(self) -> str:
        return f"{self.family}({self.n})"

    @property
    def g0_name(self) -> str:
        return {"W": f"gl({self.n})", "S": f"sl({self.n})", "H": f"sp({self.n})"}[self.family]

    @property
    def weight_length(self) -> int:
        return self.r if self.family == "H" else self.n

    def project_weight(self, glw: Sequence[int]) -> Weight:
        """Weight of a gl-weight vector, in this kind's ε-coordinates.

        W: unchanged; S: canonical representative with last coordinate 0;
        H: eigenvalues of x_i∂_i − x_{i+r}∂_{i+r}.
        """
        glw = tuple(glw)
        if self.family == "W":
            return glw
        if self.family == "S":
            return tuple(v - glw[-1] for v in glw)
        r = self.r
        return tuple(glw[i] - glw[i + r] for i in range(r))

    def normalize_weight(self, lam: Sequence[int]) -> Weight:
        """Validate the length of ``lam``; for S reduce modulo (1,…,1)."""
        lam = tuple(int(v) for v in lam)
        if len(lam) != self.weight_length:
            raise ValueError(f"{self.g0_name} weights have length {self.weight_length}, got {lam}")
        if self.family == "S":
            return tuple(v - lam[-1] for v in lam)
        return lam


def _w_basis(n: int, k: int) -> List[VField]:
    return [VField.term(n, a, i) for i in range(n) for a in monomials(n, k + 1)]


def _fields_from_rows(n: int, k: int, rows: Sequence[Mapping[int, Rat]]) -> List[VField]:
    d = k + 1
    mons = monomials(n, d)
    N = len(mons)
    out = []
    for r in rows:
        comps = [dict() for _ in range(n)]
        for idx, v in r.items():
            comps[idx // N][mons[idx % N]] = v
        out.append(VField([Poly(n, c) for c in comps]))
    return out


class GradedLieAlgebra:
    """Lazily built graded basis, coordinates and structure constants of a kind."""

    def __init__(self, kind: AlgebraKind):
        self.kind = kind
        self.n = kind.n
        self._basis: Dict[int, List[VField]] = {}
        self._solver: Dict[int, Tuple[List[int], SparseMat]] = {}
        self._br: Dict[Tuple[Letter, Letter], Dict[Letter, Rat]] = {}
        self._weights: Dict[Letter, Weight] = {}
        self._s_span: Dict[int, List[Tuple[Tuple[int, int, Tuple[int, ...]], VField]]] = {}

    # -- bases --------------------------------------------------------
    def basis(self, k: int) -> List[VField]:
        if k < -1:
            return []
        b = self._basis.get(k)
        if b is None:
            b = self._build_basis(k)
            self._basis[k] = b
        return b

    def _build_basis(self, k: int) -> List[VField]:
        n, fam = self.n, self.kind.family
        if fam == "W":
            return _w_basis(n, k)
        if fam == "H":
            return [d_h(a) for a in monomials(n, k + 2)]
        rows = [X.w_coordinates(k) for _, X in self.s_spanning_set(k)]
        rows = [r for r in rows if r]
        _, red = rref(rows, n * dim_R(n, k + 1))
        return _fields_from_rows(n, k, red)

    def s_spanning_set(self, k: int):
        """The spanning family {D_ij(x^α) : i<j, |α| = k+2} of S(n)_k."""
        if self.kind.family != "S":
            raise ValueError("spanning set D_ij is specific to S(n)")
        got = self._s_span.get(k)
        if got is None:
            got = []
            for i, j in combinations(range(1, self.n + 1), 2):
                for a in monomials(self.n, k + 2):
                    X = d_ij(i, j, a)
                    if not X.is_zero():
                        got.append(((i, j, a), X))
            self._s_span[k] = got
        return got

    def dim(self, k: int) -> int:
        return len(self.basis(k))

    def letters(self, kmin: int, kmax: int) -> List[Letter]:
        return [(k, i) for k in range(max(kmin, -1), kmax + 1) for i in range(self.dim(k))]

    def field(self, letter: Letter) -> VField:
        return self.basis(letter[0])[letter[1]]

    def letter_label(self, letter: Letter) -> str:
        return f"g{letter[0]}[{letter[1]}]"

    # -- coordinates --------------------------------------------------
    def _get_solver(self, k: int):
        s = self._solver.get(k)
        if s is None:
            rows = [X.w_coordinates(k) for X in self.basis(k)]
            N = self.n * dim_R(self.n, k + 1)
            piv, _ = rref(rows, N)
            r = len(rows)
            if len(piv) != r:
                raise RuntimeError(f"basis of degree {k} is not linearly independent")
            BP = SparseMat.from_dense([[row.get(p, 0) for p in piv] for row in rows]) if r else SparseMat.zero(0, 0)
            inv = inverse(BP) if r else BP
            s = (piv, inv)
            self._solver[k] = s
        return s

    def coords(self, X: VField, k: int) -> Dict[int, Rat]:
        """Coordinates of a homogeneous degree-k field in ``basis(k)``.

        Raises :class:`NotInAlgebra` when X is not in the span.
        """
        if X.is_zero():
            return {}
        x = X.w_coordinates(k)
        if k < -1:
            raise NotInAlgebra("no basis below degree -1")
        if self.kind.family == "W":
            return dict(sorted(x.items()))
        piv, inv = self._get_solver(k)
        xp = {i: x[p] for i, p in enumerate(piv) if p in x}
        # c = x_P · inv, i.e. c_j = Σ_i xp_i inv[i, j]
        c = inv.transpose().apply(xp)
        recon: Dict[int, Rat] = {}
        for j, v in c.items():
            for idx, w in self.basis(k)[j].w_coordinates(k).items():
                t = recon.get(idx, 0) + v * w
                if t:
                    recon[idx] = t
                else:
                    recon.pop(idx, None)
        if recon != {i: v for i, v in x.items() if v != 0}:
            raise NotInAlgebra(f"{X.to_text()} is not in {self.kind.label}_{k}")
        return dict(sorted(c.items()))

    def element(self, k: int, coords: Mapping[int, Rat]) -> VField:
        out = VField.zero(self.n)
        for j, c in coords.items():
            out = out + self.basis(k)[j].scale(c)
        return out

    def bracket_letters(self, a: Letter, b: Letter) -> Dict[Letter, Rat]:
        """Structure constants: [a, b] as a combination of letters."""
        key = (a, b)
        got = self._br.get(key)
        if got is None:
            k = a[0] + b[0]
            if k < -1:
                got = {}
            else:
                Z = self.field(a).bracket(self.field(b))
                got = {(k, j): v for j, v in self.coords(Z, k).items()}
            self._br[key] = got
        return got

    def weight(self, letter: Letter) -> Weight:
        """h-weight of a letter in the kind's ε-coordinates."""
        w = self._weights.get(letter)
        if w is None:
            w = field_weight(self.kind, self.field(letter))
            if w is None:
                raise RuntimeError(f"basis element {letter} is not an h-weight vector")
            self._weights[letter] = w
        return w

    def gl_weight(self, letter: Letter) -> Weight:
        glw = self.field(letter).gl_weight()
        if glw is None:
            raise RuntimeError(f"basis element {letter} is not a gl-weight vector")
        return glw


@lru_cache(maxsize=None)
def get_algebra(kind: AlgebraKind) -> GradedLieAlgebra:
    return GradedLieAlgebra(kind)


def basis_of_degree(kind: AlgebraKind, k: int) -> List[VField]:
    if k < -1:
        raise ValueError("degrees start at -1")
    return list(get_algebra(kind).basis(k))


def is_member(kind: AlgebraKind, X: VField) -> bool:
    """Membership of X in the kind, decided degree by degree."""
    if X.n != kind.n:
        return False
    if kind.family == "W":
        return True
    if kind.family == "S":
        return X.divergence().is_zero()
    alg = get_algebra(kind)
    for k in sorted(X.degrees()):
        try:
            alg.coords(X.homogeneous_component(k), k)
        except NotInAlgebra:
            return False
    return True


# ---------------------------------------------------------------------------
# g₀: triangular decomposition and the matrix realisation x_i∂_j ↦ E_ij
# ---------------------------------------------------------------------------

def _xd(n: int, i: int, j: int, c: Rat = 1) -> VField:
    """c * x_i ∂_j (1-based)."""
    a = [0] * n
    a[i - 1] = 1
    return VField.term(n, a, j - 1, c)


@dataclass
class TriangularData:
    kind: AlgebraKind
    nminus: List[VField]
    h: List[VField]
    nplus: List[VField]
    neg_roots: List[Weight]
    pos_roots: List[Weight]
    epsilon: List[Weight] = field(default_factory=list)

    def all(self) -> List[VField]:
        return self.nminus + self.h + self.nplus


def triangular(kind: AlgebraKind) -> TriangularData:
    n, fam = kind.n, kind.family
    nminus: List[VField] = []
    nplus: List[VField] = []
    h: List[VField] = []
    if fam in ("W", "S"):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if j < i:
                    nminus.append(_xd(n, i, j))
                elif i < j:
                    nplus.append(_xd(n, i, j))
        if fam == "W":
            h = [_xd(n, i, i) for i in range(1, n + 1)]
        else:
            cand = [_xd(n, i, i) - _xd(n, j, j) for i, j in combinations(range(1, n + 1), 2)]
            rows: List[Vec] = []
            for X in cand:
                if len(rref(rows + [X.w_coordinates(0)], n * n)[0]) > len(rows):
                    rows.append(X.w_coordinates(0))
                    h.append(X)
    else:
        r = kind.r
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                X = _xd(n, i, j) - _xd(n, j + r, i + r)
                if i < j:
                    nplus.append(X)
                elif j < i:
                    nminus.append(X)
        for s in range(1, r + 1):
            for t in range(s, r + 1):
                nplus.append(_xd(n, s, t + r) + _xd(n, t, s + r))
                nminus.append(_xd(n, s + r, t) + _xd(n, t + r, s))
        h = [_xd(n, i, i) - _xd(n, i + r, i + r) for i in range(1, r + 1)]
    # h must commute and act diagonally on the root vectors
    for a in h:
        for b in h:
            if not a.bracket(b).is_zero():
                raise RuntimeError("Cartan subalgebra is not abelian")
    neg = [field_weight(kind, X) for X in nminus]
    pos = [field_weight(kind, X) for X in nplus]
    if any(w is None for w in neg + pos):
        raise RuntimeError("a listed root vector is not an h-weight vector")
    if len(nminus) != len(nplus):
        raise RuntimeError("dim n- != dim n+")
    L = kind.weight_length
    eps = [tuple(1 if t == i else 0 for t in range(L)) for i in range(L)]
    return TriangularData(kind, nminus, h, nplus, neg, pos, eps)


def _field_matrix(X: VField) -> List[List[Rat]]:
    """Matrix of a degree-0 field under x_i∂_j ↦ E_ij."""
    n = X.n
    M = [[0] * n for _ in range(n)]
    for j, c in enumerate(X.comps):
        for m, v in c.terms.items():
            if sum(m) != 1:
                raise ValueError("not a degree-0 field")
            i = m.index(1)
            M[i][j] = v
    return M


def _matmul(A, B):
    n = len(A)
    return [[sum(A[i][t] * B[t][j] for t in range(n)) for j in range(n)] for i in range(n)]


def _commutator(A, B):
    AB, BA = _matmul(A, B), _matmul(B, A)
    n = len(A)
    return [[AB[i][j] - BA[i][j] for j in range(n)] for i in range(n)]


class G0Data:
    """g₀ with the triangular basis n⁻ ∪ h ∪ n⁺ (in that order)."""

    def __init__(self, kind: AlgebraKind):
        self.kind = kind
        self.tri = triangular(kind)
        self.basis: List[VField] = self.tri.all()
        self.n_minus = len(self.tri.nminus)
        self.n_h = len(self.tri.h)
        self.dim = len(self.basis)
        rows = [X.w_coordinates(0) for X in self.basis]
        N = kind.n * kind.n
        piv, _ = rref(rows, N)
        if len(piv) != self.dim:
            raise RuntimeError("triangular basis of g0 is not independent")
        self._piv = piv
        self._inv = inverse(SparseMat.from_dense([[r.get(p, 0) for p in piv] for r in rows]))
        self._rows = rows
        self.structure: Dict[Tuple[int, int], Dict[int, Rat]] = {}
        for a in range(self.dim):
            for b in range(self.dim):
                self.structure[(a, b)] = self.coords(self.basis[a].bracket(self.basis[b]))
        self.weights: List[Weight] = [field_weight(kind, X) for X in self.basis]
        self.labels: List[str] = [X.to_text() for X in self.basis]

    @property
    def lowering(self) -> List[int]:
        return list(range(self.n_minus))

    @property
    def cartan(self) -> List[int]:
        return list(range(self.n_minus, self.n_minus + self.n_h))

    @property
    def raising(self) -> List[int]:
        return list(range(self.n_minus + self.n_h, self.dim))

    def coords(self, X: VField) -> Dict[int, Rat]:
        """Coordinates of a degree-0 field in the triangular basis (NotInAlgebra if absent)."""
        if X.is_zero():
            return {}
        x = X.w_coordinates(0)
        xp = {i: x[p] for i, p in enumerate(self._piv) if p in x}
        c = self._inv.transpose().apply(xp)
        recon: Dict[int, Rat] = {}
        for j, v in c.items():
            for idx, w in self._rows[j].items():
                t = recon.get(idx, 0) + v * w
                if t:
                    recon[idx] = t
                else:
                    recon.pop(idx, None)
        if recon != {i: v for i, v in x.items() if v != 0}:
            raise NotInAlgebra(f"{X.to_text()} is not in {self.kind.g0_name}")
        return dict(sorted(c.items()))

    def coords_gl(self, C: Mapping[Tuple[int, int], Rat]) -> Dict[int, Rat]:
        """Coordinates of Σ C[(i,j)] x_i∂_j (0-based i, j)."""
        n = self.kind.n
        comps = [dict() for _ in range(n)]
        for (i, j), v in C.items():
            if v:
                a = [0] * n
                a[i] = 1
                comps[j][tuple(a)] = comps[j].get(tuple(a), 0) + v
        return self.coords(VField([Poly(n, c) for c in comps]))

    def cartan_eigen_to_weight(self, eig: Sequence[Rat]) -> Weight:
        """Convert eigenvalues of the h basis into kind weight coordinates."""
        fam, n = self.kind.family, self.kind.n
        if fam == "W" or fam == "H":
            return tuple(int(e) for e in eig)
        # S: h basis elements are e_i − e_j; solve for λ with λ_n = 0
        diag = [[row[t][t] for t in range(n)] for row in (_field_matrix(X) for X in self.tri.h)]
        # Unknown λ_1..λ_{n-1}; equations: Σ_t diag[b][t] λ_t = eig[b]
        rows = []
        for b, dvec in enumerate(diag):
            r = {t: dvec[t] for t in range(n - 1) if dvec[t]}
            r[n - 1] = eig[b]
            rows.append(r)
        piv, red = rref(rows, n)
        lam = [0] * n
        for p, r in zip(piv, red):
            if p == n - 1:
                raise ValueError("inconsistent Cartan eigenvalues")
            lam[p] = r.get(n - 1, 0)
        return tuple(int(v) for v in lam)


@lru_cache(maxsize=None)
def g0_data(kind: AlgebraKind) -> G0Data:
    return G0Data(kind)


def g0_structure_check(kind: AlgebraKind) -> dict:
    """Certify that x_i∂_j ↦ E_ij maps g₀ isomorphically onto gl/sl/sp.

    Compares the matrix commutator of every image pair against the image of
    the vector-field bracket, checks injectivity, the defining condition of
    the target (trace zero / symplectic), and the dimension of the target.
    """
    g0 = g0_data(kind)
    n = kind.n
    mats = [_field_matrix(X) for X in g0.basis]
    failures = []
    for a in range(g0.dim):
        for b in range(g0.dim):
            lhs = _field_matrix(g0.basis[a].bracket(g0.basis[b])) if not g0.basis[a].bracket(g0.basis[b]).is_zero() else [[0] * n for _ in range(n)]
            rhs = _commutator(mats[a], mats[b])
            if lhs != rhs:
                failures.append([g0.labels[a], g0.labels[b]])
    flat = [{i * n + j: M[i][j] for i in range(n) for j in range(n) if M[i][j]} for M in mats]
    rank_img = len(rref(flat, n * n)[0])
    fam = kind.family
    cond_ok = True
    if fam == "S":
        cond_ok = all(sum(M[i][i] for i in range(n)) == 0 for M in mats)
        target_dim = n * n - 1
    elif fam == "H":
        r = kind.r
        J = [[0] * n for _ in range(n)]
        for i in range(r):
            J[i][i + r] = 1
            J[i + r][i] = -1
        for M in mats:
            Mt = [[M[j][i] for j in range(n)] for i in range(n)]
            S1, S2 = _matmul(Mt, J), _matmul(J, M)
            if any(S1[i][j] + S2[i][j] for i in range(n) for j in range(n)):
                cond_ok = False
        target_dim = r * (2 * r + 1)
    else:
        target_dim = n * n
    alg = get_algebra(kind)
    return {
        "kind": kind.label,
        "target": kind.g0_name,
        "dim_g0": g0.dim,
        "dim_g0_graded_basis": alg.dim(0),
        "target_dim": target_dim,
        "rank_of_image": rank_img,
        "defining_condition": cond_ok,
        "bracket_mismatches": failures,
        "isomorphism": (not failures) and cond_ok and rank_img == g0.dim == target_dim == alg.dim(0),
    }


def exceptional_weights(kind: AlgebraKind) -> List[Weight]:
    """ω_k = ε₁+…+ε_k for k = 0..n′ (n′ = n−1 for W, S and n/2 for H)."""
    L = kind.weight_length
    top = kind.n - 1 if kind.family in ("W", "S") else kind.r
    return [kind.normalize_weight(tuple(1 if i < k else 0 for i in range(L))) for k in range(top + 1)]


def algebra_suite(kind: AlgebraKind, kmin: int = -1, kmax: int = 3) -> dict:
    """Windowed soundness: grading, closure and Jacobi on the basis letters of degrees kmin..kmax.

    Closure: every bracket of two basis fields is homogeneous of the summed
    degree, lies in the algebra, and equals the combination given by its
    exact coordinates.  Jacobi is then checked on those verified structure
    constants for every unordered triple of distinct letters (repeats and
    reorderings follow from antisymmetry).
    """
    alg = get_algebra(kind)
    letters = alg.letters(kmin, kmax)
    closure_fail = []
    grading_fail = []
    for ia, a in enumerate(letters):
        for b in letters[ia:]:
            Z = alg.field(a).bracket(alg.field(b))
            k = a[0] + b[0]
            if not Z.is_zero() and Z.degrees() != {k}:
                grading_fail.append([alg.letter_label(a), alg.letter_label(b)])
                continue
            try:
                c = alg.bracket_letters(a, b)
            except NotInAlgebra:
                closure_fail.append([alg.letter_label(a), alg.letter_label(b)])
                continue
            if not Z.is_zero() and (alg.element(k, {j: v for (_, j), v in c.items()}) != Z or not is_member(kind, Z)):
                closure_fail.append([alg.letter_label(a), alg.letter_label(b)])

    def br(u: Mapping[Letter, Rat], v: Mapping[Letter, Rat]) -> Dict[Letter, Rat]:
        out: Dict[Letter, Rat] = {}
        for x, cx in u.items():
            for y, cy in v.items():
                if x[0] + y[0] < -1:
                    continue
                for z, cz in alg.bracket_letters(x, y).items():
                    t = out.get(z, 0) + cx * cy * cz
                    if t:
                        out[z] = t
                    else:
                        out.pop(z, None)
        return out

    jacobi_fail = []
    triples = 0
    for ia, a in enumerate(letters):
        for ib in range(ia + 1, len(letters)):
            b = letters[ib]
            ab = alg.bracket_letters(a, b)
            for c in letters[ib + 1:]:
                triples += 1
                tot: Dict[Letter, Rat] = {}
                for part in (br({a: 1}, alg.bracket_letters(b, c)), br({b: 1}, alg.bracket_letters(c, a)),
                             br({c: 1}, ab)):
                    for z, v in part.items():
                        tot[z] = tot.get(z, 0) + v
                if any(tot.values()):
                    jacobi_fail.append([alg.letter_label(a), alg.letter_label(b), alg.letter_label(c)])
    g0 = g0_structure_check(kind)
    return {
        "kind": kind.label,
        "window": [kmin, kmax],
        "dims": {str(k): alg.dim(k) for k in range(max(kmin, -1), kmax + 1)},
        "letters": len(letters),
        "pairs_checked": len(letters) * (len(letters) + 1) // 2,
        "triples_checked": triples,
        "grading_failures": grading_fail,
        "closure_failures": closure_fail,
        "jacobi_failures": jacobi_fail[:10],
        "jacobi_failure_count": len(jacobi_fail),
        "g0_isomorphism": g0["isomorphism"],
        "g0_target": g0["target"],
        "ok": not grading_fail and not closure_fail and not jacobi_fail and g0["isomorphism"],
    }
