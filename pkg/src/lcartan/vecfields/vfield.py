"""Polynomial vector fields Σ f_i ∂_i and the generator families D_ij, D_H."""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Sequence, Tuple

from ..exactcore.poly import Mono, Poly, dim_R, mono_index
from ..exactcore.rational import Rat

__all__ = ["VField", "bracket", "divergence", "d_ij", "d_h", "sigma", "prime"]


class VField:
    """An element of W(n); ``comps[i]`` is the coefficient of ∂_{i+1}."""

    __slots__ = ("n", "comps", "_hash")

    def __init__(self, comps: Sequence[Poly]):
        comps = tuple(comps)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        n = comps[0].n
        if len(comps) != n or any(c.n != n for c in comps):
            raise ValueError("components must be n polynomials in n variables")
        self.n = n
        self.comps = comps
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "VField":
        return cls([Poly.zero(n)] * n)

    @classmethod
    def term(cls, n: int, alpha: Iterable[int], i: int, c: Rat = 1) -> "VField":
        """c*x^alpha ∂_{i+1} (zero if alpha has a negative entry)."""
        comps = [Poly.zero(n)] * n
        comps[i] = Poly.monomial(n, alpha, c)
        return cls(comps)

    @classmethod
    def partial(cls, n: int, i: int) -> "VField":
        return cls.term(n, (0,) * n, i)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "VField"):
        if not isinstance(other, VField):
            raise TypeError(f"expected VField, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "VField") -> "VField":
        self._check(other)
        return VField([a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "VField") -> "VField":
        self._check(other)
        return VField([a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> "VField":
        return VField([-a for a in self.comps])

    def scale(self, c: Rat) -> "VField":
        return VField([a.scale(c) for a in self.comps])

    def apply(self, g: Poly) -> Poly:
        """X(g) = Σ f_i ∂_i g."""
        out = Poly.zero(self.n)
        for i, f in enumerate(self.comps):
            if not f.is_zero():
                dg = g.diff(i)
                if not dg.is_zero():
                    out = out + f * dg
        return out

    def bracket(self, other: "VField") -> "VField":
        """[X, Y] = Σ_j (X(g_j) − Y(f_j)) ∂_j."""
        self._check(other)
        return VField([self.apply(g) - other.apply(f) for f, g in zip(self.comps, other.comps)])

    def divergence(self) -> Poly:
        out = Poly.zero(self.n)
        for i, f in enumerate(self.comps):
            out = out + f.diff(i)
        return out

    # -- grading ------------------------------------------------------
    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def degrees(self) -> set:
        return {sum(m) - 1 for c in self.comps for m in c.terms}

    def degree(self) -> Optional[int]:
        """Degree of a homogeneous field (deg f_i − 1); None for 0; error if mixed."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("field is not homogeneous")
        return next(iter(ds))

    def homogeneous_component(self, k: int) -> "VField":
        return VField([c.graded_component(k + 1) for c in self.comps])

    def gl_weight(self) -> Optional[Tuple[int, ...]]:
        """Common weight α − ε_i of all terms x^α ∂_i, or None if not a weight vector."""
        w = None
        for i, c in enumerate(self.comps):
            for m in c.terms:
                v = list(m)
                v[i] -= 1
                v = tuple(v)
                if w is None:
                    w = v
                elif v != w:
                    return None
        return w

    def w_coordinates(self, k: int) -> Dict[int, Rat]:
        """Coordinates in the monomial basis {x^α ∂_i : |α| = k+1} of W(n)_k.

        Index (i, α) ↦ i·dim R_{k+1} + position of α; the field must be
        homogeneous of degree k.
        """
        d = k + 1
        N = dim_R(self.n, d)
        idx = mono_index(self.n, d)
        out: Dict[int, Rat] = {}
        for i, c in enumerate(self.comps):
            for m, v in c.terms.items():
                if sum(m) != d:
                    raise ValueError(f"term of degree {sum(m) - 1} in a degree-{k} coordinate request")
                out[i * N + idx[m]] = v
        return out

    # -- comparison / text --------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, VField) and self.comps == other.comps

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.comps)
        return self._hash

    def to_text(self) -> str:
        parts = []
        for i, c in enumerate(self.comps):
            if c.is_zero():
                continue
            t = c.to_text()
            if len(c.terms) > 1:
                t = f"({t})"
            parts.append(f"{t}*d{i + 1}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"VField({self.to_text()})"


def bracket(X: VField, Y: VField) -> VField:
    return X.bracket(Y)


def divergence(X: VField) -> Poly:
    return X.divergence()


def d_ij(i: int, j: int, alpha: Mono) -> VField:
    """D_ij(x^α) = α_j x^{α−ε_j} ∂_i − α_i x^{α−ε_i} ∂_j (1-based i < j)."""
    n = len(alpha)
    if not (1 <= i < j <= n):
        raise IndexError(f"D_ij needs 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    a = list(alpha)
    i0, j0 = i - 1, j - 1
    comps = [Poly.zero(n)] * n
    aj = a.copy()
    aj[j0] -= 1
    ai = a.copy()
    ai[i0] -= 1
    comps[i0] = Poly.monomial(n, aj, alpha[j0])
    comps[j0] = Poly.monomial(n, ai, -alpha[i0])
    return VField(comps)


def sigma(i: int, r: int) -> int:
    """σ(i) = 1 for i ≤ r, −1 otherwise (1-based)."""
    return 1 if i <= r else -1


def prime(i: int, r: int) -> int:
    """i′ = i + r for i ≤ r, i − r otherwise (1-based)."""
    return i + r if i <= r else i - r


def d_h(alpha: Mono) -> VField:
    """D_H(x^α) = Σ_i σ(i) ∂_i(x^α) ∂_{i′} on n = 2r variables, α ≠ 0."""
    n = len(alpha)
    if n % 2:
        raise ValueError("D_H needs an even number of variables")
    if not any(alpha):
        raise ValueError("D_H(x^0) is excluded (α must be nonzero)")
    r = n // 2
    x = Poly.monomial(n, alpha)
    comps = [Poly.zero(n)] * n
    for i in range(1, n + 1):
        ip = prime(i, r)
        comps[ip - 1] = comps[ip - 1] + x.diff(i - 1).scale(sigma(i, r))
    return VField(comps)
