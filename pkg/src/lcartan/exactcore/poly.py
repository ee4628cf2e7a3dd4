"""Sparse multivariate polynomials over the rationals.

A monomial is a tuple of ``n`` nonnegative exponents.  Any formula producing
a negative exponent yields the zero polynomial: :func:`monomial` returns 0
rather than raising, which is what the prolongation formulas rely on.

Ordering is graded-lex everywhere.  Within a fixed degree the monomials are
listed with ``x1`` heaviest first, e.g. ``x1^2, x1*x2, x2^2``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .rational import Rat, normalize, rat_from_str, rat_to_str

Mono = Tuple[int, ...]

__all__ = [
    "Mono",
    "Poly",
    "monomials",
    "mono_index",
    "dim_R",
    "grlex_key",
    "poly_mul",
    "poly_partial",
    "graded_component",
]


def grlex_key(a: Mono):
    """Sort key putting monomials in ascending graded-lex order."""
    return (sum(a), a)


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> Tuple[Mono, ...]:
    """All exponent vectors of total degree ``d`` in ``n`` variables.

    Listed in descending lex order (``x1^d`` first); this is the basis order
    of ``R_d`` used throughout.
    """
    if d < 0:
        return ()
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for e in range(d, -1, -1):
        for rest in monomials(n - 1, d - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def mono_index(n: int, d: int) -> Dict[Mono, int]:
    return {m: i for i, m in enumerate(monomials(n, d))}


def dim_R(n: int, d: int) -> int:
    """dim R_d = C(d+n-1, n-1)."""
    if d < 0:
        return 0
    return comb(d + n - 1, n - 1)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps monomials to nonzero rationals."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Mono, Rat] | None = None, *, _trusted: bool = False):
        self.n = n
        if _trusted:
            self.terms = terms  # type: ignore[assignment]
        else:
            clean: Dict[Mono, Rat] = {}
            for m, c in (terms or {}).items():
                if len(m) != n:
                    raise ValueError(f"monomial {m} has wrong length for n={n}")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                if c != 0:
                    clean[tuple(m)] = normalize(c)
            self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls(n, {}, _trusted=True)

    @classmethod
    def const(cls, n: int, c: Rat = 1) -> "Poly":
        return cls(n, {(0,) * n: c} if c != 0 else {}, _trusted=True)

    @classmethod
    def one(cls, n: int) -> "Poly":
        return cls.const(n, 1)

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        """The variable x_{i+1} (``i`` is 0-based)."""
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1}, _trusted=True)

    @classmethod
    def monomial(cls, n: int, alpha: Iterable[int], c: Rat = 1) -> "Poly":
        """c*x^alpha, or 0 when some exponent is negative (the x^alpha=0 convention)."""
        alpha = tuple(alpha)
        if len(alpha) != n:
            raise ValueError(f"monomial {alpha} has wrong length for n={n}")
        if c == 0 or any(e < 0 for e in alpha):
            return cls.zero(n)
        return cls(n, {alpha: normalize(c)}, _trusted=True)

    # -- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def coeff(self, alpha: Mono) -> Rat:
        return self.terms.get(tuple(alpha), 0)

    def items(self) -> Iterator[Tuple[Mono, Rat]]:
        return iter(self.terms.items())

    def sorted_terms(self):
        """Terms in descending graded-lex order (leading term first)."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def constant_term(self) -> Rat:
        return self.terms.get((0,) * self.n, 0)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.n, out, _trusted=True)

    def __neg__(self) -> "Poly":
        return Poly(self.n, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c: Rat) -> "Poly":
        if c == 0:
            return Poly.zero(self.n)
        return Poly(self.n, {m: normalize(v * c) for m, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: Dict[Mono, Rat] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(self.n, {m: normalize(c) for m, c in out.items()}, _trusted=True)

    def __rmul__(self, c):
        return self.scale(c)

    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to x_{i+1} (0-based ``i``)."""
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for n={self.n}")
        out: Dict[Mono, Rat] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                out[mm] = c * e
        return Poly(self.n, out, _trusted=True)

    def graded_component(self, d: int) -> "Poly":
        return Poly(self.n, {m: c for m, c in self.terms.items() if sum(m) == d}, _trusted=True)

    def mul_mono(self, alpha: Mono, c: Rat = 1) -> "Poly":
        """Multiply by c*x^alpha (cheap path used by module constructions)."""
        return Poly(self.n, {tuple(a + b for a, b in zip(m, alpha)): normalize(v * c)
                             for m, v in self.terms.items()}, _trusted=True)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # -- text ---------------------------------------------------------
    def to_text(self) -> str:
        """Canonical text form ``c*x1^a1*...*xn^an + ...`` in graded-lex order."""
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [rat_to_str(c)]
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    _TERM_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")

    @classmethod
    def from_text(cls, n: int, text: str) -> "Poly":
        """Parse the canonical text form (also accepts terms without a coefficient)."""
        text = text.strip()
        if text == "0":
            return cls.zero(n)
        out: Dict[Mono, Rat] = {}
        for raw in text.split(" + "):
            factors = raw.strip().split("*")
            c: Rat = 1
            e = [0] * n
            for f in factors:
                f = f.strip()
                mt = cls._TERM_RE.match(f)
                if mt:
                    i = int(mt.group(1)) - 1
                    if not 0 <= i < n:
                        raise ValueError(f"variable x{i + 1} out of range for n={n}")
                    e[i] += int(mt.group(2) or 1)
                else:
                    c = c * rat_from_str(f)
            m = tuple(e)
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return cls(n, out)

    def __repr__(self) -> str:
        return f"Poly({self.to_text()})"


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_partial(a: Poly, i: int) -> Poly:
    """∂_i a with the variable index ``i`` 1-based as in x_1..x_n."""
    if not 1 <= i <= a.n:
        raise IndexError(f"variable index {i} out of range 1..{a.n}")
    return a.diff(i - 1)


def graded_component(a: Poly, d: int) -> Poly:
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return a.graded_component(d)
