"""Weights of gl(n), sl(n), sp(2r): dominance, Weyl dimension, Freudenthal multiplicities.

Weights are integer tuples in ε-coordinates (length n for gl/sl, r for sp);
sl weights use the representative with last coordinate 0.  These routines
form an independent oracle for the concrete modules of :mod:`.module`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, List, Sequence, Tuple

from ..vecfields.algebra import AlgebraKind

Weight = Tuple[int, ...]

__all__ = [
    "Weight",
    "is_dominant",
    "check_dominant",
    "positive_roots",
    "simple_roots",
    "rho",
    "height",
    "dominant_rep",
    "weyl_orbit",
    "weyl_dimension",
    "freudenthal_multiplicities",
    "gl_representative",
]


def gl_representative(kind: AlgebraKind, lam: Sequence[int]) -> Weight:
    """A vector in Z^n whose diagonal pairing reproduces the Cartan eigenvalues."""
    lam = tuple(lam)
    if kind.family == "H":
        return lam + (0,) * kind.r
    return lam


def is_dominant(kind: AlgebraKind, lam: Sequence[int]) -> bool:
    lam = kind.normalize_weight(lam)
    ok = all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))
    if kind.family == "H":
        ok = ok and lam[-1] >= 0
    return ok


def check_dominant(kind: AlgebraKind, lam: Sequence[int]) -> Weight:
    lam = kind.normalize_weight(lam)
    if not is_dominant(kind, lam):
        raise ValueError(f"weight {lam} is not dominant for {kind.g0_name}")
    return lam


@lru_cache(maxsize=None)
def positive_roots(kind: AlgebraKind) -> Tuple[Weight, ...]:
    L = kind.weight_length

    def e(i):
        return tuple(1 if t == i else 0 for t in range(L))

    out = []
    for i in range(L):
        for j in range(i + 1, L):
            out.append(tuple(a - b for a, b in zip(e(i), e(j))))
    if kind.family == "H":
        for i in range(L):
            for j in range(i + 1, L):
                out.append(tuple(a + b for a, b in zip(e(i), e(j))))
        for i in range(L):
            out.append(tuple(2 * a for a in e(i)))
    return tuple(out)


@lru_cache(maxsize=None)
def simple_roots(kind: AlgebraKind) -> Tuple[Weight, ...]:
    L = kind.weight_length
    out = []
    for i in range(L - 1):
        out.append(tuple(1 if t == i else (-1 if t == i + 1 else 0) for t in range(L)))
    if kind.family == "H":
        out.append(tuple(2 if t == L - 1 else 0 for t in range(L)))
    return tuple(out)


def rho(kind: AlgebraKind) -> Weight:
    L = kind.weight_length
    if kind.family == "H":
        return tuple(L - i for i in range(L))
    return tuple(L - 1 - i for i in range(L))


def _height_functional(kind: AlgebraKind) -> Tuple[Fraction, ...]:
    L = kind.weight_length
    if kind.family == "H":
        return tuple(Fraction(2 * (L - i) - 1, 2) for i in range(L))
    # centred so that it also vanishes on (1,…,1): sl weights are classes mod that vector
    return tuple(Fraction(L - 1 - 2 * i, 2) for i in range(L))


def height(kind: AlgebraKind, gamma: Sequence[int]) -> Fraction:
    """Sum of simple-root coefficients of a root-lattice vector."""
    return sum((Fraction(g) * h for g, h in zip(gamma, _height_functional(kind))), Fraction(0))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def dominant_rep(kind: AlgebraKind, mu: Sequence[int]) -> Weight:
    """The dominant element of the Weyl orbit of ``mu`` (gl representative kept)."""
    if kind.family == "H":
        return tuple(sorted((abs(v) for v in mu), reverse=True))
    return tuple(sorted(mu, reverse=True))


def weyl_orbit(kind: AlgebraKind, mu: Sequence[int]) -> List[Weight]:
    mu = tuple(mu)
    if kind.family == "H":
        orb = set()
        for p in set(permutations(mu)):
            for signs in product((1, -1), repeat=len(mu)):
                orb.add(tuple(s * v for s, v in zip(signs, p)))
        return sorted(orb, reverse=True)
    return sorted(set(permutations(mu)), reverse=True)


def weyl_dimension(kind: AlgebraKind, lam: Sequence[int]) -> int:
    lam = check_dominant(kind, lam)
    r = rho(kind)
    num = Fraction(1)
    for a in positive_roots(kind):
        num *= Fraction(_dot([x + y for x, y in zip(lam, r)], a), _dot(r, a))
    if num.denominator != 1:
        raise ArithmeticError("Weyl dimension is not an integer")
    return int(num)


def _dominant_below(kind: AlgebraKind, lam: Weight) -> List[Weight]:
    """Dominant μ with λ − μ a nonnegative integer combination of simple roots."""
    L = len(lam)
    out = []
    if kind.family == "H":
        total = sum(lam)

        def rec(prefix, lo_cap):
            k = len(prefix)
            if k == L:
                if (total - sum(prefix)) % 2 == 0:
                    out.append(tuple(prefix))
                return
            for v in range(min(lo_cap, lam[0]), -1, -1):
                p = prefix + [v]
                if sum(p) <= sum(lam[:k + 1]):
                    rec(p, v)

        rec([], lam[0])
    else:
        total = sum(lam)
        lo, hi = lam[-1], lam[0]

        def rec(prefix, cap):
            k = len(prefix)
            if k == L:
                if sum(prefix) == total:
                    out.append(tuple(prefix))
                return
            for v in range(cap, lo - 1, -1):
                p = prefix + [v]
                if sum(p) <= sum(lam[:k + 1]):
                    rec(p, v)

        rec([], hi)
    return out


def freudenthal_multiplicities(kind: AlgebraKind, lam: Sequence[int]) -> Dict[Weight, int]:
    """Full weight multiplicity table of L⁰(λ) by Freudenthal's recursion."""
    lam = check_dominant(kind, lam)
    lam_g = gl_representative(kind, lam)[:kind.weight_length]
    r = rho(kind)
    dom = _dominant_below(kind, lam_g)
    dom.sort(key=lambda m: height(kind, [a - b for a, b in zip(lam_g, m)]))
    mult: Dict[Weight, int] = {}
    pos = positive_roots(kind)
    lr = [a + b for a, b in zip(lam_g, r)]
    norm_lam = _dot(lam_g, lam_g)

    def m_of(nu):
        d = dominant_rep(kind, nu)
        return mult.get(d, 0)

    for mu in dom:
        if mu == lam_g:
            mult[mu] = 1
            continue
        s = 0
        for a in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                if _dot(nu, nu) > norm_lam and _dot(nu, a) > 0:
                    break
                s += _dot(nu, a) * m_of(nu)
                k += 1
        mr = [a + b for a, b in zip(mu, r)]
        den = _dot(lr, lr) - _dot(mr, mr)
        val = Fraction(2 * s, den)
        if val.denominator != 1 or val < 0:
            raise ArithmeticError(f"non-integral multiplicity at {mu}")
        mult[mu] = int(val)
    table: Dict[Weight, int] = {}
    for mu, m in mult.items():
        if m:
            for w in weyl_orbit(kind, mu):
                table[kind.normalize_weight(w)] = m
    return dict(sorted(table.items(), reverse=True))
