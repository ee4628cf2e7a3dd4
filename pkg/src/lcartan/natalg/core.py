"""The naturalized algebra R♮U(g): normal forms f ⊗ (sorted PBW word).

The product is the smash-product rule

    (f ⊗ u)(g ⊗ w) = Σ_{S ⊆ letters of u} s^{|S|} · f·u_S(g) ⊗ u_{S^c}·w,

where u_S applies the letters of S (in word order, outermost first) as
derivations and u_{S^c}·w is straightened in U(g).  The sign parameter
``s`` is +1 for the convention forced by [X, f] = X(f) and is exposed so
that the opposite sign can be audited.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..exactcore.poly import Mono, Poly
from ..exactcore.rational import Rat, rat_to_str
from ..vecfields.algebra import AlgebraKind, Letter, get_algebra
from ..vecfields.pbw import Envelope

__all__ = [
    "WindowOverflow",
    "NatAlgebra",
    "NatElement",
    "unity_omega",
    "axiom_suite",
]

Word = Tuple[Letter, ...]
Term = Tuple[Mono, Word]
NatElement = Dict[Term, Rat]


class WindowOverflow(ArithmeticError):
    """A rewrite step needs a letter degree or word length beyond the window caps."""


def _add(out: NatElement, key: Term, c: Rat) -> None:
    if not c:
        return
    t = out.get(key, 0) + c
    if t:
        out[key] = t
    else:
        out.pop(key, None)


def unity_omega(f: Poly) -> Rat:
    """ω: R → F, the constant term (an algebra map with kernel Σ R x_i)."""
    return f.constant_term()


class NatAlgebra:
    """R♮U(g) for a kind, with caps on letter degree and word length."""

    def __init__(self, kind: AlgebraKind, letter_max: int, word_cap: Optional[int] = None, sign: int = 1):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.kind = kind
        self.n = kind.n
        self.alg = get_algebra(kind)
        self.letter_max = letter_max
        self.word_cap = word_cap
        self.sign = sign
        self.env = Envelope(self._bracket)
        self._deriv: Dict[Tuple[Letter, Mono], Dict[Mono, Rat]] = {}
        self._mul_cache: Dict[Tuple[Term, Term], NatElement] = {}

    def _bracket(self, a: Letter, b: Letter) -> Dict[Letter, Rat]:
        if a[0] + b[0] > self.letter_max:
            raise WindowOverflow(f"bracket of {a} and {b} has degree {a[0] + b[0]} > {self.letter_max}")
        return self.alg.bracket_letters(a, b)

    # -- constructors -------------------------------------------------
    def one(self) -> NatElement:
        return {((0,) * self.n, ()): 1}

    def poly(self, f: Poly) -> NatElement:
        return {(m, ()): c for m, c in f.terms.items()}

    def var(self, i: int) -> NatElement:
        """x_{i+1} ⊗ 1."""
        m = [0] * self.n
        m[i] = 1
        return {(tuple(m), ()): 1}

    def letter(self, L: Letter) -> NatElement:
        return {((0,) * self.n, (L,)): 1}

    def element(self, f: Poly, word: Sequence[Letter]) -> NatElement:
        """f ⊗ (normal form of word)."""
        out: NatElement = {}
        for w, c in self.env.normal_form(tuple(word)).items():
            for m, a in f.terms.items():
                _add(out, (m, w), a * c)
        return out

    # -- rewriting ----------------------------------------------------
    def _apply_letter(self, L: Letter, m: Mono) -> Dict[Mono, Rat]:
        key = (L, m)
        got = self._deriv.get(key)
        if got is None:
            got = dict(self.alg.field(L).apply(Poly.monomial(self.n, m)).terms)
            self._deriv[key] = got
        return got

    def _apply_word(self, letters: Sequence[Letter], poly: Mapping[Mono, Rat]) -> Dict[Mono, Rat]:
        cur = dict(poly)
        for L in reversed(letters):
            nxt: Dict[Mono, Rat] = {}
            for m, c in cur.items():
                for m2, c2 in self._apply_letter(L, m).items():
                    t = nxt.get(m2, 0) + c * c2
                    if t:
                        nxt[m2] = t
                    else:
                        nxt.pop(m2, None)
            cur = nxt
            if not cur:
                break
        return cur

    def _check(self, w: Word) -> None:
        if self.word_cap is not None and len(w) > self.word_cap:
            raise WindowOverflow(f"word of length {len(w)} exceeds the cap {self.word_cap}")
        for L in w:
            if L[0] > self.letter_max:
                raise WindowOverflow(f"letter degree {L[0]} exceeds {self.letter_max}")

    def mul_terms(self, a: Term, b: Term) -> NatElement:
        key = (a, b)
        got = self._mul_cache.get(key)
        if got is not None:
            return got
        f, u = a
        g, w = b
        out: NatElement = {}
        m = len(u)
        for k in range(m + 1):
            for S in combinations(range(m), k):
                sub = [u[i] for i in S]
                rest = tuple(u[i] for i in range(m) if i not in S)
                dg = self._apply_word(sub, {g: 1}) if sub else {g: 1}
                if not dg:
                    continue
                sgn = self.sign ** k
                prod = self.env.mul_words(rest, w) if rest else {w: 1}
                for mg, cg in dg.items():
                    mono = tuple(x + y for x, y in zip(f, mg))
                    for ww, cw in prod.items():
                        self._check(ww)
                        _add(out, (mono, ww), sgn * cg * cw)
        self._mul_cache[key] = out
        return out

    def mul(self, a: Mapping[Term, Rat], b: Mapping[Term, Rat]) -> NatElement:
        out: NatElement = {}
        for ta, ca in a.items():
            for tb, cb in b.items():
                for t, c in self.mul_terms(ta, tb).items():
                    _add(out, t, ca * cb * c)
        return out

    def add(self, *elems: Mapping[Term, Rat]) -> NatElement:
        out: NatElement = {}
        for e in elems:
            for t, c in e.items():
                _add(out, t, c)
        return out

    def scale(self, e: Mapping[Term, Rat], c: Rat) -> NatElement:
        return {t: v * c for t, v in e.items() if v * c}

    def normal_form(self, factors: Sequence[Union[Poly, Letter, Mapping[Term, Rat]]], order: str = "left",
                    rng: Optional[random.Random] = None) -> NatElement:
        """Normal form of a product of factors, multiplied in the given order.

        ``order`` is "left" (((f1 f2) f3)…), "right" (f1 (f2 (f3 …))) or
        "random" (a random bracketing drawn from ``rng``).
        """
        elems = [self._coerce(x) for x in factors]
        if not elems:
            return self.one()
        if order == "left":
            cur = elems[0]
            for e in elems[1:]:
                cur = self.mul(cur, e)
            return cur
        if order == "right":
            cur = elems[-1]
            for e in reversed(elems[:-1]):
                cur = self.mul(e, cur)
            return cur
        rng = rng or random.Random(0)
        while len(elems) > 1:
            i = rng.randrange(len(elems) - 1)
            elems[i:i + 2] = [self.mul(elems[i], elems[i + 1])]
        return elems[0]

    def _coerce(self, x) -> NatElement:
        if isinstance(x, Poly):
            return self.poly(x)
        if isinstance(x, tuple) and len(x) == 2 and all(isinstance(v, int) for v in x):
            return self.letter(x)
        return dict(x)

    # -- R as a module, κ ----------------------------------------------
    def act_on_R(self, e: Mapping[Term, Rat], f: Poly) -> Poly:
        """(g ⊗ w)·f = g · w(f), with w acting by derivations (times s per letter)."""
        out: Dict[Mono, Rat] = {}
        for (g, w), c in e.items():
            res = self._apply_word(w, f.terms)
            sc = c * (self.sign ** len(w))
            for m, v in res.items():
                mono = tuple(x + y for x, y in zip(g, m))
                t = out.get(mono, 0) + sc * v
                if t:
                    out[mono] = t
                else:
                    out.pop(mono, None)
        return Poly(self.n, out)

    def kappa(self, e: Mapping[Term, Rat]) -> Poly:
        """The empty-word component of a normal form (equals the action on 1)."""
        return Poly(self.n, {m: c for (m, w), c in e.items() if not w and c})

    # -- text ---------------------------------------------------------
    def term_text(self, t: Term) -> str:
        m, w = t
        f = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e) or "1"
        return f"{f} (x) [{' '.join(self.alg.letter_label(L) for L in w)}]"

    def to_text(self, e: Mapping[Term, Rat]) -> str:
        if not e:
            return "0"
        parts = []
        for t in sorted(e, key=lambda t: (len(t[1]), t[1], tuple(-x for x in t[0]))):
            c = e[t]
            parts.append(self.term_text(t) if c == 1 else f"{rat_to_str(c)}*{self.term_text(t)}")
        return " + ".join(parts)

    def to_json_obj(self, e: Mapping[Term, Rat]) -> list:
        return [[list(m), [list(L) for L in w], rat_to_str(c)] for (m, w), c in sorted(e.items())]


# ---------------------------------------------------------------------------
# axiom audit
# ---------------------------------------------------------------------------

def _generators(N: NatAlgebra, dmin: int, dmax: int) -> List[Tuple[str, NatElement]]:
    gens = [(f"x{i + 1}", N.var(i)) for i in range(N.n)]
    for L in N.alg.letters(dmin, dmax):
        gens.append((N.alg.letter_label(L), N.letter(L)))
    return gens


def _assoc_run(N: NatAlgebra, gens, sample_triples) -> Tuple[int, Optional[dict], dict]:
    """Associativity on all generator triples plus sampled composite triples."""
    pair: Dict[Tuple[int, int], NatElement] = {}

    def P(i, j):
        got = pair.get((i, j))
        if got is None:
            got = N.mul(gens[i][1], gens[j][1])
            pair[(i, j)] = got
        return got

    checked = 0
    witness = None
    g = len(gens)
    for i in range(g):
        for j in range(g):
            ab = P(i, j)
            for k in range(g):
                lhs = N.mul(ab, gens[k][1])
                rhs = N.mul(gens[i][1], P(j, k))
                checked += 1
                if lhs != rhs and witness is None:
                    diff = N.add(lhs, N.scale(rhs, -1))
                    witness = {"triple": [gens[i][0], gens[j][0], gens[k][0]],
                               "lhs_minus_rhs": N.to_text(diff)}
    sampled = 0
    s_witness = None
    for a, b, c in sample_triples:
        lhs = N.mul(N.mul(a, b), c)
        rhs = N.mul(a, N.mul(b, c))
        sampled += 1
        if lhs != rhs and s_witness is None:
            s_witness = {"lhs_minus_rhs": N.to_text(N.add(lhs, N.scale(rhs, -1)))}
    return checked, witness, {"sampled": sampled, "witness": s_witness}


def _sample(N: NatAlgebra, gens, count: int, rng: random.Random) -> List[Tuple[NatElement, NatElement, NatElement]]:
    out = []
    g = len(gens)
    for _ in range(count):
        trip = []
        for _ in range(3):
            # composite factor: a product of two generators with a random rational weight
            i, j = rng.randrange(g), rng.randrange(g)
            e = N.mul(gens[i][1], gens[j][1])
            e = N.add(e, N.scale(gens[rng.randrange(g)][1], rng.randint(-3, 3)))
            trip.append(e)
        out.append(tuple(trip))
    return out


def axiom_suite(kind: AlgebraKind, d_min: int = -1, d_max: int = 3, word_cap: int = 3,
                samples: int = 200, seed: int = 0) -> dict:
    """(N2)–(N5) and exhaustive generator-triple associativity, for both signs."""
    findings = {}
    for sign in (1, -1):
        N = NatAlgebra(kind, letter_max=3 * d_max, word_cap=word_cap, sign=sign)
        gens = _generators(N, d_min, d_max)
        rng = random.Random(seed)
        # composite samples need room for 6 letters
        Ns = NatAlgebra(kind, letter_max=6 * d_max, word_cap=2 * word_cap, sign=sign)
        sample = _sample(Ns, _generators(Ns, d_min, d_max), samples, rng)
        checked, wit, samp = _assoc_run(N, gens, [])
        _, _, samp = _assoc_run(Ns, [], sample)
        findings[sign] = {"checked_triples": checked, "assoc_ok": wit is None and samp["witness"] is None,
                          "witness": wit, "sampled": samp}
    N = NatAlgebra(kind, letter_max=3 * d_max, word_cap=word_cap, sign=1)
    n = N.n
    gens = _generators(N, d_min, d_max)
    letters = N.alg.letters(d_min, d_max)
    # (N2): U(g) ↪ R♮U(g) is multiplicative on PBW pairs
    n2 = True
    for a in letters:
        for b in letters:
            lhs = N.mul(N.letter(a), N.letter(b))
            rhs = {((0,) * n, w): c for w, c in N.env.mul_words((a,), (b,)).items()}
            n2 = n2 and lhs == rhs
    # (N3): R ↪ R♮U(g) multiplicative
    rng = random.Random(seed + 1)
    n3 = True
    for _ in range(50):
        f = Poly(n, {tuple(rng.randint(0, 2) for _ in range(n)): rng.randint(-3, 3) or 1})
        g = Poly(n, {tuple(rng.randint(0, 2) for _ in range(n)): rng.randint(-3, 3) or 1})
        n3 = n3 and N.mul(N.poly(f), N.poly(g)) == N.poly(f * g)
    # (N4): (a⊗1)(1⊗X) = a⊗X
    n4 = True
    for i in range(n):
        for L in letters:
            m = [0] * n
            m[i] = 1
            n4 = n4 and N.mul(N.var(i), N.letter(L)) == {(tuple(m), (L,)): 1}
    # (N5) both signs: (1⊗X)(a⊗1) = a⊗X ± X(a)⊗1, evaluated in the bracket-consistent product
    n5 = {}
    for sign in (1, -1):
        ok = True
        wit = None
        for i in range(n):
            for L in letters:
                lhs = N.mul(N.letter(L), N.var(i))
                m = [0] * n
                m[i] = 1
                Xa = N.alg.field(L).comps[i]
                rhs = N.add({(tuple(m), (L,)): 1}, N.scale(N.poly(Xa), sign))
                if lhs != rhs:
                    ok = False
                    if wit is None:
                        wit = {"X": N.alg.letter_label(L), "a": f"x{i + 1}", "product": N.to_text(lhs),
                               "claimed": N.to_text(rhs)}
        n5[sign] = {"holds": ok, "witness": wit}
    # module check: R is a module over the naturalized algebra
    mod_ok = True
    for a_i in range(len(gens)):
        for b_i in range(len(gens)):
            f = Poly.monomial(n, tuple(2 for _ in range(n)))
            a, b = gens[a_i][1], gens[b_i][1]
            mod_ok = mod_ok and N.act_on_R(N.mul(a, b), f) == N.act_on_R(a, N.act_on_R(b, f))
    consistent = [s for s in (1, -1) if findings[s]["assoc_ok"]]
    verdict = ("convention (1⊗X)(a⊗1) = a⊗X + X(a)⊗1 is associativity-consistent; "
               "the minus-sign convention fails associativity") if consistent == [1] else \
        f"associativity-consistent signs: {consistent}"
    return {
        "kind": kind.label,
        "generator_window": [d_min, d_max],
        "word_cap": word_cap,
        "generators": len(gens),
        "associativity": {"plus": findings[1], "minus": findings[-1]},
        "N2": n2,
        "N3": n3,
        "N4": n4,
        "N5_plus": n5[1],
        "N5_minus": n5[-1],
        "R_module_ok": mod_ok,
        "N5_finding": verdict,
        "adopted_sign": "+",
        "ok": findings[1]["assoc_ok"] and n2 and n3 and n4 and n5[1]["holds"] and mod_ok,
    }
