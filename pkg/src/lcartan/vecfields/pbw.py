"""PBW normal forms in a universal enveloping algebra.

Letters are any totally ordered hashable values; a normal word is weakly
increasing.  Straightening uses ``yx = xy + [y, x]`` for ``y > x``, which
terminates by descent on (length, inversions).  All products are memoised
per (word, letter) pair, so repeated straightening of shared prefixes is
cheap.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Mapping, Tuple

from ..exactcore.rational import Rat

Word = Tuple[Hashable, ...]
Elem = Dict[Word, Rat]

__all__ = ["Envelope", "elem_axpy"]


def elem_axpy(out: Elem, c: Rat, e: Mapping[Word, Rat]) -> None:
    if c == 0:
        return
    for w, v in e.items():
        t = out.get(w, 0) + c * v
        if t:
            out[w] = t
        else:
            out.pop(w, None)


class Envelope:
    """U(L) for a Lie algebra given by ``bracket(a, b) -> {letter: coeff}``."""

    def __init__(self, bracket: Callable[[Hashable, Hashable], Mapping[Hashable, Rat]]):
        self.bracket = bracket
        self._right: Dict[Tuple[Word, Hashable], Elem] = {}
        self._left: Dict[Tuple[Hashable, Word], Elem] = {}

    def mul_word_letter(self, w: Word, x) -> Elem:
        """Normal form of w·x for a normal word w."""
        if not w or w[-1] <= x:
            return {w + (x,): 1}
        key = (w, x)
        got = self._right.get(key)
        if got is not None:
            return got
        y = w[-1]
        head = w[:-1]
        out: Elem = {}
        # w x = head (y x) = head x y + head [y, x]
        for t, c in self.mul_word_letter(head, x).items():
            elem_axpy(out, c, self.mul_word_letter(t, y))
        for z, c in self.bracket(y, x).items():
            elem_axpy(out, c, self.mul_word_letter(head, z))
        self._right[key] = out
        return out

    def mul_letter_word(self, x, w: Word) -> Elem:
        """Normal form of x·w for a normal word w."""
        if not w or x <= w[0]:
            return {(x,) + w: 1}
        key = (x, w)
        got = self._left.get(key)
        if got is not None:
            return got
        y = w[0]
        rest = w[1:]
        out: Elem = {}
        # x y rest = y (x rest) + [x, y] rest
        for t, c in self.mul_letter_word(x, rest).items():
            elem_axpy(out, c, self.mul_letter_word(y, t))
        for z, c in self.bracket(x, y).items():
            elem_axpy(out, c, self.mul_letter_word(z, rest))
        self._left[key] = out
        return out

    def mul_words(self, u: Word, w: Word) -> Elem:
        cur: Elem = {u: 1}
        for x in w:
            nxt: Elem = {}
            for t, c in cur.items():
                elem_axpy(nxt, c, self.mul_word_letter(t, x))
            cur = nxt
        return cur

    def mul(self, a: Mapping[Word, Rat], b: Mapping[Word, Rat]) -> Elem:
        out: Elem = {}
        for u, cu in a.items():
            for w, cw in b.items():
                elem_axpy(out, cu * cw, self.mul_words(u, w))
        return out

    def normal_form(self, word: Word) -> Elem:
        """Normal form of an arbitrary (unsorted) word."""
        return self.mul_words((), tuple(word))
