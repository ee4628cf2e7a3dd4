"""Exact rational scalars.

Scalars are plain Python ``int`` or :class:`fractions.Fraction` values.  Both
are exact; ``Fraction`` always keeps lowest terms with a positive denominator,
so any stored coefficient satisfies the invariants of the ``Rat`` type.  Ints
are accepted wherever a rational is expected because integer-only arithmetic
is several times faster in the hot loops.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

Rat = Union[int, Fraction]

__all__ = ["Rat", "Fraction", "as_rat", "rat_to_str", "rat_from_str", "normalize", "lcm_denominators"]


def as_rat(x) -> Rat:
    """Coerce ``x`` to an exact rational; floats are rejected."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return normalize(x)
    if isinstance(x, str):
        return rat_from_str(x)
    raise TypeError(f"refusing to convert {type(x).__name__} to an exact rational")


def normalize(x: Rat) -> Rat:
    """Return ``x`` as an ``int`` when it is integral, else as a ``Fraction``."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def rat_to_str(x: Rat) -> str:
    """Canonical ``"num/den"`` text (``"num"`` alone when the denominator is 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Rat:
    s = s.strip()
    if not s:
        raise ValueError("empty rational literal")
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational literal: {s!r}")
    return normalize(Fraction(s))


def lcm_denominators(values) -> int:
    """Least common multiple of the denominators of ``values``."""
    out = 1
    for v in values:
        if isinstance(v, Fraction):
            d = v.denominator
            if d != 1:
                out = out * d // gcd(out, d)
    return out
