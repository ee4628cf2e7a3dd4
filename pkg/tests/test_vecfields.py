from math import comb

import pytest

from lcartan.exactcore import Poly
from lcartan.vecfields import (AlgebraKind, Envelope, VField, algebra_suite, basis_of_degree, bracket, d_h, d_ij,
                               divergence, exceptional_weights, g0_structure_check, get_algebra, is_member,
                               triangular)

K = AlgebraKind.parse


def xd(n, i, j, c=1):
    """c·x_i ∂_j with 1-based indices."""
    e = [0] * n
    e[i - 1] = 1
    return VField.term(n, e, j - 1, c)


def d(n, i):
    return VField.partial(n, i - 1)


def test_brackets():
    assert bracket(d(2, 1), d(2, 2)).is_zero()
    assert bracket(xd(2, 1, 2), xd(2, 2, 1)) == xd(2, 1, 1) + xd(2, 2, 2, -1)
    assert bracket(xd(2, 1, 1), d(2, 1)) == d(2, 1).scale(-1)


def test_divergence():
    assert divergence(d(2, 1)).is_zero()
    for n in (1, 2, 3):
        euler = VField.zero(n)
        for i in range(1, n + 1):
            euler = euler + xd(n, i, i)
        assert divergence(euler) == Poly.const(n, n)
    assert divergence(d_ij(1, 2, (1, 1))).is_zero()


def test_membership():
    assert is_member(K("W2"), xd(2, 1, 2))
    assert not is_member(K("S2"), xd(2, 1, 1))
    assert is_member(K("H2"), d(2, 2))
    assert not is_member(K("H2"), xd(2, 1, 1))


def test_d_ij_and_d_h():
    assert d_ij(1, 2, (1, 1)) == xd(2, 1, 1) + xd(2, 2, 2, -1)
    assert d_ij(1, 2, (1, 0)) == d(2, 2).scale(-1)
    assert d_ij(1, 2, (0, 0)).is_zero()
    with pytest.raises(IndexError):
        d_ij(2, 1, (1, 1))
    assert d_h((1, 0)) == d(2, 2)
    assert d_h((0, 1)) == d(2, 1).scale(-1)
    assert d_h((1, 1)) == xd(2, 2, 2) + xd(2, 1, 1, -1)
    with pytest.raises(ValueError):
        d_h((0, 0))


def test_degree_dimensions():
    assert [X.to_text() for X in basis_of_degree(K("W2"), -1)] == ["1*d1", "1*d2"]
    for n in (1, 2, 3):
        for k in range(-1, 4):
            assert get_algebra(K(f"W{n}")).dim(k) == n * comb(n + k, n - 1)
    assert get_algebra(K("W2")).dim(1) == 6
    assert get_algebra(K("H2")).dim(0) == 3
    assert get_algebra(K("S3")).dim(0) == 8
    assert get_algebra(K("H4")).dim(0) == 10


def test_kind_validation():
    with pytest.raises(ValueError):
        K("H3")
    with pytest.raises(ValueError):
        K("S1")
    with pytest.raises(ValueError):
        K("Q2")


def test_triangular_decomposition():
    t = triangular(K("W2"))
    assert t.h == [xd(2, 1, 1), xd(2, 2, 2)]
    assert len(t.nminus) == len(t.nplus) == 1
    assert triangular(K("S2")).h == [xd(2, 1, 1) + xd(2, 2, 2, -1)]
    tH = triangular(K("H2"))
    assert tH.nplus == [xd(2, 1, 2, 2)]
    for kind in ("W2", "S3", "H4"):
        t = triangular(K(kind))
        assert len(t.all()) == get_algebra(K(kind)).dim(0)


def test_g0_structure():
    for kind, target, dim in [("W2", "gl(2)", 4), ("S3", "sl(3)", 8), ("H2", "sp(2)", 3)]:
        rep = g0_structure_check(K(kind))
        assert rep["isomorphism"] and rep["target"] == target and rep["dim_g0"] == dim


def test_exceptional_weights():
    assert exceptional_weights(K("W2")) == [(0, 0), (1, 0)]
    assert exceptional_weights(K("H2")) == [(0,), (1,)]
    for kind in ("W1", "W3", "S2", "H4"):
        assert not any(exceptional_weights(K(kind))[0])


@pytest.mark.parametrize("kind", ["W1", "W2", "H2"])
def test_algebra_suite_small(kind):
    rep = algebra_suite(K(kind), -1, 2)
    assert rep["ok"]
    assert rep["triples_checked"] > 0


def test_envelope_pbw_commutator():
    alg = get_algebra(K("W2"))
    U = Envelope(alg.bracket_letters)
    dx, x1d1 = (-1, 0), (0, 0)
    # g0[0] = x1 d1 sorts after g-1[0] = d1; d1 · x1d1 is already ordered
    assert U.mul({(dx,): 1}, {(x1d1,): 1}) == {(dx, x1d1): 1}
    # x1d1 · d1 = d1 · x1d1 + [x1d1, d1] = d1 x1d1 − d1
    assert U.mul({(x1d1,): 1}, {(dx,): 1}) == {(dx, x1d1): 1, (dx,): -1}
