import pytest

from lcartan.g0rep import (build_simple, check_dominant, check_module, decompose_semisimple, direct_sum,
                           exterior_power, freudenthal_multiplicities, is_dominant, is_irreducible, natural_module,
                           positive_roots, tensor, trivial_module, weyl_dimension, weyl_orbit)
from lcartan.vecfields import AlgebraKind

K = AlgebraKind.parse
W2 = K("W2")


def test_weyl_dimension_examples():
    assert weyl_dimension(W2, (0, 0)) == 1
    assert weyl_dimension(W2, (1, 0)) == 2
    assert weyl_dimension(K("H2"), (2,)) == 3
    assert weyl_dimension(K("S3"), (2, 1, 0)) == 8
    assert weyl_dimension(K("H4"), (1, 1)) == 5
    with pytest.raises(ValueError):
        weyl_dimension(W2, (0, 1))


def test_freudenthal_examples():
    assert freudenthal_multiplicities(W2, (1, 0)) == {(1, 0): 1, (0, 1): 1}
    assert freudenthal_multiplicities(W2, (1, 1)) == {(1, 1): 1}
    assert freudenthal_multiplicities(W2, (2, 0)) == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    # adjoint of sl(3): zero weight has multiplicity 2
    m = freudenthal_multiplicities(K("S3"), (2, 1, 0))
    assert sum(m.values()) == 8 and max(m.values()) == 2


def test_build_simple_examples():
    L = build_simple(W2, (1, 1))
    assert L.dim == 1
    # h = x1d1, x2d2 act by 1, the root vectors by 0
    assert [A.entries() for A in L.mats] == [[], [(0, 0, 1)], [(0, 0, 1)], []]
    T = build_simple(K("S3"), (0, 0, 0))
    assert T.dim == 1 and all(A.is_zero() for A in T.mats)
    N = build_simple(W2, (1, 0))
    assert N.character() == natural_module(W2).character()


@pytest.mark.parametrize("kind,lam", [("W2", (2, 1)), ("S3", (2, 1, 0)), ("H2", (3,)), ("H4", (1, 1))])
def test_build_simple_is_a_module(kind, lam):
    L = build_simple(K(kind), lam)
    chk = check_module(L)
    assert chk.ok and chk.hw_ok
    assert L.dim == weyl_dimension(K(kind), lam)
    assert L.character() == freudenthal_multiplicities(K(kind), lam)
    assert is_irreducible(L)


def test_decompose_examples():
    L = build_simple(W2, (2, 1))
    assert decompose_semisimple(L) == {(2, 1): 1}
    assert decompose_semisimple(direct_sum(L, L)) == {(2, 1): 2}
    assert not is_irreducible(direct_sum(L, L))
    V = natural_module(W2)
    assert decompose_semisimple(tensor(V, V)) == {(2, 0): 1, (1, 1): 1}
    assert decompose_semisimple(exterior_power(natural_module(K("W3")), 2)) == {(1, 1, 0): 1}
    assert decompose_semisimple(trivial_module(K("H2"))) == {(0,): 1}


def test_dominance():
    assert is_dominant(W2, (1, 0)) and not is_dominant(W2, (-1, 2))
    assert not is_dominant(K("H2"), (-1,))
    # sl weights are taken modulo the all-ones vector
    assert check_dominant(K("S2"), (3, 2)) == check_dominant(K("S2"), (1, 0))
    with pytest.raises(ValueError):
        check_dominant(W2, (0, 1))


def test_roots_and_orbits():
    assert positive_roots(W2) == ((1, -1),)
    assert sorted(weyl_orbit(W2, (1, 0))) == [(0, 1), (1, 0)]
    assert len(positive_roots(K("H4"))) == 4
