import os
from fractions import Fraction

import numpy as np
import pytest

from lcartan.exactcore import (IntEchelon, Poly, SparseMat, Subspace, dim_R, graded_component, image, inverse,
                               kernel, linalg_suite, monomials, poly_mul, poly_partial, rank, rat_from_str,
                               rat_to_str, rref, solve)
from lcartan.exactcore._kernels import gauss_jordan_int64


def P(text, n=2):
    return Poly.from_text(n, text)


def test_poly_products():
    assert poly_mul(P("x1"), P("x2")) == P("x1*x2")
    assert poly_mul(P("x1 + 1"), P("x1 + -1")) == P("x1^2 + -1")
    assert (P("x1 + x2") * Poly.zero(2)).is_zero()


def test_poly_mismatched_n():
    with pytest.raises(ValueError):
        Poly.var(2, 0) * Poly.var(3, 0)


def test_poly_partials():
    # poly_partial takes the 1-based variable index, Poly.diff the 0-based one
    assert poly_partial(P("x1"), 1) == Poly.one(2)
    assert poly_partial(P("x1^3"), 2).is_zero()
    assert poly_partial(P("x1^2*x2"), 1) == P("2*x1*x2")
    assert P("x1^2*x2").diff(0) == P("2*x1*x2")
    with pytest.raises(IndexError):
        poly_partial(P("x1"), 3)


def test_graded_component_and_dim():
    f = P("1 + x1 + x1*x2")
    assert graded_component(f, 1) == P("x1")
    assert graded_component(f, 2) == P("x1*x2")
    assert graded_component(f, 7).is_zero()
    assert dim_R(2, 2) == 3
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))


def test_poly_text_round_trip():
    f = P("3/2*x1^2*x2 + -1*x2 + 5", 3)
    assert f.to_text() == "3/2*x1^2*x2 + -1*x2 + 5"
    assert Poly.from_text(3, f.to_text()) == f
    assert Poly.zero(2).to_text() == "0"


def test_rational_strings():
    assert rat_to_str(Fraction(-3, 4)) == "-3/4"
    assert rat_to_str(5) == "5"
    assert rat_from_str("6/3") == 2 and isinstance(rat_from_str("6/3"), int)


def test_linalg_examples():
    I3 = SparseMat.identity(3)
    assert rank(I3) == 3 and kernel(I3) == []
    Z = SparseMat.zero(2, 5)
    assert rank(Z) == 0 and len(kernel(Z)) == 5
    A = SparseMat.from_dense([[1, 2], [2, 4]])
    rep = linalg_suite(A)
    assert rep.rank == 1
    assert rep.kernel == [{0: -2, 1: 1}]
    assert rep.image == [{0: 1, 1: 2}]


@pytest.mark.parametrize("backend", ["dense", "dense-numpy", "sparse"])
def test_backends_agree(backend):
    A = SparseMat.from_dense([[2, 4, 1, 0], [1, 2, 0, 3], [3, 6, 1, 3], [0, 0, 5, 1]])
    assert rank(A, backend) == 3
    K = kernel(A, backend)
    assert K == kernel(A, "sparse")
    for v in K:
        assert not (A.apply(v))


def test_inverse_and_solve():
    A = SparseMat.from_dense([[2, 1], [1, 1]])
    B = inverse(A)
    assert A @ B == SparseMat.identity(2)
    x = solve(A, {0: 3, 1: 2})
    assert x == {0: 1, 1: 1}
    assert solve(SparseMat.from_dense([[1, 1], [1, 1]]), {0: 1}) is None


def test_subspace_ops():
    e1, e2 = {0: 1}, {1: 1}
    U, V = Subspace(2, [e1]), Subspace(2, [e2])
    assert U.intersection(V).dim == 0 and U.sum(V).dim == 2
    assert U.intersection(U) == U
    U2 = Subspace(2, [{0: 1, 1: 1}, e2])
    assert U2.intersection(U).dim == 1
    assert U2.quotient_dim(U) == 1
    assert U2.contains({0: 7, 1: -2})
    with pytest.raises(ValueError):
        U.sum(Subspace(3, []))


def test_rref_is_canonical():
    rows = [{0: 2, 1: 4}, {0: 1, 2: 1}, {1: 1, 2: 3}]
    piv, red = rref(rows, 3)
    assert rref(red, 3) == (piv, red)


def test_echelon_incremental():
    E = IntEchelon(3)
    assert E.add({0: 1, 1: 1})
    assert not E.add({0: 2, 1: 2})
    assert E.add({2: Fraction(1, 3)})
    assert E.rank == 2
    assert E.contains({0: 5, 1: 5, 2: 1})


def test_sparse_json_round_trip():
    A = SparseMat.from_entries(3, 2, [(0, 1, Fraction(1, 2)), (2, 0, -3)])
    assert SparseMat.from_json(A.to_json()) == A
    assert A.nnz() == 2
    assert A.transpose().transpose() == A
    assert SparseMat.from_entries(2, 2, [(0, 0, 0)]).is_zero()


def test_int64_kernel_numba_matches_numpy():
    rng = np.random.default_rng(3)
    A = rng.integers(-3, 4, size=(12, 15)).astype(np.int64)
    A1, A2 = A.copy(), A.copy()
    a = gauss_jordan_int64(A1, use_numba=True)
    b = gauss_jordan_int64(A2, use_numba=False)
    assert a is not None and a == b
    assert np.array_equal(A1, A2)
    assert a[0] == rank(SparseMat.from_dense(A.tolist()), "sparse")


def test_int64_kernel_declines_large_entries():
    A = np.array([[2 ** 40, 3], [5, 2 ** 41]], dtype=np.int64)
    assert gauss_jordan_int64(A, use_numba=False) is None
    # the exact fallback still answers
    M = SparseMat.from_dense(A.tolist())
    assert rank(M, "dense") == 2


def test_env_switch_selects_numpy_backend():
    import subprocess
    import sys
    code = "from lcartan.exactcore import backend_name; print(backend_name())"
    env = dict(os.environ, LCARTAN_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
