from math import comb

import pytest

from lcartan.exactcore import Poly, SparseMat, dim_R
from lcartan.g0rep import decompose_semisimple, weyl_dimension
from lcartan.lcmod import (SwappedThetaModule, Window, annihilator_gminus1, build_delta, check_hom, depth_submodule,
                           direct_sum, extend_hom, freeness_check, hom_solver, irreducible_lc_check,
                           lc_axiom_check, lie_action_check, lift_through_surjection, prolong_v_lambda, radical_lc,
                           shift, tensor_with_R)
from lcartan.vecfields import AlgebraKind

W2 = AlgebraKind.parse("W2")
WIN = Window(0, 4)


def V(lam, depth=0, kind=W2, win=WIN):
    return prolong_v_lambda(kind, lam, depth, win)


def test_window_parse():
    assert Window.parse("-1:4") == Window(-1, 4)
    with pytest.raises(ValueError):
        Window(3, 1)


def test_v0_is_R():
    M = V((0, 0))
    assert M.dims() == {i: dim_R(2, i) for i in WIN.degrees()}
    # ρ(X) on g ⊗ 1 is X(g) ⊗ 1: check x1∂2 on x2 gives x1
    letter = next(L for L in M.alg.letters(0, 0) if M.alg.field(L).to_text() == "1*x1*d2")
    col = M.rho(letter, 1).column(M.labels(1).index("1*x2(x)v"))
    assert col == {M.labels(1).index("1*x1(x)v"): 1}


@pytest.mark.parametrize("lam", [(1, 0), (2, 1), (2, 0)])
def test_v_lambda_dimensions(lam):
    M = V(lam)
    for i in WIN.degrees():
        assert M.dim(i) == dim_R(2, i) * weyl_dimension(W2, lam)


def test_v_lambda_on_depth_space():
    # ρ(x1∂2)(1 ⊗ v) = 1 ⊗ ξ(x1∂2)v: the depth space is a copy of L⁰(λ)
    M = V((1, 0))
    letter = next(L for L in M.alg.letters(0, 0) if M.alg.field(L).to_text() == "1*x1*d2")
    A = M.rho(letter, 0)
    xi = M.L.act_matrix(M.alg.field(letter))
    assert A == xi


def test_delta_dimensions_and_depth_space():
    D = build_delta(W2, (0, 0), 0, WIN)
    assert D.dim(0) == 1
    assert D.dim(1) == 6
    for L in D.alg.letters(-1, -1):
        assert D.rho(L, 0).is_zero()
    assert lie_action_check(D, letters=D.alg.letters(-1, 1))["ok"]


def test_tensor_with_R_dimensions():
    D = build_delta(W2, (0, 0), 0, WIN)
    DR = tensor_with_R(D)
    for i in WIN.degrees():
        assert DR.dim(i) == sum(dim_R(2, k) * D.dim(i - k) for k in range(i + 1))
    assert lc_axiom_check(DR)["lc1_ok"]
    F = build_delta(W2, (0, 0), 0, Window(0, 0))
    assert tensor_with_R(F).dim(0) == 1


def test_lc_axioms_and_negative_control():
    M = V((1, 0))
    ax = lc_axiom_check(M)
    assert ax["lc1_ok"] and ax["theta_commute_ok"] and ax["lc2_ok"]
    bad = lc_axiom_check(SwappedThetaModule(M, 0, 1))
    assert not bad["lc1_ok"]
    w = bad["lc1_violations"][0]
    assert {"letter", "x", "degree", "basis_vector"} <= set(w)


def test_freeness():
    fr = freeness_check(V((2, 1)))
    assert fr["ok"]
    assert all(d["surjective"] for d in fr["degrees"].values())
    DR = tensor_with_R(build_delta(W2, (0, 0), 0, WIN))
    fr = freeness_check(DR)
    assert fr["ok"]
    assert fr["degrees"]["0"]["surjective"]
    assert not any(fr["degrees"][str(k)]["surjective"] for k in range(1, 5))
    # dim (Δ_R)_1 = dim Δ_1 + n · dim L⁰
    assert DR.dim(1) == 6 + 2


def test_depth_and_shift():
    M = V((1, 0))
    assert M.depth() == (0, False)
    assert shift(M, 0) is M
    S = shift(M, -1)
    assert S.depth()[0] == 1
    M1 = V((1, 0), depth=1)
    for i in range(1, 5):
        assert S.dim(i) == M1.dim(i)
    for i in range(1, 4):
        assert S.rho((1, 0), i) == M1.rho((1, 0), i)
    assert shift(S, 1).dims() == M.dims()


def test_annihilator():
    M = V((1, 0))
    K, G = annihilator_gminus1(M, 1)
    assert K == []
    assert all(not annihilator_gminus1(M, i)[0] for i in range(2, 5))
    DR = tensor_with_R(build_delta(W2, (0, 0), 0, WIN))
    K, G = annihilator_gminus1(DR, 1)
    # killed by ∂_i at degree 1: as many as the degree-1 letters
    assert len(K) == 6
    # as a g0-module it is g_1 = (divergence-free part) + (Euler-type part)
    assert decompose_semisimple(G) == {(2, -1): 1, (1, 0): 1}
    with pytest.raises(ValueError):
        annihilator_gminus1(M, 0)


def test_radical():
    assert radical_lc(V((1, 0)))["is_zero"]
    DR = tensor_with_R(build_delta(W2, (0, 0), 0, WIN))
    rad = radical_lc(DR)
    assert rad["closed_in_window"] and rad["M_equals_D_plus_N"] and rad["quotient_matches_prediction"]
    assert rad["quotient_dims"] == {str(i): i + 1 for i in WIN.degrees()}
    M = direct_sum(V((0, 0)), V((1, 0), depth=1))
    rad = radical_lc(M)
    assert rad["radical_dims"] == {str(i): V((1, 0), depth=1).dim(i) for i in WIN.degrees()}


def test_depth_submodule():
    M = V((1, 0))
    D = depth_submodule(M)
    assert {i: s.rank for i, s in D.items()} == M.dims()
    DR = tensor_with_R(build_delta(W2, (0, 0), 0, Window(0, 3)))
    D = depth_submodule(DR)
    assert {i: s.rank for i, s in D.items()} == DR.dims()


def test_hom_delta_table():
    assert hom_solver(V((1, 0)), V((1, 0))).dim == 1
    assert hom_solver(V((0, 0)), V((1, 0))).dim == 0
    assert hom_solver(V((1, 0)), V((1, 0), depth=1)).dim == 0
    # g-only mode: standard modules only map to the matching co-standard one
    assert hom_solver(build_delta(W2, (0, 0), 0, WIN), V((1, 0)), "g").dim == 0
    assert hom_solver(build_delta(W2, (1, 0), 0, WIN), V((1, 0)), "g").dim == 1
    with pytest.raises(ValueError):
        hom_solver(build_delta(W2, (0, 0), 0, WIN), V((0, 0)), "lc")


def test_extend_hom():
    M = V((1, 0))
    r = extend_hom(SparseMat.identity(2), M, M)
    assert r["extended"] and r["check"]["ok"]
    assert all(r["map"][i] == SparseMat.identity(M.dim(i)) for i in WIN.degrees())
    r = extend_hom(SparseMat.identity(2).scale(3), M, M)
    assert r["map"][3] == SparseMat.identity(M.dim(3)).scale(3)
    with pytest.raises(ValueError):
        extend_hom(SparseMat.from_dense([[0, 1], [0, 0]]), M, M)


def test_irreducibility_modes():
    for lam in [(2, 0), (2, 1)]:
        assert irreducible_lc_check(V(lam), "lc")["irreducible"]
        assert irreducible_lc_check(V(lam), "g")["irreducible"]
    R = V((0, 0))
    assert irreducible_lc_check(R, "lc")["irreducible"]
    chk = irreducible_lc_check(R, "g")
    assert not chk["irreducible"]
    assert chk["witness"]["labels"] == ["1(x)v"]
    assert chk["witness"]["submodule_dims"] == {"0": 1, "1": 0, "2": 0, "3": 0, "4": 0}


def test_lift_to_zero_target():
    DR = tensor_with_R(build_delta(W2, (0, 0), 0, Window(0, 2)))
    Z = direct_sum(prolong_v_lambda(W2, (0, 0), 0, Window(0, 2)))
    pi = {i: SparseMat.identity(Z.dim(i)) for i in range(3)}
    zero = {i: SparseMat.zero(0, DR.dim(i)) for i in range(3)}

    class Zero:
        def dim(self, i):
            return 0
    r = lift_through_surjection(DR, Z, Zero(), {i: SparseMat.zero(0, Z.dim(i)) for i in range(3)}, zero)
    assert r["lifted"] and r["reason"] == "target is zero"
