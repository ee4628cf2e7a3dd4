import pytest

from lcartan.cohomology import (FiniteLieAlgebra, Resolution, ce_complex, composition_accounting, g0_lie_algebra,
                                graded_character, koszul_complex, koszul_differential, resolution_differential,
                                ulc_cochain_complex, ulc_cohomology_windowed, wedge_sort, wedges_with_load)
from lcartan.exactcore import Poly, SparseMat, rank
from lcartan.lcmod import Window, build_delta, direct_sum, irreducible_lc_check, prolong_v_lambda
from lcartan.vecfields import AlgebraKind

K = AlgebraKind.parse


def test_wedge_sort():
    assert wedge_sort((2, 0, 1)) == (1, (0, 1, 2))
    assert wedge_sort((1, 0)) == (-1, (0, 1))
    assert wedge_sort((1, 1))[0] == 0


@pytest.mark.parametrize("kind,betti", [("W1", [1, 1]), ("S2", [1, 0, 0, 1]), ("W2", [1, 1, 0, 1, 1]),
                                        ("H2", [1, 0, 0, 1])])
def test_ce_betti(kind, betti):
    L = g0_lie_algebra(K(kind))
    assert L.jacobi_ok()
    C = ce_complex(L)
    assert C.dd_zero()
    assert C.betti() == betti
    assert C.report().euler_consistent


def test_ce_gl3():
    assert ce_complex(g0_lie_algebra(K("W3"))).betti() == [1, 1, 0, 1, 1, 1, 1, 0, 1, 1]


def test_ce_cap_and_coefficients():
    with pytest.raises(ValueError):
        ce_complex(g0_lie_algebra(K("S4")))
    # gl(1) acting on a line by 1: no invariants, no cohomology
    L = FiniteLieAlgebra("gl(1)", 1, {})
    C = ce_complex(L, [SparseMat.identity(1)])
    assert C.betti() == [0, 0]


def test_koszul_strands_n2():
    C = koszul_complex(K("W2"), range(0, 4))
    r = C.report()
    dims = {s["index"]: s["dims"] for s in r.strands}
    assert dims[0] == [1, 0, 0]
    assert dims[1] == [2, 2, 0]
    assert dims[2] == [3, 4, 1]
    hom = {s["index"]: s["homology"] for s in r.strands}
    assert hom[0] == [1, 0, 0]
    assert hom[1] == hom[2] == hom[3] == [0, 0, 0]
    assert r.dd_zero and r.euler_consistent
    assert rank(koszul_differential(2, 1, 0)) == 2


def test_koszul_rejects_h():
    with pytest.raises(ValueError):
        koszul_complex(K("H2"), [0])


def test_composition_accounting_w2():
    a = composition_accounting(K("W2"), max_degree=4)
    assert a["conservation_ok"]
    # the ker d_0 factor of V(ω_0) = R is the constants
    assert a["factors"]["V(omega_0)"]["sub_factor_dims"] == [1, 0, 0, 0, 0]
    assert a["factors"]["V(omega_0)"]["quotient_factor_dims"] == [0, 2, 3, 4, 5]
    top = prolong_v_lambda(K("W2"), (1, 1), 0, Window(0, 4))
    assert irreducible_lc_check(top, "g")["irreducible"]


def test_composition_accounting_h2():
    a = composition_accounting(K("H2"), window=Window(0, 5))
    assert a["g_reducible"]
    assert "not certified" in a["limitation"]
    assert a["witness"]["submodule_dims"] == {str(i): i + 2 for i in range(6)}


def test_graded_character():
    R = prolong_v_lambda(K("W2"), (0, 0), 0, Window(0, 3))
    ch = graded_character(R)
    assert ch[2] == {(0, 2): 1, (1, 1): 1, (2, 0): 1}
    D = build_delta(K("W2"), (1, 0), 0, Window(0, 2))
    assert graded_character(D)[0] == {(0, 1): 1, (1, 0): 1}
    S = direct_sum(R, R)
    assert graded_character(S)[1] == {w: 2 * m for w, m in ch[1].items()}


def test_wedges_with_load():
    letters = [(-1, 0), (-1, 1), (0, 0), (1, 0)]
    assert wedges_with_load(letters, 2, 0) == [((-1, 0), (-1, 1))]
    assert ((-1, 0), (0, 0)) in wedges_with_load(letters, 2, 1)
    assert all(sum(L[0] + 1 for L in w) <= 2 for w in wedges_with_load(letters, 3, 2))


def test_ulc_degree_zero_cochains():
    # φ(1) = x1 gives (dφ)(∂1) = ρ(∂1)x1 = 1, while φ(1) = 1 is a cocycle
    R = prolong_v_lambda(K("W1"), (0,), 0, Window(0, 2))
    assert R.rho((-1, 0), 1).column(0) == {0: 1}
    assert R.rho((-1, 0), 0).is_zero()
    C = ulc_cochain_complex(K("W1"), 3, q_max=1)
    s = C.strands[0]
    assert s.dd_zero()
    assert s.homology()[0] == 1


def test_ulc_w1_stability():
    r = ulc_cohomology_windowed(K("W1"), [3, 4, 5], q_max=1)
    assert r.betti == [1, 1]
    assert r.stability["stable"] and r.stability["dd_zero_all"]
    assert r.annotations["matches_gl"]


def test_ulc_w2_q2_dd_zero():
    C = ulc_cochain_complex(K("W2"), 3, q_max=2)
    assert C.dd_zero()


def test_resolution_examples():
    Rz = Resolution(K("W2"))
    N = Rz.N
    d1 = (-1, 0)
    assert Rz.kappa(N.one()) == Poly.one(2)
    assert Rz.kappa(N.mul(N.letter(d1), N.var(0))) == Poly.one(2)
    z = Rz.generator(N.one(), Poly.one(2), [d1])
    assert Rz.d0(z) == N.letter(d1)
    assert Rz.kappa(Rz.d0(z)).is_zero()
    with pytest.raises(ValueError):
        Rz.d(z)


def test_resolution_w1():
    rep = resolution_differential(K("W1"), q_max=2)
    assert rep["ok"]
    assert rep["d0_d1"]["checked"] > 0


def test_report_serialization():
    r = koszul_complex(K("W2"), [1, 2]).report()
    assert r.betti_csv().splitlines()[0] == "strand,H0,H1,H2"
    assert r.to_json() == koszul_complex(K("W2"), [1, 2]).report().to_json()
