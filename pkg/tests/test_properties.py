from fractions import Fraction
from itertools import permutations
from math import comb

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from lcartan.cohomology import koszul_differential, wedge_sort
from lcartan.exactcore import Poly, SparseMat, dim_R, kernel, rank, rref
from lcartan.g0rep import build_simple, freudenthal_multiplicities, weyl_dimension
from lcartan.natalg import NatAlgebra, unity_omega
from lcartan.vecfields import AlgebraKind, VField, bracket, divergence, get_algebra, is_member

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
rats = st.fractions(min_value=-5, max_value=5, max_denominator=4)
N_VARS = 2


@st.composite
def polys(draw, n=N_VARS, max_deg=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        terms[e] = draw(rats)
    return Poly(n, {m: c for m, c in terms.items() if c})


@st.composite
def matrices(draw, max_dim=6):
    r, c = draw(st.integers(0, max_dim)), draw(st.integers(0, max_dim))
    entries = draw(st.lists(st.tuples(st.integers(0, max(r - 1, 0)), st.integers(0, max(c - 1, 0)),
                                      st.integers(-3, 3)), max_size=r * c))
    return SparseMat.from_entries(r, c, [(i, j, v) for i, j, v in entries if r and c and v])


@st.composite
def fields(draw, n=N_VARS):
    return VField([draw(polys(n, 2, 3)) for _ in range(n)])


@SETTINGS
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@SETTINGS
@given(polys(), polys(), st.integers(0, N_VARS - 1))
def test_leibniz(a, b, i):
    assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


@SETTINGS
@given(polys())
def test_text_round_trip(a):
    assert Poly.from_text(N_VARS, a.to_text()) == a


@SETTINGS
@given(polys(), polys())
def test_unity_is_multiplicative(a, b):
    assert unity_omega(a * b) == unity_omega(a) * unity_omega(b)


@given(st.integers(1, 4), st.integers(0, 6))
def test_dim_R_formula(n, d):
    assert dim_R(n, d) == comb(d + n - 1, n - 1)


@SETTINGS
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + len(kernel(m)) == m.cols
    for v in kernel(m):
        assert not m.apply(v)


@SETTINGS
@given(matrices())
def test_backends_agree(m):
    r = rank(m, "sparse")
    assert rank(m, "dense") == r == rank(m, "dense-numpy")
    assert kernel(m, "dense") == kernel(m, "sparse")


@SETTINGS
@given(matrices())
def test_rref_idempotent(m):
    piv, red = rref(m.row_dicts(), m.cols)
    assert rref(red, m.cols) == (piv, red)


@SETTINGS
@given(fields(), fields(), fields())
def test_jacobi_on_random_fields(X, Y, Z):
    total = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
    assert total.is_zero()
    assert bracket(X, Y) == bracket(Y, X).scale(-1)


@SETTINGS
@given(fields(), fields())
def test_divergence_of_bracket(X, Y):
    assert divergence(bracket(X, Y)) == X.apply(divergence(Y)) - Y.apply(divergence(X))


@SETTINGS
@given(st.sampled_from(["S2", "H2", "S3"]), st.integers(-1, 2), st.integers(-1, 2), st.data())
def test_closure_of_subalgebras(kind, k1, k2, data):
    alg = get_algebra(AlgebraKind.parse(kind))
    X = data.draw(st.sampled_from(alg.basis(k1)))
    Y = data.draw(st.sampled_from(alg.basis(k2)))
    assert is_member(alg.kind, bracket(X, Y))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["W2", "S3", "H2", "H4"]), st.data())
def test_simple_modules_match_character_formulas(kind, data):
    k = AlgebraKind.parse(kind)
    if k.family == "H":
        lam = sorted([data.draw(st.integers(0, 2)) for _ in range(k.r)], reverse=True)
    else:
        top = data.draw(st.integers(0, 2))
        lam = sorted([data.draw(st.integers(0, top)) for _ in range(k.n)], reverse=True)
    lam = k.normalize_weight(lam)
    L = build_simple(k, lam)
    assert L.dim == weyl_dimension(k, lam)
    assert L.character() == freudenthal_multiplicities(k, lam)


@given(st.lists(st.integers(0, 6), min_size=0, max_size=5, unique=True), st.randoms())
def test_wedge_sign_is_permutation_parity(items, rnd):
    perm = list(items)
    rnd.shuffle(perm)
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    assert wedge_sort(perm) == ((-1) ** inv, tuple(sorted(items)))


@SETTINGS
@given(st.integers(2, 3), st.integers(1, 5), st.integers(0, 2))
def test_koszul_squares_to_zero(n, m, k):
    if k + 1 > n or m < 2:
        return
    d1 = koszul_differential(n, m, k)
    d2 = koszul_differential(n, m - 1, k + 1)
    assert (d2 @ d1).is_zero()


_NAT = NatAlgebra(AlgebraKind.parse("W2"), letter_max=6)
_LETTERS = get_algebra(AlgebraKind.parse("W2")).letters(-1, 1)


@st.composite
def nat_elements(draw):
    f = draw(polys(2, 2, 2))
    word = sorted(draw(st.lists(st.sampled_from(_LETTERS), max_size=2)))
    e = _NAT.element(f, word) if not f.is_zero() else _NAT.one()
    return _NAT.add(e, _NAT.scale(_NAT.letter(draw(st.sampled_from(_LETTERS))), draw(rats)))


@settings(max_examples=40, deadline=None)
@given(nat_elements(), nat_elements(), nat_elements())
def test_naturalized_associativity(a, b, c):
    N = _NAT
    assert N.mul(N.mul(a, b), c) == N.mul(a, N.mul(b, c))


@settings(max_examples=40, deadline=None)
@given(nat_elements(), nat_elements(), polys(2, 3, 3))
def test_R_is_a_module(a, b, f):
    N = _NAT
    assert N.act_on_R(N.mul(a, b), f) == N.act_on_R(a, N.act_on_R(b, f))
