import random

import pytest

from lcartan.exactcore import Poly
from lcartan.natalg import NatAlgebra, WindowOverflow, axiom_suite, unity_omega
from lcartan.vecfields import AlgebraKind

W2 = AlgebraKind.parse("W2")
D1 = (-1, 0)


@pytest.fixture(scope="module")
def N():
    return NatAlgebra(W2, letter_max=3)


def P(text):
    return Poly.from_text(2, text)


def test_normal_form_examples(N):
    d1, x1 = N.letter(D1), N.var(0)
    assert N.normal_form([D1, P("x1")]) == N.add(N.element(P("x1"), [D1]), N.one())
    assert N.normal_form([P("x1"), D1]) == N.element(P("x1"), [D1])
    assert N.normal_form([P("x1"), P("x2")]) == N.poly(P("x1*x2"))
    assert N.to_text(N.mul(d1, x1)) == "1 (x) [] + x1 (x) [g-1[0]]"


def test_mul_examples(N):
    d1, x1 = N.letter(D1), N.var(0)
    assert N.mul(N.one(), d1) == d1
    assert N.mul(x1, d1) == N.element(P("x1"), [D1])
    assert N.mul(d1, x1) == N.add(N.element(P("x1"), [D1]), N.one())


def test_normal_form_order_independent(N):
    factors = [D1, P("x1 + x2"), (0, 1), P("x2"), (-1, 1)]
    left = N.normal_form(factors, "left")
    assert N.normal_form(factors, "right") == left
    assert N.normal_form(factors, "random", random.Random(5)) == left


def test_unity():
    assert unity_omega(P("1 + x1")) == 1
    assert unity_omega(P("x1*x2")) == 0
    rng = random.Random(1)
    for _ in range(20):
        f = P(f"{rng.randint(-5, 5)} + {rng.randint(1, 4)}*x1")
        g = P(f"{rng.randint(-5, 5)} + {rng.randint(1, 4)}*x2^2")
        assert unity_omega(f * g) == unity_omega(f) * unity_omega(g)


def test_action_on_R(N):
    assert N.act_on_R(N.letter(D1), P("x1^2")) == P("2*x1")
    assert N.act_on_R(N.mul(N.var(1), N.letter(D1)), P("x1")) == P("x2")
    a, b = N.letter((0, 1)), N.mul(N.var(0), N.letter(D1))
    f = P("x1^2*x2 + 3*x2")
    assert N.act_on_R(N.mul(a, b), f) == N.act_on_R(a, N.act_on_R(b, f))


def test_kappa(N):
    # κ(∂1 · x1) = (∂1 x1)(1) = 1
    assert N.kappa(N.mul(N.letter(D1), N.var(0))) == Poly.one(2)


def test_minus_sign_convention_differs():
    Nm = NatAlgebra(W2, letter_max=3, sign=-1)
    d1, x1 = Nm.letter(D1), Nm.var(0)
    assert Nm.mul(d1, x1) == Nm.add(Nm.element(P("x1"), [D1]), Nm.scale(Nm.one(), -1))


def test_window_overflow():
    N = NatAlgebra(W2, letter_max=1)
    with pytest.raises(WindowOverflow):
        N.mul(N.letter((1, 1)), N.letter((1, 0)))
    capped = NatAlgebra(W2, letter_max=3, word_cap=1)
    with pytest.raises(WindowOverflow):
        capped.mul(capped.letter((0, 0)), capped.letter((0, 1)))


def test_axiom_suite_w1():
    rep = axiom_suite(AlgebraKind.parse("W1"), -1, 3, word_cap=3, samples=50, seed=0)
    assert rep["ok"]
    assert rep["associativity"]["plus"]["assoc_ok"]
    assert not rep["associativity"]["minus"]["assoc_ok"]
    assert rep["adopted_sign"] == "+"


def test_text_and_json(N):
    e = N.add(N.element(P("x1^2"), [D1, (0, 0)]), N.scale(N.one(), 3))
    assert "x1^2 (x) [g-1[0] g0[0]]" in N.to_text(e)
    assert N.to_json_obj(e) == N.to_json_obj(dict(reversed(list(e.items()))))
