from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from rzspaces.errors import IndexOutOfRange, NotSymmetric
from rzspaces.newton import enumerate_symmetric, parse_newton
from rzspaces.rootdata import Coweight, mu_minuscule, newton_vector, pair, pi1_image

NP = parse_newton


def test_newton_vector_examples():
    assert newton_vector(NP("1:1,1:1")) == Coweight((Fr(1, 2), Fr(1, 2)), 1)
    assert newton_vector(NP("1:2,2:1")) == Coweight((Fr(2, 3),) * 3, 1)
    assert newton_vector(NP("0:1,1:1,1:0")) == Coweight((1, Fr(1, 2)), 1)
    with pytest.raises(NotSymmetric):
        newton_vector(NP("1:2"))


def test_mu_minuscule():
    mu = mu_minuscule(2)
    assert mu == Coweight((1, 1), 1) and mu.is_dominant()
    assert mu.full_vector() == (1, 1, 0, 0)
    assert mu_minuscule(1).a == (1,)
    assert pi1_image(mu) == 1


def test_pairing_examples():
    x = mu_minuscule(2) - newton_vector(NP("1:1,1:1"))
    assert x == Coweight((Fr(1, 2), Fr(1, 2)), 0)
    assert pair("two_rho", x) == 3
    assert pair("omega_2", -x) == -1
    assert pair(("omega", 2), -x) == -1
    with pytest.raises(IndexOutOfRange):
        pair("omega_3", x)
    with pytest.raises(IndexOutOfRange):
        pair(("omega", 0), x)


def test_pi1_examples():
    assert pi1_image(Coweight.zero(3)) == 0
    assert pi1_image(Coweight((2, 0), 2)) == 2


def test_sweep_to_height_24():
    for h in range(1, 13):
        mu = mu_minuscule(h)
        for np_ in enumerate_symmetric(h):
            nu = newton_vector(np_)
            assert nu.is_dominant()
            assert all(Fr(1, 2) <= a <= 1 for a in nu.a)
            d = mu - nu
            assert d.c == 0
            assert all(pair(("omega", i), nu - mu) <= 0 for i in range(1, h + 1))


rat = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(st.lists(rat, min_size=1, max_size=6), rat)
def test_two_rho_is_twice_rho(a, c):
    x = Coweight(tuple(a), c)
    assert pair("two_rho", x) == 2 * pair("rho", x)


@given(st.integers(1, 6), rat)
def test_weights_vanish_on_centre(h, t):
    z = Coweight((t,) * h, 2 * t)
    assert pair("rho", z) == 0 and pair("two_rho", z) == 0
    assert all(pair(("omega", i), z) == 0 for i in range(1, h + 1))


@given(st.lists(rat, min_size=1, max_size=5), rat)
def test_json_round_trip(a, c):
    x = Coweight(tuple(a), c)
    assert Coweight.from_json(x.to_json()) == x
