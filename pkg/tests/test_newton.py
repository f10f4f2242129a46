from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

import pytest
from hypothesis import given, strategies as st

from rzspaces.errors import Empty, Malformed, NonCoprime, NotSymmetric
from rzspaces.newton import (NewtonPolygon, SimpleSummand, decompose_parts, dual,
                             enumerate_symmetric, is_symmetric, m_invariant,
                             m_invariant_symmetric, parse_newton, split_polarized)

NP = parse_newton


def test_parse_examples():
    assert NP("1:1,1:1") == NewtonPolygon(((1, 1), (1, 1)))
    assert repr(NP("2:1,1:2")) == "NP[(1,2),(2,1)]"
    with pytest.raises(NonCoprime):
        NP("2:4")
    with pytest.raises(Empty):
        NP("  ")
    with pytest.raises(Malformed):
        NP("1-2")
    with pytest.raises(Malformed):
        NP("a:b")


def test_summand_validation():
    with pytest.raises(ValueError):
        SimpleSummand(0, 0)
    assert SimpleSummand(0, 1).slope() == 0 and SimpleSummand(1, 0).slope() == 1
    assert SimpleSummand(2, 3).height() == 5


def test_dual_examples():
    assert dual(NP("1:2")) == NP("2:1")
    assert dual(NP("1:1")) == NP("1:1")


def test_decompose_examples():
    assert decompose_parts(NP("0:1,1:1,1:0")) == (1, 2, 1)
    assert decompose_parts(NP("1:1,1:1")) == (0, 4, 0)
    assert decompose_parts(NP("0:1,1:0")) == (1, 0, 1)


def test_split_examples():
    assert split_polarized(NP("1:2,1:1,2:1")) == (NP("1:2"), True, NP("2:1"))
    assert split_polarized(NP("1:1,1:1")) == (NP("1:1"), False, NP("1:1"))
    with pytest.raises(NotSymmetric):
        split_polarized(NP("1:2"))


def test_m_invariant_examples():
    assert m_invariant(NP("1:1,1:1")) == 1
    assert m_invariant(NP("1:1")) == 0
    assert m_invariant(NP("1:2,2:1")) == 1


def test_enumerate_small():
    assert set(enumerate_symmetric(1)) == {NP("1:1"), NP("0:1,1:0")}
    assert set(enumerate_symmetric(2)) == {NP("1:1,1:1"), NP("0:1,1:1,1:0"),
                                           NP("0:1,0:1,1:0,1:0")}


def _brute_symmetric(h):
    """All symmetric polygons of height 2h from all multisets of summands."""
    types = [SimpleSummand(m, n) for m in range(2 * h + 1) for n in range(2 * h + 1)
             if (m, n) != (0, 0) and gcd(m, n) == 1 and m + n <= 2 * h]
    out = set()

    def rec(start, left, acc):
        if left == 0:
            np_ = NewtonPolygon(tuple(acc))
            if is_symmetric(np_):
                out.add(np_)
            return
        for k in range(start, len(types)):
            t = types[k]
            if t.height() <= left:
                rec(k, left - t.height(), acc + [t])

    rec(0, 2 * h, [])
    return out


@pytest.mark.parametrize("h", range(1, 6))
def test_enumerate_matches_brute_force(h):
    got = enumerate_symmetric(h)
    assert len(got) == len(set(got))
    assert set(got) == _brute_symmetric(h)
    assert got == sorted(got, key=lambda x: [(s.m, s.n) for s in x])


def test_enumeration_properties_to_height_24():
    for h in range(1, 13):
        for x in enumerate_symmetric(h):
            assert dual(x) == x and x.height() == 2 * h and is_symmetric(x)
            et, bi, mu = decompose_parts(x)
            assert et == mu and et + bi + mu == x.height()
            n0, mid, n1 = split_polarized(x)
            assert n0.height() + n1.height() + (2 if mid else 0) == x.height()
            assert n1 == dual(n0)
            assert all(s.slope() <= Fraction(1, 2) for s in n0)
            assert m_invariant(x) == m_invariant_symmetric(x)


summands = st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(
    lambda t: t != (0, 0) and gcd(*t) == 1)
polys = st.lists(summands, min_size=1, max_size=6).map(lambda xs: NewtonPolygon(tuple(xs)))


@given(polys)
def test_dual_is_involution(x):
    assert dual(dual(x)) == x
    assert is_symmetric(x) == (dual(x) == x)
    assert is_symmetric(x + dual(x))


@given(polys)
def test_json_and_text_round_trip(x):
    assert NewtonPolygon.from_json(x.to_json()) == x
    assert parse_newton(x.to_text()) == x
    keys = [s.sort_key() for s in x]
    assert keys == sorted(keys)
