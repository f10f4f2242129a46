from fractions import Fraction as Fr

import pytest

from rzspaces.dimension import (DimensionReport, defect, dim_eq4, dim_eq5, dim_nonpolarized,
                                dim_polarized, extension_dimension, full_report,
                                level_free_count)
from rzspaces.errors import ClosedFormMismatch, NotSymmetric
from rzspaces.newton import dual, enumerate_symmetric, parse_newton
from rzspaces.rootdata import mu_minuscule, newton_vector, pair
from rzspaces import dimension as dimension_mod

NP = parse_newton


@pytest.mark.parametrize("text,value", [
    ("1:1,1:1", 1), ("1:1", 0), ("1:1,1:1,1:1", 2), ("1:3,1:1,3:1", 2)])
def test_dim_polarized_examples(text, value):
    assert dim_polarized(NP(text)) == value


def test_dim_polarized_rejects():
    with pytest.raises(NotSymmetric):
        dim_polarized(NP("1:2"))


@pytest.mark.parametrize("text,value", [("2:3", 1), ("1:1", 0), ("1:2,2:1", 1)])
def test_dim_nonpolarized_examples(text, value):
    assert dim_nonpolarized(NP(text)) == value


@pytest.mark.parametrize("text,value", [("1:1,1:1", 1), ("1:2,1:1,2:1", 3), ("1:1", 1)])
def test_defect_examples(text, value):
    assert defect(NP(text)) == value


def test_eq4_terms():
    np_ = NP("1:1,1:1")
    mu, nu = mu_minuscule(2), newton_vector(np_)
    assert pair("two_rho", mu - nu) == 3
    assert [pair(("omega", i), nu - mu) for i in (1, 2)] == [Fr(-1, 2), -1]
    assert dim_eq4(np_) == 1


@pytest.mark.parametrize("text,v4,v5", [
    ("1:1,1:1", 1, 1), ("1:2,2:1", 1, 1), ("1:3,1:1,3:1", 2, 2)])
def test_eq4_eq5_examples(text, v4, v5):
    assert dim_eq4(NP(text)) == v4
    assert dim_eq5(NP(text)) == v5


def test_eq5_pieces():
    np_ = NP("1:3,1:1,3:1")
    assert pair("rho", mu_minuscule(5) - newton_vector(np_)) == 4
    assert defect(np_) == 4


@pytest.mark.parametrize("i,m,v", [(0, 1, 1), (1, 1, 0), (5, 2, 0)])
def test_level_free_examples(i, m, v):
    assert level_free_count(i, m) == v


def test_level_free_evaluated_form():
    for m in range(0, 60):
        for i in range(0, 3 * m + 3):
            want = i // 2 + 1 if i < m else (i // 2 - i + m if i < 2 * m else 0)
            assert level_free_count(i, m) == max(0, want)


def test_level_sums_to_200():
    for m in range(201):
        terms = [level_free_count(i, m) for i in range(4 * m + 4)]
        assert sum(terms) == m * (m + 1) // 2
        assert all(t == 0 for t in terms[2 * m:])


def test_extension_examples():
    assert extension_dimension(2, False) == 3
    assert extension_dimension(0, False) == 0 and extension_dimension(0, True) == 0
    assert extension_dimension(1, True) == 2


def test_extension_tripwire(monkeypatch):
    monkeypatch.setattr(dimension_mod, "level_free_count", lambda i, m: 1)
    with pytest.raises(ClosedFormMismatch):
        dimension_mod.extension_dimension(3, False)


def test_full_report_examples():
    r = full_report(NP("1:1,1:1"))
    assert r.agree and r.dim_eq3 == r.dim_eq4 == r.dim_eq5 == 1 and r.m == 1 and r.defect == 1
    r = full_report(NP("1:2,1:1,2:1"))
    assert r.dim_eq3 == 2 and r.dim_nonpolarized_n0 == 0 and r.extension == 2 and r.agree
    assert full_report(NP("0:1,1:1,1:0")).dim_eq3 == full_report(NP("1:1")).dim_eq3 == 0


def test_ceil_defect_breaks_agreement():
    np_ = NP("1:2,1:1,2:1")
    ceil = lambda x: x.h - (len(x) + 1) // 2  # noqa: E731
    assert dim_eq5(np_, ceil) != dim_polarized(np_)
    assert dim_eq5(np_) == dim_polarized(np_) == 2


def test_defect_matches_centraliser_rank():
    # rk J = 1 (similitude) + one GL per pair of dual slopes < 1/2 + floor(d_{1/2}/2)
    for h in range(1, 9):
        for np_ in enumerate_symmetric(h):
            low = sum(1 for s in np_ if 2 * s.m < s.m + s.n)
            ss = sum(1 for s in np_ if 2 * s.m == s.m + s.n)
            rank_j = 1 + low + ss // 2
            assert defect(np_) == (h + 1) - rank_j


def test_three_forms_height_20_and_decomposition():
    for h in range(1, 11):
        for np_ in enumerate_symmetric(h):
            r = full_report(np_)
            assert r.agree, np_
            assert dim_polarized(np_ + NP("0:1,1:0")) == r.dim_eq3
            assert dim_nonpolarized(np_) == dim_nonpolarized(dual(np_))


def test_three_forms_h_up_to_20():
    """Same sweep for every symmetric polygon of h <= 20 (height <= 40)."""
    count = 0
    for h in range(1, 21):
        for np_ in enumerate_symmetric(h):
            d3 = dim_polarized(np_)
            assert d3 == dim_eq4(np_) == dim_eq5(np_) and d3.denominator == 1 and d3 >= 0
            count += 1
    assert count == 11492


def test_report_json_round_trip():
    r = full_report(NP("1:3,1:1,3:1"))
    d = r.to_dict()
    assert d["dim_eq3"] == "2" and d["dim_eq3_decimal"] == 2.0
    assert DimensionReport.from_dict(d) == r
