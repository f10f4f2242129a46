import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rzspaces.errors import BudgetExceeded, DegreeCapExceeded, PreconditionViolated
from rzspaces.sigmalin import (AdditivePoly, SigmaSystem, brute_solutions, check_additive,
                               finite_field, is_triangular, random_system, triangularize)

F9 = finite_field(3, 2)
F27 = finite_field(3, 3)


def test_field_tables():
    for F in (F9, F27, finite_field(5, 1)):
        q = F.q
        assert all(F.mul[a, F.inv[a]] == 1 for a in range(1, q))
        assert all(F.power(a, q) == a for a in range(q))
        assert len(set(F.frob.tolist())) == q


def test_embedding_is_homomorphism():
    big = finite_field(3, 4)
    emb = F9.embedding(big)
    for a in range(9):
        for b in range(9):
            assert emb[F9.add[a, b]] == big.add[emb[a], emb[b]]
            assert emb[F9.mul[a, b]] == big.mul[emb[a], emb[b]]


def test_worked_example():
    u, a0, a1 = 4, 5, 7
    S = SigmaSystem(F9, (((1,), (0, 1)), ((0, 1), (u,))), (a0, a1))
    T = triangularize(S)
    assert T.rows[0] == S.rows[0] and T.rhs[0] == a0
    assert T.rows[1][0].is_zero()
    assert T.rows[1][1] == AdditivePoly((u, 0, F9.neg[1]))  # u x1 - x1^9
    assert T.rhs[1] == F9.sub(a1, F9.power(a0, 3))
    for s in (1, 2):
        assert brute_solutions(S, s) == brute_solutions(T, s)


def test_triangular_is_fixpoint():
    S = SigmaSystem(F9, (((2, 1), (0, 3)), ((0,), (1, 0, 5))), (1, 2))
    assert is_triangular(S)
    assert triangularize(S) == S


def test_preconditions():
    with pytest.raises(PreconditionViolated):
        triangularize(SigmaSystem(F9, (((1,), (1,)), ((1,), (1,))), (0, 0)))
    with pytest.raises(PreconditionViolated):
        triangularize(SigmaSystem(F9, (((0, 1),),), (0,)))
    with pytest.raises(PreconditionViolated):
        triangularize(SigmaSystem(F9, (((1,),), ((1,),)), (0, 0)))


def test_brute_examples():
    x_minus_x9 = SigmaSystem(F9, (((1, 0, F9.neg[1]),),), (0,))
    assert len(brute_solutions(x_minus_x9, 1)) == 9
    assert len(brute_solutions(x_minus_x9, 2)) == 9
    lin = SigmaSystem(F9, (((5,),),), (7,))
    sols = brute_solutions(lin, 1)
    assert len(sols) == 1 and F9.mul[5, next(iter(sols))[0]] == 7
    with pytest.raises(BudgetExceeded):
        brute_solutions(SigmaSystem(F27, (((1,), (0,), (0,)),), (0,)), 2)


def test_degree_cap():
    rng = np.random.default_rng(2)
    S = random_system(F9, 3, 3, 2, rng)
    with pytest.raises(DegreeCapExceeded):
        for seed in range(200):
            S = random_system(F9, 3, 3, 3, np.random.default_rng(seed))
            triangularize(S, degree_cap=3)


@pytest.mark.parametrize("F", [F9, F27])
def test_random_systems_preserve_solutions(F):
    rng = np.random.default_rng(F.q)
    for _ in range(40):
        nv = int(rng.integers(1, 4 if F.q == 9 else 3))
        S = random_system(F, int(rng.integers(1, nv + 1)), nv, 2, rng)
        T = triangularize(S)
        assert is_triangular(T)
        for s in (1, 2):
            assert brute_solutions(S, s) == brute_solutions(T, s)


@given(st.sampled_from([F9, F27]), st.lists(st.integers(0, 26), min_size=1, max_size=4))
def test_additivity(F, coeffs):
    P = AdditivePoly(tuple(c % F.q for c in coeffs))
    assert check_additive(P, F)


def test_json_round_trip():
    S = random_system(F27, 2, 3, 2, np.random.default_rng(0))
    assert SigmaSystem.from_json(S.to_json()) == S
    assert json.loads(S.to_json())["modulus"] == list(F27.modulus)
