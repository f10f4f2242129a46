"""Howell-form kernels against brute-force span computations over Z/p^s."""
import itertools

import numpy as np
from hypothesis import given, strategies as st

from rzspaces import _kernels as K

F1 = np.array([1, 1], dtype=np.int64)  # unused for r = 1 beyond its shape


def span_set(rows, pn):
    """All Z/pn-combinations of the rows (r = 1)."""
    d = rows.shape[1]
    out = {tuple([0] * d)}
    for row in rows:
        new = set()
        for v in out:
            for c in range(pn):
                new.add(tuple((a + c * b) % pn for a, b in zip(v, row)))
        out = new
    return out


mats = st.integers(1, 3).flatmap(lambda d: st.lists(
    st.lists(st.integers(0, 8), min_size=d, max_size=d), min_size=0, max_size=4).map(
        lambda rows: (d, rows)))


@given(mats)
def test_howell_span_and_canonicity(arg):
    d, rows = arg
    A = np.array(rows, dtype=np.int64).reshape(len(rows), d, 1)
    H, pc, pv = K.howell(A, 3, 2, F1)
    S = span_set(A[:, :, 0], 9) if len(rows) else {tuple([0] * d)}
    assert span_set(H[:, :, 0], 9) == S
    assert K.module_length(pv, 2) == round(np.log(len(S)) / np.log(3))
    # any other generating set of the same module gives the same form
    rng = np.random.default_rng(len(rows) * 7 + d)
    gens = np.array(sorted(S), dtype=np.int64)
    pick = gens[rng.choice(len(gens), size=min(len(gens), 5), replace=False)]
    stack = np.concatenate((pick, H[:, :, 0])).reshape(-1, d, 1)
    H2, _, _ = K.howell(stack, 3, 2, F1)
    assert np.array_equal(H, H2)


@given(mats)
def test_kernel_is_annihilator(arg):
    d, rows = arg
    A = np.array(rows, dtype=np.int64).reshape(len(rows), d, 1)
    Kr, _, _ = K.kernel(A, 3, 2, F1)
    want = {v for v in itertools.product(range(9), repeat=d)
            if all(sum(a * b for a, b in zip(row, v)) % 9 == 0 for row in rows)}
    assert span_set(Kr[:, :, 0], 9) == want


def test_membership_example():
    A = np.array([[1, 1], [3, 0]], dtype=np.int64).reshape(2, 2, 1)
    H, pc, pv = K.howell(A, 3, 2, F1)
    assert H[:, :, 0].tolist() == [[1, 1], [0, 3]]
    probe = np.array([[0, 3]], dtype=np.int64).reshape(1, 2, 1)
    assert K.contains_all(H, pc, pv, probe, 3, 2, F1)


def test_extension_ring_inverse():
    f = np.array([2, 2, 1], dtype=np.int64)  # x^2 + 2x + 2 over Z/27
    for a0 in range(27):
        for a1 in range(0, 27, 4):
            a = np.array([a0, a1], dtype=np.int64)
            if a0 % 3 == 0 and a1 % 3 == 0:
                continue
            inv = K.unit_inv(a, f, 3, 3)
            assert K.emul(a, inv, f, 27).tolist() == [1, 0]


def test_colon_example():
    A = np.array([[3, 0]], dtype=np.int64).reshape(1, 2, 1)
    H, _, _ = K.howell(A, 3, 2, F1)
    C, _, _ = K.colon_p(H, 3, 2, F1)
    assert C[:, :, 0].tolist() == [[1, 0], [0, 3]]
