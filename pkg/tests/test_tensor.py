import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypernorm import (
    Tensor,
    adjacency_tensor,
    all_ones,
    entrywise_norm,
    from_coo,
    gen_beta_star,
    is_regular,
    is_symmetric,
    rank_one,
    slice_abs_sum,
    slice_sum,
    to_coo,
    transpose,
)
from hypernorm.errors import (
    BadExponent,
    BadOrder,
    BadPermutation,
    DuplicateIndex,
    IndexOutOfRange,
    NotCubical,
)

from conftest import symmetric_tensors, tensors


def test_from_coo_k2():
    A = from_coo(2, [2, 2], [((0, 1), 1), ((1, 0), 1)])
    assert np.array_equal(A.data, [[0, 1], [1, 0]])


def test_from_coo_all_ones():
    coo = [(idx, 1.0) for idx in itertools.product(range(2), repeat=3)]
    assert from_coo(3, [2, 2, 2], coo) == all_ones(3, 2)


def test_from_coo_errors():
    with pytest.raises(DuplicateIndex):
        from_coo(2, [2, 2], [((0, 0), 1), ((0, 0), 1)])
    with pytest.raises(IndexOutOfRange):
        from_coo(2, [2, 2], [((0, 2), 1)])
    with pytest.raises(BadOrder):
        from_coo(1, [2], [])


def test_coo_roundtrip():
    A = Tensor(np.arange(12.0).reshape(2, 3, 2) - 5)
    assert from_coo(3, A.dims, to_coo(A)) == A


def test_tensor_is_immutable():
    A = all_ones(2, 2)
    with pytest.raises(ValueError):
        A.data[0, 0] = 5.0
    with pytest.raises(ValueError):
        A.slice(0, 0)[0] = 5.0


def test_tensor_rejects_bad_input():
    with pytest.raises(BadOrder):
        Tensor(np.ones(3))
    with pytest.raises(ValueError):
        Tensor(np.array([[1.0, np.nan]]))


def test_slices_and_fibers():
    A = Tensor(np.arange(24.0).reshape(2, 3, 4))
    assert A.slice(1, 2).shape == (2, 4)
    assert np.array_equal(A.fiber(2, (1, 0)), [12, 13, 14, 15])
    assert sum(1 for _ in A.fibers(1)) == 8
    with pytest.raises(IndexOutOfRange):
        A.slice(3, 0)
    with pytest.raises(IndexOutOfRange):
        A.slice(0, 2)


def test_transpose_examples():
    A = Tensor(np.array([[1.0, 2.0], [3.0, 4.0]]))
    assert np.array_equal(transpose(A, (1, 0)).data, [[1, 3], [2, 4]])
    assert transpose(A, (0, 1)) == A
    J = all_ones(3, 2)
    assert transpose(J, (2, 0, 1)) == J
    with pytest.raises(BadPermutation):
        transpose(A, (0, 0))


def test_transpose_index_convention():
    A = Tensor(np.random.default_rng(0).random((2, 3, 4)))
    perm = (2, 0, 1)
    B = transpose(A, perm)
    assert B.dims == (4, 2, 3)
    for idx in itertools.product(range(2), range(3), range(4)):
        assert B.data[tuple(idx[k] for k in perm)] == A.data[idx]


@given(tensors(), st.randoms())
def test_transpose_inverse(A, rnd):
    perm = list(range(A.order))
    rnd.shuffle(perm)
    inv = list(np.argsort(perm))
    assert transpose(transpose(A, perm), inv) == A


def test_is_symmetric_examples(k2):
    assert is_symmetric(k2)
    assert not is_symmetric(Tensor(np.array([[0.0, 1.0], [0.0, 0.0]])))
    assert is_symmetric(adjacency_tensor(gen_beta_star(3, 2)))
    with pytest.raises(NotCubical):
        is_symmetric(Tensor(np.ones((2, 3))))


def test_slice_sums(star4):
    assert slice_abs_sum(star4, 0, 0) == 4
    assert slice_sum(star4, 0, 1) == 1
    assert slice_abs_sum(Tensor(np.zeros((2, 2))), 1, 1) == 0
    assert slice_sum(all_ones(3, 2), 2, 0) == 4
    assert slice_sum(Tensor(np.array([[1.0, -1.0], [0.0, 0.0]])), 0, 0) == 0
    B = adjacency_tensor(gen_beta_star(3, 3))
    assert slice_abs_sum(B, 0, 0) == 6


def test_entrywise_norm_examples(star4):
    assert entrywise_norm(all_ones(3, 2), 1.5) == pytest.approx(4.0, rel=1e-14)
    assert entrywise_norm(star4, 2) == pytest.approx(math.sqrt(8), rel=1e-14)
    A = Tensor(np.array([[1.0, -7.0], [3.0, 0.5]]))
    assert entrywise_norm(A, math.inf) == 7.0
    with pytest.raises(BadExponent):
        entrywise_norm(A, 0.5)


@given(tensors())
def test_slice_abs_sum_matches_entry_norm(A):
    for k in range(A.order):
        for s in range(A.dims[k]):
            view = Tensor(np.atleast_2d(A.slice(k, s))) if A.order > 2 else None
            expected = float(np.abs(A.slice(k, s)).sum())
            assert slice_abs_sum(A, k, s) == pytest.approx(expected)
            if view is not None:
                assert slice_abs_sum(A, k, s) == pytest.approx(entrywise_norm(view, 1))


@given(tensors())
def test_entrywise_norm_nesting(A):
    qs = [1, 1.5, 2, 3, 7, math.inf]
    vals = [entrywise_norm(A, q) for q in qs]
    assert all(a >= b - 1e-12 * max(1, a) for a, b in zip(vals, vals[1:]))


@given(symmetric_tensors())
def test_symmetric_slice_sums_independent_of_axis(A):
    for s in range(A.n):
        ref = slice_abs_sum(A, 0, s)
        for k in range(1, A.order):
            assert slice_abs_sum(A, k, s) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_is_regular(star4, cycle4):
    assert is_regular(all_ones(3, 3))
    assert not is_regular(star4)
    assert is_regular(cycle4)


def test_rank_one_examples():
    assert rank_one([(1, 1), (1, 1)]) == all_ones(2, 2)
    assert np.array_equal(rank_one([(1, 0), (0, 1)]).data, [[0, 1], [0, 0]])
    A = rank_one([(1, 2), (1, 1), (3,)])
    assert A.dims == (2, 2, 1)
    assert sorted(A.data.ravel()) == [3, 3, 6, 6]
    with pytest.raises(BadOrder):
        rank_one([(1, 2)])
