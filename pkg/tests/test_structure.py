import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypernorm import (
    Partition,
    Tensor,
    all_ones,
    block_diagonal,
    components,
    digraph,
    entrywise_norm,
    interval_partition,
    is_r_partite,
    is_symmetric,
    is_weakly_irreducible,
    linear_form,
    poly_form,
    symmetrant,
)
from hypernorm.errors import BadOrder, DimMismatch, NotSymmetric
from hypernorm.structure import strong_components

from conftest import tensors


def test_interval_partition():
    P = interval_partition([1, 2])
    assert P.blocks == ((0,), (1, 2))
    assert P.selector[2] == 1 and P.locator[2] == 1
    assert interval_partition([2, 2, 2]).sizes == (2, 2, 2)
    with pytest.raises(BadOrder):
        interval_partition([3])


def test_partition_from_blocks_validates():
    with pytest.raises(ValueError):
        Partition.from_blocks([[0, 1], [1, 2]])
    P = Partition.from_blocks([[2, 0], [1]])
    assert P.blocks == ((0, 2), (1,))
    assert P.locator == (0, 0, 1)


def test_is_r_partite():
    I = Tensor(np.eye(2))
    assert not is_r_partite(I, Partition.from_blocks([[0], [1]]))
    assert is_r_partite(Tensor(np.zeros((3, 3))), interval_partition([1, 2]))
    with pytest.raises(DimMismatch):
        is_r_partite(I, interval_partition([1, 2]))


def test_symmetrant_examples():
    a, b = 2.0, -3.0
    B, P = symmetrant(Tensor(np.array([[a, b]])))
    assert np.array_equal(B.data, [[0, a, b], [a, 0, 0], [b, 0, 0]])
    B, _ = symmetrant(Tensor(np.array([[1.0]])))
    assert np.array_equal(B.data, [[0, 1], [1, 0]])
    c = 5.0
    B, _ = symmetrant(Tensor(np.full((1, 1, 1), c)))
    nz = {tuple(int(i) for i in idx) for idx in np.argwhere(B.data)}
    assert nz == {(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)}
    assert np.all(B.data[tuple(np.array(sorted(nz)).T)] == c)


@given(tensors())
def test_symmetrant_properties(A):
    B, P = symmetrant(A)
    r = A.order
    assert is_symmetric(B, 0.0)
    assert is_r_partite(B, P, 0.0)
    assert entrywise_norm(B, 1) == pytest.approx(math.factorial(r) * entrywise_norm(A, 1), rel=1e-13)


@given(tensors(), st.integers(0, 2**32 - 1))
def test_symmetrant_polynomial_identity(A, seed):
    B, P = symmetrant(A)
    x = np.random.default_rng(seed).standard_normal(P.n)
    parts = [x[list(b)] for b in P.blocks]
    lhs = poly_form(B, x)
    rhs = math.factorial(A.order) * linear_form(A, parts)
    scale = math.factorial(A.order) * np.abs(A.data).sum() * np.max(np.abs(x)) ** A.order
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12 * scale)


def test_digraph_examples(k2):
    assert digraph(k2).edges == {(0, 1), (1, 0)}
    assert digraph(Tensor(np.array([[0.0, 1.0], [0.0, 0.0]]))).edges == {(0, 1)}
    D = digraph(block_diagonal([k2, k2]))
    assert D.edges == {(0, 1), (1, 0), (2, 3), (3, 2)}


def test_weak_irreducibility(k2):
    assert is_weakly_irreducible(k2)
    assert not is_weakly_irreducible(block_diagonal([k2, k2]))
    assert is_weakly_irreducible(all_ones(3, 3))
    # a one-way edge is not strongly connected
    assert not is_weakly_irreducible(Tensor(np.array([[0.0, 1.0], [0.0, 0.0]])))
    assert len(strong_components(Tensor(np.array([[0.0, 1.0], [0.0, 0.0]])))) == 2


def test_components(k2):
    comps = components(block_diagonal([k2, k2]))
    assert [c.indices for c in comps] == [(0, 1), (2, 3)]
    assert all(c.tensor == k2 for c in comps)
    assert len(components(k2)) == 1
    A = np.zeros((3, 3))
    A[0, 1] = A[1, 0] = 1
    comps = components(Tensor(A))
    assert [(c.indices, c.is_zero) for c in comps] == [((0, 1), False), ((2,), True)]
    with pytest.raises(NotSymmetric):
        components(Tensor(np.array([[0.0, 1.0], [0.0, 0.0]])))


@given(st.integers(0, 2**32 - 1))
def test_components_reassemble(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    A = rng.random((n, n)) * (rng.random((n, n)) < 0.3)
    A = Tensor(A + A.T)
    rebuilt = np.zeros((n, n))
    covered = []
    for c in components(A):
        idx = np.ix_(c.indices, c.indices)
        rebuilt[idx] = c.tensor.data
        covered += c.indices
    assert sorted(covered) == list(range(n))
    assert np.array_equal(rebuilt, A.data)
