import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypernorm import (
    Partition,
    SolverOptions,
    WeightedRGraph,
    adjacency_tensor,
    bound_degree_product,
    bound_neighbor_degree,
    degree,
    eta_p,
    gen_all_ones,
    gen_beta_star,
    gen_cycle,
    gen_random,
    gen_star,
    interval_partition,
    is_symmetric,
    lower_hofmeister,
    partite_balance_check,
    partite_lower,
    rho_nonnegative,
    slice_abs_sum,
    spectral_p_norm,
    upper_main,
    upper_th3,
)
from hypernorm.errors import BadExponent, BadParameter, NotPartite, VertexOutOfRange


def test_graph_validation():
    with pytest.raises(BadParameter):
        WeightedRGraph(2, 3, [((0, 0), 1)])
    with pytest.raises(BadParameter):
        WeightedRGraph(2, 3, [((0, 1), 1), ((1, 0), 2)])
    with pytest.raises(BadParameter):
        WeightedRGraph(2, 3, [((0, 1), -1)])
    with pytest.raises(VertexOutOfRange):
        WeightedRGraph(2, 3, [((0, 3), 1)])


def test_adjacency_examples():
    K2 = WeightedRGraph(2, 2, [((0, 1), 1)])
    assert np.array_equal(adjacency_tensor(K2).data, [[0, 1], [1, 0]])
    E = adjacency_tensor(WeightedRGraph(3, 3, [((0, 1, 2), 1)]))
    assert E.data.sum() == 6 and is_symmetric(E)
    S = adjacency_tensor(gen_star(4)).data
    assert S[0, 1:].tolist() == [1, 1, 1, 1] and S[1:, 1:].sum() == 0


def test_degrees():
    S = gen_star(4)
    assert degree(S, 0) == 4 and degree(S, 3) == 1
    B = gen_beta_star(3, 4)
    assert degree(B, 0) == 4 and degree(B, 5) == 1
    assert degree(WeightedRGraph(2, 3, [((0, 1), 1)]), 2) == 0
    with pytest.raises(VertexOutOfRange):
        degree(S, 5)


def test_generators():
    S = gen_star(4)
    assert (S.n, len(S.edges)) == (5, 4)
    B = gen_beta_star(3, 2)
    assert B.n == 5 and [e for e, _ in B.edges] == [(0, 1, 2), (0, 3, 4)]
    K4 = gen_random(2, 4, 1.0, seed=11)
    assert len(K4.edges) == 6
    assert gen_all_ones(3, 2).data.sum() == 8
    assert len(gen_cycle(5).edges) == 5
    assert gen_random(3, 6, 0.4, seed=3) == gen_random(3, 6, 0.4, seed=3)
    with pytest.raises(BadParameter):
        gen_random(2, 4, 1.5)
    with pytest.raises(BadParameter):
        gen_cycle(2)


@given(st.integers(2, 4), st.integers(4, 7), st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_slice_identity(r, n, seed):
    G = gen_random(r, n, 0.5, seed, weights=True)
    A = adjacency_tensor(G)
    for v in range(n):
        for k in range(r):
            assert slice_abs_sum(A, k, v) == pytest.approx(math.factorial(r - 1) * degree(G, v), rel=1e-12)


@given(st.integers(2, 3), st.integers(3, 7), st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_graph_bounds_match_tensor_bounds(r, n, seed):
    G = gen_random(r, n, 0.6, seed, weights=True)
    A = adjacency_tensor(G)
    assert bound_degree_product(G) == pytest.approx(upper_main(A), rel=1e-12, abs=1e-12)
    assert bound_neighbor_degree(G) == pytest.approx(upper_th3(A), rel=1e-12, abs=1e-12)


def test_degree_product_examples():
    assert bound_degree_product(gen_star(4)) == pytest.approx(2.0)
    assert bound_degree_product(gen_cycle(4)) == pytest.approx(2.0)
    for k in range(1, 6):
        assert bound_degree_product(gen_beta_star(3, k)) == pytest.approx(2 * k ** (1 / 3))


def test_neighbor_degree_examples():
    assert bound_neighbor_degree(gen_star(4)) == pytest.approx(2.0)
    assert bound_neighbor_degree(gen_cycle(4)) == pytest.approx(2.0)
    for r in (2, 3, 4):
        G = WeightedRGraph(r, r, [(range(r), 1.0)])
        assert bound_neighbor_degree(G) == pytest.approx(math.factorial(r - 1))


def test_hofmeister_examples():
    K2 = WeightedRGraph(2, 2, [((0, 1), 1)])
    assert lower_hofmeister(K2, 2) == pytest.approx(1.0)
    assert lower_hofmeister(gen_cycle(4), 2) == pytest.approx(2.0)
    assert lower_hofmeister(gen_star(4), 2) == pytest.approx(2.0)
    with pytest.raises(BadExponent):
        lower_hofmeister(K2, 1.5)


@given(st.integers(2, 3), st.integers(3, 6), st.integers(0, 2**32 - 1), st.sampled_from([0, 1, 3]))
@settings(max_examples=20, deadline=None)
def test_hofmeister_is_lower_bound(r, n, seed, dp):
    G = gen_random(r, n, 0.6, seed, weights=True)
    p = float(r + dp)
    est = eta_p(adjacency_tensor(G), p, SolverOptions(starts=8)).value
    assert lower_hofmeister(G, p) <= est + 1e-8 * max(1, est)


def test_hofmeister_above_r_on_k2():
    # the degree bound stays valid for p > r (here K_2 at p = 4, eta = sqrt 2)
    K2 = WeightedRGraph(2, 2, [((0, 1), 1)])
    assert lower_hofmeister(K2, 4) == pytest.approx(math.sqrt(2))


def test_partite_lower_examples():
    for n in (1, 3, 6):
        P = Partition.from_blocks([[0], range(1, n + 1)])
        assert partite_lower(gen_star(n), P, 2) == pytest.approx(math.sqrt(n))
    for r in (2, 3, 4):
        G = WeightedRGraph(r, r, [(range(r), 1.0)])
        assert partite_lower(G, interval_partition([1] * r), r) == pytest.approx(math.factorial(r - 1))
    P = Partition.from_blocks([[0, 2], [1, 3]])
    assert partite_lower(gen_cycle(4), P, 2) == pytest.approx(2.0)
    with pytest.raises(NotPartite):
        partite_lower(gen_cycle(3), Partition.from_blocks([[0], [1, 2]]), 2)


def test_partite_lower_is_tight_for_star_norm():
    n = 5
    A = adjacency_tensor(gen_star(n))
    assert spectral_p_norm(A, 2).value == pytest.approx(
        partite_lower(gen_star(n), Partition.from_blocks([[0], range(1, n + 1)]), 2)
    )


def test_balance_examples():
    K2 = WeightedRGraph(2, 2, [((0, 1), 1)])
    assert partite_balance_check(K2, interval_partition([1, 1]), 2) <= 1e-9
    star = gen_star(4)
    assert partite_balance_check(star, Partition.from_blocks([[0], [1, 2, 3, 4]]), 2) <= 1e-6
    K22 = gen_cycle(4)
    assert partite_balance_check(K22, Partition.from_blocks([[0, 2], [1, 3]]), 3) <= 1e-6


def test_rho_eta_norm_chain():
    G = gen_random(3, 6, 0.5, seed=4, weights=True)
    A = adjacency_tensor(G)
    rho = rho_nonnegative(A).value
    assert eta_p(A, 3).value == pytest.approx(rho, rel=1e-6)
    assert spectral_p_norm(A, 3).value == pytest.approx(rho, rel=1e-6)
