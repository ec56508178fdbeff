import math

import numpy as np
import pytest

from hypernorm import SolverOptions, Tensor, closed_form, eta_p, grid_max_eta, grid_max_norm, spectral_p_norm
from hypernorm.errors import BadExponent, NotSymmetric, TooLarge, UnknownInstance
from hypernorm.oracle import CATALOGUE, instance, sphere_grid
from hypernorm.verify import random_symmetric, random_tensor

# reference values computed once by the grid oracle and frozen here:
# (seed, dims, p, polished value, raw grid value)
NORM_CASES = [
    (0, (2, 3), 2.0, 0.8669843006065889, 0.8669785367357732),
    (1, (2, 2, 2), 3.0, 2.0285487925387944, 2.0285240863391767),
    (2, (3, 3), 1.5, 2.8103903989297376, 2.810123036901509),
    (3, (2, 2, 3), 2.5, 4.962969281544349, 4.962956243808546),
]
# (seed, r, n, p, polished value, raw grid value)
ETA_CASES = [
    (0, 2, 3, 2.0, 1.637427541931648, 1.6373663137883612),
    (1, 3, 2, 3.0, 1.8835502577233931, 1.8835130553266013),
    (2, 3, 3, 4.0, 4.13407794958191, 4.133313001027575),
    (3, 4, 2, 4.0, 4.363030557522629, 4.362606538880827),
]


@pytest.mark.parametrize("seed,dims,p,value,grid", NORM_CASES)
def test_grid_norm_frozen(seed, dims, p, value, grid):
    A = random_tensor(np.random.default_rng(seed), dims, signed=True)
    res = grid_max_norm(A, p)
    assert res.value == pytest.approx(value, rel=1e-10)
    assert res.grid_value == pytest.approx(grid, rel=1e-10)
    assert res.grid_value <= res.value
    assert spectral_p_norm(A, p).value == pytest.approx(value, rel=1e-10)


@pytest.mark.parametrize("seed,r,n,p,value,grid", ETA_CASES)
def test_grid_eta_frozen(seed, r, n, p, value, grid):
    A = random_symmetric(np.random.default_rng(seed), r, n, signed=True)
    res = grid_max_eta(A, p)
    assert res.value == pytest.approx(value, rel=1e-10)
    assert res.grid_value == pytest.approx(grid, rel=1e-10)
    assert eta_p(A, p).value == pytest.approx(value, rel=1e-10)


def test_frozen_matrix_values_agree_with_linear_algebra():
    A = random_tensor(np.random.default_rng(0), (2, 3), signed=True)
    assert NORM_CASES[0][3] == pytest.approx(np.linalg.svd(A.data)[1][0], rel=1e-12)
    S = random_symmetric(np.random.default_rng(0), 2, 3, signed=True)
    assert ETA_CASES[0][4] == pytest.approx(np.abs(np.linalg.eigvalsh(S.data)).max(), rel=1e-12)


def test_sphere_grid_points_are_unit():
    for p in (1.0, 1.5, 3.0):
        X = sphere_grid(3, 6, p)
        assert np.allclose(np.sum(np.abs(X) ** p, axis=1), 1.0)
        assert np.all(X[:, 0] >= 0)
    assert len(sphere_grid(3, 6, 2.0)) == math.comb(8, 2) * 4


def test_grid_p1_is_exact():
    A = Tensor(np.array([[1.0, -3.0], [2.0, 0.0]]))
    assert grid_max_norm(A, 1).value == 3.0


def test_oracle_limits():
    with pytest.raises(TooLarge):
        grid_max_norm(Tensor(np.ones((5, 4))), 2)
    with pytest.raises(TooLarge):
        grid_max_eta(Tensor(np.ones((5, 5))), 2)
    with pytest.raises(NotSymmetric):
        grid_max_eta(Tensor(np.array([[0.0, 1.0], [0.0, 0.0]])), 2)
    with pytest.raises(BadExponent):
        grid_max_norm(Tensor(np.ones((2, 2))), 0.5)


def test_closed_forms():
    assert closed_form("star", 2, 4) == 2.0
    assert closed_form("all_ones", 4, 3, 2) == pytest.approx(2**2.25)
    assert closed_form("beta_star", 3, 3, 8) == pytest.approx(4.0)
    assert closed_form("single_fiber", 2, (1, 2, 2)) == pytest.approx(3.0)
    assert closed_form("single_fiber", 1, (1, -4, 2)) == 4.0
    assert closed_form("rank_one", 2, ((1, 2), (1, 1))) == pytest.approx(math.sqrt(10))
    with pytest.raises(UnknownInstance):
        closed_form("petersen", 2)
    with pytest.raises(UnknownInstance):
        closed_form("star", 3, 4)


@pytest.mark.parametrize("name,args,p,quantity", CATALOGUE)
def test_catalogue(name, args, p, quantity):
    A = instance(name, *args)
    solve = spectral_p_norm if quantity == "norm" else eta_p
    assert solve(A, p, SolverOptions(starts=16)).value == pytest.approx(closed_form(name, p, *args), rel=1e-8)
