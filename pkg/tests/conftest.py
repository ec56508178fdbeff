import numpy as np
import pytest
from hypothesis import strategies as st

from hypernorm import Tensor, adjacency_tensor, gen_cycle, gen_star
from hypernorm.tensor import symmetrize


@pytest.fixture
def k2():
    return Tensor(np.array([[0.0, 1.0], [1.0, 0.0]]))


@pytest.fixture
def star4():
    return adjacency_tensor(gen_star(4))


@pytest.fixture
def cycle4():
    return adjacency_tensor(gen_cycle(4))


def dims_strategy(max_r=3, max_n=4):
    return st.integers(2, max_r).flatmap(lambda r: st.lists(st.integers(1, max_n), min_size=r, max_size=r))


@st.composite
def tensors(draw, max_r=3, max_n=4, signed=True):
    dims = tuple(draw(dims_strategy(max_r, max_n)))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    data = rng.standard_normal(dims) if signed else rng.random(dims)
    return Tensor(data)


@st.composite
def symmetric_tensors(draw, max_r=3, max_n=4, signed=True):
    r = draw(st.integers(2, max_r))
    n = draw(st.integers(1, max_n))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    data = rng.standard_normal((n,) * r) if signed else rng.random((n,) * r)
    return Tensor(symmetrize(data))
