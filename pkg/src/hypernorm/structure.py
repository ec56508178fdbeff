"""Index partitions, r-partite tensors, the symmetrant, and connectivity.

The symmetrant of an ``n_1 x ... x n_r`` matrix ``A`` is the cubical
symmetric tensor of order ``n_1 + ... + n_r`` whose ``r**r`` blocks (with
respect to the interval partition) vanish except for the ``r!`` blocks whose
block-indices are all distinct; those hold the transposes of ``A``.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import BadOrder, DimMismatch, NotSymmetric
from .tensor import Tensor, is_symmetric


@dataclass(frozen=True)
class Partition:
    """Split of ``range(n)`` into ``r`` blocks.

    ``selector[x]`` is the block holding ``x`` and ``locator[x]`` its rank
    inside that block (both 0-based).
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]
    selector: tuple[int, ...]
    locator: tuple[int, ...]

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> Partition:
        blocks = tuple(tuple(sorted(int(v) for v in b)) for b in blocks)
        if len(blocks) < 2:
            raise BadOrder("a partition needs at least 2 blocks")
        flat = [v for b in blocks for v in b]
        n = len(flat)
        if sorted(flat) != list(range(n)):
            raise ValueError("blocks must be disjoint and cover range(n)")
        selector = [0] * n
        locator = [0] * n
        for i, b in enumerate(blocks):
            for pos, v in enumerate(b):
                selector[v] = i
                locator[v] = pos
        return cls(n, blocks, tuple(selector), tuple(locator))

    @property
    def r(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


def interval_partition(dims: Sequence[int]) -> Partition:
    """Consecutive intervals of sizes ``dims``."""
    dims = [int(d) for d in dims]
    if len(dims) < 2:
        raise BadOrder(f"need r >= 2 block sizes, got {len(dims)}")
    if any(d < 1 for d in dims):
        raise ValueError("block sizes must be positive")
    starts = np.cumsum([0] + dims)
    return Partition.from_blocks(
        [range(starts[i], starts[i + 1]) for i in range(len(dims))]
    )


def is_r_partite(A: Tensor, partition: Partition, tol: float = 0.0) -> bool:
    """Every entry with ``|a| > tol`` has indices in pairwise distinct blocks."""
    A.require_cubical()
    if A.n != partition.n or A.order != partition.r:
        raise DimMismatch("partition does not match the tensor")
    sel = np.asarray(partition.selector)
    for idx in np.argwhere(np.abs(A.data) > tol):
        if len(set(sel[idx])) != len(idx):
            return False
    return True


def symmetrant(A: Tensor) -> tuple[Tensor, Partition]:
    r, dims = A.order, A.dims
    part = interval_partition(dims)
    starts = np.cumsum((0,) + dims)
    out = np.zeros((part.n,) * r)
    for perm in itertools.permutations(range(r)):
        # block (N_perm[0], ..., N_perm[r-1]) holds A with its axes permuted
        region = tuple(slice(starts[k], starts[k] + dims[k]) for k in perm)
        out[region] = np.transpose(A.data, perm)
    return Tensor(out), part


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset[tuple[int, int]]

    def adjacency(self) -> csr_matrix:
        if not self.edges:
            return csr_matrix((self.n, self.n))
        src, dst = zip(*sorted(self.edges))
        return csr_matrix((np.ones(len(src)), (src, dst)), shape=(self.n, self.n))


def digraph(A: Tensor) -> Digraph:
    """Edge ``k -> j`` whenever some nonzero ``a_{k,i2..ir}`` has ``j`` among ``i2..ir``."""
    A.require_cubical()
    edges = set()
    for idx in np.argwhere(A.data != 0):
        k = int(idx[0])
        edges.update((k, int(j)) for j in idx[1:])
    return Digraph(A.n, frozenset(edges))


def strong_components(A: Tensor) -> list[tuple[int, ...]]:
    D = digraph(A)
    count, labels = connected_components(D.adjacency(), directed=True, connection="strong")
    return [tuple(int(v) for v in np.flatnonzero(labels == c)) for c in range(count)]


def is_weakly_irreducible(A: Tensor) -> bool:
    return len(strong_components(A)) == 1


def principal_submatrix(A: Tensor, X: Sequence[int]) -> Tensor:
    X = list(X)
    return Tensor(A.data[np.ix_(*([X] * A.order))])


@dataclass(frozen=True)
class Component:
    indices: tuple[int, ...]
    tensor: Tensor
    is_zero: bool


def components(A: Tensor) -> list[Component]:
    """Connected components of a symmetric tensor with their principal submatrices.

    Isolated indices (zero slices) come back as single-index components
    flagged ``is_zero``.
    """
    A.require_cubical()
    scale = max(1.0, float(np.abs(A.data).max()))
    if not is_symmetric(A, 1e-12 * scale):
        raise NotSymmetric("components() requires a symmetric tensor")
    D = digraph(A)
    count, labels = connected_components(D.adjacency(), directed=False)
    out = []
    for c in range(count):
        X = tuple(int(v) for v in np.flatnonzero(labels == c))
        sub = principal_submatrix(A, X)
        out.append(Component(X, sub, not np.any(sub.data)))
    return out
