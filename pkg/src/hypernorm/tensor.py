"""Dense real r-matrices (hypermatrices).

A :class:`Tensor` wraps a read-only ``float64`` numpy array of dimension
``r >= 2``. Indices are 0-based everywhere. Slices fix one index, fibers fix
all indices but one; both are returned as read-only numpy views.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BadExponent,
    BadOrder,
    BadPermutation,
    DuplicateIndex,
    IndexOutOfRange,
    NotCubical,
)


class Tensor:
    """Immutable dense r-matrix of order ``n_1 x ... x n_r``."""

    __slots__ = ("_data",)

    def __init__(self, data) -> None:
        arr = np.array(data, dtype=np.float64, copy=True, order="C")
        if arr.ndim < 2:
            raise BadOrder(f"an r-matrix needs r >= 2 axes, got {arr.ndim}")
        if arr.size == 0:
            raise BadOrder("all dimensions must be positive")
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        arr.flags.writeable = False
        self._data = arr

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def order(self) -> int:
        return self._data.ndim

    @property
    def dims(self) -> tuple[int, ...]:
        return self._data.shape

    @property
    def is_cubical(self) -> bool:
        return len(set(self.dims)) == 1

    @property
    def n(self) -> int:
        """Order of a cubical tensor (the common dimension)."""
        self.require_cubical()
        return self.dims[0]

    def require_cubical(self) -> None:
        if not self.is_cubical:
            raise NotCubical(f"tensor of dims {self.dims} is not cubical")

    def _check_axis(self, k: int, s: int | None = None) -> None:
        if not 0 <= k < self.order:
            raise IndexOutOfRange(f"axis {k} out of range for order {self.order}")
        if s is not None and not 0 <= s < self.dims[k]:
            raise IndexOutOfRange(f"position {s} out of range on axis {k}")

    def slice(self, k: int, s: int) -> np.ndarray:
        """The (r-1)-matrix obtained by fixing index ``k`` to ``s``."""
        self._check_axis(k, s)
        return self._data[(slice(None),) * k + (s,)]

    def fiber(self, k: int, fixed: Sequence[int]) -> np.ndarray:
        """The vector along axis ``k`` with the other indices set to ``fixed``."""
        self._check_axis(k)
        if len(fixed) != self.order - 1:
            raise IndexOutOfRange("fiber needs r-1 fixed indices")
        idx = list(fixed)
        for j, i in zip([a for a in range(self.order) if a != k], idx):
            if not 0 <= i < self.dims[j]:
                raise IndexOutOfRange(f"index {i} out of range on axis {j}")
        idx.insert(k, slice(None))
        return self._data[tuple(idx)]

    def fibers(self, k: int) -> Iterator[np.ndarray]:
        self._check_axis(k)
        other = [range(d) for j, d in enumerate(self.dims) if j != k]
        for fixed in itertools.product(*other):
            yield self.fiber(k, fixed)

    def __neg__(self) -> Tensor:
        return Tensor(-self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.dims == other.dims and bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Tensor(order={self.order}, dims={self.dims})"


def from_coo(
    order: int,
    dims: Sequence[int],
    coo: Iterable[tuple[Sequence[int], float]],
) -> Tensor:
    """Dense tensor from ``(index-tuple, value)`` pairs; unlisted entries are 0."""
    if order < 2:
        raise BadOrder(f"order must be >= 2, got {order}")
    dims = tuple(int(d) for d in dims)
    if len(dims) != order or any(d < 1 for d in dims):
        raise BadOrder(f"dims {dims} do not describe an order-{order} tensor")
    arr = np.zeros(dims)
    seen = set()
    for idx, val in coo:
        idx = tuple(int(i) for i in idx)
        if len(idx) != order or any(not 0 <= i < d for i, d in zip(idx, dims)):
            raise IndexOutOfRange(f"index {idx} outside dims {dims}")
        if idx in seen:
            raise DuplicateIndex(f"index {idx} listed twice")
        seen.add(idx)
        arr[idx] = float(val)
    return Tensor(arr)


def to_coo(A: Tensor) -> list[tuple[tuple[int, ...], float]]:
    nz = np.argwhere(A.data != 0)
    return [(tuple(int(i) for i in idx), float(A.data[tuple(idx)])) for idx in nz]


def transpose(A: Tensor, perm: Sequence[int]) -> Tensor:
    """Permute the variables of ``A``.

    Axis ``j`` of the result is axis ``perm[j]`` of ``A``, so that
    ``B[i[perm[0]], ..., i[perm[r-1]]] == A[i[0], ..., i[r-1]]``.
    """
    perm = tuple(int(k) for k in perm)
    if sorted(perm) != list(range(A.order)):
        raise BadPermutation(f"{perm} is not a permutation of range({A.order})")
    return Tensor(np.transpose(A.data, perm))


def is_symmetric(A: Tensor, tol: float = 0.0) -> bool:
    A.require_cubical()
    data = A.data
    for perm in itertools.permutations(range(A.order)):
        if np.max(np.abs(data - np.transpose(data, perm))) > tol:
            return False
    return True


def slice_abs_sum(A: Tensor, k: int, s: int) -> float:
    """``|A_s^(k)|_1``."""
    return float(np.abs(A.slice(k, s)).sum())


def slice_sum(A: Tensor, k: int, s: int) -> float:
    return float(A.slice(k, s).sum())


def slice_sums(A: Tensor, k: int, absolute: bool = False) -> np.ndarray:
    """All slice sums along axis ``k`` as a vector of length ``n_k``."""
    data = np.abs(A.data) if absolute else A.data
    axes = tuple(j for j in range(A.order) if j != k)
    return data.sum(axis=axes)


def entrywise_norm(A: Tensor, q: float) -> float:
    """l^q norm of the flattened entries; ``q = inf`` gives the max modulus."""
    if q == np.inf:
        return float(np.max(np.abs(A.data)))
    if not q >= 1:
        raise BadExponent(f"entrywise norm needs q >= 1, got {q}")
    a = np.abs(A.data).ravel()
    m = a.max()
    if m == 0:
        return 0.0
    return float(m * np.sum((a / m) ** q) ** (1.0 / q))


def is_regular(A: Tensor, tol: float = 1e-12) -> bool:
    """All slice sums along every axis agree (relative tolerance ``tol``)."""
    for k in range(A.order):
        sums = slice_sums(A, k)
        spread = sums.max() - sums.min()
        if spread > tol * max(1.0, float(np.abs(sums).max())):
            return False
    return True


def rank_one(vectors: Sequence[Sequence[float]]) -> Tensor:
    if len(vectors) < 2:
        raise BadOrder("a rank-one r-matrix needs r >= 2 factors")
    out = np.asarray(vectors[0], dtype=float)
    for v in vectors[1:]:
        out = np.multiply.outer(out, np.asarray(v, dtype=float))
    return Tensor(out)


def all_ones(r: int, n: int) -> Tensor:
    return Tensor(np.ones((n,) * r))


def zeros(dims: Sequence[int]) -> Tensor:
    return Tensor(np.zeros(tuple(dims)))


def block_diagonal(blocks: Sequence[Tensor]) -> Tensor:
    """Cubical tensor with the given cubical blocks on the diagonal."""
    if not blocks:
        raise BadOrder("need at least one block")
    r = blocks[0].order
    for B in blocks:
        B.require_cubical()
        if B.order != r:
            raise BadOrder("blocks must share the same order")
    n = sum(B.n for B in blocks)
    out = np.zeros((n,) * r)
    start = 0
    for B in blocks:
        sl = slice(start, start + B.n)
        out[(sl,) * r] = B.data
        start += B.n
    return Tensor(out)


def symmetrize(data: np.ndarray) -> np.ndarray:
    """Average of all transposes of a cubical array."""
    r = data.ndim
    perms = list(itertools.permutations(range(r)))
    return sum(np.transpose(data, p) for p in perms) / len(perms)
