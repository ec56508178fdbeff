"""Brute-force reference values for tiny instances.

The grid oracles enumerate points of the l^p sphere directly: a unit vector
is parametrized by weights ``w`` on the simplex lattice ``{j/m}`` (so
``|x_i| = w_i^(1/p)``) and a sign pattern. Every grid value is a feasible
point evaluation and hence a lower bound on the true maximum; the best grid
point is then polished by the solver's ascent.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadExponent, TooLarge, UnknownInstance
from .hypergraph import adjacency_tensor, gen_beta_star, gen_star
from .spectral import (
    MIN_ITERATIVE_P,
    SolverOptions,
    _check_p,
    _require_symmetric,
    ascend_lambda,
    ascend_norm,
)
from .tensor import Tensor, all_ones, rank_one

DEFAULT_RESOLUTION = 64
MAX_NORM_VARIABLES = 8
MAX_ETA_ORDER = 4
# cap on grid points (sign patterns included) evaluated in one sweep
MAX_POINTS = 2_000_000
CHUNK = 20_000


@dataclass(frozen=True)
class OracleResult:
    value: float
    method: str
    resolution: int
    samples: int
    grid_value: float


def _lattice_count(d: int, m: int) -> int:
    return math.comb(m + d - 1, d - 1) * 2 ** (d - 1)


def sphere_grid(d: int, m: int, p: float) -> np.ndarray:
    """Unit l^p vectors in R^d from the simplex lattice with m subdivisions.

    The first coordinate is kept nonnegative; the remaining signs are
    enumerated. Rows are the grid points.
    """
    if d == 1:
        return np.ones((1, 1))
    bars = np.array(list(itertools.combinations(range(m + d - 1), d - 1)), dtype=float)
    edges = np.hstack([np.full((len(bars), 1), -1.0), bars, np.full((len(bars), 1), m + d - 1.0)])
    w = (np.diff(edges, axis=1) - 1.0) / m
    mags = w ** (1.0 / p)
    signs = np.array([(1.0,) + s for s in itertools.product((1.0, -1.0), repeat=d - 1)])
    return (mags[:, None, :] * signs[None, :, :]).reshape(-1, d)


def _fit_resolution(sizes, resolution: int) -> int:
    m = max(1, int(resolution))
    while m > 2 and math.prod(_lattice_count(d, m) for d in sizes) > MAX_POINTS:
        m = max(2, (3 * m) // 4)
    return m


def _dual_norm(g: np.ndarray, p: float) -> np.ndarray:
    """Row-wise ``|g|_q`` with ``q = p/(p-1)`` (max norm at p = 1)."""
    a = np.abs(g)
    if p == 1:
        return a.max(axis=-1)
    q = p / (p - 1.0)
    m = a.max(axis=-1, keepdims=True)
    safe = np.where(m > 0, m, 1.0)
    return (m * ((a / safe) ** q).sum(axis=-1, keepdims=True) ** (1.0 / q))[..., 0]


def _dual_vector(g: np.ndarray, p: float) -> np.ndarray:
    n = len(g)
    m = np.max(np.abs(g))
    if m == 0:
        return np.full(n, n ** (-1.0 / p))
    if p == 1:
        e = np.zeros(n)
        i = int(np.argmax(np.abs(g)))
        e[i] = np.sign(g[i])
        return e
    y = np.copysign((np.abs(g) / m) ** (1.0 / (p - 1.0)), g)
    return y / np.sum(np.abs(y) ** p) ** (1.0 / p)


def grid_max_norm(
    A: Tensor, p: float, resolution: int = DEFAULT_RESOLUTION, opts: SolverOptions | None = None
) -> OracleResult:
    """Grid maximization of ``|L_A|`` over products of l^p spheres, then polish.

    The longest block is maximized exactly (``|g|_q`` of its gradient); the
    others range over :func:`sphere_grid`.
    """
    p = _check_p(p, allow_one=True)
    if sum(A.dims) > MAX_NORM_VARIABLES:
        raise TooLarge(f"grid oracle handles at most {MAX_NORM_VARIABLES} variables, got {sum(A.dims)}")
    r = A.order
    last = int(np.argmax(A.dims))
    others = [k for k in range(r) if k != last]
    m = _fit_resolution([A.dims[k] for k in others], resolution)
    grids = [sphere_grid(A.dims[k], m, p) for k in others]
    # contract the grid blocks one by one: T has shape (c_1, ..., c_j, rest...)
    T = np.moveaxis(A.data, [*others, last], range(r))
    for j, G in enumerate(grids):
        T = np.moveaxis(np.tensordot(T, G, axes=([j], [1])), -1, j)
    vals = _dual_norm(T, p)
    flat = int(np.argmax(vals))
    grid_value = float(vals.ravel()[flat])
    samples = int(vals.size)

    pos = np.unravel_index(flat, vals.shape)
    vecs = [None] * r
    for j, k in enumerate(others):
        vecs[k] = grids[j][pos[j]]
    vecs[last] = _dual_vector(T[pos], p)
    value = grid_value
    if p >= MIN_ITERATIVE_P and grid_value > 0:
        value = max(value, ascend_norm(A, p, vecs, opts).value)
    return OracleResult(value, "grid", m, samples, grid_value)


def grid_max_eta(
    A: Tensor, p: float, resolution: int = DEFAULT_RESOLUTION, opts: SolverOptions | None = None
) -> OracleResult:
    """Grid maximization of ``|P_A|`` on the unit l^p sphere, then polish."""
    p = _check_p(p, allow_one=True)
    _require_symmetric(A)
    n, r = A.n, A.order
    if n > MAX_ETA_ORDER:
        raise TooLarge(f"eta grid oracle handles n <= {MAX_ETA_ORDER}, got {n}")
    m = _fit_resolution([n], resolution)
    X = sphere_grid(n, m, p)
    vals = np.concatenate([_poly_rows(A, X[i : i + CHUNK]) for i in range(0, len(X), CHUNK)])
    flat = int(np.argmax(np.abs(vals)))
    grid_value = float(abs(vals[flat]))
    value = grid_value
    if p >= MIN_ITERATIVE_P and grid_value > 0:
        B = A if vals[flat] > 0 else -A
        value = max(value, ascend_lambda(B, p, X[flat], opts).value)
    return OracleResult(value, "grid", m, len(X), grid_value)


def _poly_rows(A: Tensor, X: np.ndarray) -> np.ndarray:
    """``P_A`` at every row of X."""
    N, n = X.shape
    Y = X @ A.data.reshape(n, -1)
    for _ in range(A.order - 1):
        Y = np.einsum("ij,ijk->ik", X, Y.reshape(N, n, -1))
    return Y[:, 0]


# --------------------------------------------------------------------------
# closed forms


def _q_norm(v, p: float) -> float:
    v = np.abs(np.asarray(v, dtype=float))
    if p == 1:
        return float(v.max())
    q = p / (p - 1.0)
    m = v.max()
    if m == 0:
        return 0.0
    return float(m * np.sum((v / m) ** q) ** (1.0 / q))


def closed_form(name: str, p: float, *args) -> float:
    """Known exact values.

    ``star(n)`` at p = 2: ``sqrt(n)``; ``all_ones(r, n)``: ``n^(r - r/p)``
    (the spectral p-norm for every p >= 1, and the p-spectral radius for
    p >= r); ``beta_star(3, k)`` at p = 3: ``2 k^(1/3)``;
    ``single_fiber(v)``: ``|v|_q``; ``rank_one(xs)``: ``prod |x^(k)|_q``.
    """
    if not p >= 1 or not math.isfinite(p):
        raise BadExponent(f"p must be a finite number >= 1, got {p}")
    if name == "star":
        (n,) = args
        if p != 2:
            raise UnknownInstance("star is catalogued at p = 2 only")
        return math.sqrt(n)
    if name == "all_ones":
        r, n = args
        return float(n ** (r - r / p))
    if name == "beta_star":
        r, k = args
        if r != 3 or p != 3:
            raise UnknownInstance("beta_star is catalogued for r = 3, p = 3 only")
        return 2.0 * k ** (1.0 / 3.0)
    if name == "single_fiber":
        (v,) = args
        return _q_norm(v, p)
    if name == "rank_one":
        (xs,) = args
        return float(np.prod([_q_norm(x, p) for x in xs]))
    raise UnknownInstance(f"no closed form for {name!r}")


def instance(name: str, *args) -> Tensor:
    """Tensor of a catalogued instance."""
    if name == "star":
        return adjacency_tensor(gen_star(*args))
    if name == "all_ones":
        return all_ones(*args)
    if name == "beta_star":
        return adjacency_tensor(gen_beta_star(*args))
    if name == "single_fiber":
        (v,) = args
        data = np.zeros((2, len(v)))
        data[0] = v
        return Tensor(data)
    if name == "rank_one":
        (xs,) = args
        return rank_one(xs)
    raise UnknownInstance(f"no instance named {name!r}")


# (name, args, p, quantity) where quantity is "norm" or "eta"
CATALOGUE = (
    ("star", (1,), 2.0, "norm"),
    ("star", (2,), 2.0, "norm"),
    ("star", (3,), 2.0, "norm"),
    ("star", (9,), 2.0, "norm"),
    ("all_ones", (2, 2), 2.0, "norm"),
    ("all_ones", (2, 2), 4.0, "norm"),
    ("all_ones", (3, 2), 3.0, "norm"),
    ("all_ones", (3, 2), 4.0, "eta"),
    ("all_ones", (3, 3), 3.0, "eta"),
    ("beta_star", (3, 1), 3.0, "eta"),
    ("beta_star", (3, 2), 3.0, "norm"),
    ("beta_star", (3, 8), 3.0, "norm"),
    ("single_fiber", ((1.0, 2.0, 2.0),), 2.0, "norm"),
    ("single_fiber", ((3.0, -1.0, 0.5),), 3.0, "norm"),
    ("rank_one", (((1.0, 2.0), (1.0, 1.0)),), 2.0, "norm"),
    ("rank_one", (((1.0, -2.0), (3.0, 4.0), (0.5, 1.0)),), 2.5, "norm"),
)
