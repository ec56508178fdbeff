"""Weighted r-uniform hypergraphs, their adjacency tensors and degree bounds.

An edge is a set of r distinct vertices carrying a positive weight. The
adjacency tensor holds the edge weight at every ordering of the edge's
vertices, so each slice through vertex v sums to ``(r-1)! d(v)``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import BadExponent, BadParameter, NotPartite, VertexOutOfRange
from .structure import Partition
from .tensor import Tensor, all_ones


@dataclass(frozen=True, init=False)
class WeightedRGraph:
    r: int
    n: int
    edges: tuple[tuple[tuple[int, ...], float], ...]

    def __init__(self, r: int, n: int, edges: Iterable[tuple[Sequence[int], float]] = ()):
        r, n = int(r), int(n)
        if r < 2:
            raise BadParameter(f"edge size r must be >= 2, got {r}")
        if n < 1:
            raise BadParameter(f"vertex count must be >= 1, got {n}")
        seen = {}
        for verts, w in edges:
            e = tuple(sorted(int(v) for v in verts))
            if len(e) != r or len(set(e)) != r:
                raise BadParameter(f"edge {tuple(verts)} must have {r} distinct vertices")
            if e[0] < 0 or e[-1] >= n:
                raise VertexOutOfRange(f"edge {e} has a vertex outside [0, {n})")
            w = float(w)
            if not (w > 0 and math.isfinite(w)):
                raise BadParameter(f"edge {e} weight must be positive, got {w}")
            if e in seen:
                raise BadParameter(f"edge {e} listed twice")
            seen[e] = w
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(seen.items())))

    @property
    def total_weight(self) -> float:
        return float(sum(w for _, w in self.edges))


def adjacency_tensor(G: WeightedRGraph) -> Tensor:
    out = np.zeros((G.n,) * G.r)
    for e, w in G.edges:
        for idx in itertools.permutations(e):
            out[idx] = w
    return Tensor(out)


def degrees(G: WeightedRGraph) -> np.ndarray:
    d = np.zeros(G.n)
    for e, w in G.edges:
        d[list(e)] += w
    return d


def degree(G: WeightedRGraph, v: int) -> float:
    if not 0 <= v < G.n:
        raise VertexOutOfRange(f"vertex {v} outside [0, {G.n})")
    return float(degrees(G)[v])


# --------------------------------------------------------------------------
# generators


def gen_star(n: int) -> WeightedRGraph:
    """K_{1,n}: vertex 0 joined to vertices 1..n."""
    if n < 1:
        raise BadParameter("star needs n >= 1 leaves")
    return WeightedRGraph(2, n + 1, [((0, i), 1.0) for i in range(1, n + 1)])


def gen_beta_star(r: int, k: int) -> WeightedRGraph:
    """k edges of size r sharing vertex 0 and nothing else."""
    if r < 2 or k < 1:
        raise BadParameter("beta-star needs r >= 2 and k >= 1")
    edges = [((0, *range(1 + j * (r - 1), 1 + (j + 1) * (r - 1))), 1.0) for j in range(k)]
    return WeightedRGraph(r, 1 + k * (r - 1), edges)


def gen_all_ones(r: int, n: int) -> Tensor:
    """The all-ones r-tensor of order n (not a graph: it has diagonal entries)."""
    if r < 2 or n < 1:
        raise BadParameter("all-ones needs r >= 2 and n >= 1")
    return all_ones(r, n)


def gen_cycle(n: int) -> WeightedRGraph:
    if n < 3:
        raise BadParameter("cycle needs n >= 3")
    return WeightedRGraph(2, n, [((i, (i + 1) % n), 1.0) for i in range(n)])


def gen_random(
    r: int, n: int, density: float, seed: int = 0, weights: bool = False
) -> WeightedRGraph:
    """Each r-subset of [n] becomes an edge with probability ``density``.

    With ``weights`` the edge weights are uniform on [0.5, 2]; otherwise 1.
    """
    if r < 2 or n < r:
        raise BadParameter(f"need 2 <= r <= n, got r={r}, n={n}")
    if not 0.0 <= density <= 1.0:
        raise BadParameter(f"density must lie in [0, 1], got {density}")
    rng = np.random.default_rng(seed)
    edges = []
    for e in itertools.combinations(range(n), r):
        if rng.random() < density:
            w = float(rng.uniform(0.5, 2.0)) if weights else 1.0
            edges.append((e, w))
    return WeightedRGraph(r, n, edges)


# --------------------------------------------------------------------------
# degree bounds


def bound_degree_product(G: WeightedRGraph) -> float:
    """``(r-1)! (max over edges of prod d_v)^(1/r)``, an upper bound for rho(G)."""
    if not G.edges:
        return 0.0
    d = degrees(G)
    best = max(float(np.prod(d[list(e)])) for e, _ in G.edges)
    return math.factorial(G.r - 1) * best ** (1.0 / G.r)


def bound_neighbor_degree(G: WeightedRGraph) -> float:
    """``(r-1)! (max_k sum_{e ∋ k} G(e) prod_{v in e, v != k} d_v)^(1/r)``."""
    if not G.edges:
        return 0.0
    d = degrees(G)
    acc = np.zeros(G.n)
    for e, w in G.edges:
        for k in e:
            acc[k] += w * float(np.prod([d[v] for v in e if v != k]))
    return math.factorial(G.r - 1) * float(acc.max()) ** (1.0 / G.r)


def lower_hofmeister(G: WeightedRGraph, p: float) -> float:
    """``(r-1)! (n^(-(r-1)/(p-1)) sum d_i^q)^(1/q)`` with ``q = p/(p-1)``, for p >= r.

    This is the slice-sum lower bound evaluated at the adjacency tensor, whose
    slice sums are ``(r-1)! d_i``.
    """
    if not p >= G.r:
        raise BadExponent(f"degree lower bound needs p >= r = {G.r}, got {p}")
    d = degrees(G)
    m = d.max()
    if m == 0:
        return 0.0
    q = p / (p - 1.0)
    inner = G.n ** (-(G.r - 1) / (p - 1.0)) * float(((d / m) ** q).sum())
    return math.factorial(G.r - 1) * m * inner ** (1.0 / q)


def _check_partite(G: WeightedRGraph, partition: Partition) -> None:
    if partition.n != G.n or partition.r != G.r:
        raise NotPartite("partition does not match the graph's n and r")
    for e, _ in G.edges:
        if len({partition.selector[v] for v in e}) != G.r:
            raise NotPartite(f"edge {e} does not meet every block exactly once")


def partite_lower(G: WeightedRGraph, partition: Partition, p: float) -> float:
    """``(r!/r^(r/p)) (n_1 ... n_r)^(-1/p) sum_e G(e)`` for an r-partite graph."""
    if not p >= 1:
        raise BadExponent(f"p must be >= 1, got {p}")
    _check_partite(G, partition)
    r = G.r
    const = math.factorial(r) / r ** (r / p)
    size = float(np.prod(partition.sizes))
    return const * size ** (-1.0 / p) * G.total_weight


def partite_balance_check(G: WeightedRGraph, partition: Partition, p: float, opts=None) -> float:
    """Largest deviation of ``| x restricted to a block |_p`` from ``r^(-1/p)``.

    ``x`` is the maximizer returned by :func:`hypernorm.spectral.eta_p`; every
    block of an r-partite graph's maximizer should carry an equal share.
    """
    from .spectral import eta_p

    _check_partite(G, partition)
    x = np.asarray(eta_p(adjacency_tensor(G), p, opts).witness)
    target = G.r ** (-1.0 / p)
    return max(
        abs(float(np.sum(np.abs(x[list(b)]) ** p) ** (1.0 / p)) - target)
        for b in partition.blocks
    )
