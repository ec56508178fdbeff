"""Closed-form upper and lower bounds on the spectral p-norm.

Notation: ``S_k = max_s |A_s^(k)|_1`` is the largest absolute slice sum along
axis k, ``N = n_1 ... n_r``, ``q = p/(p-1)``.

The r-norm bounds (:func:`upper_hlp`, :func:`upper_main`, :func:`upper_th3`
and, for matrices, :func:`upper_schur`) only bound ``||A||_r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadExponent, NegativeEntries, NotOrder2, NotRegular, NotSymmetric
from .tensor import Tensor, entrywise_norm, is_regular, is_symmetric, slice_sums

SANDWICH_RTOL = 1e-9
LOWER_SLACK = 1e-8
UPPER_SLACK = 1e-12


def _abs_slice_sums(A: Tensor) -> list[np.ndarray]:
    return [slice_sums(A, k, absolute=True) for k in range(A.order)]


def _outer_weights(sums: list[np.ndarray], skip: int | None = None) -> np.ndarray:
    # w[i_1..i_r] = prod_{j != skip} sums[j][i_j]
    r = len(sums)
    w = np.ones([1] * r)
    for j, s in enumerate(sums):
        if j == skip:
            continue
        shape = [1] * r
        shape[j] = len(s)
        w = w * s.reshape(shape)
    return w


def _dual(p: float) -> float:
    if not p > 1:
        raise BadExponent(f"bound needs p > 1, got {p}")
    return p / (p - 1.0)


def upper_hlp(A: Tensor) -> float:
    """``(S_1 ... S_r)^(1/r)``."""
    prods = [float(s.max()) for s in _abs_slice_sums(A)]
    return float(np.prod(prods) ** (1.0 / A.order))


def upper_main(A: Tensor) -> float:
    """``(max over nonzero entries of prod_k |A_{i_k}^(k)|_1)^(1/r)``; 0 for the zero tensor."""
    support = A.data != 0
    if not support.any():
        return 0.0
    w = _outer_weights(_abs_slice_sums(A))
    w = np.broadcast_to(w, A.dims)
    return float(w[support].max() ** (1.0 / A.order))


def upper_schur(A: Tensor) -> float:
    """``sqrt(max row sum * max column sum)`` of ``|A|`` for a 2-matrix."""
    if A.order != 2:
        raise NotOrder2("Schur bound is defined for 2-matrices only")
    rows, cols = _abs_slice_sums(A)
    return math.sqrt(float(rows.max()) * float(cols.max()))


def upper_th3(A: Tensor) -> float:
    """``(min_k max_s sum_{i_k = s} |a| prod_{j != k} |A_{i_j}^(j)|_1)^(1/r)``."""
    sums = _abs_slice_sums(A)
    absA = np.abs(A.data)
    best = math.inf
    for k in range(A.order):
        weighted = absA * _outer_weights(sums, skip=k)
        other = tuple(j for j in range(A.order) if j != k)
        best = min(best, float(weighted.sum(axis=other).max()))
    return float(best ** (1.0 / A.order))


def upper_entry_norm(A: Tensor, p: float) -> float:
    """``|A|_q`` with ``q = p/(p-1)``; equality exactly for rank-one A."""
    return entrywise_norm(A, _dual(p))


def is_rank_one(A: Tensor, tol: float = 1e-9) -> bool:
    """True when every unfolding has numerical rank <= 1 (relative ``tol``).

    A tensor all of whose unfoldings have rank one is an outer product, and
    the converse is immediate, so this matches the 2x2-minor criterion while
    being robust to scaling. The zero tensor counts as rank one.
    """
    data = A.data
    scale = np.abs(data).max()
    if scale == 0:
        return True
    data = data / scale
    for k in range(A.order):
        unfold = np.moveaxis(data, k, 0).reshape(A.dims[k], -1)
        sv = np.linalg.svd(unfold, compute_uv=False)
        if len(sv) > 1 and sv[1] > tol * sv[0]:
            return False
    return True


def lower_slice_sum(A: Tensor, p: float, k: int) -> float:
    """``N^(-1/p) sum_j |sum A_j^(k)|``."""
    if not p >= 1:
        raise BadExponent(f"p must be >= 1, got {p}")
    A._check_axis(k)
    N = float(np.prod(A.dims))
    return float(N ** (-1.0 / p) * np.abs(slice_sums(A, k)).sum())


def lower_fiber(A: Tensor, p: float) -> float:
    """Largest ``|F|_q`` over all fibers F."""
    q = _dual(p)
    scale = np.abs(A.data).max()
    if scale == 0:
        return 0.0
    scaled = np.abs(A.data) / scale
    best = max(float((scaled**q).sum(axis=k).max()) for k in range(A.order))
    return float(scale * best ** (1.0 / q))


def lower_th5(A: Tensor, p: float, k: int) -> float:
    """``((n_k/N)^(1/(p-1)) sum_j |sum A_j^(k)|^q)^(1/q)``."""
    q = _dual(p)
    A._check_axis(k)
    s = np.abs(slice_sums(A, k))
    m = s.max()
    if m == 0:
        return 0.0
    N = float(np.prod(A.dims))
    ratio = (A.dims[k] / N) ** (1.0 / (p - 1.0))
    return float(m * (ratio * ((s / m) ** q).sum()) ** (1.0 / q))


def regular_value(A: Tensor, p: float) -> float:
    """Exact ``n^(-r/p) sum A`` for a regular nonnegative symmetric tensor, p >= r."""
    A.require_cubical()
    if np.any(A.data < 0):
        raise NegativeEntries("regular_value needs a nonnegative tensor")
    scale = max(1.0, float(np.abs(A.data).max()))
    if not is_symmetric(A, 1e-12 * scale):
        raise NotSymmetric("regular_value needs a symmetric tensor")
    if p < A.order:
        raise BadExponent(f"regular_value needs p >= r = {A.order}, got {p}")
    if not is_regular(A):
        raise NotRegular("tensor is not regular")
    return float(A.n ** (-A.order / p) * A.data.sum())


def _regular_applies(A: Tensor, p: float) -> bool:
    if not A.is_cubical or p < A.order or np.any(A.data < 0):
        return False
    scale = max(1.0, float(np.abs(A.data).max()))
    return is_symmetric(A, 1e-12 * scale) and is_regular(A)


@dataclass
class BoundsReport:
    p: float
    lower: dict[str, float] = field(default_factory=dict)
    upper: dict[str, float] = field(default_factory=dict)
    estimate: float | None = None

    def violations(self) -> list[str]:
        """Pairs breaking the sandwich ``lower <= estimate <= upper``."""
        out = []
        for ln, lv in self.lower.items():
            for un, uv in self.upper.items():
                if lv > uv + SANDWICH_RTOL * max(1.0, abs(uv)):
                    out.append(f"{ln}={lv!r} > {un}={uv!r}")
        if self.estimate is not None:
            est = self.estimate
            for ln, lv in self.lower.items():
                if lv > est + LOWER_SLACK * max(1.0, abs(est)):
                    out.append(f"{ln}={lv!r} > estimate={est!r}")
            for un, uv in self.upper.items():
                if est > uv + UPPER_SLACK * max(1.0, abs(uv)):
                    out.append(f"estimate={est!r} > {un}={uv!r}")
        return out

    @property
    def sandwich_ok(self) -> bool:
        return not self.violations()

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "lower": dict(self.lower),
            "upper": dict(self.upper),
            "estimate": self.estimate,
            "sandwich_ok": self.sandwich_ok,
        }


def bounds_report(A: Tensor, p: float, opts=None, *, with_estimate: bool = False) -> BoundsReport:
    """Every bound that applies at ``(A, p)``, optionally with the spectral estimate."""
    if not p >= 1 or not math.isfinite(p):
        raise BadExponent(f"p must be a finite number >= 1, got {p}")
    r = A.order
    rep = BoundsReport(float(p))
    for k in range(r):
        rep.lower[f"slice_sum_{k}"] = lower_slice_sum(A, p, k)
    if p > 1:
        rep.lower["fiber"] = lower_fiber(A, p)
        for k in range(r):
            rep.lower[f"th5_{k}"] = lower_th5(A, p, k)
        rep.upper["entry_norm"] = upper_entry_norm(A, p)
    else:
        # ||A||_1 = |A|_max, the q = inf entrywise norm
        rep.upper["entry_norm"] = entrywise_norm(A, math.inf)
    if _regular_applies(A, p):
        rep.lower["regular_value"] = regular_value(A, p)
    if p == r:
        rep.upper["hlp"] = upper_hlp(A)
        rep.upper["main"] = upper_main(A)
        rep.upper["th3"] = upper_th3(A)
        if r == 2:
            rep.upper["schur"] = upper_schur(A)
    if with_estimate:
        from .spectral import spectral_p_norm

        rep.estimate = spectral_p_norm(A, p, opts).value
    return rep
