"""Spectral p-norm, p-spectral radius and spectral radius of r-matrices.

All iterative values are feasible-point evaluations, i.e. certified lower
estimates of the true maxima; nothing here certifies global optimality.

* :func:`spectral_p_norm` maximizes ``|L_A|`` over r unit l^p vectors by
  exact block maximization: with all blocks but one fixed, the best block is
  the dual scaling ``sign(g) |g|^(1/(p-1))`` of the block gradient ``g``.
* :func:`lambda_p` maximizes ``P_A`` on the unit l^p sphere by the shifted
  fixed point ``x <- dual(grad P_A(x) + alpha p x|x|^(p-2))``. The shift is
  doubled whenever a step would decrease ``P_A``, so the ascent is monotone.
* :func:`rho_nonnegative` runs the shifted power iteration for ``A x^(r-1)``
  and brackets the spectral radius with Collatz-Wielandt ratios.

Optimization is over real vectors. For nonnegative tensors that is exact;
for sign-mixed tensors the result may undershoot the complex-field value.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace

import numpy as np

from . import forms
from .errors import (
    BadExponent,
    NegativeEntries,
    NonPositiveVector,
    NotSymmetric,
)
from .kernels import get_backend
from .structure import principal_submatrix, strong_components
from .tensor import Tensor, entrywise_norm, is_symmetric, slice_sums

# iterative solvers need the dual exponent 1/(p-1) to stay moderate
MIN_ITERATIVE_P = 1.0 + 1e-3
SYMMETRY_TOL = 1e-12
CURVE_PASSES = 4
# the winning start is iterated further at tol * REFINE_FACTOR; the value
# settles long before the point does, and witnesses feed residual checks
REFINE_FACTOR = 1e-4


@dataclass(frozen=True)
class SolverOptions:
    starts: int = 32
    seed: int = 0
    tol: float = 1e-10
    max_iter: int = 10_000
    patience: int = 5
    backend: str = "auto"

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.max_iter < 1 or self.patience < 1:
            raise ValueError("max_iter and patience must be >= 1")
        if not self.tol >= 0:
            raise ValueError("tol must be >= 0")


DEFAULT_OPTIONS = SolverOptions()


@dataclass(frozen=True)
class EigenKit:
    """r unit l^p vectors together with ``|L_A|`` at them."""

    vectors: tuple[np.ndarray, ...]
    value: float


@dataclass(frozen=True)
class SpectralResult:
    value: float
    witness: EigenKit | np.ndarray
    p: float
    iterations: int
    starts: int
    converged: bool
    best_start: int
    kind: str = "norm"
    # width of the final Collatz-Wielandt bracket (rho only)
    gap: float = 0.0


def _lp_normalize(x: np.ndarray, p: float) -> np.ndarray:
    m = np.max(np.abs(x))
    if m == 0:
        return x
    y = x / m
    return y / np.sum(np.abs(y) ** p) ** (1.0 / p)


def _dual_scale(g: np.ndarray, p: float) -> np.ndarray | None:
    m = np.max(np.abs(g)) if g.size else 0.0
    if m == 0:
        return None
    return _lp_normalize(np.copysign((np.abs(g) / m) ** (1.0 / (p - 1.0)), g), p)


def _check_p(p: float, *, allow_one: bool) -> float:
    p = float(p)
    if not math.isfinite(p):
        raise BadExponent("p = inf is not supported")
    if p < 1:
        raise BadExponent(f"p must be >= 1, got {p}")
    if p == 1 and allow_one:
        return p
    if p < MIN_ITERATIVE_P:
        raise BadExponent(
            f"p = {p} is too close to 1 for the iterative solvers (need p >= {MIN_ITERATIVE_P})"
        )
    return p


def _require_symmetric(A: Tensor) -> None:
    A.require_cubical()
    scale = max(1.0, float(np.abs(A.data).max()))
    if not is_symmetric(A, SYMMETRY_TOL * scale):
        raise NotSymmetric("operation requires a symmetric tensor")


def _is_nonnegative(A: Tensor) -> bool:
    return bool(np.all(A.data >= 0))


# --------------------------------------------------------------------------
# spectral p-norm


def _canonical_kit(A: Tensor) -> EigenKit:
    idx = np.unravel_index(int(np.argmax(np.abs(A.data))), A.dims)
    vecs = []
    for k, i in enumerate(idx):
        e = np.zeros(A.dims[k])
        e[i] = 1.0
        vecs.append(e)
    a = float(A.data[idx])
    if a < 0:
        vecs[0] = -vecs[0]
    return EigenKit(tuple(vecs), abs(a))


def _norm_starts(A: Tensor, p: float, opts: SolverOptions) -> list[list[np.ndarray]]:
    starts = [[np.full(d, d ** (-1.0 / p)) for d in A.dims]]
    if opts.starts > 1:
        vecs = []
        for k, d in enumerate(A.dims):
            y = _dual_scale(slice_sums(A, k), p)
            vecs.append(y if y is not None else np.full(d, d ** (-1.0 / p)))
        starts.append(vecs)
    for i in range(2, opts.starts):
        rng = np.random.default_rng(opts.seed + i)
        starts.append([_lp_normalize(rng.standard_normal(d), p) for d in A.dims])
    return starts


def _run_norm_starts(A, p, starts, opts, first_index=0):
    """Block ascent from each start; returns the best (value, xs, it, conv, index)."""
    kern = get_backend(opts.backend)
    data = A.data.ravel()
    dims = np.asarray(A.dims, dtype=np.intp)
    offsets = np.concatenate(([0], np.cumsum(A.dims)[:-1])).astype(np.intp)
    best = None
    for i, vecs in enumerate(starts):
        xs = np.concatenate([_lp_normalize(np.asarray(v, dtype=float), p) for v in vecs])
        value, it, conv = kern.block_ascent(
            data, dims, xs, offsets, p, opts.tol, opts.max_iter, opts.patience
        )
        value = abs(float(value))
        if best is None or value > best[0]:
            best = (value, xs, int(it), bool(conv), first_index + i)
    value, xs, it, conv, index = best
    value, extra, _ = kern.block_ascent(
        data, dims, xs, offsets, p, opts.tol * REFINE_FACTOR, opts.max_iter, opts.patience
    )
    return abs(float(value)), xs, it + int(extra), conv, index


def _finish_norm(A, p, best, n_starts) -> SpectralResult:
    _, xs, it, conv, index = best
    vecs = list(np.split(xs, np.cumsum(A.dims)[:-1]))
    if _is_nonnegative(A):
        # |L_A(x)| <= L_A(|x|) for nonnegative A
        vecs = [np.abs(v) for v in vecs]
    vecs = [_lp_normalize(v, p) for v in vecs]
    L = forms.linear_form(A, vecs)
    if L < 0:
        vecs[0] = -vecs[0]
    value = abs(L)
    kit = EigenKit(tuple(vecs), value)
    return SpectralResult(value, kit, p, it, n_starts, conv, index, kind="norm")


def spectral_p_norm(
    A: Tensor,
    p: float,
    opts: SolverOptions | None = None,
    *,
    initial: Sequence[Sequence[np.ndarray]] = (),
) -> SpectralResult:
    """Best value of ``|L_A|`` over unit l^p vectors found by multi-start block ascent.

    ``p = 1`` is answered exactly by ``max |a|``. Extra starting kits can be
    supplied through ``initial``; they are numbered after the regular starts.
    """
    opts = opts or DEFAULT_OPTIONS
    p = _check_p(p, allow_one=True)
    if not np.any(A.data) or p == 1:
        kit = _canonical_kit(A)
        return SpectralResult(kit.value, kit, p, 0, 0, True, 0, kind="norm")
    starts = _norm_starts(A, p, opts) + [list(k) for k in initial]
    best = _run_norm_starts(A, p, starts, opts)
    return _finish_norm(A, p, best, len(starts))


def ascend_norm(
    A: Tensor, p: float, vectors: Sequence[np.ndarray], opts: SolverOptions | None = None
) -> SpectralResult:
    """Single block-ascent run from the given vectors (a local polish)."""
    opts = opts or DEFAULT_OPTIONS
    p = _check_p(p, allow_one=False)
    if not np.any(A.data):
        kit = _canonical_kit(A)
        return SpectralResult(0.0, kit, p, 0, 1, True, 0, kind="norm")
    best = _run_norm_starts(A, p, [list(vectors)], opts)
    return _finish_norm(A, p, best, 1)


# --------------------------------------------------------------------------
# p-spectral radius of symmetric tensors


def _sym_starts(A: Tensor, p: float, opts: SolverOptions) -> list[np.ndarray]:
    n = A.n
    starts = [np.full(n, n ** (-1.0 / p))]
    if opts.starts > 1:
        y = _dual_scale(slice_sums(A, 0), p)
        starts.append(y if y is not None else starts[0].copy())
    for i in range(2, opts.starts):
        rng = np.random.default_rng(opts.seed + i)
        starts.append(_lp_normalize(rng.standard_normal(n), p))
    return starts


def _run_sym_starts(A, p, starts, opts, first_index=0):
    kern = get_backend(opts.backend)
    data = A.data.ravel()
    alpha0 = entrywise_norm(A, 1)
    best = None
    for i, x0 in enumerate(starts):
        x = _lp_normalize(np.array(x0, dtype=float), p)
        value, it, conv, _ = kern.shifted_ascent(
            data, A.n, A.order, x, p, alpha0, opts.tol, opts.max_iter, opts.patience
        )
        value = float(value)
        if best is None or value > best[0]:
            best = (value, x, int(it), bool(conv), first_index + i)
    value, x, it, conv, index = best
    value, extra, _, _ = kern.shifted_ascent(
        data, A.n, A.order, x, p, alpha0, opts.tol * REFINE_FACTOR, opts.max_iter, opts.patience
    )
    return float(value), x, it + int(extra), conv, index


def _finish_sym(A, p, best, n_starts, kind) -> SpectralResult:
    _, x, it, conv, index = best
    if _is_nonnegative(A):
        x = np.abs(x)
    x = _lp_normalize(x, p)
    value = forms.poly_form(A, x)
    return SpectralResult(value, x, p, it, n_starts, conv, index, kind=kind)


def lambda_p(
    A: Tensor,
    p: float,
    opts: SolverOptions | None = None,
    *,
    initial: Sequence[np.ndarray] = (),
) -> SpectralResult:
    """Largest value of ``P_A`` found on the unit l^p sphere."""
    opts = opts or DEFAULT_OPTIONS
    p = _check_p(p, allow_one=False)
    _require_symmetric(A)
    if not np.any(A.data):
        x = np.zeros(A.n)
        x[0] = 1.0
        return SpectralResult(0.0, x, p, 0, 0, True, 0, kind="lambda")
    starts = _sym_starts(A, p, opts) + [np.asarray(x) for x in initial]
    best = _run_sym_starts(A, p, starts, opts)
    return _finish_sym(A, p, best, len(starts), "lambda")


def ascend_lambda(
    A: Tensor, p: float, x: Sequence[float], opts: SolverOptions | None = None
) -> SpectralResult:
    """Single shifted-ascent run of ``P_A`` from ``x`` (a local polish)."""
    opts = opts or DEFAULT_OPTIONS
    p = _check_p(p, allow_one=False)
    _require_symmetric(A)
    if not np.any(A.data):
        return lambda_p(A, p, opts)
    best = _run_sym_starts(A, p, [np.asarray(x, dtype=float)], opts)
    return _finish_sym(A, p, best, 1, "lambda")


def lambda_min_p(
    A: Tensor,
    p: float,
    opts: SolverOptions | None = None,
    *,
    initial: Sequence[np.ndarray] = (),
) -> SpectralResult:
    """Smallest value of ``P_A`` on the unit l^p sphere, as ``-lambda_p(-A)``."""
    res = lambda_p(-A, p, opts, initial=initial)
    return replace(res, value=-res.value, kind="lambda_min")


def _eta_p1_report(A: Tensor, extra: Sequence[np.ndarray] = ()) -> SpectralResult:
    # scaled signed indicators of a maximal entry's index set, basis vectors,
    # and any extra points (rescaled onto the unit l^1 sphere)
    r, n = A.order, A.n
    candidates = [np.eye(n)[i] for i in range(n)]
    candidates += [_lp_normalize(np.asarray(z, dtype=float), 1.0) for z in extra]
    amax = np.max(np.abs(A.data))
    for idx in np.argwhere(np.abs(A.data) == amax):
        support = sorted(set(int(i) for i in idx))
        m = len(support)
        for signs in itertools.product((1.0, -1.0), repeat=m - 1):
            z = np.zeros(n)
            z[support] = np.array((1.0,) + signs) / m
            candidates.append(z)
    best_val, best_x = -1.0, None
    for z in candidates:
        v = abs(forms.poly_form(A, z))
        if v > best_val:
            best_val, best_x = v, z
    return SpectralResult(best_val, best_x, 1.0, 0, len(candidates), True, 0, kind="eta_p1_lower")


def eta_p(
    A: Tensor,
    p: float,
    opts: SolverOptions | None = None,
    *,
    initial: Sequence[np.ndarray] = (),
) -> SpectralResult:
    """``max(|lambda_p|, |lambda_min_p|)``, the p-spectral radius estimate.

    At ``p = 1`` only a lower-bound report is produced (feasible points built
    from a maximal entry).
    """
    opts = opts or DEFAULT_OPTIONS
    p = _check_p(p, allow_one=True)
    _require_symmetric(A)
    if p == 1:
        return _eta_p1_report(A)
    lam = lambda_p(A, p, opts, initial=initial)
    if _is_nonnegative(A):
        # lambda_min >= -lambda for nonnegative A
        return replace(lam, kind="eta")
    lam_min = lambda_min_p(A, p, opts, initial=initial)
    total = lam.starts + lam_min.starts
    if -lam_min.value > lam.value:
        return replace(lam_min, value=-lam_min.value, starts=total, kind="eta")
    return replace(lam, starts=total, kind="eta")


# --------------------------------------------------------------------------
# spectral radius of nonnegative cubical tensors


def collatz_wielandt_upper(A: Tensor, x: Sequence[float]) -> float:
    """``max_k (A x^(r-1))_k / x_k^(r-1)``, an upper bound on rho(A) for x > 0."""
    A.require_cubical()
    if not _is_nonnegative(A):
        raise NegativeEntries("Collatz-Wielandt bound needs a nonnegative tensor")
    x = np.asarray(x, dtype=float)
    if x.shape != (A.n,) or not np.all(x > 0):
        raise NonPositiveVector("x must be an entrywise positive vector of length n")
    y = forms._contract(A.data, [x] * A.order, skip=0)
    return float(np.max(y / x ** (A.order - 1)))


def rho_nonnegative(A: Tensor, opts: SolverOptions | None = None) -> SpectralResult:
    """Spectral radius of a nonnegative cubical tensor.

    Each strongly connected class of the digraph is iterated separately from
    the constant vector with shifted power steps until the Collatz-Wielandt
    bracket closes to ``opts.tol`` (relative); rho is the largest class value.
    The reported value is the bracket midpoint and ``gap`` its width.
    """
    opts = opts or DEFAULT_OPTIONS
    A.require_cubical()
    if not _is_nonnegative(A):
        raise NegativeEntries("rho_nonnegative needs a nonnegative tensor")
    kern = get_backend(opts.backend)
    r, n = A.order, A.n
    best = (0.0, 0.0, np.full(n, 1.0), 0)
    converged = True
    for X in strong_components(A):
        sub = principal_submatrix(A, X)
        if not np.any(sub.data):
            continue
        x = np.ones(len(X))
        y = forms._contract(sub.data, [x] * r, skip=0)
        shift = 0.5 * float(np.max(y))
        lo, hi, it, conv = kern.cw_power(
            sub.data.ravel(), len(X), r, x, shift, opts.tol, opts.max_iter
        )
        converged = converged and bool(conv)
        mid = 0.5 * (lo + hi)
        if mid > best[0]:
            full = np.zeros(n)
            full[list(X)] = x
            best = (mid, hi - lo, full, int(it))
    value, gap, x, it = best
    return SpectralResult(
        value, _lp_normalize(x, r), float(r), it, 1, converged, 0, kind="rho", gap=gap
    )


# --------------------------------------------------------------------------
# eigen-equations and components


def eigen_residual(A: Tensor, lam: float, x: Sequence[float], p: float) -> float:
    """``max_k |lam x_k |x_k|^(p-2) - (1/r) dP_A/dx_k|``."""
    _require_symmetric(A)
    x = np.asarray(x, dtype=float)
    g = forms.poly_gradient(A, x)
    lhs = lam * np.copysign(np.abs(x) ** (p - 1.0), x)
    return float(np.max(np.abs(lhs - g / A.order)))


def combine_components(values: Sequence[float], p: float, r: int) -> float:
    """``(sum v_i^(p/(p-r)))^((p-r)/p)`` for the nonzero components' lambda values."""
    if not p > r:
        raise BadExponent(f"component formula needs p > r (p={p}, r={r})")
    v = np.asarray(values, dtype=float)
    if np.any(v < 0):
        raise ValueError("component values must be nonnegative")
    if not np.any(v):
        return 0.0
    t = p / (p - r)
    m = v.max()
    return float(m * np.sum((v / m) ** t) ** (1.0 / t))


# --------------------------------------------------------------------------
# p-curves


def _chain(ps, solve: Callable, seed_of: Callable):
    """Evaluate ``solve`` on a sorted p-grid, then re-seed neighbours both ways.

    A witness at q, renormalized on the p-sphere, is feasible at p; sweeping
    it up and down the grid keeps the curve monotone and within the
    power-mean envelope whatever the multi-start found on its own.
    """
    grid = sorted(set(float(p) for p in ps))
    results = {p: solve(p, ()) for p in grid}
    for _ in range(CURVE_PASSES):
        changed = False
        for seq in (grid, grid[::-1]):
            for a, b in zip(seq, seq[1:]):
                res = solve(b, (seed_of(results[a]),), only_seeds=True)
                if res.value > results[b].value:
                    results[b] = res
                    changed = True
        if not changed:
            break
    return results


def norm_p_results(A: Tensor, ps: Sequence[float], opts: SolverOptions | None = None):
    opts = opts or DEFAULT_OPTIONS
    for p in ps:
        _check_p(p, allow_one=True)

    def solve(p, seeds, only_seeds=False):
        if only_seeds:
            if p == 1.0 or not np.any(A.data):
                return spectral_p_norm(A, p, opts)
            best = _run_norm_starts(A, p, [list(s) for s in seeds], opts, first_index=opts.starts)
            return _finish_norm(A, p, best, 1)
        return spectral_p_norm(A, p, opts, initial=seeds)

    return _chain(ps, solve, lambda res: res.witness.vectors)


def norm_p_curve(
    A: Tensor, ps: Sequence[float], opts: SolverOptions | None = None
) -> list[tuple[float, float]]:
    """``[(p, estimate of ||A||_p)]`` in the order of ``ps``."""
    results = norm_p_results(A, ps, opts)
    return [(float(p), results[float(p)].value) for p in ps]


def eta_p_curve(
    A: Tensor, ps: Sequence[float], opts: SolverOptions | None = None
) -> list[tuple[float, float]]:
    """``[(p, estimate of eta^(p)(A))]``; ``p = 1`` gives the lower-bound report."""
    opts = opts or DEFAULT_OPTIONS
    _require_symmetric(A)
    for p in ps:
        _check_p(p, allow_one=True)
    signs = (1.0,) if _is_nonnegative(A) else (1.0, -1.0)
    curves = []
    for sign in signs:
        B = A if sign > 0 else -A

        def solve(p, seeds, only_seeds=False, B=B):
            if p == 1.0:
                return _eta_p1_report(B, seeds)
            if only_seeds:
                if not np.any(B.data):
                    return lambda_p(B, p, opts)
                best = _run_sym_starts(B, p, list(seeds), opts, first_index=opts.starts)
                return _finish_sym(B, p, best, 1, "lambda")
            return lambda_p(B, p, opts, initial=seeds)

        curves.append(_chain(ps, solve, lambda res: res.witness))
    return [(float(p), max(abs(c[float(p)].value) for c in curves)) for p in ps]
