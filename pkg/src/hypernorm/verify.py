"""Randomized invariant suites.

Each suite draws instances from seeded generators, evaluates one or more
identities or inequalities, and returns one :class:`Row` per check. ``gap``
is always ``lhs - rhs``; whether a row passes depends on the check's
tolerance, which is recorded in the quantity name's documentation below.

Suites:

``th2``       symmetrant equality (nonnegative) and inequality (sign-mixed)
``mth1``      p-spectral radius equals spectral p-norm for nonnegative symmetric A, p >= r
``pf1``       p-spectral radius of a block diagonal from its components, p > r
``pf0``       positivity of maximizers, power-iteration eigenpairs, eigenvalue bound
``monotone``  behaviour of the p-curves: monotone, scaling, bounded, Lipschitz
``gradient``  finite-difference gradient and Euler identity
``sandwich``  every lower bound <= estimate <= every upper bound, bound dominance
``oracle``    grid oracle and closed forms versus the optimizer
``balance``   block balance of symmetrant maximizers
``regular``   exact value on regular tensors and graphs
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Callable
from dataclasses import astuple, dataclass, fields, replace

import numpy as np

from . import forms
from .bounds import bounds_report, lower_slice_sum, regular_value, upper_hlp, upper_main, upper_schur
from .hypergraph import (
    adjacency_tensor,
    gen_cycle,
    gen_random,
    gen_star,
    lower_hofmeister,
    partite_lower,
)
from .oracle import CATALOGUE, closed_form, grid_max_eta, grid_max_norm, instance
from .spectral import (
    SolverOptions,
    combine_components,
    eigen_residual,
    eta_p,
    eta_p_curve,
    lambda_p,
    norm_p_curve,
    rho_nonnegative,
    spectral_p_norm,
)
from .structure import Partition, interval_partition, is_weakly_irreducible, symmetrant
from .tensor import Tensor, all_ones, block_diagonal, entrywise_norm, symmetrize
from .errors import TooLarge


@dataclass(frozen=True)
class Row:
    trial: int
    seed: int
    quantity: str
    lhs: float
    rhs: float
    gap: float
    passed: bool


def _row(trial, seed, quantity, lhs, rhs, passed) -> Row:
    lhs, rhs = float(lhs), float(rhs)
    return Row(trial, seed, quantity, lhs, rhs, lhs - rhs, bool(passed))


def _close(a: float, b: float, rtol: float) -> bool:
    return abs(a - b) <= rtol * max(abs(b), 1e-300) or a == b


def _le(a: float, b: float, slack: float) -> bool:
    return a <= b + slack


# --------------------------------------------------------------------------
# instance generators


def random_tensor(rng: np.random.Generator, dims, signed: bool = False) -> Tensor:
    data = rng.standard_normal(tuple(dims)) if signed else rng.random(tuple(dims))
    return Tensor(data)


def random_symmetric(rng: np.random.Generator, r: int, n: int, signed: bool = False) -> Tensor:
    data = rng.standard_normal((n,) * r) if signed else rng.random((n,) * r)
    return Tensor(symmetrize(data))


def random_dims(rng: np.random.Generator, r: int, high: int = 4) -> tuple[int, ...]:
    return tuple(int(d) for d in rng.integers(1, high + 1, size=r))


def random_connected_graph_tensor(rng: np.random.Generator, r: int, n: int) -> Tensor:
    """Adjacency tensor of a weighted random r-graph that is weakly irreducible."""
    for _ in range(1000):
        G = gen_random(r, n, 0.6, int(rng.integers(2**31)), weights=True)
        if G.edges:
            A = adjacency_tensor(G)
            if is_weakly_irreducible(A):
                return A
    raise RuntimeError("could not draw a connected random graph")


# --------------------------------------------------------------------------
# suites


def suite_th2(trials: int, seed: int, opts: SolverOptions) -> list[Row]:
    """``th2b``: equality to 1e-6 relative; ``th2a``: inequality with slack 1e-6."""
    rows = []
    for t in range(trials):
        s = seed + t
        rng = np.random.default_rng(s)
        r = int(rng.choice([2, 3]))
        for signed, name in ((False, "th2b"), (True, "th2a")):
            A = random_tensor(rng, random_dims(rng, r), signed=signed)
            B, _ = symmetrant(A)
            for p in (2.0, 2.5, 3.0, 4.0):
                lhs = eta_p(B, p, opts).value
                rhs = math.factorial(r) / r ** (r / p) * spectral_p_norm(A, p, opts).value
                ok = _close(lhs, rhs, 1e-6) if not signed else _le(lhs, rhs, 1e-6 * max(1.0, rhs))
                rows.append(_row(t, s, f"{name}[r={r},p={p}]", lhs, rhs, ok))
    return rows


MTH1_GRID = tuple((r, n, p) for r in (2, 3) for n in (3, 4, 5) for p in (r, r + 1, 2 * r))


def suite_mth1(trials: int, seed: int, opts: SolverOptions) -> list[Row]:
    """``mth1``: eta_p equals spectral_p_norm to 1e-6 relative on converged runs.

    The trailing ``converged_fraction`` row requires at least 95% of runs to
    converge. Non-converged runs are logged but do not fail on their gap.
    """
    rows = []
    converged = total = 0
    for t in range(trials):
        s = seed + t
        for r, n, p in MTH1_GRID:
            rng = np.random.default_rng((s, r, n, p))
            A = random_symmetric(rng, r, n)
            e = eta_p(A, p, opts)
            m = spectral_p_norm(A, p, opts)
            conv = e.converged and m.converged
            converged += conv
            total += 1
            ok = _close(e.value, m.value, 1e-6) if conv else True
            rows.append(_row(t, s, f"mth1[r={r},n={n},p={p}]", e.value, m.value, ok))
    frac = converged / total if total else 1.0
    rows.append(_row(-1, seed, "converged_fraction", frac, 0.95, frac >= 0.95))
    return rows


def suite_pf1(trials: int, seed: int, opts: SolverOptions) -> list[Row]:
    """``pf1``: eta_p of a block diagonal equals the component combination, 1e-6 relative."""
    rows = []
    for t in range(trials):
        s = seed + t
        rng = np.random.default_rng(s)
        r = int(rng.choice([2, 3]))
        k = int(rng.integers(2, 4))
        comps = [random_symmetric(rng, r, int(rng.integers(2, 4))) for _ in range(k)]
        D = block_diagonal(comps)
        for p in (r + 0.5, r + 1.0, 2.0 * r):
            lhs = eta_p(D, p, opts).value
            rhs = combine_components([eta_p(C, p, opts).value for C in comps], p, r)
            rows.append(_row(t, s, f"pf1[r={r},k={k},p={p}]", lhs, rhs, _close(lhs, rhs, 1e-6)))
    return rows


def suite_pf0(trials: int, seed: int, opts: SolverOptions) -> list[Row]:
    """Positivity and eigenpair checks on nonnegative symmetric tensors.

    ``pf0_min``: the maximizer of lambda_p on a weakly irreducible tensor
    (p in {r, r+1, 2r}) has min entry >= 1e-8; ``cor_min``: same for a
    block diagonal of two such tensors with p > r. ``pf2``: the positive
    eigenpair of the power iteration (residual <= 1e-10) has eigenvalue
    lambda_r to 1e-6 relative. ``pro``: that eigenvalue is <= eta_r + 1e-6.
    """
    rows = []
    tight = replace(opts, tol=min(opts.tol, 1e-13))
    for t in range(trials):
        s = seed + t
        rng = np.random.default_rng(s)
        r = int(rng.choice([2, 3]))
        n = int(rng.integers(r + 1, 6))
        A = random_connected_graph_tensor(rng, r, n)
        for p in (float(r), r + 1.0, 2.0 * r):
            res = lambda_p(A, p, opts)
            xmin = float(np.min(res.witness))
            rows.append(_row(t, s, f"pf0_min[r={r},p={p}]", xmin, 1e-8, (not res.converged) or xmin >= 1e-8))
        D = block_diagonal([A, random_connected_graph_tensor(rng, r, int(rng.integers(r, 5)))])
        for p in (r + 1.0, 2.0 * r):
            res = lambda_p(D, p, opts)
            xmin = float(np.min(res.witness))
            rows.append(_row(t, s, f"cor_min[r={r},p={p}]", xmin, 1e-8, (not res.converged) or xmin >= 1e-8))
        rho = rho_nonnegative(A, tight)
        x = np.asarray(rho.witness)
        resid = eigen_residual(A, rho.value, x, float(r))
        lam = lambda_p(A, float(r), opts).value
        premise = resid <= 1e-10 and bool(np.all(x > 0))
        rows.append(_row(t, s, f"pf2_residual[r={r}]", resid, 1e-10, premise))
        rows.append(_row(t, s, f"pf2[r={r}]", rho.value, lam, (not premise) or _close(rho.value, lam, 1e-6)))
        eta = eta_p(A, float(r), opts).value
        rows.append(_row(t, s, f"pro[r={r}]", abs(rho.value), eta, _le(abs(rho.value), eta, 1e-6)))
    return rows


P_GRID = tuple(1.0 + 0.25 * i for i in range(13))


def _curve_rows(t, s, tag, curve, size, l1, rows):
    # size is N (spectral norm) or n^r (p-spectral radius)
    log_size = math.log(size)
    for (q, vq), (p, vp) in zip(curve, curve[1:]):
        rows.append(_row(t, s, f"{tag}_monotone[p={p}]", vq, vp, _le(vq, vp, 1e-8)))
        lhs, rhs = size ** (1.0 / p) * vp, size ** (1.0 / q) * vq
        rows.append(_row(t, s, f"{tag}_scaling[p={p}]", lhs, rhs, _le(lhs, rhs, 1e-6)))
        env = (p - q) * l1 * size * log_size
        rows.append(_row(t, s, f"{tag}_lipschitz[p={p}]", vp - vq, env, -1e-8 <= vp - vq <= env + 1e-8))
    for p, v in curve:
        rows.append(_row(t, s, f"{tag}_l1[p={p}]", v, l1, _le(v, l1, 1e-12 * max(1.0, l1))))


def suite_monotone(trials: int, seed: int, opts: SolverOptions) -> list[Row]:
    """p-curves on the grid 1, 1.25, ..., 4.

    ``*_monotone``: nondecreasing within 1e-8; ``*_scaling``: the size-weighted
    value is nonincreasing within 1e-6; ``*_lipschitz``: increments lie in
    ``[0, (p-q) |A|_1 N log N]``; ``*_l1``: value <= |A|_1.
    ``eta1``: the p = 1 report is >= |A|_max r!/r^r - 1e-9.
    """
    rows = []
    for t in range(trials):
        s = seed + t
        rng = np.random.default_rng(s)
        r = int(rng.choice([2, 3]))
        signed = bool(t % 2)
        A = random_tensor(rng, random_dims(rng, r, 3), signed=signed)
        N = float(np.prod(A.dims))
        _curve_rows(t, s, "norm", norm_p_curve(A, P_GRID, opts), N, entrywise_norm(A, 1), rows)
        n = int(rng.integers(2, 4))
        S = random_symmetric(rng, r, n, signed=signed)
        curve = eta_p_curve(S, P_GRID, opts)
        _curve_rows(t, s, "eta", curve, float(n**r), entrywise_norm(S, 1), rows)
        floor = entrywise_norm(S, math.inf) * math.factorial(r) / r**r
        rows.append(_row(t, s, "eta1", curve[0][1], floor, curve[0][1] >= floor - 1e-9))
    return rows


def suite_gradient(trials: int, seed: int, opts: SolverOptions) -> list[Row]:
    """``fd``: central differences (h = 1e-6) match the gradient to 1e-5 relative;
    ``euler``: residual <= 1e-12 (1 + |P|)."""
    rows = []
    h = 1e-6
    for t in range(trials):
        s = seed + t
        rng = np.random.default_rng(s)
        r = int(rng.choice([2, 3]))
        n = int(rng.integers(1, 6))
        A = random_symmetric(rng, r, n, signed=True)
        x = rng.uniform(-1.0, 1.0, n)
        g = forms.poly_gradient(A, x)
        fd = np.empty(n)
        for k in range(n):
            e = np.zeros(n)
            e[k] = h
            fd[k] = (forms.poly_form(A, x + e) - forms.poly_form(A, x - e)) / (2 * h)
        err = float(np.max(np.abs(fd - g)) / max(1.0, float(np.max(np.abs(g)))))
        rows.append(_row(t, s, f"fd[r={r},n={n}]", err, 1e-5, err <= 1e-5))
        P = forms.poly_form(A, x)
        lim = 1e-12 * (1.0 + abs(P))
        res = forms.euler_residual(A, x)
        rows.append(_row(t, s, f"euler[r={r},n={n}]", res, lim, res <= lim))
    return rows


def suite_sandwich(trials: int, seed: int, opts: SolverOptions) -> list[Row]:
    """At p = r: ``lower:*`` <= estimate + 1e-8; estimate <= ``upper:*`` + 1e-12;
    ``main<=hlp`` within 1e-12; for matrices ``main<=schur``."""
    rows = []
    for t in range(trials):
        s = seed + t
        rng = np.random.default_rng(s)
        r = int(rng.choice([2, 3]))
        A = random_tensor(rng, random_dims(rng, r), signed=bool(t % 2))
        rep = bounds_report(A, float(r), opts, with_estimate=True)
        est = rep.estimate
        scale = max(1.0, abs(est))
        for name, v in rep.lower.items():
            rows.append(_row(t, s, f"lower:{name}", v, est, _le(v, est, 1e-8 * scale)))
        for name, v in rep.upper.items():
            rows.append(_row(t, s, f"upper:{name}", est, v, _le(est, v, 1e-12 * max(1.0, v))))
        m, hlp = upper_main(A), upper_hlp(A)
        rows.append(_row(t, s, "main<=hlp", m, hlp, _le(m, hlp, 1e-12 * max(1.0, hlp))))
        if r == 2:
            sch = upper_schur(A)
            rows.append(_row(t, s, "main<=schur", m, sch, _le(m, sch, 1e-12 * max(1.0, sch))))
    return rows


def _tiny_random(rng: np.random.Generator, t: int):
    if t % 2 == 0:
        dims = [(2, 2), (2, 3), (3, 3), (2, 2, 2), (2, 2, 3)][int(rng.integers(5))]
        return "norm", random_tensor(rng, dims, signed=True)
    r = int(rng.choice([2, 3]))
    return "eta", random_symmetric(rng, r, int(rng.integers(2, 4)), signed=True)


def suite_oracle(trials: int, seed: int, opts: SolverOptions) -> list[Row]:
    """Catalogue: optimizer matches the closed form to 1e-6 relative
    (``closed:*``); the grid oracle matches the optimizer to 1e-3 relative
    (``grid:*``) and never exceeds the closed form (``feasible:*``).
    ``random:*`` rows compare oracle and optimizer on random tiny instances."""
    rows = []
    for i, (name, args, p, kind) in enumerate(CATALOGUE):
        A = instance(name, *args)
        cf = closed_form(name, p, *args)
        est = (spectral_p_norm if kind == "norm" else eta_p)(A, p, opts).value
        tag = f"{name}{list(args)}@{p}"
        rows.append(_row(i, seed, f"closed:{tag}", est, cf, _close(est, cf, 1e-6)))
        try:
            o = (grid_max_norm if kind == "norm" else grid_max_eta)(A, p, opts=opts)
        except TooLarge:
            continue
        rows.append(_row(i, seed, f"grid:{tag}", o.value, est, _close(o.value, est, 1e-3)))
        rows.append(_row(i, seed, f"feasible:{tag}", o.grid_value, cf, _le(o.grid_value, cf, 1e-9 * max(1.0, cf))))
    for t in range(trials):
        s = seed + t
        rng = np.random.default_rng(s)
        kind, A = _tiny_random(rng, t)
        p = float(rng.choice([1.5, 2.0, 3.0, 4.0]))
        if kind == "norm":
            est, o = spectral_p_norm(A, p, opts).value, grid_max_norm(A, p, opts=opts)
        else:
            est, o = eta_p(A, p, opts).value, grid_max_eta(A, p, opts=opts)
        rows.append(_row(t, s, f"random:{kind}{list(A.dims)}@{p}", o.value, est, _close(o.value, est, 1e-3)))
    return rows


def symmetrant_balance(A: Tensor, p: float, opts: SolverOptions) -> float:
    """Largest deviation of a block norm of the symmetrant maximizer from ``r^(-1/p)``."""
    B, part = symmetrant(A)
    x = np.asarray(eta_p(B, p, opts).witness)
    target = A.order ** (-1.0 / p)
    return max(
        abs(float(np.sum(np.abs(x[list(b)]) ** p) ** (1.0 / p)) - target) for b in part.blocks
    )


BALANCE_TOL = 1e-14


def suite_balance(trials: int, seed: int, opts: SolverOptions) -> list[Row]:
    """``balance``: every block of the symmetrant maximizer has l^p norm
    ``r^(-1/p)`` within 1e-6. Runs at solver tolerance 1e-14 so that the
    maximizer, not only its value, is resolved."""
    rows = []
    tight = replace(opts, tol=min(opts.tol, BALANCE_TOL))
    for t in range(trials):
        s = seed + t
        rng = np.random.default_rng(s)
        r = int(rng.choice([2, 3]))
        A = random_tensor(rng, random_dims(rng, r))
        p = float(rng.choice([1.5, 2.0, 2.5, 3.0, 4.0]))
        dev = symmetrant_balance(A, p, tight)
        rows.append(_row(t, s, f"balance[r={r},dims={list(A.dims)},p={p}]", dev, 1e-6, dev <= 1e-6))
    return rows


def _regular_rows(tag, A, ps, opts, rows, t=0, seed=0):
    for p in ps:
        exact = regular_value(A, p)
        est = eta_p(A, p, opts).value
        rows.append(_row(t, seed, f"{tag}@{p}", est, exact, _close(est, exact, 1e-6)))
        for k in range(A.order):
            lo = lower_slice_sum(A, p, k)
            rows.append(_row(t, seed, f"{tag}:slice_sum_{k}@{p}", lo, est, _close(lo, est, 1e-6)))


def suite_regular(trials: int, seed: int, opts: SolverOptions) -> list[Row]:
    """Regular tensors: eta_p equals ``n^(-r/p) sum A`` and every slice-sum
    bound, to 1e-6 relative, for p in {r, r+1, 2r}. Regular graphs: the degree
    lower bound and (even cycles) the partite lower bound equal rho. Star
    graphs (non-regular): eta_p misses ``n^(-r/p) sum A`` by more than 1e-6
    for some tested p. Random weighted regular tensors come from
    ``trials``."""
    rows = []
    for r in (2, 3):
        for n in (2, 3, 4):
            _regular_rows(f"all_ones[r={r},n={n}]", all_ones(r, n), (r, r + 1, 2 * r), opts, rows)
    val = eta_p(all_ones(3, 2), 4.0, opts).value
    rows.append(_row(0, 0, "all_ones[r=3,n=2]@4 vs 2^(9/4)", val, 2**2.25, _close(val, 2**2.25, 1e-6)))
    for n in range(3, 9):
        G = gen_cycle(n)
        A = adjacency_tensor(G)
        _regular_rows(f"cycle[n={n}]", A, (2, 3, 4), opts, rows)
        rho = rho_nonnegative(A, opts).value
        hof = lower_hofmeister(G, 2.0)
        rows.append(_row(0, 0, f"cycle[n={n}]:hofmeister", hof, rho, _close(hof, rho, 1e-6)))
        if n % 2 == 0:
            part = Partition.from_blocks([range(0, n, 2), range(1, n, 2)])
            pl = partite_lower(G, part, 2.0)
            rows.append(_row(0, 0, f"cycle[n={n}]:partite", pl, rho, _close(pl, rho, 1e-6)))
    for n in (2, 3, 4, 5):
        A = adjacency_tensor(gen_star(n))
        gaps = []
        for p in (2.0, 3.0, 4.0):
            naive = (n + 1) ** (-2.0 / p) * float(A.data.sum())
            gaps.append(abs(eta_p(A, p, opts).value - naive))
        rows.append(_row(0, 0, f"star[n={n}]:nonregular", max(gaps), 1e-6, max(gaps) > 1e-6))
    for t in range(trials):
        s = seed + t
        rng = np.random.default_rng(s)
        # circulant weights give a regular symmetric 2-tensor
        n = int(rng.integers(3, 7))
        c = rng.random(n)
        c = c + c[(-np.arange(n)) % n]
        C = np.array([[c[(j - i) % n] for j in range(n)] for i in range(n)])
        _regular_rows("circulant", Tensor(C), (2, 3, 4), opts, rows, t, s)
    return rows


SUITES: dict[str, Callable[[int, int, SolverOptions], list[Row]]] = {
    "th2": suite_th2,
    "mth1": suite_mth1,
    "pf1": suite_pf1,
    "pf0": suite_pf0,
    "monotone": suite_monotone,
    "gradient": suite_gradient,
    "sandwich": suite_sandwich,
    "oracle": suite_oracle,
    "balance": suite_balance,
    "regular": suite_regular,
}


def run_suite(name: str, trials: int = 25, seed: int = 0, opts: SolverOptions | None = None) -> list[Row]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if trials < 0:
        raise ValueError("trials must be >= 0")
    return SUITES[name](trials, seed, opts or SolverOptions())


def rows_to_csv(rows: list[Row]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f.name if f.name != "passed" else "pass" for f in fields(Row)])
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in astuple(row)])
    return buf.getvalue()
