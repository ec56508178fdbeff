"""Pure numpy implementation of the solver kernels.

Same signatures and semantics as the compiled ``_kernels`` extension. Vector
arguments are updated in place.

Layout conventions shared by both backends:

* ``data`` is the C-ordered flattening of the tensor (``float64``).
* ``dims`` holds the r dimensions (``intp``).
* ``xs`` concatenates the r factor vectors; ``offsets[k]`` is where vector
  ``k`` starts. The symmetric kernels pass a single vector and all-zero
  offsets.
"""

import numpy as np

# a step may lose at most this much (relative) to rounding and still count as ascent
ASCENT_SLACK = 1e-15
MAX_SHIFT_DOUBLINGS = 60


def contract_except(data, dims, xs, offsets, k):
    out = data.reshape(tuple(int(d) for d in dims))
    for j in range(len(dims) - 1, -1, -1):
        if j == k:
            continue
        v = xs[offsets[j]:offsets[j] + dims[j]]
        out = np.tensordot(out, v, axes=([j], [0]))
    return np.ascontiguousarray(out, dtype=np.float64)


def _dual_scale(g, p):
    """Unit l^p vector maximizing <g, y>; ``None`` when g == 0."""
    m = np.max(np.abs(g))
    if m == 0.0:
        return None
    y = np.copysign((np.abs(g) / m) ** (1.0 / (p - 1.0)), g)
    return y / np.sum(np.abs(y) ** p) ** (1.0 / p)


def block_ascent(data, dims, xs, offsets, p, tol, max_iter, patience):
    r = len(dims)
    last = slice(offsets[r - 1], offsets[r - 1] + dims[r - 1])
    value = float(contract_except(data, dims, xs, offsets, r - 1) @ xs[last])
    stall = 0
    for it in range(1, max_iter + 1):
        for k in range(r):
            seg = slice(offsets[k], offsets[k] + dims[k])
            g = contract_except(data, dims, xs, offsets, k)
            y = _dual_scale(g, p)
            if y is not None:
                xs[seg] = y
            new = float(g @ xs[seg])
        change = abs(new - value) / max(abs(new), 1e-300)
        value = new
        if change <= tol:
            stall += 1
            if stall >= patience:
                return value, it, True
        else:
            stall = 0
    return value, max_iter, False


def shifted_ascent(data, n, r, x, p, alpha, tol, max_iter, patience):
    dims = np.full(r, n, dtype=np.intp)
    offsets = np.zeros(r, dtype=np.intp)
    g = r * contract_except(data, dims, x, offsets, 0)
    P = float(g @ x) / r
    stall = 0
    for it in range(1, max_iter + 1):
        doublings = 0
        while True:
            h = g + alpha * p * np.copysign(np.abs(x) ** (p - 1.0), x)
            y = _dual_scale(h, p)
            if y is None:
                y, gy, Py = x.copy(), g, P
                break
            gy = r * contract_except(data, dims, y, offsets, 0)
            Py = float(gy @ y) / r
            if Py >= P - ASCENT_SLACK * abs(P):
                break
            alpha *= 2.0
            doublings += 1
            if doublings > MAX_SHIFT_DOUBLINGS:
                y, gy, Py = x.copy(), g, P
                break
        change = abs(Py - P) / max(abs(Py), 1e-300)
        x[:] = y
        g, P = gy, Py
        if change <= tol:
            stall += 1
            if stall >= patience:
                return P, it, True, alpha
        else:
            stall = 0
    return P, max_iter, False, alpha


def cw_power(data, n, r, x, shift, tol, max_iter):
    dims = np.full(r, n, dtype=np.intp)
    offsets = np.zeros(r, dtype=np.intp)
    y = contract_except(data, dims, x, offsets, 0)
    it = 0
    while True:
        ratios = y / x ** (r - 1)
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= tol * hi:
            return lo, hi, it, True
        if it == max_iter:
            return lo, hi, it, False
        it += 1
        x[:] = (y + shift * x ** (r - 1)) ** (1.0 / (r - 1))
        x /= x.max()
        y = contract_except(data, dims, x, offsets, 0)
