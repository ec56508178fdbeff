# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled solver kernels.

Mirror of ``_pykernels``: identical signatures, identical iteration logic.
The inner loops run without the GIL.
"""

import numpy as np

from libc.math cimport copysign, fabs, pow

cdef double ASCENT_SLACK = 1e-15
cdef int MAX_SHIFT_DOUBLINGS = 60


cdef void _contract(const double[::1] data, const Py_ssize_t[::1] dims,
                    const double[::1] xs, const Py_ssize_t[::1] offsets,
                    Py_ssize_t k, double[::1] out, Py_ssize_t[::1] idx) noexcept nogil:
    # Walk the tensor row by row along the last axis; idx is an odometer over
    # the leading r-1 axes.
    cdef Py_ssize_t r = dims.shape[0]
    cdef Py_ssize_t last = dims[r - 1]
    cdef Py_ssize_t total = data.shape[0]
    cdef Py_ssize_t nrows = total // last
    cdef Py_ssize_t row, j, t, base
    cdef Py_ssize_t off_last = offsets[r - 1]
    cdef double w, s
    for t in range(dims[k]):
        out[t] = 0.0
    for j in range(r - 1):
        idx[j] = 0
    for row in range(nrows):
        w = 1.0
        for j in range(r - 1):
            if j != k:
                w = w * xs[offsets[j] + idx[j]]
        base = row * last
        if w != 0.0:
            if k == r - 1:
                for t in range(last):
                    out[t] += w * data[base + t]
            else:
                s = 0.0
                for t in range(last):
                    s += data[base + t] * xs[off_last + t]
                out[idx[k]] += w * s
        j = r - 2
        while j >= 0:
            idx[j] += 1
            if idx[j] < dims[j]:
                break
            idx[j] = 0
            j -= 1


cdef double _dot(const double[::1] a, const double[::1] b, Py_ssize_t off, Py_ssize_t n) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        s += a[i] * b[off + i]
    return s


cdef bint _dual_scale(const double[::1] g, Py_ssize_t n, double p,
                      double[::1] y, Py_ssize_t off) noexcept nogil:
    # writes the unit l^p maximizer of <g, .> into y[off:off+n]; False if g == 0
    cdef double m = 0.0, e = 1.0 / (p - 1.0), nrm = 0.0, v
    cdef Py_ssize_t i
    for i in range(n):
        if fabs(g[i]) > m:
            m = fabs(g[i])
    if m == 0.0:
        return False
    for i in range(n):
        v = copysign(pow(fabs(g[i]) / m, e), g[i])
        y[off + i] = v
        nrm += pow(fabs(v), p)
    nrm = pow(nrm, 1.0 / p)
    for i in range(n):
        y[off + i] /= nrm
    return True


def contract_except(const double[::1] data, const Py_ssize_t[::1] dims,
                    const double[::1] xs, const Py_ssize_t[::1] offsets, Py_ssize_t k):
    out = np.zeros(dims[k])
    idx = np.zeros(dims.shape[0], dtype=np.intp)
    cdef double[::1] out_v = out
    cdef Py_ssize_t[::1] idx_v = idx
    with nogil:
        _contract(data, dims, xs, offsets, k, out_v, idx_v)
    return out


def block_ascent(const double[::1] data, const Py_ssize_t[::1] dims, double[::1] xs,
                 const Py_ssize_t[::1] offsets, double p, double tol,
                 Py_ssize_t max_iter, Py_ssize_t patience):
    cdef Py_ssize_t r = dims.shape[0]
    cdef Py_ssize_t nmax = 0, k, it, stall = 0
    for k in range(r):
        if dims[k] > nmax:
            nmax = dims[k]
    g_arr = np.zeros(nmax)
    idx_arr = np.zeros(r, dtype=np.intp)
    cdef double[::1] g = g_arr
    cdef Py_ssize_t[::1] idx = idx_arr
    cdef double value, new = 0.0, change
    cdef bint converged = False
    with nogil:
        _contract(data, dims, xs, offsets, r - 1, g, idx)
        value = _dot(g, xs, offsets[r - 1], dims[r - 1])
        it = 0
        while it < max_iter:
            it += 1
            for k in range(r):
                _contract(data, dims, xs, offsets, k, g, idx)
                _dual_scale(g, dims[k], p, xs, offsets[k])
                new = _dot(g, xs, offsets[k], dims[k])
            change = fabs(new - value) / max(fabs(new), 1e-300)
            value = new
            if change <= tol:
                stall += 1
                if stall >= patience:
                    converged = True
                    break
            else:
                stall = 0
    return value, it, bool(converged)


def shifted_ascent(const double[::1] data, Py_ssize_t n, Py_ssize_t r, double[::1] x,
                   double p, double alpha, double tol, Py_ssize_t max_iter,
                   Py_ssize_t patience):
    dims_arr = np.full(r, n, dtype=np.intp)
    off_arr = np.zeros(r, dtype=np.intp)
    cdef const Py_ssize_t[::1] dims = dims_arr
    cdef const Py_ssize_t[::1] offsets = off_arr
    g_arr = np.zeros(n)
    gy_arr = np.zeros(n)
    h_arr = np.zeros(n)
    y_arr = np.zeros(n)
    idx_arr = np.zeros(r, dtype=np.intp)
    cdef double[::1] g = g_arr
    cdef double[::1] gy = gy_arr
    cdef double[::1] h = h_arr
    cdef double[::1] y = y_arr
    cdef double[::1] tmp
    cdef Py_ssize_t[::1] idx = idx_arr
    cdef Py_ssize_t i, it = 0, stall = 0
    cdef int doublings
    cdef double P, Py, change, xi
    cdef bint converged = False, moved
    with nogil:
        _contract(data, dims, x, offsets, 0, g, idx)
        for i in range(n):
            g[i] *= r
        P = _dot(g, x, 0, n) / r
        while it < max_iter:
            it += 1
            doublings = 0
            while True:
                for i in range(n):
                    xi = x[i]
                    h[i] = g[i] + alpha * p * copysign(pow(fabs(xi), p - 1.0), xi)
                moved = _dual_scale(h, n, p, y, 0)
                if not moved:
                    Py = P
                    break
                _contract(data, dims, y, offsets, 0, gy, idx)
                for i in range(n):
                    gy[i] *= r
                Py = _dot(gy, y, 0, n) / r
                if Py >= P - ASCENT_SLACK * fabs(P):
                    break
                alpha *= 2.0
                doublings += 1
                if doublings > MAX_SHIFT_DOUBLINGS:
                    moved = False
                    Py = P
                    break
            change = fabs(Py - P) / max(fabs(Py), 1e-300)
            if moved:
                for i in range(n):
                    x[i] = y[i]
                tmp = g
                g = gy
                gy = tmp
            P = Py
            if change <= tol:
                stall += 1
                if stall >= patience:
                    converged = True
                    break
            else:
                stall = 0
    return P, it, bool(converged), alpha


def cw_power(const double[::1] data, Py_ssize_t n, Py_ssize_t r, double[::1] x,
             double shift, double tol, Py_ssize_t max_iter):
    dims_arr = np.full(r, n, dtype=np.intp)
    off_arr = np.zeros(r, dtype=np.intp)
    cdef const Py_ssize_t[::1] dims = dims_arr
    cdef const Py_ssize_t[::1] offsets = off_arr
    y_arr = np.zeros(n)
    idx_arr = np.zeros(r, dtype=np.intp)
    cdef double[::1] y = y_arr
    cdef Py_ssize_t[::1] idx = idx_arr
    cdef Py_ssize_t i, it = 0
    cdef double lo, hi, ratio, xr, mx, e = 1.0 / (r - 1)
    cdef bint converged = False
    with nogil:
        _contract(data, dims, x, offsets, 0, y, idx)
        while True:
            lo = 1e308
            hi = -1e308
            for i in range(n):
                ratio = y[i] / pow(x[i], r - 1)
                if ratio < lo:
                    lo = ratio
                if ratio > hi:
                    hi = ratio
            if hi - lo <= tol * hi:
                converged = True
                break
            if it == max_iter:
                break
            it += 1
            mx = 0.0
            for i in range(n):
                xr = pow(x[i], r - 1)
                x[i] = pow(y[i] + shift * xr, e)
                if x[i] > mx:
                    mx = x[i]
            for i in range(n):
                x[i] /= mx
            _contract(data, dims, x, offsets, 0, y, idx)
    return lo, hi, it, bool(converged)
