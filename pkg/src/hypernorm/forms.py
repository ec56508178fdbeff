"""Linear and polynomial forms of an r-matrix, and the gradient identities.

These are plain numpy reference implementations; the iterative solvers use
the kernels in :mod:`hypernorm.kernels` instead, and the test-suite checks
the two against each other.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .errors import DimMismatch, NotSymmetric
from .tensor import Tensor, is_symmetric

SYMMETRY_TOL = 1e-12


def _contract(data: np.ndarray, xs: Sequence[np.ndarray], skip: int | None = None):
    out = data
    # contract from the last axis down so lower axis numbers stay valid
    for j in range(data.ndim - 1, -1, -1):
        if j == skip:
            continue
        out = np.tensordot(out, xs[j], axes=([j], [0]))
    return out


def _check_vectors(A: Tensor, xs) -> list[np.ndarray]:
    if len(xs) != A.order:
        raise DimMismatch(f"need {A.order} vectors, got {len(xs)}")
    out = []
    for k, x in enumerate(xs):
        x = np.asarray(x, dtype=float)
        if x.shape != (A.dims[k],):
            raise DimMismatch(f"vector {k} has shape {x.shape}, expected ({A.dims[k]},)")
        out.append(x)
    return out


def linear_form(A: Tensor, xs: Sequence[Sequence[float]]) -> float:
    """``L_A(x^(1), ..., x^(r)) = sum a_{i1..ir} x^(1)_{i1} ... x^(r)_{ir}``."""
    xs = _check_vectors(A, xs)
    return float(_contract(A.data, xs))


def partial_contraction(A: Tensor, xs: Sequence[Sequence[float]], k: int) -> np.ndarray:
    """Gradient of ``L_A`` with respect to block ``k`` (the other blocks fixed)."""
    xs = _check_vectors(A, xs)
    return np.asarray(_contract(A.data, xs, skip=k))


def _check_cubical_vector(A: Tensor, x) -> np.ndarray:
    A.require_cubical()
    x = np.asarray(x, dtype=float)
    if x.shape != (A.n,):
        raise DimMismatch(f"vector has shape {x.shape}, expected ({A.n},)")
    return x


def poly_form(A: Tensor, x: Sequence[float]) -> float:
    """``P_A(x) = L_A(x, ..., x)``."""
    x = _check_cubical_vector(A, x)
    return float(_contract(A.data, [x] * A.order))


def poly_gradient(A: Tensor, x: Sequence[float], tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Gradient of ``P_A``; component k is ``r * sum a_{k,i2..ir} x_{i2}...x_{ir}``.

    Only valid for symmetric ``A``; non-symmetric input is refused rather
    than silently symmetrized.
    """
    x = _check_cubical_vector(A, x)
    scale = max(1.0, float(np.abs(A.data).max()))
    if not is_symmetric(A, tol * scale):
        raise NotSymmetric("poly_gradient requires a symmetric tensor")
    return A.order * np.asarray(_contract(A.data, [x] * A.order, skip=0))


def euler_residual(A: Tensor, x: Sequence[float]) -> float:
    """``|<grad P_A(x), x> - r P_A(x)|``, zero up to rounding."""
    g = poly_gradient(A, x)
    x = np.asarray(x, dtype=float)
    return abs(float(g @ x) - A.order * poly_form(A, x))
