"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each case solves the same problem with both backends and reports the best
wall time of ``--repeat`` runs, the speedup, and the largest difference in
the returned values (which should be at rounding level).
"""

import argparse
import time

import numpy as np

from hypernorm import SolverOptions, Tensor, eta_p, rho_nonnegative, spectral_p_norm
from hypernorm.kernels import available
from hypernorm.tensor import symmetrize


def _cases():
    rng = np.random.default_rng(0)
    yield "norm 8x8 p=3", spectral_p_norm, Tensor(rng.standard_normal((8, 8))), 3.0
    yield "norm 5x5x5 p=2.5", spectral_p_norm, Tensor(rng.standard_normal((5, 5, 5))), 2.5
    yield "norm 3x4x3x4 p=4", spectral_p_norm, Tensor(rng.standard_normal((3, 4, 3, 4))), 4.0
    S3 = Tensor(symmetrize(rng.random((6, 6, 6))))
    yield "eta r=3 n=6 p=3", eta_p, S3, 3.0
    yield "eta r=3 n=6 p=4 signed", eta_p, Tensor(symmetrize(rng.standard_normal((6, 6, 6)))), 4.0
    yield "rho r=3 n=6", lambda A, p, o: rho_nonnegative(A, o), S3, None


def _time(fn, A, p, opts, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(A, p, opts).value
        best = min(best, time.perf_counter() - t0)
    return best, value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--starts", type=int, default=32)
    args = ap.parse_args(argv)
    if "compiled" not in available():
        print("compiled kernels are not built; nothing to compare")
        return 1
    print(f"{'case':<26}{'compiled s':>12}{'python s':>12}{'speedup':>10}{'|diff|':>11}")
    for name, fn, A, p in _cases():
        tc, vc = _time(fn, A, p, SolverOptions(starts=args.starts, backend="compiled"), args.repeat)
        tp, vp = _time(fn, A, p, SolverOptions(starts=args.starts, backend="python"), args.repeat)
        print(f"{name:<26}{tc:>12.4f}{tp:>12.4f}{tp / tc:>10.1f}{abs(vc - vp):>11.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
