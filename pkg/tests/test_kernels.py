import numpy as np
import pytest

from hypernorm import SolverOptions, Tensor, eta_p, rho_nonnegative, spectral_p_norm
from hypernorm import _pykernels
from hypernorm.kernels import available, backend_name, get_backend
from hypernorm.tensor import symmetrize

needs_compiled = pytest.mark.skipif("compiled" not in available(), reason="compiled kernels not built")


def test_python_backend_always_available():
    assert get_backend("python") is _pykernels
    assert backend_name("python") == "python"
    with pytest.raises(ValueError):
        get_backend("fortran")


def test_env_override(monkeypatch):
    monkeypatch.setenv("HYPERNORM_BACKEND", "python")
    assert backend_name() == "python"


@needs_compiled
def test_contract_except_agrees():
    comp = get_backend("compiled")
    rng = np.random.default_rng(0)
    dims = np.array([3, 2, 4], dtype=np.intp)
    offsets = np.array([0, 3, 5], dtype=np.intp)
    data = rng.standard_normal(24)
    xs = rng.standard_normal(9)
    for k in range(3):
        a = comp.contract_except(data, dims, xs, offsets, k)
        b = _pykernels.contract_except(data, dims, xs, offsets, k)
        assert np.allclose(a, b, rtol=1e-13, atol=1e-14)


@needs_compiled
@pytest.mark.parametrize("seed", range(4))
def test_solvers_agree_across_backends(seed):
    rng = np.random.default_rng(seed)
    A = Tensor(rng.standard_normal((3, 4, 2)))
    S = Tensor(symmetrize(rng.random((4, 4, 4))))
    for backend_pair in (("compiled", "python"),):
        a, b = (spectral_p_norm(A, 2.5, SolverOptions(starts=6, backend=x)) for x in backend_pair)
        assert a.value == pytest.approx(b.value, rel=1e-12)
        a, b = (eta_p(S, 3.0, SolverOptions(starts=6, backend=x)) for x in backend_pair)
        assert a.value == pytest.approx(b.value, rel=1e-12)
        a, b = (rho_nonnegative(S, SolverOptions(backend=x)) for x in backend_pair)
        assert a.value == pytest.approx(b.value, rel=1e-12)
