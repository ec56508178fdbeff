"""Backend selection for the hot solver loops.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy fallback in ``_pykernels`` takes over. Set ``HYPERNORM_BACKEND=python``
to force the fallback.
"""

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_FUNCS = ("contract_except", "block_ascent", "shifted_ascent", "cw_power")


def available() -> list[str]:
    return ["compiled", "python"] if _compiled is not None else ["python"]


def get_backend(name: str = "auto") -> ModuleType:
    if name == "auto":
        name = os.environ.get("HYPERNORM_BACKEND", "auto")
    if name == "auto":
        return _compiled if _compiled is not None else _pykernels
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; reinstall with Cython available")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def backend_name(name: str = "auto") -> str:
    return "compiled" if get_backend(name) is _compiled else "python"


BACKEND = backend_name()
