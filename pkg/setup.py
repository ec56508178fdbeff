import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    USE_CYTHON = True
except ImportError:
    USE_CYTHON = False

# HYPERNORM_NO_EXT=1 installs the pure-Python package only.
NO_EXT = os.environ.get("HYPERNORM_NO_EXT", "") == "1"

extensions = []
if USE_CYTHON and not NO_EXT:
    extensions = cythonize(
        [
            Extension(
                "hypernorm._kernels",
                ["src/hypernorm/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=extensions)
