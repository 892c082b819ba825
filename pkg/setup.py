"""Build script: compiles the optional state-sum accelerator.

The package is pure Python except for kbsm._statesum_c, a Cython kernel for
the exponential state-sum walk.  The extension is marked optional so that an
environment without a C compiler still installs (the pure-Python kernel in
kbsm._statesum_py is selected at import time instead).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "kbsm._statesum_c",
                ["src/kbsm/_statesum_c.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
