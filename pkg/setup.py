"""Build hook: compiles the optional reachability kernel when Cython is around.

`pip install -e . --no-build-isolation` builds confounders._kernels._fast
if Cython and a C compiler are available; otherwise the install still
succeeds and the package falls back to the pure-Python kernel at import.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("CONFOUNDERS_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/confounders/_kernels/_fast.pyx"],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "initializedcheck": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
