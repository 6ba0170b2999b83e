import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("REPCLASS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("repclass._kernels", ["src/repclass/_kernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        # No Cython: install the pure-Python fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)
