"""Builds the optional compiled kernel extension.

Set CONVEXPART_SKIP_EXT=1 to install without it; the package falls back to
the pure-Python kernels at import time (see convexpart.kernels).
"""

import os

from setuptools import setup

if os.environ.get("CONVEXPART_SKIP_EXT") == "1":
    ext_modules = []
else:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/convexpart/_kernels.pyx"],
        language_level=3,
        compiler_directives={"boundscheck": False, "wraparound": False},
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        ext.extra_compile_args = ["-O3"]
        ext.define_macros = [("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")]

setup(ext_modules=ext_modules)
