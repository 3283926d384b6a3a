"""Build script: compiles the Cython hot-kernel core when possible.

The package is fully functional without the extension (a pure-NumPy
implementation of the same primitives is selected at import time), so a
failed extension build degrades to the fallback instead of aborting.
"""

import sys

from setuptools import Extension, setup


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError as exc:
        print(f"weyllab: building without compiled core ({exc})", file=sys.stderr)
        return []
    ext = Extension(
        "weyllab._fastcore",
        ["src/weyllab/_fastcore.pyx"],
        include_dirs=[numpy.get_include()],
        # -ffp-contract=off: no FMA contraction, so the compiled reduction
        # reproduces the fallback's IEEE operation sequence exactly.
        extra_compile_args=["-O3", "-ffp-contract=off"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions())
