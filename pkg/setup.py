"""Build script for the compiled search kernels.

The package works without the extension (a pure-Python/numpy fallback is
selected at import time), but the distance-certification sweeps are orders
of magnitude faster with it.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:  # plain install without build tools: fall back to pure python
    ext_modules = []
else:
    extensions = [
        Extension(
            "lrcforge._kernels._fastcore",
            ["src/lrcforge/_kernels/_fastcore.pyx"],
            include_dirs=[numpy.get_include()],
            extra_compile_args=["-O3"],
        )
    ]
    ext_modules = cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
