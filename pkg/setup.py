"""Build script for the compiled integrand kernels.

The extension is optional: if Cython or a C compiler is unavailable the
package falls back to the pure-numpy kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    core = Extension(
        "casimir_metal.kernels._core",
        sources=["src/casimir_metal/kernels/_core.pyx"],
        extra_compile_args=["-O3"],
    )
    core.optional = True
    ext_modules = cythonize(
        [core],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )

setup(ext_modules=ext_modules)
