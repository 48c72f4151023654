"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python backend is selected
at import time), so any build failure here downgrades to a warning instead
of aborting the install.
"""

import warnings

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "caustica._kernels._ckern",
                ["src/caustica/_kernels/_ckern.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
    warnings.warn(f"Cython kernel build skipped ({exc}); using pure-Python backend")

setup(ext_modules=ext_modules)
