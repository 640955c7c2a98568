"""Build script: compiles the optional sparse linear-algebra kernel.

The compiled extension is a pure speedup; if Cython or a C compiler is
missing the install falls back to the pure-Python kernel automatically.
Set QPSING_PURE=1 to skip the extension build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("QPSING_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "qpsing._kernel._speedups",
                    ["src/qpsing/_kernel/_speedups.pyx"],
                    optional=True,
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
