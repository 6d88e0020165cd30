"""Build script: compiles the optional distance kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time); set GECEVAL_NO_EXTENSION=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GECEVAL_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "geceval._kernels",
                    ["src/geceval/_kernels.pyx"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
