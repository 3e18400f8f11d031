"""Build script for the compiled list-scheduling kernel.

The package works without the extension (a pure-Python kernel is selected at
import time), so a missing Cython toolchain only costs speed, not features.
Set TGSCHED_SKIP_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("TGSCHED_SKIP_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "tgsched._core._listsched",
                ["src/tgsched/_core/_listsched.pyx"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
