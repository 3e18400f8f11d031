"""Kernel backend selection.

Prefers the compiled extension; falls back to the pure-Python kernel when
the extension is missing or TGSCHED_PURE_PYTHON is set.  ``BACKEND`` names
the active implementation so reports and benchmarks can show it.
"""

import os

if os.environ.get("TGSCHED_PURE_PYTHON"):
    from ._listsched_py import decode_kernel

    BACKEND = "python"
else:
    try:
        from ._listsched import decode_kernel  # compiled extension

        BACKEND = "cython"
    except ImportError:
        from ._listsched_py import decode_kernel

        BACKEND = "python"

__all__ = ["decode_kernel", "BACKEND"]
