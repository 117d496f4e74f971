"""Kernel selection: the compiled extension when importable, else the pure-Python twin.

Set ``LATGAP_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("LATGAP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

enumerate_ball = _impl.enumerate_ball
count_ball = _impl.count_ball

__all__ = ["BACKEND", "enumerate_ball", "count_ball"]
