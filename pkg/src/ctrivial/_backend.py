"""Kernel selection.

The compiled extension is used when it imports; otherwise the numpy fallback.
Setting ``CTRIVIAL_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _fallback

try:
    if os.environ.get("CTRIVIAL_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("compiled kernels disabled by CTRIVIAL_PURE_PYTHON")
    from . import _kernels as _impl

    NAME = "cython"
except ImportError:
    _impl = _fallback
    NAME = "python"

gf2_rref = _impl.gf2_rref
cup_eval = _impl.cup_eval

BACKENDS = {"python": _fallback}
try:
    from . import _kernels

    BACKENDS["cython"] = _kernels
except ImportError:
    pass
