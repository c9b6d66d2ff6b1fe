"""Kernel selection: the compiled extension when built, else pure Python.

Set ``RIGCOH_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

IMPLEMENTATION = "python"
_impl = _pykernels

if os.environ.get("RIGCOH_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        IMPLEMENTATION = "cython"
    except ImportError:
        _impl = _pykernels

compose = _impl.compose
direct_sum = _impl.direct_sum
tensor = _impl.tensor
inverse = _impl.inverse
braid = _impl.braid


def implementations():
    """All importable kernel modules, keyed by name (for tests and benchmarks)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
