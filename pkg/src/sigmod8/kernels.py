"""Selects the Gauss-sum enumeration backend at import time.

The compiled extension is used when present; otherwise the numpy fallback.
Set SIGMOD8_NO_EXT=1 to force the fallback (used by the benchmark and by
tests that compare the two backends).
"""
from __future__ import annotations

import os

from . import _gauss_py

if os.environ.get("SIGMOD8_NO_EXT"):
    _impl = _gauss_py
else:
    try:
        from . import _gausskernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _gauss_py

gauss_counts = _impl.gauss_counts


def backend() -> str:
    """Name of the active backend: 'cython' or 'python'."""
    return _impl.backend()
